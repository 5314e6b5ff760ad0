//! Local-complementation orbits and the classification of connected graphs
//! up to local Clifford operations and graph isomorphism.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::entanglement::{
    lower_bound_max_rank, pauli_persistency, rank_index, rank_list, PersistencyConfig, RankIndex,
};
use crate::error::{Error, Result};
use crate::graphs::{automorphism_count, canonical_form, enumerate_connected, to_graph6, Graph, CANON_CAP};

/// Limits for orbit enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitConfig {
    pub max_vertices: usize,
    /// Largest orbit (in graphs) explored before giving up.
    pub orbit_limit: usize,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig {
            max_vertices: 12,
            orbit_limit: 1_000_000,
        }
    }
}

impl OrbitConfig {
    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_vertices.min(64) {
            return Err(Error::CapExceeded {
                what: "vertices for orbit enumeration",
                value: n,
                cap: self.max_vertices.min(64),
            });
        }
        Ok(())
    }

    fn check_size(&self, size: usize) -> Result<()> {
        if size > self.orbit_limit {
            return Err(Error::CapExceeded {
                what: "orbit size",
                value: size,
                cap: self.orbit_limit,
            });
        }
        Ok(())
    }
}

fn masks_of(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbor_mask(v)).collect()
}

fn lc_masks(masks: &[u64], a: usize) -> Vec<u64> {
    let mut out = masks.to_vec();
    let nbhd = masks[a];
    let mut rest = nbhd;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out[b] ^= nbhd & !(1 << b);
    }
    out
}

fn graph_of(masks: &[u64]) -> Graph {
    let n = masks.len();
    let edges: Vec<_> = (0..n)
        .flat_map(|a| (a + 1..n).filter(move |&b| masks[a] >> b & 1 == 1).map(move |b| (a, b)))
        .collect();
    Graph::from_edges(n, &edges).expect("masks describe a simple graph")
}

/// Breadth-first walk of the labelled orbit; `stop` ends the walk early.
fn walk_orbit(g: &Graph, cfg: &OrbitConfig, mut stop: impl FnMut(&[u64]) -> bool) -> Result<Vec<Vec<u64>>> {
    cfg.check(g.n())?;
    let start = masks_of(g);
    let mut seen: HashSet<Vec<u64>> = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    if stop(&order[0]) {
        return Ok(order);
    }
    while let Some(current) = queue.pop_front() {
        for a in 0..g.n() {
            if current[a].count_ones() < 2 {
                continue;
            }
            let next = lc_masks(&current, a);
            if seen.insert(next.clone()) {
                cfg.check_size(seen.len())?;
                let done = stop(&next);
                order.push(next.clone());
                if done {
                    return Ok(order);
                }
                queue.push_back(next);
            }
        }
    }
    Ok(order)
}

/// All labelled graphs reachable from `g` by local complementations, sorted
/// by graph6 string.
pub fn lc_orbit_labeled(g: &Graph, cfg: &OrbitConfig) -> Result<Vec<Graph>> {
    let mut orbit: Vec<Graph> = walk_orbit(g, cfg, |_| false)?.iter().map(|m| graph_of(m)).collect();
    orbit.sort_by_cached_key(to_graph6);
    Ok(orbit)
}

/// Whether `h` is in the labelled LC orbit of `g`, i.e. `|h⟩` and `|g⟩` are
/// related by local Clifford operations without relabelling.
pub fn lc_equivalent(g: &Graph, h: &Graph, cfg: &OrbitConfig) -> Result<bool> {
    if g.n() != h.n() {
        return Err(Error::SizeMismatch(g.n(), h.n()));
    }
    // Cheap necessary condition: identical labelled rank lists.
    if g.n() <= crate::entanglement::BIPARTITION_CAP && rank_list(g)? != rank_list(h)? {
        return Ok(false);
    }
    let target = masks_of(h);
    let mut found = false;
    walk_orbit(g, cfg, |m| {
        found = m == target.as_slice();
        found
    })?;
    Ok(found)
}

/// Closure of a graph under local complementation and relabelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClosure {
    /// Canonical representatives, sorted by graph6.
    pub classes: Vec<Graph>,
    /// Number of distinct labelled graphs in the closure.
    pub labeled_count: u128,
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn canonical(g: &Graph) -> Result<Graph> {
    Ok(canonical_form(g)?.0)
}

/// Isomorphism classes reachable from `g` by local complementations and
/// vertex permutations.
pub fn lc_iso_closure(g: &Graph, cfg: &OrbitConfig) -> Result<IsoClosure> {
    cfg.check(g.n())?;
    if g.n() > CANON_CAP {
        return Err(Error::CapExceeded {
            what: "vertices for canonical labelling",
            value: g.n(),
            cap: CANON_CAP,
        });
    }
    let start = canonical(g)?;
    let mut seen: BTreeMap<String, Graph> = BTreeMap::from([(to_graph6(&start), start.clone())]);
    let mut queue = VecDeque::from([start]);
    while let Some(current) = queue.pop_front() {
        for a in 0..current.n() {
            let next = canonical(&current.local_complement(a)?)?;
            let key = to_graph6(&next);
            if let std::collections::btree_map::Entry::Vacant(slot) = seen.entry(key) {
                slot.insert(next.clone());
                cfg.check_size(seen.len())?;
                queue.push_back(next);
            }
        }
    }
    let classes: Vec<Graph> = seen.into_values().collect();
    let n = g.n();
    let labeled_count = classes
        .iter()
        .map(|c| automorphism_count(c).map(|aut| factorial(n) / aut as u128))
        .sum::<Result<u128>>()?;
    Ok(IsoClosure { classes, labeled_count })
}

/// Sorted multiset of `(smaller side size, rank)` over all bipartitions.
pub fn rank_list_fingerprint(g: &Graph) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    let mut out: Vec<(usize, usize)> = rank_list(g)?
        .into_iter()
        .map(|(a, r)| (a.len().min(n - a.len()), r))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// One local-Clifford-plus-isomorphism class of connected graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    /// 1-based position in the sorted classification.
    pub class_id: usize,
    /// Canonical graph6 of a member with fewest edges (ties by graph6).
    pub representative: String,
    pub member_count: usize,
    pub n_vertices: usize,
    /// Fewest edges over the members.
    pub n_edges: usize,
    pub lower: usize,
    /// Smallest Pauli persistency over the members.
    pub upper: usize,
    pub rank_index_2: Option<RankIndex>,
    pub rank_index_3: Option<RankIndex>,
    pub two_colorable_member_exists: bool,
    /// Canonical graph6 strings of all members, sorted.
    pub members: Vec<String>,
}

impl ClassRecord {
    pub fn tight(&self) -> bool {
        self.lower == self.upper
    }

    /// Bounds as printed in tables: `2` or `2<3`.
    pub fn bounds_label(&self) -> String {
        if self.tight() {
            self.lower.to_string()
        } else {
            format!("{}<{}", self.lower, self.upper)
        }
    }
}

/// Largest vertex count accepted by [`classify`].
pub const CLASSIFY_CAP: usize = 8;

/// Partitions the connected graphs on `2..=n_max` vertices into classes
/// under local complementation and isomorphism, sorted by vertex count,
/// edge count and representative.
pub fn classify(n_max: usize, cfg: &PersistencyConfig) -> Result<Vec<ClassRecord>> {
    if n_max > CLASSIFY_CAP {
        return Err(Error::CapExceeded {
            what: "vertices for classification",
            value: n_max,
            cap: CLASSIFY_CAP,
        });
    }
    let search = PersistencyConfig {
        max_vertices: cfg.max_vertices.max(n_max),
        ..*cfg
    };
    let mut records = Vec::new();
    for n in 2..=n_max {
        let graphs = enumerate_connected(n)?;
        let index: BTreeMap<String, usize> = graphs.iter().enumerate().map(|(i, g)| (to_graph6(g), i)).collect();
        let neighbours: Vec<Vec<usize>> = graphs
            .par_iter()
            .map(|g| {
                (0..n)
                    .map(|a| {
                        let c = canonical(&g.local_complement(a)?)?;
                        Ok(index[&to_graph6(&c)])
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        let persistency: Vec<usize> = graphs
            .par_iter()
            .map(|g| pauli_persistency(g, &search))
            .collect::<Result<_>>()?;

        let mut class_of = vec![usize::MAX; graphs.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..graphs.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for &j in &neighbours[i] {
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            classes.push(members);
        }

        for members in classes {
            let rep = *members
                .iter()
                .min_by_key(|&&i| (graphs[i].n_edges(), to_graph6(&graphs[i])))
                .expect("classes are nonempty");
            let g = &graphs[rep];
            let names: BTreeSet<String> = members.iter().map(|&i| to_graph6(&graphs[i])).collect();
            records.push(ClassRecord {
                class_id: 0,
                representative: to_graph6(g),
                member_count: members.len(),
                n_vertices: n,
                n_edges: g.n_edges(),
                lower: lower_bound_max_rank(g)?,
                upper: members.iter().map(|&i| persistency[i]).min().expect("nonempty"),
                rank_index_2: (n >= 4).then(|| rank_index(g, 2)).transpose()?,
                rank_index_3: (n >= 6).then(|| rank_index(g, 3)).transpose()?,
                two_colorable_member_exists: members.iter().any(|&i| graphs[i].is_two_colorable()),
                members: names.into_iter().collect(),
            });
        }
    }
    records.sort_by(|x, y| (x.n_vertices, x.n_edges, &x.representative).cmp(&(y.n_vertices, y.n_edges, &y.representative)));
    for (i, r) in records.iter_mut().enumerate() {
        r.class_id = i + 1;
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{is_isomorphic, parse_graph6};
    use crate::measurement::measure_pauli;
    use crate::stabilizer::Axis;

    fn cfg() -> OrbitConfig {
        OrbitConfig::default()
    }

    #[test]
    fn trivial_orbits() {
        let k2 = Graph::complete(2);
        assert_eq!(lc_orbit_labeled(&k2, &cfg()).unwrap(), vec![k2.clone()]);
        assert!(lc_equivalent(&k2, &k2, &cfg()).unwrap());
        assert!(lc_equivalent(&k2, &Graph::path(3), &cfg()).is_err());
    }

    #[test]
    fn star_orbits() {
        for m in 3..=8 {
            let orbit = lc_orbit_labeled(&Graph::star(m), &cfg()).unwrap();
            assert_eq!(orbit.len(), m + 1, "m = {m}");
            assert!(orbit.contains(&Graph::complete(m)));
            assert!(lc_equivalent(&Graph::star(m), &Graph::complete(m), &cfg()).unwrap());
        }
    }

    #[test]
    fn orbit_is_closed() {
        let g = Graph::cycle(5);
        let orbit = lc_orbit_labeled(&g, &cfg()).unwrap();
        assert!(orbit.contains(&g));
        for h in &orbit {
            for a in 0..5 {
                assert!(orbit.contains(&h.local_complement(a).unwrap()));
            }
        }
    }

    #[test]
    fn distinct_classes_are_not_equivalent() {
        assert!(!lc_equivalent(&Graph::path(4), &Graph::star(4), &cfg()).unwrap());
    }

    #[test]
    fn orbit_limit_is_enforced() {
        let tiny = OrbitConfig {
            max_vertices: 12,
            orbit_limit: 3,
        };
        assert!(lc_orbit_labeled(&Graph::cycle(6), &tiny).unwrap_err().is_cap_exceeded());
        assert!(lc_orbit_labeled(&Graph::path(13), &cfg()).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn ring_closure_after_y_measurement() {
        let g = measure_pauli(&Graph::cycle(6), 0, Axis::Y, None).unwrap().graph_after;
        assert!(is_isomorphic(&g, &Graph::cycle(5)).unwrap());
        let closure = lc_iso_closure(&g, &cfg()).unwrap();
        assert_eq!(closure.classes.len(), 3);
        assert_eq!(closure.labeled_count, 132);
        assert!(closure.classes.iter().all(|c| !c.is_two_colorable()));
    }

    #[test]
    fn closure_count_matches_explicit_relabelling() {
        // Labelled closure under LC and transpositions, counted directly.
        let g = Graph::path(5);
        let mut seen = HashSet::from([to_graph6(&g)]);
        let mut queue = VecDeque::from([g.clone()]);
        while let Some(h) = queue.pop_front() {
            let mut next: Vec<Graph> = (0..5).map(|a| h.local_complement(a).unwrap()).collect();
            for i in 0..5 {
                for j in i + 1..5 {
                    let mut perm: Vec<usize> = (0..5).collect();
                    perm.swap(i, j);
                    next.push(h.relabel(&perm));
                }
            }
            for k in next {
                if seen.insert(to_graph6(&k)) {
                    queue.push_back(k);
                }
            }
        }
        assert_eq!(lc_iso_closure(&g, &cfg()).unwrap().labeled_count, seen.len() as u128);
    }

    #[test]
    fn fingerprint_constant_on_orbits() {
        for g in enumerate_connected(6).unwrap() {
            let fp = rank_list_fingerprint(&g).unwrap();
            for h in lc_orbit_labeled(&g, &cfg()).unwrap() {
                assert_eq!(rank_list_fingerprint(&h).unwrap(), fp);
            }
        }
    }

    #[test]
    fn relabelled_paths_are_separated() {
        // Two labellings of P4: same class up to isomorphism, different
        // labelled rank lists, hence not locally equivalent.
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3)]).unwrap();
        assert_ne!(rank_list(&a).unwrap(), rank_list(&b).unwrap());
        assert!(!lc_equivalent(&a, &b, &cfg()).unwrap());
        assert_eq!(rank_list_fingerprint(&a).unwrap(), rank_list_fingerprint(&b).unwrap());
    }

    #[test]
    fn petersen_spoke_swap() {
        let g = Graph::petersen();
        let perm: Vec<usize> = (0..10).map(|v| (v + 5) % 10).collect();
        let h = g.relabel(&perm);
        assert_ne!(g, h);
        assert_eq!(rank_list(&g).unwrap(), rank_list(&h).unwrap());
        assert_eq!(rank_list_fingerprint(&g).unwrap(), rank_list_fingerprint(&h).unwrap());
        assert!(!lc_equivalent(&g, &h, &cfg()).unwrap());
    }

    #[test]
    fn classify_small() {
        let p = PersistencyConfig::default();
        assert_eq!(classify(2, &p).unwrap().len(), 1);
        let six = classify(6, &p).unwrap();
        assert_eq!(six.len(), 19);
        assert_eq!(six.iter().map(|r| r.member_count).sum::<usize>(), 1 + 2 + 6 + 21 + 112);
        let c5 = six.iter().find(|r| r.representative == to_graph6(&canonical(&Graph::cycle(5)).unwrap())).unwrap();
        assert_eq!((c5.member_count, c5.lower, c5.upper), (3, 2, 3));
        assert!(!c5.two_colorable_member_exists);
        assert_eq!(c5.bounds_label(), "2<3");
        let first = parse_graph6(&six[0].representative).unwrap();
        assert_eq!(first, Graph::complete(2));
        assert!(classify(9, &p).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn class_members_share_invariants() {
        for r in classify(6, &PersistencyConfig::default()).unwrap() {
            let fp = rank_list_fingerprint(&parse_graph6(&r.representative).unwrap()).unwrap();
            for m in &r.members {
                let g = parse_graph6(m).unwrap();
                assert_eq!(lower_bound_max_rank(&g).unwrap(), r.lower);
                assert_eq!(rank_list_fingerprint(&g).unwrap(), fp);
            }
        }
    }
}
