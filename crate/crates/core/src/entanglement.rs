//! Bipartite Schmidt ranks and bounds on the Schmidt measure of graph states.
//!
//! All ranks are `log2` of the actual Schmidt rank, i.e. `rank_f2(Γ_AB)`.
//! The lower bound is the largest rank over all bipartitions; the upper bound
//! is the Pauli persistency, the fewest single-qubit Pauli measurements that
//! leave an edgeless graph.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{rank_f2, rank_of_rows};
use crate::graphs::{min_vertex_cover, to_graph6, Graph, VertexSet};

/// Largest graph for exhaustive scans over all `2^(n-1) - 1` bipartitions.
pub const BIPARTITION_CAP: usize = 20;

/// A split of the vertices into a nonempty proper subset `A` and its complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    a: VertexSet,
}

impl Bipartition {
    pub fn new(a: VertexSet) -> Result<Self> {
        if a.is_empty() || a.len() == a.universe() {
            return Err(Error::InvalidBipartition(format!(
                "side {:?} must be nonempty and proper in {} vertices",
                a.to_vec(),
                a.universe()
            )));
        }
        Ok(Bipartition { a })
    }

    pub fn from_indices(n: usize, a: impl IntoIterator<Item = usize>) -> Result<Self> {
        Bipartition::new(VertexSet::from_indices(n, a)?)
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    pub fn b(&self) -> VertexSet {
        self.a.complement()
    }

    pub fn n(&self) -> usize {
        self.a.universe()
    }

    /// Size of the smaller side.
    pub fn min_side(&self) -> usize {
        self.a.len().min(self.n() - self.a.len())
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::SizeMismatch(g.n(), self.n()));
        }
        Ok(())
    }
}

/// `rank_f2` of `Γ_AB` for vertex masks; requires `n <= 64`.
fn cross_rank_masks(masks: &[u64], a_mask: u64, b_mask: u64) -> usize {
    let mut rows: Vec<u64> = (0..masks.len())
        .filter(|&v| a_mask >> v & 1 == 1)
        .map(|v| masks[v] & b_mask)
        .collect();
    rank_of_rows(&mut rows)
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbor_mask(v)).collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Schmidt rank of `|G⟩` across the bipartition, `rank_f2(Γ_AB)`.
pub fn schmidt_rank(g: &Graph, part: &Bipartition) -> Result<usize> {
    part.check(g)?;
    if g.n() <= 64 {
        let a = part.a.to_mask();
        return Ok(cross_rank_masks(&neighbor_masks(g), a, full_mask(g.n()) & !a));
    }
    let cross = g.adjacency().submatrix(&part.a.to_vec(), &part.b().to_vec());
    Ok(rank_f2(&cross))
}

fn check_bipartition_cap(n: usize) -> Result<()> {
    if n > BIPARTITION_CAP {
        return Err(Error::CapExceeded {
            what: "vertices for bipartition scan",
            value: n,
            cap: BIPARTITION_CAP,
        });
    }
    Ok(())
}

/// Rank of every unordered bipartition, keyed by the side that excludes
/// vertex `n - 1`, in increasing mask order.
pub fn rank_list(g: &Graph) -> Result<Vec<(VertexSet, usize)>> {
    let n = g.n();
    check_bipartition_cap(n)?;
    if n < 2 {
        return Ok(Vec::new());
    }
    let masks = neighbor_masks(g);
    let all = full_mask(n);
    Ok((1u64..1 << (n - 1))
        .map(|a| (VertexSet::from_mask(n, a), cross_rank_masks(&masks, a, all & !a)))
        .collect())
}

fn max_rank_masks(masks: &[u64]) -> usize {
    // Isolated vertices never contribute, so scan splits of the active ones.
    let active: Vec<usize> = (0..masks.len()).filter(|&v| masks[v] != 0).collect();
    if active.len() < 2 {
        return 0;
    }
    let k = active.len();
    let expand = |sub: u64| {
        active
            .iter()
            .enumerate()
            .filter(|&(i, _)| sub >> i & 1 == 1)
            .fold(0u64, |acc, (_, &v)| acc | 1 << v)
    };
    let active_mask = expand(full_mask(k));
    let scan = |sub: u64| {
        let a = expand(sub);
        cross_rank_masks(masks, a, active_mask & !a)
    };
    let cap = k / 2;
    let subsets = 1u64..1 << (k - 1);
    if k >= 14 {
        subsets.into_par_iter().map(scan).max().unwrap_or(0)
    } else {
        let mut best = 0;
        for sub in subsets {
            best = best.max(scan(sub));
            if best == cap {
                break;
            }
        }
        best
    }
}

/// Largest Schmidt rank over all bipartitions: a lower bound on the Schmidt measure.
pub fn lower_bound_max_rank(g: &Graph) -> Result<usize> {
    check_bipartition_cap(g.n())?;
    Ok(max_rank_masks(&neighbor_masks(g)))
}

/// Histogram of Schmidt ranks over the unordered bipartitions whose smaller side has `k` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RankIndex {
    pub k: usize,
    /// `counts[r]` bipartitions have rank `r`, for `r = 0..=k`.
    pub counts: Vec<usize>,
}

impl RankIndex {
    /// Counts for ranks `k, k-1, …, 1`, the order used in tables.
    pub fn tuple(&self) -> Vec<usize> {
        (1..=self.k).rev().map(|r| self.counts[r]).collect()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

impl fmt::Display for RankIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tuple().iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Rank index for smaller-side size `k`. When `2k = n`, each split is counted once.
pub fn rank_index(g: &Graph, k: usize) -> Result<RankIndex> {
    let n = g.n();
    check_bipartition_cap(n)?;
    if k == 0 || 2 * k > n {
        return Err(Error::InvalidArgument(format!(
            "rank index size {k} must be between 1 and {} for {n} vertices",
            n / 2
        )));
    }
    let masks = neighbor_masks(g);
    let all = full_mask(n);
    let mut counts = vec![0; k + 1];
    for a in 1u64..1 << n {
        if a.count_ones() as usize != k || (2 * k == n && a & 1 == 0) {
            continue;
        }
        counts[cross_rank_masks(&masks, a, all & !a)] += 1;
    }
    Ok(RankIndex { k, counts })
}

/// Limits for [`pauli_persistency`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PersistencyConfig {
    /// Largest graph the exact search will run on.
    pub max_vertices: usize,
    /// Deepest sequence length to try before giving up.
    pub depth_limit: Option<usize>,
}

impl Default for PersistencyConfig {
    fn default() -> Self {
        PersistencyConfig {
            max_vertices: 7,
            depth_limit: None,
        }
    }
}

/// Iterative-deepening search over measurement sequences on neighbour masks.
/// Measured vertices stay in the universe as isolated vertices.
struct Searcher {
    /// Largest depth at which each graph is known to be unsolvable.
    failed: HashMap<Vec<u64>, usize>,
}

fn lc_masks(masks: &mut [u64], a: usize) {
    let nbhd = masks[a];
    let mut rest = nbhd;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        masks[b] ^= nbhd & !(1 << b);
    }
}

fn isolate_masks(masks: &mut [u64], a: usize) {
    let mut rest = masks[a];
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        masks[b] &= !(1 << a);
    }
    masks[a] = 0;
}

impl Searcher {
    fn solvable(&mut self, masks: &[u64], depth: usize) -> bool {
        if masks.iter().all(|&m| m == 0) {
            return true;
        }
        if depth == 0 {
            return false;
        }
        if self.failed.get(masks).is_some_and(|&d| d >= depth) {
            return false;
        }
        if max_rank_masks(masks) > depth {
            self.failed.insert(masks.to_vec(), depth);
            return false;
        }
        let mut next = masks.to_vec();
        for v in 0..masks.len() {
            if masks[v] == 0 {
                continue;
            }
            let b0 = masks[v].trailing_zeros() as usize;
            for basis in 0..3 {
                next.copy_from_slice(masks);
                match basis {
                    0 => isolate_masks(&mut next, v),
                    1 => {
                        lc_masks(&mut next, v);
                        isolate_masks(&mut next, v);
                    }
                    _ => {
                        lc_masks(&mut next, b0);
                        lc_masks(&mut next, v);
                        isolate_masks(&mut next, v);
                        lc_masks(&mut next, b0);
                    }
                }
                if self.solvable(&next, depth - 1) {
                    return true;
                }
            }
        }
        let entry = self.failed.entry(masks.to_vec()).or_insert(0);
        *entry = (*entry).max(depth);
        false
    }
}

fn persistency_between(g: &Graph, lower: usize, cover: usize, cfg: &PersistencyConfig) -> Result<usize> {
    if lower >= cover {
        return Ok(cover);
    }
    if g.n() > cfg.max_vertices.min(64) {
        return Err(Error::CapExceeded {
            what: "vertices for persistency search",
            value: g.n(),
            cap: cfg.max_vertices.min(64),
        });
    }
    let top = cover - 1;
    let limit = cfg.depth_limit.map_or(top, |d| d.min(top));
    let masks = neighbor_masks(g);
    let mut searcher = Searcher { failed: HashMap::new() };
    for depth in lower..=limit {
        if searcher.solvable(&masks, depth) {
            return Ok(depth);
        }
    }
    if limit < top {
        return Err(Error::CapExceeded {
            what: "persistency search depth",
            value: top,
            cap: limit,
        });
    }
    Ok(cover)
}

/// Fewest Pauli measurements (graph rules, smallest neighbour as `b0`) that
/// reach an edgeless graph. The search runs from the max-rank lower bound up
/// to one below the minimum vertex cover, which is always achievable with σ_z.
pub fn pauli_persistency(g: &Graph, cfg: &PersistencyConfig) -> Result<usize> {
    if g.n() > cfg.max_vertices {
        return Err(Error::CapExceeded {
            what: "vertices for persistency search",
            value: g.n(),
            cap: cfg.max_vertices,
        });
    }
    let lower = lower_bound_max_rank(g)?;
    let cover = min_vertex_cover(g)?.len();
    persistency_between(g, lower, cover, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub lower: usize,
    pub upper: usize,
    pub cover_size: usize,
    /// When set, the Schmidt measure equals `lower == upper`.
    pub tight: bool,
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tight {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "{}<{}", self.lower, self.upper)
        }
    }
}

/// Lower and upper bounds on the Schmidt measure. The persistency search is
/// skipped (and the vertex cap ignored) when the lower bound already meets
/// the vertex cover size.
pub fn bounds(g: &Graph, cfg: &PersistencyConfig) -> Result<BoundsReport> {
    let lower = lower_bound_max_rank(g)?;
    let cover_size = min_vertex_cover(g)?.len();
    let upper = persistency_between(g, lower, cover_size, cfg)?;
    Ok(BoundsReport {
        lower,
        upper,
        cover_size,
        tight: lower == upper,
    })
}

/// Sufficient condition for `schmidt_rank = min(|A|, |B|)`: the graph of
/// edges between the two sides is a forest in which every vertex of the
/// smaller side has an edge and each tree has at most one leaf on that side.
/// For equal sides either side may play the smaller one.
pub fn max_rank_criterion(g: &Graph, part: &Bipartition) -> Result<bool> {
    part.check(g)?;
    let a = part.a().clone();
    let b = part.b();
    let cross = Graph::from_edges(g.n(), &g.edges_between(&a, &b))?;
    if cross.n_edges() + cross.components().len() != g.n() {
        return Ok(false);
    }
    let holds_for = |side: &VertexSet| {
        side.iter().all(|v| cross.degree(v) > 0)
            && cross.components().iter().all(|comp| {
                comp.iter()
                    .filter(|&&v| side.contains(v) && cross.degree(v) == 1)
                    .count()
                    <= 1
            })
    };
    Ok(match a.len().cmp(&b.len()) {
        std::cmp::Ordering::Less => holds_for(&a),
        std::cmp::Ordering::Greater => holds_for(&b),
        std::cmp::Ordering::Equal => holds_for(&a) || holds_for(&b),
    })
}

/// Bounds for 2-colourable graphs: `⌈rank_f2(Γ)/2⌉` from the colouring
/// bipartition, and the total size of the smaller colour class of each
/// component. Reports an odd cycle otherwise.
pub fn two_colorable_bounds(g: &Graph) -> Result<(usize, usize)> {
    let coloring = g.two_coloring_or_odd_cycle().map_err(Error::NotTwoColorable)?;
    let lower = rank_f2(g.adjacency()).div_ceil(2);
    let upper = g
        .components()
        .iter()
        .map(|comp| {
            let ones = comp.iter().filter(|&&v| coloring[v]).count();
            ones.min(comp.len() - ones)
        })
        .sum();
    Ok((lower, upper))
}

/// One line of the per-graph summary CSV.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub graph6: String,
    pub lower: usize,
    pub upper: usize,
    pub cover_size: usize,
    pub tight: bool,
    #[serde(rename = "RI_2")]
    pub ri_2: String,
    #[serde(rename = "RI_3")]
    pub ri_3: String,
    pub two_colorable: bool,
}

fn rank_index_cell(g: &Graph, k: usize) -> Result<String> {
    if 2 * k > g.n() {
        return Ok("-".into());
    }
    Ok(rank_index(g, k)?.to_string())
}

pub fn bounds_row(g: &Graph, cfg: &PersistencyConfig) -> Result<BoundsRow> {
    let report = bounds(g, cfg)?;
    Ok(BoundsRow {
        graph6: to_graph6(g),
        lower: report.lower,
        upper: report.upper,
        cover_size: report.cover_size,
        tight: report.tight,
        ri_2: rank_index_cell(g, 2)?,
        ri_3: rank_index_cell(g, 3)?,
        two_colorable: g.is_two_colorable(),
    })
}
