//! Canonical labelling by exhaustive search.
//!
//! The canonical form is the relabelling whose graph6 bit string (upper
//! triangle, column by column) is lexicographically smallest among all
//! labellings that list the vertices in nondecreasing degree order. The
//! degree restriction is itself isomorphism-invariant, so two graphs are
//! isomorphic iff their canonical forms coincide.

use super::Graph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`canonical_form`].
pub const CANON_CAP: usize = 10;

struct Search<'a> {
    nbr: &'a [u64],
    slot_degree: Vec<usize>,
    degree: Vec<usize>,
    order: Vec<usize>,
    used: u64,
    best: Vec<u64>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    // Column j of the relabelled matrix as an integer whose most significant
    // bit is row 0, so integer order is lexicographic order.
    fn column(&self, j: usize, v: usize) -> u64 {
        let mut c = 0u64;
        for &u in &self.order[..j] {
            c = (c << 1) | ((self.nbr[u] >> v) & 1);
        }
        c
    }

    fn run(&mut self, j: usize, improved: bool) {
        let n = self.nbr.len();
        if j == n {
            if improved {
                self.best_order.clone_from(&self.order);
            }
            return;
        }
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.degree[v] != self.slot_degree[j] {
                continue;
            }
            let col = self.column(j, v);
            let mut now_improved = improved;
            if col > self.best[j] {
                continue;
            }
            if col < self.best[j] {
                self.best[j] = col;
                for b in &mut self.best[j + 1..] {
                    *b = u64::MAX;
                }
                now_improved = true;
            }
            self.order.push(v);
            self.used |= 1 << v;
            self.run(j + 1, now_improved);
            self.used &= !(1 << v);
            self.order.pop();
        }
    }
}

/// Canonical relabelling of `g` and the permutation producing it:
/// `canonical == g.relabel(&perm)`, i.e. vertex `v` of `g` becomes `perm[v]`.
pub fn canonical_form(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    let n = g.n();
    if n > CANON_CAP {
        return Err(Error::CapExceeded {
            what: "vertex count for canonical labelling",
            value: n,
            cap: CANON_CAP,
        });
    }
    let nbr: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    let degree = g.degrees();
    let mut slot_degree = degree.clone();
    slot_degree.sort_unstable();
    let mut search = Search {
        nbr: &nbr,
        slot_degree,
        degree,
        order: Vec::with_capacity(n),
        used: 0,
        best: vec![u64::MAX; n],
        best_order: Vec::new(),
    };
    search.run(0, true);
    // best_order[new] = old
    let mut perm = vec![0; n];
    for (new, &old) in search.best_order.iter().enumerate() {
        perm[old] = new;
    }
    Ok((g.relabel(&perm), perm))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() || g.n_edges() != h.n_edges() {
        return Ok(false);
    }
    let (mut dg, mut dh) = (g.degrees(), h.degrees());
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g)?.0 == canonical_form(h)?.0)
}

/// Number of vertex permutations mapping `g` onto itself, by backtracking.
pub fn automorphism_count(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > CANON_CAP {
        return Err(Error::CapExceeded {
            what: "vertex count for automorphism counting",
            value: n,
            cap: CANON_CAP,
        });
    }
    let nbr: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    let degree = g.degrees();
    fn go(j: usize, nbr: &[u64], degree: &[usize], image: &mut Vec<usize>, used: u64) -> u64 {
        let n = nbr.len();
        if j == n {
            return 1;
        }
        let mut total = 0;
        for w in 0..n {
            if used >> w & 1 == 1 || degree[w] != degree[j] {
                continue;
            }
            let consistent = (0..j).all(|i| (nbr[i] >> j & 1) == (nbr[image[i]] >> w & 1));
            if consistent {
                image.push(w);
                total += go(j + 1, nbr, degree, image, used | 1 << w);
                image.pop();
            }
        }
        total
    }
    Ok(go(0, &nbr, &degree, &mut Vec::with_capacity(n), 0))
}
