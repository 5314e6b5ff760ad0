use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{canonical_form, to_graph6, Graph};
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`enumerate_connected`].
pub const ENUMERATION_CAP: usize = 8;

/// One canonical representative per isomorphism class of connected graphs
/// on `n` vertices, sorted by canonical graph6 string.
///
/// Every connected graph has a vertex whose removal leaves it connected, so
/// the graphs on `n` vertices are found by attaching a new vertex to each
/// class on `n - 1` vertices in every nonempty way.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "vertex count for enumeration",
            value: n,
            cap: ENUMERATION_CAP,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::edgeless(1)];
    for m in 2..=n {
        let found: Vec<(String, Graph)> = level
            .par_iter()
            .flat_map_iter(|g| {
                let base = g.edges();
                (1u64..1 << (m - 1)).map(move |attach| {
                    let mut edges = base.clone();
                    edges.extend((0..m - 1).filter(|v| attach >> v & 1 == 1).map(|v| (v, m - 1)));
                    let h = Graph::from_edges(m, &edges).expect("valid extension");
                    let c = canonical_form(&h).expect("within cap").0;
                    (to_graph6(&c), c)
                })
            })
            .collect();
        let unique: BTreeMap<String, Graph> = found.into_iter().collect();
        level = unique.into_values().collect();
    }
    Ok(level)
}

/// Reference enumeration over all `2^(n choose 2)` labelled graphs; slow,
/// intended for cross-checking [`enumerate_connected`] at small `n`.
pub fn enumerate_connected_brute_force(n: usize) -> Result<Vec<Graph>> {
    if n > 6 {
        return Err(Error::CapExceeded {
            what: "vertex count for brute-force enumeration",
            value: n,
            cap: 6,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let unique: BTreeMap<String, Graph> = (0u64..1 << pairs.len())
        .into_par_iter()
        .filter_map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).expect("valid");
            g.is_connected().then(|| {
                let c = canonical_form(&g).expect("within cap").0;
                (to_graph6(&c), c)
            })
        })
        .collect();
    Ok(unique.into_values().collect())
}
