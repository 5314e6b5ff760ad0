use super::{Graph, VertexSet};
use crate::error::{Error, Result};

struct Cover<'a> {
    nbr: &'a [u64],
    best_size: usize,
    best: u64,
}

impl Cover<'_> {
    fn degree_in(&self, v: usize, alive: u64) -> u32 {
        (self.nbr[v] & alive).count_ones()
    }

    /// `alive`: vertices not yet decided. `chosen`: cover vertices so far.
    fn search(&mut self, mut alive: u64, mut chosen: u64) {
        // Degree-one reduction: some minimum cover contains the neighbour.
        loop {
            let mut changed = false;
            let mut rest = alive;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if alive >> v & 1 == 0 {
                    continue;
                }
                let nb = self.nbr[v] & alive;
                match nb.count_ones() {
                    0 => alive &= !(1 << v),
                    1 => {
                        chosen |= nb;
                        alive &= !(nb | 1 << v);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        let size = chosen.count_ones() as usize;
        if size >= self.best_size {
            return;
        }
        let (mut max_v, mut max_d, mut twice_edges) = (usize::MAX, 0, 0);
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = self.degree_in(v, alive);
            twice_edges += d;
            if d > max_d {
                max_d = d;
                max_v = v;
            }
        }
        if max_d == 0 {
            self.best_size = size;
            self.best = chosen;
            return;
        }
        // Each cover vertex handles at most max_d of the remaining edges.
        let edges = twice_edges / 2;
        if size + edges.div_ceil(max_d) as usize >= self.best_size {
            return;
        }
        let v = max_v;
        self.search(alive & !(1 << v), chosen | 1 << v);
        let nb = self.nbr[v] & alive;
        self.search(alive & !(nb | 1 << v), chosen | nb);
    }
}

fn greedy_cover(nbr: &[u64]) -> u64 {
    let n = nbr.len();
    let mut alive = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut chosen = 0;
    loop {
        let best = (0..n)
            .filter(|&v| alive >> v & 1 == 1)
            .max_by_key(|&v| ((nbr[v] & alive).count_ones(), std::cmp::Reverse(v)));
        match best {
            Some(v) if (nbr[v] & alive) != 0 => {
                chosen |= 1 << v;
                alive &= !(1 << v);
            }
            _ => return chosen,
        }
    }
}

/// An exact minimum vertex cover (branch and bound on the highest-degree
/// vertex, seeded with a greedy cover). Graphs up to 64 vertices.
pub fn min_vertex_cover(g: &Graph) -> Result<VertexSet> {
    let n = g.n();
    if n > 64 {
        return Err(Error::CapExceeded {
            what: "vertex count for vertex cover",
            value: n,
            cap: 64,
        });
    }
    let nbr: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    let greedy = greedy_cover(&nbr);
    let mut search = Cover {
        nbr: &nbr,
        best_size: greedy.count_ones() as usize,
        best: greedy,
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.search(all, 0);
    Ok(VertexSet::from_mask(n, search.best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn covers(g: &Graph, mask: u64) -> bool {
        g.edges().iter().all(|&(a, b)| (mask >> a | mask >> b) & 1 == 1)
    }

    fn brute_force(g: &Graph) -> usize {
        (0u64..1 << g.n())
            .filter(|&m| covers(g, m))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(min_vertex_cover(&Graph::star(6)).unwrap().to_vec(), vec![0]);
        assert_eq!(min_vertex_cover(&Graph::cycle(6)).unwrap().len(), brute_force(&Graph::cycle(6)));
        assert_eq!(brute_force(&Graph::cycle(6)), 3);
        assert_eq!(min_vertex_cover(&Graph::complete(4)).unwrap().len(), 3);
        assert_eq!(brute_force(&Graph::complete(4)), 3);
        assert!(min_vertex_cover(&Graph::edgeless(5)).unwrap().is_empty());
        assert_eq!(min_vertex_cover(&Graph::petersen()).unwrap().len(), 6);
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.random_range(1..=12);
            let p = rng.random_range(0.1..0.8);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(p) {
                        edges.push((a, b));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let cover = min_vertex_cover(&g).unwrap();
            assert!(covers(&g, cover.to_mask()), "{g:?}");
            assert_eq!(cover.len(), brute_force(&g), "{g:?}");
        }
    }
}
