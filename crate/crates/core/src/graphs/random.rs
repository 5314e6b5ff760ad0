use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;

/// Erdős–Rényi graph: each edge present independently with probability `p`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("edges are in range")
}

/// Connected graph: a uniformly random labelled tree plus independent extra
/// edges with probability `p`.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = random_tree(n, rng);
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) && rng.random_bool(p) {
                g = g.toggle_edge(a, b).expect("in range");
            }
        }
    }
    g
}

/// Uniformly random labelled tree via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    if n < 2 {
        return Graph::edgeless(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges).expect("edges are in range")
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}
