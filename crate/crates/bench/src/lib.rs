//! Shared inputs for the benchmarks.

use graphstate::graphs::{parse_graph6, random_connected_graph};
use graphstate::{BitMatrix, Graph};

/// Deterministic pseudo-random square matrix over GF(2).
pub fn dense_matrix(n: usize, seed: u64) -> BitMatrix {
    let mut state = seed | 1;
    let mut m = BitMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if state & 1 == 1 {
                m.set(r, c, true);
            }
        }
    }
    m
}

/// Named graphs spanning the sizes the exact routines accept.
pub fn fixture_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("cycle6", Graph::cycle(6)),
        ("grid2x3", Graph::grid(2, 3)),
        ("star7", Graph::star(7)),
        ("complete7", Graph::complete(7)),
        ("petersen", Graph::petersen()),
        ("g6_Dhc", parse_graph6("Dhc").expect("valid graph6")),
    ]
}

/// Connected random graph with a fixed seed.
pub fn random_fixture(n: usize, p: f64, seed: u64) -> Graph {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    random_connected_graph(n, p, &mut rng)
}
