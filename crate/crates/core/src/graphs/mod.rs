//! Simple labeled graphs.
//!
//! Vertices are `0..n`. Every edit returns a new graph; [`Graph::delete_vertex`]
//! compacts labels, keeping the relative order of the surviving vertices.

mod canon;
mod cover;
mod enumerate;
mod graph6;
mod random;

pub use canon::{automorphism_count, canonical_form, is_isomorphic, CANON_CAP};
pub use cover::min_vertex_cover;
pub use enumerate::{enumerate_connected, enumerate_connected_brute_force, ENUMERATION_CAP};
pub use graph6::{parse_graph6, parse_graph6_lines, to_graph6};
pub use random::{random_connected_graph, random_graph, random_permutation, random_tree};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// An undirected edge, stored with the smaller endpoint first.
pub type Edge = (usize, usize);

fn normalize(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A subset of the vertices of a graph on `n` vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(BitVector);

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet(BitVector::zeros(n))
    }

    pub fn full(n: usize) -> Self {
        VertexSet(BitVector::zeros(n).not())
    }

    pub fn from_indices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = VertexSet::empty(n);
        for v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            s.0.set(v, true);
        }
        Ok(s)
    }

    /// Members are the set bits of `mask`; requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        VertexSet(BitVector::from_mask(n, mask))
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.universe() <= 64);
        self.0.to_mask()
    }

    /// Size of the vertex set this is a subset of.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_zero()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe() && self.0.get(v)
    }

    pub fn insert(&mut self, v: usize) {
        self.0.set(v, true);
    }

    pub fn remove(&mut self, v: usize) {
        self.0.set(v, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter_ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet(self.0.not())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.or(&other.0))
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.and(&other.0))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.and_not(&other.0))
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.xor(&other.0))
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.0.is_subset_of(&other.0)
    }

    pub fn as_bits(&self) -> &BitVector {
        &self.0
    }
}

impl From<BitVector> for VertexSet {
    fn from(bits: BitVector) -> Self {
        VertexSet(bits)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple undirected graph: symmetric adjacency matrix with zero diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: BitMatrix,
}

/// Adjacency-list form used for JSON export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn edgeless(n: usize) -> Self {
        Graph {
            n,
            adj: BitMatrix::zeros(n, n),
        }
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self> {
        let mut g = Graph::edgeless(n);
        for &(a, b) in edges {
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            if a == b {
                return Err(Error::Loop(a));
            }
            g.set_edge(a, b, true);
        }
        Ok(g)
    }

    /// Adopts a matrix as adjacency; it must be square, symmetric, zero-diagonal.
    pub fn from_adjacency(adj: BitMatrix) -> Result<Self> {
        if adj.n_rows() != adj.n_cols() {
            return Err(Error::SizeMismatch(adj.n_rows(), adj.n_cols()));
        }
        if let Some(v) = (0..adj.n_rows()).find(|&v| adj.get(v, v)) {
            return Err(Error::Loop(v));
        }
        if !adj.is_symmetric() {
            return Err(Error::InvalidArgument("adjacency matrix is not symmetric".into()));
        }
        Ok(Graph { n: adj.n_rows(), adj })
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let edges: Vec<Edge> = (0..n).map(|i| normalize(i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<Edge> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Graph::from_edges(n, &edges).expect("valid complete graph")
    }

    /// Star on `n` vertices with centre 0.
    pub fn star(n: usize) -> Self {
        let edges: Vec<Edge> = (1..n).map(|b| (0, b)).collect();
        Graph::from_edges(n, &edges).expect("valid star")
    }

    /// `rows x cols` grid; vertex `(r, c)` has label `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::from_edges(rows * cols, &edges).expect("valid grid")
    }

    /// Petersen graph: outer cycle 0..5, inner pentagram 5..10, spokes `i -- i+5`.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push(normalize(i, (i + 1) % 5));
            edges.push(normalize(5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::from_edges(10, &edges).expect("valid Petersen graph")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    fn set_edge(&mut self, a: usize, b: usize, present: bool) {
        self.adj.set(a, b, present);
        self.adj.set(b, a, present);
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj.get(a, b)
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj.row_words(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|a| self.degree(a)).collect()
    }

    pub fn n_edges(&self) -> usize {
        (0..self.n).map(|a| self.degree(a)).sum::<usize>() / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.is_zero()
    }

    pub fn is_isolated(&self, a: usize) -> bool {
        self.adj.row_words(a).iter().all(|&w| w == 0)
    }

    pub fn edges(&self) -> Vec<Edge> {
        (0..self.n)
            .flat_map(|a| self.adj.row(a).iter_ones().filter(move |&b| b > a).map(move |b| (a, b)).collect::<Vec<_>>())
            .collect()
    }

    /// Neighbourhood `N_a` as a bitmask; requires `n <= 64`.
    #[inline]
    pub fn neighbor_mask(&self, a: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.adj.row_words(a).first().copied().unwrap_or(0)
    }

    pub fn neighborhood(&self, a: usize) -> Result<VertexSet> {
        self.check_vertex(a)?;
        Ok(VertexSet(self.adj.row(a)))
    }

    pub fn toggle_edge(&self, a: usize, b: usize) -> Result<Graph> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::Loop(a));
        }
        let mut g = self.clone();
        g.adj.toggle(a, b);
        g.adj.toggle(b, a);
        Ok(g)
    }

    /// Removes `a`; vertices above `a` shift down by one.
    pub fn delete_vertex(&self, a: usize) -> Result<Graph> {
        self.check_vertex(a)?;
        let keep: Vec<usize> = (0..self.n).filter(|&v| v != a).collect();
        Ok(self.induced_on(&keep))
    }

    /// Removes every vertex in `set`, compacting labels.
    pub fn delete_vertices(&self, set: &VertexSet) -> Graph {
        self.induced_subgraph(&set.complement())
    }

    /// Subgraph induced on `set`, relabelled `0..|set|` in increasing order.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Graph {
        let keep = set.to_vec();
        self.induced_on(&keep)
    }

    fn induced_on(&self, keep: &[usize]) -> Graph {
        Graph {
            n: keep.len(),
            adj: self.adj.submatrix(keep, keep),
        }
    }

    /// Edge set becomes `E Δ F`.
    pub fn sym_diff_edges(&self, f: &[Edge]) -> Result<Graph> {
        let mut g = self.clone();
        for &(a, b) in f {
            self.check_vertex(a)?;
            self.check_vertex(b)?;
            if a == b {
                return Err(Error::Loop(a));
            }
            g.adj.toggle(a, b);
            g.adj.toggle(b, a);
        }
        Ok(g)
    }

    /// `E(A, B)`: edges `{a, b}` of the graph with `a ∈ A`, `b ∈ B`, `a ≠ b`.
    /// Overlapping sets are allowed; each edge is reported once, sorted.
    pub fn edges_between(&self, a_set: &VertexSet, b_set: &VertexSet) -> Vec<Edge> {
        let mut out = Vec::new();
        for a in a_set.iter() {
            for b in self.adj.row(a).and(b_set.as_bits()).iter_ones() {
                out.push(normalize(a, b));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Local complementation at `a`: complements the subgraph induced on `N_a`.
    pub fn local_complement(&self, a: usize) -> Result<Graph> {
        self.check_vertex(a)?;
        let mut g = self.clone();
        g.local_complement_in_place(a);
        Ok(g)
    }

    pub(crate) fn local_complement_in_place(&mut self, a: usize) {
        let nbhd = self.adj.row(a);
        for b in nbhd.iter_ones() {
            let mut flip = nbhd.clone();
            flip.set(b, false);
            self.adj.xor_row_with(b, &flip);
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::edgeless(self.n);
        for (a, b) in self.edges() {
            g.set_edge(perm[a], perm[b], true);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.components().len() == 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in self.adj.row(v).iter_ones() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A proper 2-coloring (`false`/`true` per vertex) or an odd cycle.
    ///
    /// Each component's smallest vertex gets color `false`.
    pub fn two_coloring_or_odd_cycle(&self) -> std::result::Result<Vec<bool>, Vec<usize>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].expect("queued vertices are colored");
                for w in self.adj.row(v).iter_ones() {
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            parent[w] = v;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => return Err(odd_cycle(&parent, v, w)),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(|c| c.expect("all colored")).collect())
    }

    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        self.two_coloring_or_odd_cycle().ok()
    }

    pub fn is_two_colorable(&self) -> bool {
        self.two_coloring_or_odd_cycle().is_ok()
    }

    pub fn to_adjacency_list(&self) -> AdjacencyList {
        AdjacencyList {
            n: self.n,
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            adjacency: (0..self.n).map(|a| self.adj.row(a).iter_ones().collect()).collect(),
        }
    }

    /// Rebuilds a graph from its `edges` field; `adjacency` must agree if present.
    pub fn from_adjacency_list(list: &AdjacencyList) -> Result<Graph> {
        let edges: Vec<Edge> = list.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(list.n, &edges)?;
        if !list.adjacency.is_empty() && g.to_adjacency_list().adjacency != list.adjacency {
            return Err(Error::InvalidArgument("edges and adjacency lists disagree".into()));
        }
        Ok(g)
    }

    /// Graphviz rendering with 0-based labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{}\" {{\n", name.replace('"', "'"));
        for v in 0..self.n {
            s.push_str(&format!("  {v};\n"));
        }
        for (a, b) in self.edges() {
            s.push_str(&format!("  {a} -- {b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// All vertex pairs `{c, d}` with `c ∈ A`, `d ∈ B`, `c ≠ d`, whether or not
/// they are edges. Toggling these pairs is how the measurement rules rewrite
/// a graph (`G Δ E(N_a, N_a)` complements the neighbourhood).
pub fn pairs_between(a_set: &VertexSet, b_set: &VertexSet) -> Vec<Edge> {
    let mut out = Vec::new();
    for a in a_set.iter() {
        for b in b_set.iter() {
            if a != b {
                out.push(normalize(a, b));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn odd_cycle(parent: &[usize], v: usize, w: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pv = path_to_root(v);
    let pw = path_to_root(w);
    // Strip the common ancestry, keeping the lowest common ancestor once.
    let (mut i, mut j) = (pv.len(), pw.len());
    while i > 1 && j > 1 && pv[i - 2] == pw[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pv[..i].to_vec();
    cycle.extend(pw[..j - 1].iter().rev());
    cycle
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
