//! Dense state-vector reference implementation.
//!
//! Every graph rule in this crate has a numerical counterpart here: graph
//! states are built from `|+⟩^n` by controlled-Z gates, measurements are
//! projectors, and entanglement is read off reduced density operators. The
//! amplitude of basis state `x` stores qubit `v` in bit `n - 1 - v`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::rank_f2;
use crate::graphs::{random_connected_graph, random_graph, Graph, VertexSet};
use crate::measurement::{apply_sequence, measure_pauli, Sign, Step};
use crate::stabilizer::{generator, lc_unitary, Axis, LocalClifford, Mat2, PauliOp};

/// Largest number of qubits the oracle will simulate.
pub const ORACLE_CAP: usize = 12;
/// Largest graph accepted by [`verify_partial_trace_form`].
pub const PARTIAL_TRACE_CAP: usize = 10;
/// Tolerance for comparing states.
pub const STATE_TOL: f64 = 1e-9;
/// Eigenvalues of a reduced density operator above this count towards its rank.
pub const RANK_THRESHOLD: f64 = 1e-8;
/// Outcome probabilities below this are treated as zero.
pub const ZERO_PROBABILITY: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_cap(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { what, value: n, cap });
    }
    Ok(())
}

/// A pure state of `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero_state(n: usize) -> Result<Self> {
        check_cap(n, ORACLE_CAP, "qubits in state vector")?;
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        Ok(StateVector { n, amps })
    }

    /// `|+⟩^⊗n`.
    pub fn plus_state(n: usize) -> Result<Self> {
        check_cap(n, ORACLE_CAP, "qubits in state vector")?;
        let a = Complex64::new((0.5f64).powf(n as f64 / 2.0), 0.0);
        Ok(StateVector { n, amps: vec![a; 1 << n] })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_cap(n, ORACLE_CAP, "qubits in state vector")?;
        if amps.len() != 1 << n {
            return Err(Error::SizeMismatch(1 << n, amps.len()));
        }
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    fn mask(&self, v: usize) -> usize {
        1 << (self.n - 1 - v)
    }

    fn check_site(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Controlled-Z between qubits `a` and `b`.
    pub fn apply_cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_site(a)?;
        self.check_site(b)?;
        if a == b {
            return Err(Error::Loop(a));
        }
        let both = self.mask(a) | self.mask(b);
        for (x, amp) in self.amps.iter_mut().enumerate() {
            if x & both == both {
                *amp = -*amp;
            }
        }
        Ok(())
    }

    /// Applies a 2x2 matrix to qubit `v` in place.
    pub fn apply_single(&mut self, v: usize, m: &Mat2) -> Result<()> {
        self.check_site(v)?;
        let bit = self.mask(v);
        for x in 0..self.amps.len() {
            if x & bit == 0 {
                let (a0, a1) = (self.amps[x], self.amps[x | bit]);
                self.amps[x] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[x | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(())
    }

    /// `u|ψ⟩`, with each site's Clifford taken up to global phase.
    pub fn apply_local_clifford(&self, u: &LocalClifford) -> Result<StateVector> {
        if u.n() != self.n {
            return Err(Error::SizeMismatch(self.n, u.n()));
        }
        let mut out = self.clone();
        for (v, op) in u.ops().iter().enumerate() {
            if !op.is_identity() {
                out.apply_single(v, &op.matrix())?;
            }
        }
        Ok(out)
    }

    /// `p|ψ⟩`, including the phase of `p`.
    pub fn apply_pauli(&self, p: &PauliOp) -> Result<StateVector> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch(self.n, p.n()));
        }
        let mut out = self.clone();
        for v in 0..self.n {
            if let Some(axis) = p.axis_at(v) {
                out.apply_single(v, &axis.matrix())?;
            }
        }
        let phase = Complex64::new(0.0, 1.0).powi(p.phase() as i32);
        out.amps.iter_mut().for_each(|c| *c *= phase);
        Ok(out)
    }

    fn project(&self, a: usize, basis: Axis, sign: Sign) -> Result<StateVector> {
        self.check_site(a)?;
        let s = if sign.is_plus() { 0.5 } else { -0.5 };
        let p = basis.matrix();
        let half = Complex64::new(0.5, 0.0);
        let proj: Mat2 = [
            [half + p[0][0] * s, p[0][1] * s],
            [p[1][0] * s, half + p[1][1] * s],
        ];
        let mut out = self.clone();
        out.apply_single(a, &proj)?;
        Ok(out)
    }

    /// Probability of outcome `sign` when measuring `σ_basis` on qubit `a`.
    pub fn outcome_probability(&self, a: usize, basis: Axis, sign: Sign) -> Result<f64> {
        Ok(self.project(a, basis, sign)?.norm().powi(2))
    }

    /// Projects qubit `a` onto the `sign` eigenspace of `σ_basis`, returning
    /// the outcome probability and the normalised post-measurement state.
    pub fn apply_projector(&self, a: usize, basis: Axis, sign: Sign) -> Result<(f64, StateVector)> {
        let mut out = self.project(a, basis, sign)?;
        let norm = out.norm();
        let probability = norm * norm;
        if probability < ZERO_PROBABILITY {
            return Err(Error::ZeroProbability);
        }
        out.amps.iter_mut().for_each(|c| *c /= norm);
        Ok((probability, out))
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨self|other⟩|` for normalised states.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.overlap(other)?.norm())
    }

    pub fn equal_up_to_global_phase(&self, other: &StateVector, tol: f64) -> Result<bool> {
        Ok(self.fidelity(other)? >= 1.0 - tol)
    }

    /// Tensor product with a single-qubit state placed at position `v`, so
    /// that the result has `n + 1` qubits and former qubits `v..` move up.
    pub fn insert_qubit(&self, v: usize, single: [Complex64; 2]) -> Result<StateVector> {
        if v > self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n + 1 });
        }
        check_cap(self.n + 1, ORACLE_CAP, "qubits in state vector")?;
        let n = self.n + 1;
        let low_bits = n - 1 - v;
        let low_mask = (1usize << low_bits) - 1;
        let mut amps = vec![ZERO; 1 << n];
        for (x, amp) in self.amps.iter().enumerate() {
            let high = (x >> low_bits) << (low_bits + 1);
            let low = x & low_mask;
            amps[high | low] = amp * single[0];
            amps[high | (1 << low_bits) | low] = amp * single[1];
        }
        Ok(StateVector { n, amps })
    }

    /// Amplitudes arranged as a `2^|rows| x 2^(n-|rows|)` matrix, with both
    /// index sets ordered by vertex label.
    fn split(&self, rows: &VertexSet) -> Result<DMatrix<Complex64>> {
        if rows.universe() != self.n {
            return Err(Error::SizeMismatch(self.n, rows.universe()));
        }
        let row_sites = rows.to_vec();
        let col_sites = rows.complement().to_vec();
        let index = |x: usize, sites: &[usize]| {
            sites
                .iter()
                .fold(0usize, |acc, &v| acc << 1 | usize::from(x & self.mask(v) != 0))
        };
        let mut m = DMatrix::from_element(1 << row_sites.len(), 1 << col_sites.len(), ZERO);
        for (x, amp) in self.amps.iter().enumerate() {
            m[(index(x, &row_sites), index(x, &col_sites))] = *amp;
        }
        Ok(m)
    }

    /// Reduced density operator on `keep`, tracing out the other qubits.
    /// Rows and columns are indexed with the smallest kept vertex most significant.
    pub fn reduced_density(&self, keep: &VertexSet) -> Result<DMatrix<Complex64>> {
        let m = self.split(keep)?;
        Ok(&m * m.adjoint())
    }

    /// Eigenvalues of the reduced density operator of the smaller side of `{A, V∖A}`.
    pub fn schmidt_spectrum(&self, a: &VertexSet) -> Result<Vec<f64>> {
        let side = if a.len() <= self.n - a.len() { a.clone() } else { a.complement() };
        let rho = self.reduced_density(&side)?;
        let mut eig: Vec<f64> = SymmetricEigen::new(rho).eigenvalues.iter().copied().collect();
        eig.sort_by(|x, y| y.total_cmp(x));
        Ok(eig)
    }

    /// Rank of `tr_A |ψ⟩⟨ψ|`.
    pub fn reduced_rank(&self, a: &VertexSet) -> Result<usize> {
        Ok(self.schmidt_spectrum(a)?.into_iter().filter(|&l| l > RANK_THRESHOLD).count())
    }

    /// Von Neumann entropy of `tr_A |ψ⟩⟨ψ|` in bits.
    pub fn reduced_entropy(&self, a: &VertexSet) -> Result<f64> {
        Ok(self
            .schmidt_spectrum(a)?
            .into_iter()
            .filter(|&l| l > RANK_THRESHOLD)
            .map(|l| -l * l.log2())
            .sum())
    }
}

/// `|G⟩ = ∏_{(a,b)∈E} CZ_{ab} |+⟩^n`.
pub fn graph_state(g: &Graph) -> Result<StateVector> {
    let mut state = StateVector::plus_state(g.n())?;
    for (a, b) in g.edges() {
        state.apply_cz(a, b)?;
    }
    Ok(state)
}

/// Single-qubit eigenstate of `σ_basis` with eigenvalue `sign`.
pub fn eigenstate(basis: Axis, sign: Sign) -> [Complex64; 2] {
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let sgn = f64::from(sign.value());
    match basis {
        Axis::Z if sign.is_plus() => [ONE, ZERO],
        Axis::Z => [ZERO, ONE],
        Axis::X => [Complex64::new(s2, 0.0), Complex64::new(sgn * s2, 0.0)],
        Axis::Y => [Complex64::new(s2, 0.0), Complex64::new(0.0, sgn * s2)],
    }
}

fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Max-norm distance between `tr_A |G⟩⟨G|` and the uniform mixture of
/// `U(z)|G - A⟩` over `z ∈ F_2^A`, where `U(z) = ∏_{a∈A} (∏_{b∈N_a∖A} Z_b)^{z_a}`.
pub fn partial_trace_deviation(g: &Graph, a: &VertexSet) -> Result<f64> {
    check_cap(g.n(), PARTIAL_TRACE_CAP, "vertices for partial-trace check")?;
    if a.universe() != g.n() {
        return Err(Error::SizeMismatch(g.n(), a.universe()));
    }
    let keep = a.complement();
    let rho = graph_state(g)?.reduced_density(&keep)?;

    let kept = keep.to_vec();
    let rest = graph_state(&g.induced_subgraph(&keep))?;
    // Z-masks of each U(e_a) in the index space of the kept qubits.
    let flips: Vec<usize> = a
        .iter()
        .map(|v| {
            kept.iter()
                .enumerate()
                .filter(|&(_, &b)| g.has_edge(v, b))
                .fold(0usize, |acc, (j, _)| acc | 1 << (kept.len() - 1 - j))
        })
        .collect();
    let dim = 1usize << kept.len();
    let weight = Complex64::new(0.5f64.powi(flips.len() as i32), 0.0);
    let mut mixture = DMatrix::from_element(dim, dim, ZERO);
    for z in 0u64..1 << flips.len() {
        let zmask = flips
            .iter()
            .enumerate()
            .filter(|&(i, _)| z >> i & 1 == 1)
            .fold(0usize, |acc, (_, &f)| acc ^ f);
        let psi: Vec<Complex64> = rest
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(x, &c)| if (x & zmask).count_ones() % 2 == 1 { -c } else { c })
            .collect();
        for i in 0..dim {
            for j in 0..dim {
                mixture[(i, j)] += weight * psi[i] * psi[j].conj();
            }
        }
    }
    Ok(max_abs_diff(&rho, &mixture))
}

/// Whether the reduced state of `V ∖ A` is the stated uniform mixture within 1e-8.
pub fn verify_partial_trace_form(g: &Graph, a: &VertexSet) -> Result<bool> {
    Ok(partial_trace_deviation(g, a)? < RANK_THRESHOLD)
}

/// Result of comparing one measurement rule against the oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementCheck {
    pub probability: f64,
    pub expected_probability: f64,
    /// `|⟨expected|actual⟩|`; `None` when the outcome cannot occur.
    pub fidelity: Option<f64>,
}

impl MeasurementCheck {
    pub fn passed(&self) -> bool {
        (self.probability - self.expected_probability).abs() <= ZERO_PROBABILITY
            && self.fidelity.is_none_or(|f| f >= 1.0 - STATE_TOL)
    }
}

/// Checks `P_{basis,sign}|G⟩ ∝ |basis,sign⟩_a ⊗ U_{basis,sign}|G'⟩`.
pub fn check_measurement(g: &Graph, a: usize, basis: Axis, sign: Sign) -> Result<MeasurementCheck> {
    let rule = measure_pauli(g, a, basis, None)?;
    let expected_probability = rule.probability(sign);
    let state = graph_state(g)?;
    let probability = state.outcome_probability(a, basis, sign)?;
    if expected_probability == 0.0 {
        return Ok(MeasurementCheck {
            probability,
            expected_probability,
            fidelity: None,
        });
    }
    let (_, actual) = state.apply_projector(a, basis, sign)?;
    let expected = graph_state(&rule.graph_after)?
        .apply_local_clifford(rule.byproduct(sign))?
        .insert_qubit(a, eigenstate(basis, sign))?;
    Ok(MeasurementCheck {
        probability,
        expected_probability,
        fidelity: Some(actual.fidelity(&expected)?),
    })
}

/// `|⟨τ_a(G)| U_a(G) |G⟩|`.
pub fn check_lc_rule(g: &Graph, a: usize) -> Result<f64> {
    let lhs = graph_state(&g.local_complement(a)?)?;
    let rhs = graph_state(g)?.apply_local_clifford(&lc_unitary(g, a)?)?;
    lhs.fidelity(&rhs)
}

/// Numeric and combinatorial Schmidt ranks (as `log2` of the reduced rank,
/// the entropy in bits and `rank_f2(Γ_AB)`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchmidtCheck {
    pub reduced_rank: usize,
    pub entropy: f64,
    pub rank_f2: usize,
}

impl SchmidtCheck {
    pub fn passed(&self) -> bool {
        self.reduced_rank == 1 << self.rank_f2 && (self.entropy - self.rank_f2 as f64).abs() <= 1e-6
    }
}

pub fn check_schmidt_rank(g: &Graph, a: &VertexSet) -> Result<SchmidtCheck> {
    let state = graph_state(g)?;
    let cross = g.adjacency().submatrix(&a.to_vec(), &a.complement().to_vec());
    Ok(SchmidtCheck {
        reduced_rank: state.reduced_rank(a)?,
        entropy: state.reduced_entropy(a)?,
        rank_f2: rank_f2(&cross),
    })
}

/// Largest deviation `‖K_a|G⟩ - |G⟩‖_∞` over all generators.
pub fn check_stabilizers(g: &Graph) -> Result<f64> {
    let state = graph_state(g)?;
    let mut worst = 0.0f64;
    for a in 0..g.n() {
        let image = state.apply_pauli(&generator(g, a)?)?;
        for (x, y) in image.amplitudes().iter().zip(state.amplitudes()) {
            worst = worst.max((x - y).norm());
        }
    }
    Ok(worst)
}

/// Replays a measurement sequence on the state vector and compares the
/// final state and probability with [`apply_sequence`]. Returns
/// `(fidelity, probability difference)`; zero-probability sequences are
/// reported as errors by both sides.
pub fn check_sequence(g: &Graph, steps: &[Step]) -> Result<(f64, f64)> {
    let rule = apply_sequence(g, steps)?;
    let mut state = graph_state(g)?;
    let mut probability = 1.0;
    for step in steps {
        let (p, next) = state.apply_projector(step.vertex, step.basis, step.outcome)?;
        probability *= p;
        state = next;
    }
    let mut expected = graph_state(&rule.graph)?.apply_local_clifford(&rule.byproduct)?;
    let mut measured: Vec<&Step> = steps.iter().collect();
    measured.sort_by_key(|s| s.vertex);
    for step in measured {
        expected = expected.insert_qubit(step.vertex, eigenstate(step.basis, step.outcome))?;
    }
    Ok((state.fidelity(&expected)?, (probability - rule.probability).abs()))
}

/// Tally for one property in a [`VerifyReport`].
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Largest observed deviation from the exact value.
    pub worst_deviation: f64,
}

impl CheckSummary {
    fn new(name: &str) -> Self {
        CheckSummary {
            name: name.into(),
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, deviation: f64) {
        self.cases += 1;
        self.failures += usize::from(!ok);
        self.worst_deviation = self.worst_deviation.max(deviation);
    }

    fn merge(&mut self, other: &CheckSummary) {
        self.cases += other.cases;
        self.failures += other.failures;
        self.worst_deviation = self.worst_deviation.max(other.worst_deviation);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub max_vertices: usize,
    pub trials: usize,
    pub checks: Vec<CheckSummary>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::passed)
    }
}

const CHECK_NAMES: [&str; 6] = [
    "stabilizer generators fix |G>",
    "measurement rules (all vertices, bases, signs)",
    "Schmidt rank and entropy (all bipartitions)",
    "partial trace mixture form (all bipartitions)",
    "local complementation unitary (all vertices)",
    "measurement sequences with byproduct threading",
];

fn run_trial(seed: u64, trial: usize, max_vertices: usize) -> Result<Vec<CheckSummary>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let mut out: Vec<CheckSummary> = CHECK_NAMES.iter().map(|n| CheckSummary::new(n)).collect();
    let n = rng.random_range(2..=max_vertices);
    let density = rng.random_range(0.1..0.9);
    let g = random_connected_graph(n, density, &mut rng);

    let dev = check_stabilizers(&g)?;
    out[0].record(dev <= STATE_TOL, dev);

    for a in 0..n {
        for basis in Axis::ALL {
            for sign in [Sign::Plus, Sign::Minus] {
                let c = check_measurement(&g, a, basis, sign)?;
                let dev = (1.0 - c.fidelity.unwrap_or(1.0)).max((c.probability - c.expected_probability).abs());
                out[1].record(c.passed(), dev);
            }
        }
    }

    for mask in 1u64..(1 << (n - 1)) {
        let a = VertexSet::from_mask(n, mask);
        let c = check_schmidt_rank(&g, &a)?;
        out[2].record(c.passed(), (c.entropy - c.rank_f2 as f64).abs());
        if n <= PARTIAL_TRACE_CAP {
            let dev = partial_trace_deviation(&g, &a)?;
            out[3].record(dev < RANK_THRESHOLD, dev);
        }
    }

    let h = random_graph(n, density, &mut rng);
    for a in 0..n {
        let f = check_lc_rule(&h, a)?;
        out[4].record(f >= 1.0 - STATE_TOL, 1.0 - f);
    }

    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let len = rng.random_range(1..=n);
    let steps: Vec<Step> = order[..len]
        .iter()
        .map(|&vertex| Step {
            vertex,
            basis: Axis::ALL[rng.random_range(0..3)],
            outcome: if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus },
        })
        .collect();
    match check_sequence(&g, &steps) {
        Ok((f, dp)) => out[5].record(f >= 1.0 - STATE_TOL && dp <= ZERO_PROBABILITY, (1.0 - f).max(dp)),
        // Both the rule and the oracle must agree that the branch is impossible.
        Err(Error::InvalidStep { .. }) | Err(Error::ZeroProbability) => {
            let rule_impossible = apply_sequence(&g, &steps).is_err();
            let mut state = graph_state(&g)?;
            let mut oracle_impossible = false;
            for s in &steps {
                match state.apply_projector(s.vertex, s.basis, s.outcome) {
                    Ok((_, next)) => state = next,
                    Err(_) => {
                        oracle_impossible = true;
                        break;
                    }
                }
            }
            out[5].record(rule_impossible == oracle_impossible, 0.0);
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

/// Runs every oracle cross-check on `trials` random connected graphs with
/// `2..=max_vertices` vertices. Trials are independent and seeded from
/// `(seed, trial index)`, so the report does not depend on thread count.
pub fn verify_suite(seed: u64, max_vertices: usize, trials: usize) -> Result<VerifyReport> {
    check_cap(max_vertices, PARTIAL_TRACE_CAP, "vertices for verification")?;
    if max_vertices < 2 {
        return Err(Error::InvalidArgument("verification needs at least 2 vertices".into()));
    }
    let per_trial: Vec<Vec<CheckSummary>> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(seed, t, max_vertices))
        .collect::<Result<_>>()?;
    let mut checks: Vec<CheckSummary> = CHECK_NAMES.iter().map(|n| CheckSummary::new(n)).collect();
    for trial in &per_trial {
        for (total, part) in checks.iter_mut().zip(trial) {
            total.merge(part);
        }
    }
    Ok(VerifyReport {
        seed,
        max_vertices,
        trials,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn small_graph_states() {
        let s = graph_state(&Graph::edgeless(1)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(s.amplitudes(), &[c(h, 0.0), c(h, 0.0)][..]);
        let k2 = graph_state(&Graph::complete(2)).unwrap();
        let expect = [c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)];
        for (x, y) in k2.amplitudes().iter().zip(expect) {
            assert!((x - y).norm() < 1e-12);
        }
        assert!(graph_state(&Graph::edgeless(13)).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn msb_convention() {
        // Qubit 0 flipped to |1⟩ lives in the top half of the amplitudes.
        let mut s = StateVector::zero_state(3).unwrap();
        s.apply_single(0, &Axis::X.matrix()).unwrap();
        assert_eq!(s.amplitudes()[4], ONE);
    }

    #[test]
    fn projector_probabilities() {
        let plus = StateVector::plus_state(1).unwrap();
        assert!((plus.apply_projector(0, Axis::Z, Sign::Plus).unwrap().0 - 0.5).abs() < 1e-15);
        assert!((plus.apply_projector(0, Axis::X, Sign::Plus).unwrap().0 - 1.0).abs() < 1e-15);
        assert_eq!(plus.apply_projector(0, Axis::X, Sign::Minus).unwrap_err(), Error::ZeroProbability);
        let g = graph_state(&Graph::cycle(5)).unwrap();
        for basis in Axis::ALL {
            let (p, post) = g.apply_projector(2, basis, Sign::Minus).unwrap();
            assert!((p - 0.5).abs() < 1e-12);
            assert!((post.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn global_phase_equality() {
        let s = graph_state(&Graph::path(4)).unwrap();
        let rotated = StateVector::from_amplitudes(4, s.amplitudes().iter().map(|a| a * c(0.6, 0.8)).collect()).unwrap();
        assert!(s.equal_up_to_global_phase(&rotated, STATE_TOL).unwrap());
        assert!(s.equal_up_to_global_phase(&s.apply_local_clifford(&LocalClifford::identity(4)).unwrap(), STATE_TOL).unwrap());
        let other = graph_state(&Graph::star(4)).unwrap();
        assert!(!s.equal_up_to_global_phase(&other, STATE_TOL).unwrap());
        assert!(s.apply_local_clifford(&LocalClifford::identity(3)).is_err());
    }

    #[test]
    fn insert_qubit_positions() {
        let s = graph_state(&Graph::complete(2)).unwrap();
        let t = s.insert_qubit(1, [ZERO, ONE]).unwrap();
        // |x0 1 x1⟩ carries amplitude s[x0 x1].
        assert_eq!(t.amplitudes()[0b010], s.amplitudes()[0b00]);
        assert_eq!(t.amplitudes()[0b111], s.amplitudes()[0b11]);
        assert_eq!(t.amplitudes()[0b101], ZERO);
    }

    #[test]
    fn reduced_rank_and_entropy() {
        let product = graph_state(&Graph::edgeless(3)).unwrap();
        let a = VertexSet::from_indices(3, [0]).unwrap();
        assert_eq!(product.reduced_rank(&a).unwrap(), 1);
        assert!(product.reduced_entropy(&a).unwrap().abs() < 1e-9);
        let k2 = graph_state(&Graph::complete(2)).unwrap();
        let a = VertexSet::from_indices(2, [0]).unwrap();
        assert_eq!(k2.reduced_rank(&a).unwrap(), 2);
        assert!((k2.reduced_entropy(&a).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn partial_trace_small_cases() {
        let k2 = Graph::complete(2);
        assert!(verify_partial_trace_form(&k2, &VertexSet::empty(2)).unwrap());
        let a = VertexSet::from_indices(2, [0]).unwrap();
        let rho = graph_state(&k2).unwrap().reduced_density(&a.complement()).unwrap();
        assert!((rho[(0, 0)] - c(0.5, 0.0)).norm() < 1e-12 && rho[(0, 1)].norm() < 1e-12);
        assert!(verify_partial_trace_form(&k2, &a).unwrap());
        let g = Graph::petersen();
        for mask in [0b1u64, 0b11, 0b10101, 0b1111100000] {
            assert!(verify_partial_trace_form(&g, &VertexSet::from_mask(10, mask)).unwrap());
        }
    }

    #[test]
    fn measurement_rules_on_named_graphs() {
        for g in [Graph::path(4), Graph::cycle(5), Graph::star(5), Graph::complete(4), Graph::grid(2, 3)] {
            for a in 0..g.n() {
                for basis in Axis::ALL {
                    for sign in [Sign::Plus, Sign::Minus] {
                        let c = check_measurement(&g, a, basis, sign).unwrap();
                        assert!(c.passed(), "{g:?} a={a} {basis} {sign}: {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn isolated_vertex_measurements() {
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        for basis in Axis::ALL {
            for sign in [Sign::Plus, Sign::Minus] {
                assert!(check_measurement(&g, 0, basis, sign).unwrap().passed());
            }
        }
    }

    #[test]
    fn lc_rule_on_named_graphs() {
        for g in [Graph::path(5), Graph::star(4), Graph::cycle(6), Graph::petersen()] {
            for a in 0..g.n() {
                assert!(check_lc_rule(&g, a).unwrap() > 1.0 - STATE_TOL);
            }
        }
    }

    #[test]
    fn stabilizers_fix_graph_states() {
        assert!(check_stabilizers(&Graph::grid(3, 3)).unwrap() < 1e-12);
    }

    #[test]
    fn cz_order_independence() {
        let g = Graph::petersen();
        let mut edges = g.edges();
        edges.reverse();
        let mut s = StateVector::plus_state(10).unwrap();
        for (a, b) in edges {
            s.apply_cz(b, a).unwrap();
        }
        assert_eq!(s, graph_state(&g).unwrap());
    }

    #[test]
    fn threaded_sequences_on_p4() {
        let step = |vertex, basis, outcome| Step { vertex, basis, outcome };
        for first in [Sign::Plus, Sign::Minus] {
            for second in [Sign::Plus, Sign::Minus] {
                for basis in Axis::ALL {
                    let steps = [step(1, Axis::X, first), step(2, basis, second)];
                    let (f, dp) = check_sequence(&Graph::path(4), &steps).unwrap();
                    assert!(f > 1.0 - STATE_TOL && dp < 1e-12, "{steps:?}");
                }
            }
        }
    }

    #[test]
    fn small_verify_suite() {
        let report = verify_suite(7, 6, 20).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report, verify_suite(7, 6, 20).unwrap());
    }
}
