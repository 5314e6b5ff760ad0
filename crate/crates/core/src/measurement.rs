//! Graph rewrite rules for single-qubit Pauli measurements.
//!
//! Measuring `σ_i` at vertex `a` of `|G⟩` with outcome `±1` leaves
//! `|i,±⟩_a ⊗ U_{i,±} |G'⟩`. [`measure_pauli`] returns `G'` together with both
//! byproduct operators, already relabelled to the vertices of `G'`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{pairs_between, to_graph6, Graph, VertexSet};
use crate::stabilizer::{Axis, Clifford1, LocalClifford};

/// Outcome of a Pauli measurement: eigenvalue `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_plus() { "+" } else { "-" })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementOutcome {
    /// Graph on the remaining `n - 1` vertices.
    pub graph_after: Graph,
    pub byproduct_plus: LocalClifford,
    pub byproduct_minus: LocalClifford,
    /// 1 for `σ_x` on an isolated vertex, otherwise 1/2.
    pub prob_plus: f64,
    /// Special neighbour used by the `σ_x` rule, in the labels of the input graph.
    pub chosen_b0: Option<usize>,
}

impl MeasurementOutcome {
    pub fn byproduct(&self, sign: Sign) -> &LocalClifford {
        match sign {
            Sign::Plus => &self.byproduct_plus,
            Sign::Minus => &self.byproduct_minus,
        }
    }

    pub fn probability(&self, sign: Sign) -> f64 {
        match sign {
            Sign::Plus => self.prob_plus,
            Sign::Minus => 1.0 - self.prob_plus,
        }
    }
}

fn resolve_b0(g: &Graph, a: usize, b0: Option<usize>) -> Result<usize> {
    let nbhd = g.neighborhood(a)?;
    match b0 {
        None => Ok(nbhd.iter().next().expect("caller checked a is not isolated")),
        Some(b) if nbhd.contains(b) => Ok(b),
        Some(b) => Err(Error::NotANeighbor { vertex: a, b0: b }),
    }
}

/// Index of `v` once vertex `removed` has been deleted.
fn shift(v: usize, removed: usize) -> usize {
    if v > removed {
        v - 1
    } else {
        v
    }
}

fn on_remaining(n: usize, a: usize, set: &VertexSet, u: Clifford1) -> LocalClifford {
    let mut out = LocalClifford::identity(n - 1);
    for v in set.iter().filter(|&v| v != a) {
        out.set(shift(v, a), u);
    }
    out
}

/// Applies the measurement rule for `basis` at vertex `a`.
///
/// For `σ_x` at a non-isolated vertex the special neighbour `b0` defaults to
/// the smallest neighbour. A `σ_x` measurement of an isolated vertex has
/// outcome `+1` with certainty and leaves the rest of the state untouched.
pub fn measure_pauli(g: &Graph, a: usize, basis: Axis, b0: Option<usize>) -> Result<MeasurementOutcome> {
    let n = g.n();
    let nbhd = g.neighborhood(a)?;
    let identity = LocalClifford::identity(n - 1);
    let sz = Clifford1::pauli(Axis::Z);
    if nbhd.is_empty() {
        if let Some(b) = b0 {
            return Err(Error::NotANeighbor { vertex: a, b0: b });
        }
        return Ok(MeasurementOutcome {
            graph_after: g.delete_vertex(a)?,
            byproduct_plus: identity.clone(),
            byproduct_minus: identity,
            prob_plus: if basis == Axis::X { 1.0 } else { 0.5 },
            chosen_b0: None,
        });
    }
    match basis {
        Axis::Z => {
            if let Some(b) = b0 {
                resolve_b0(g, a, Some(b))?;
            }
            Ok(MeasurementOutcome {
                graph_after: g.delete_vertex(a)?,
                byproduct_plus: identity,
                byproduct_minus: on_remaining(n, a, &nbhd, sz),
                prob_plus: 0.5,
                chosen_b0: None,
            })
        }
        Axis::Y => {
            if let Some(b) = b0 {
                resolve_b0(g, a, Some(b))?;
            }
            let flipped = g.sym_diff_edges(&pairs_between(&nbhd, &nbhd))?;
            Ok(MeasurementOutcome {
                graph_after: flipped.delete_vertex(a)?,
                byproduct_plus: on_remaining(n, a, &nbhd, Clifford1::sqrt_i_pauli(Axis::Z, false)),
                byproduct_minus: on_remaining(n, a, &nbhd, Clifford1::sqrt_i_pauli(Axis::Z, true)),
                prob_plus: 0.5,
                chosen_b0: None,
            })
        }
        Axis::X => {
            let b0 = resolve_b0(g, a, b0)?;
            let nb0 = g.neighborhood(b0)?;
            let common = nbhd.intersection(&nb0);
            let only_b0 = VertexSet::from_indices(n, [b0])?;
            let mut toggles = pairs_between(&nb0, &nbhd);
            toggles.extend(pairs_between(&common, &common));
            toggles.extend(pairs_between(&only_b0, &nbhd.difference(&only_b0)));
            let rewritten = g.sym_diff_edges(&toggles)?.delete_vertex(a)?;

            let a_set = VertexSet::from_indices(n, [a])?;
            let z_plus = nbhd.difference(&nb0).difference(&only_b0);
            let z_minus = nb0.difference(&nbhd).difference(&a_set);
            let mut plus = on_remaining(n, a, &z_plus, sz);
            plus.set(shift(b0, a), Clifford1::sqrt_i_pauli(Axis::Y, true));
            let mut minus = on_remaining(n, a, &z_minus, sz);
            minus.set(shift(b0, a), Clifford1::sqrt_i_pauli(Axis::Y, false));
            Ok(MeasurementOutcome {
                graph_after: rewritten,
                byproduct_plus: plus,
                byproduct_minus: minus,
                prob_plus: 0.5,
                chosen_b0: Some(b0),
            })
        }
    }
}

/// The same rewrite expressed through local complementations:
/// `z: G - a`, `y: τ_a(G) - a`, `x: τ_b0(τ_a(τ_b0(G)) - a)`.
pub fn measure_via_lc(g: &Graph, a: usize, basis: Axis, b0: Option<usize>) -> Result<Graph> {
    let nbhd = g.neighborhood(a)?;
    if nbhd.is_empty() {
        if let Some(b) = b0 {
            return Err(Error::NotANeighbor { vertex: a, b0: b });
        }
        return g.delete_vertex(a);
    }
    if let Some(b) = b0 {
        resolve_b0(g, a, Some(b))?;
    }
    match basis {
        Axis::Z => g.delete_vertex(a),
        Axis::Y => g.local_complement(a)?.delete_vertex(a),
        Axis::X => {
            let b0 = resolve_b0(g, a, b0)?;
            g.local_complement(b0)?
                .local_complement(a)?
                .delete_vertex(a)?
                .local_complement(shift(b0, a))
        }
    }
}

/// Transforms a measurement `(basis, sign)` past a Clifford: returns
/// `(basis', sign')` with `P_{basis,sign} u = u P_{basis',sign'}`.
pub fn conjugate_basis(u: Clifford1, basis: Axis, sign: Sign) -> (Axis, Sign) {
    let image = u.conjugate_axis(basis);
    let sign = if image.negative { sign.flip() } else { sign };
    (image.axis, sign)
}

/// One measurement in a sequence; `vertex` uses the labels of the initial graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub vertex: usize,
    pub basis: Axis,
    pub outcome: Sign,
}

/// What happened at one step of [`apply_sequence`].
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub step: Step,
    /// Measurement actually applied to the graph state after moving the
    /// requested one past the accumulated byproduct.
    pub effective_basis: Axis,
    pub effective_outcome: Sign,
    /// Original label of the special neighbour, for effective `σ_x` steps.
    pub b0: Option<usize>,
    pub probability: f64,
    pub graph_after: Graph,
    pub byproduct_after: LocalClifford,
    /// `survivors[i]` is the original label of vertex `i` of `graph_after`.
    pub survivors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SequenceResult {
    pub graph: Graph,
    /// Accumulated local Clifford on the surviving vertices: the unmeasured
    /// part of the state is `byproduct |graph⟩`.
    pub byproduct: LocalClifford,
    pub probability: f64,
    pub survivors: Vec<usize>,
    pub records: Vec<StepRecord>,
}

/// Applies measurements in order, threading each requested basis through the
/// byproduct accumulated so far.
pub fn apply_sequence(g: &Graph, steps: &[Step]) -> Result<SequenceResult> {
    let mut graph = g.clone();
    let mut byproduct = LocalClifford::identity(g.n());
    let mut survivors: Vec<usize> = (0..g.n()).collect();
    let mut probability = 1.0;
    let mut records = Vec::with_capacity(steps.len());
    for (index, step) in steps.iter().enumerate() {
        let Some(current) = survivors.iter().position(|&v| v == step.vertex) else {
            let reason = if step.vertex < g.n() {
                format!("vertex {} was already measured", step.vertex)
            } else {
                format!("vertex {} out of range for {} vertices", step.vertex, g.n())
            };
            return Err(Error::InvalidStep { index, reason });
        };
        let (basis, outcome) = conjugate_basis(byproduct.get(current), step.basis, step.outcome);
        let result = measure_pauli(&graph, current, basis, None)?;
        let p = result.probability(outcome);
        if p == 0.0 {
            return Err(Error::InvalidStep {
                index,
                reason: "outcome has probability zero".into(),
            });
        }
        probability *= p;
        byproduct = byproduct.remove_vertex(current).compose(result.byproduct(outcome))?;
        graph = result.graph_after;
        let b0 = result.chosen_b0.map(|b| survivors[b]);
        survivors.remove(current);
        records.push(StepRecord {
            step: *step,
            effective_basis: basis,
            effective_outcome: outcome,
            b0,
            probability: p,
            graph_after: graph.clone(),
            byproduct_after: byproduct.clone(),
            survivors: survivors.clone(),
        });
    }
    Ok(SequenceResult {
        graph,
        byproduct,
        probability,
        survivors,
        records,
    })
}

/// One line of a JSON measurement transcript.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub vertex: usize,
    pub basis: String,
    pub outcome: i8,
    pub graph6_after: String,
    /// Non-identity byproduct factors keyed by original vertex label.
    pub byproduct: String,
}

/// Renders a byproduct using original labels, e.g. `2:Z 5:sqrt(+iY)`.
pub fn render_byproduct(byproduct: &LocalClifford, survivors: &[usize]) -> String {
    let parts: Vec<String> = byproduct
        .ops()
        .iter()
        .zip(survivors)
        .filter(|(u, _)| !u.is_identity())
        .map(|(u, v)| format!("{v}:{u}"))
        .collect();
    if parts.is_empty() {
        "I".into()
    } else {
        parts.join(" ")
    }
}

impl SequenceResult {
    pub fn transcript(&self) -> Vec<TranscriptEntry> {
        self.records
            .iter()
            .map(|r| TranscriptEntry {
                vertex: r.step.vertex,
                basis: r.step.basis.letter().to_ascii_lowercase().to_string(),
                outcome: r.step.outcome.value(),
                graph6_after: to_graph6(&r.graph_after),
                byproduct: render_byproduct(&r.byproduct_after, &r.survivors),
            })
            .collect()
    }
}
