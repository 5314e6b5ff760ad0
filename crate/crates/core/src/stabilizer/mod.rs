//! Pauli operators in symplectic form, graph-state stabilizers and local
//! Clifford operators.

mod clifford;

pub use clifford::{Axis, Clifford1, Mat2, SignedAxis};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::graphs::{Graph, VertexSet};

/// An n-qubit Pauli operator `i^phase ⊗_v σ(x_v, z_v)`, where
/// `σ(1,0) = X`, `σ(0,1) = Z` and `σ(1,1) = Y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    x: BitVector,
    z: BitVector,
    phase: u8,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        PauliOp {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    pub fn single(n: usize, v: usize, axis: Axis) -> Self {
        let mut p = PauliOp::identity(n);
        let (x, z) = axis.bits();
        p.x.set(v, x);
        p.z.set(v, z);
        p
    }

    pub fn from_parts(x: BitVector, z: BitVector, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::SizeMismatch(x.len(), z.len()));
        }
        Ok(PauliOp { x, z, phase: phase % 4 })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_support(&self) -> VertexSet {
        self.x.clone().into()
    }

    pub fn z_support(&self) -> VertexSet {
        self.z.clone().into()
    }

    /// Power of `i` in front of the tensor product.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn axis_at(&self, v: usize) -> Option<Axis> {
        Axis::from_bits(self.x.get(v), self.z.get(v))
    }

    /// Vertices on which the operator acts non-trivially.
    pub fn support(&self) -> VertexSet {
        self.x.or(&self.z).into()
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn product(&self, other: &PauliOp) -> Result<PauliOp> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        // Per site σ(x1,z1)σ(x2,z2) = i^{x1z1 + x2z2 + 2 z1x2 - x z} σ(x,z)
        // with x = x1^x2, z = z1^z2.
        let x = self.x.xor(&other.x);
        let z = self.z.xor(&other.z);
        let exponent = self.phase as i64
            + other.phase as i64
            + self.x.and(&self.z).count_ones() as i64
            + other.x.and(&other.z).count_ones() as i64
            + 2 * self.z.and(&other.x).count_ones() as i64
            - x.and(&z).count_ones() as i64;
        Ok(PauliOp {
            x,
            z,
            phase: exponent.rem_euclid(4) as u8,
        })
    }

    /// True iff the operators commute (symplectic form vanishes).
    pub fn commutes_with(&self, other: &PauliOp) -> bool {
        (self.x.and(&other.z).count_ones() + self.z.and(&other.x).count_ones()).is_multiple_of(2)
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.phase as usize])?;
        for v in 0..self.n() {
            let c = self.axis_at(v).map_or('I', Axis::letter);
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    /// Parses strings such as `+XZZI`, `-iY`, `YY`.
    fn from_str(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(r) = s.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else {
            (0, s.strip_prefix('+').unwrap_or(s))
        };
        let n = body.chars().count();
        let mut p = PauliOp::identity(n);
        p.phase = phase;
        for (v, c) in body.chars().enumerate() {
            let axis = match c {
                'I' => continue,
                'X' => Axis::X,
                'Y' => Axis::Y,
                'Z' => Axis::Z,
                other => return Err(Error::InvalidArgument(format!("unexpected Pauli letter {other:?}"))),
            };
            let (x, z) = axis.bits();
            p.x.set(v, x);
            p.z.set(v, z);
        }
        Ok(p)
    }
}

/// `K_G^(a) = X_a ∏_{b ∈ N_a} Z_b`.
pub fn generator(g: &Graph, a: usize) -> Result<PauliOp> {
    let nbhd = g.neighborhood(a)?;
    let mut x = BitVector::zeros(g.n());
    x.set(a, true);
    Ok(PauliOp {
        x,
        z: nbhd.as_bits().clone(),
        phase: 0,
    })
}

pub fn pauli_product(p: &PauliOp, q: &PauliOp) -> Result<PauliOp> {
    p.product(q)
}

/// Product of the generators over `s`, in ascending vertex order.
pub fn stabilizer_element(g: &Graph, s: &VertexSet) -> Result<PauliOp> {
    if s.universe() != g.n() {
        return Err(Error::SizeMismatch(s.universe(), g.n()));
    }
    s.iter()
        .try_fold(PauliOp::identity(g.n()), |acc, a| acc.product(&generator(g, a)?))
}

/// Vertex-count cap for [`exact_support_count`].
pub const SUPPORT_COUNT_CAP: usize = 16;

/// Number of stabilizer elements whose support is exactly `a_set`.
///
/// The element for `S` has support `S ∪ ΓS`, so only `S ⊆ A` can qualify.
pub fn exact_support_count(g: &Graph, a_set: &VertexSet) -> Result<u64> {
    let n = g.n();
    if n > SUPPORT_COUNT_CAP {
        return Err(Error::CapExceeded {
            what: "vertex count for support counting",
            value: n,
            cap: SUPPORT_COUNT_CAP,
        });
    }
    if a_set.universe() != n {
        return Err(Error::SizeMismatch(a_set.universe(), n));
    }
    let target = a_set.to_mask();
    let members = a_set.to_vec();
    let rows: Vec<u64> = members.iter().map(|&v| g.neighbor_mask(v)).collect();
    let mut count = 0;
    for sub in 0u64..1 << members.len() {
        let mut s = 0u64;
        let mut gamma_s = 0u64;
        for (k, &v) in members.iter().enumerate() {
            if sub >> k & 1 == 1 {
                s |= 1 << v;
                gamma_s ^= rows[k];
            }
        }
        if s | gamma_s == target {
            count += 1;
        }
    }
    Ok(count)
}

/// A product of single-qubit Cliffords, one per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalClifford {
    ops: Vec<Clifford1>,
}

impl LocalClifford {
    pub fn identity(n: usize) -> Self {
        LocalClifford {
            ops: vec![Clifford1::IDENTITY; n],
        }
    }

    pub fn from_ops(ops: Vec<Clifford1>) -> Self {
        LocalClifford { ops }
    }

    /// `u` on each vertex of `set`, identity elsewhere.
    pub fn on_set(set: &VertexSet, u: Clifford1) -> Self {
        let mut out = LocalClifford::identity(set.universe());
        for v in set.iter() {
            out.ops[v] = u;
        }
        out
    }

    pub fn n(&self) -> usize {
        self.ops.len()
    }

    pub fn get(&self, v: usize) -> Clifford1 {
        self.ops[v]
    }

    pub fn set(&mut self, v: usize, u: Clifford1) {
        self.ops[v] = u;
    }

    pub fn ops(&self) -> &[Clifford1] {
        &self.ops
    }

    pub fn is_identity(&self) -> bool {
        self.ops.iter().all(|u| u.is_identity())
    }

    /// Site-wise operator product `self · other`.
    pub fn compose(&self, other: &LocalClifford) -> Result<LocalClifford> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(LocalClifford {
            ops: self.ops.iter().zip(&other.ops).map(|(u, v)| u.compose(*v)).collect(),
        })
    }

    pub fn inverse(&self) -> LocalClifford {
        LocalClifford {
            ops: self.ops.iter().map(|u| u.inverse()).collect(),
        }
    }

    /// Drops vertex `v`, shifting higher labels down.
    pub fn remove_vertex(&self, v: usize) -> LocalClifford {
        let mut ops = self.ops.clone();
        ops.remove(v);
        LocalClifford { ops }
    }

    /// `u† p u` for the operator `u = self`.
    pub fn conjugate_pauli(&self, p: &PauliOp) -> Result<PauliOp> {
        if self.n() != p.n() {
            return Err(Error::SizeMismatch(self.n(), p.n()));
        }
        let mut out = PauliOp::identity(p.n());
        out.phase = p.phase;
        for v in 0..p.n() {
            if let Some(axis) = p.axis_at(v) {
                let image = self.ops[v].conjugate_axis(axis);
                let (x, z) = image.axis.bits();
                out.x.set(v, x);
                out.z.set(v, z);
                if image.negative {
                    out.phase = (out.phase + 2) % 4;
                }
            }
        }
        Ok(out)
    }
}

/// Local Clifford `U_a(G) = sqrt(-iX_a) ∏_{b∈N_a} sqrt(+iZ_b)` with
/// `|τ_a(G)⟩ = U_a(G)|G⟩` up to global phase.
pub fn lc_unitary(g: &Graph, a: usize) -> Result<LocalClifford> {
    let mut u = LocalClifford::on_set(&g.neighborhood(a)?, Clifford1::sqrt_i_pauli(Axis::Z, true));
    u.set(a, Clifford1::sqrt_i_pauli(Axis::X, false));
    Ok(u)
}

pub fn clifford_compose(u: &LocalClifford, v: &LocalClifford) -> Result<LocalClifford> {
    u.compose(v)
}

pub fn clifford_conjugate_pauli(u: &LocalClifford, p: &PauliOp) -> Result<PauliOp> {
    u.conjugate_pauli(p)
}

impl fmt::Display for LocalClifford {
    /// Non-identity sites only, e.g. `1:Z 3:sqrt(+iY)`; `I` if none.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ops
            .iter()
            .enumerate()
            .filter(|(_, u)| !u.is_identity())
            .map(|(v, u)| format!("{v}:{u}"))
            .collect();
        if parts.is_empty() {
            f.write_str("I")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl fmt::Debug for LocalClifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalClifford({self})")
    }
}
