//! The 24-element single-qubit Clifford group modulo global phase.
//!
//! The table is generated once from matrix representatives (Hadamard and the
//! phase gate) and then used purely through indices. Each element is
//! identified by its Heisenberg action `P -> u† P u` on the Pauli axes.

use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A 2x2 complex matrix, row-major.
pub type Mat2 = [[Complex64; 2]; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `(x, z)` symplectic bits; Y is both.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Axis::X => (true, false),
            Axis::Y => (true, true),
            Axis::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Option<Axis> {
        match (x, z) {
            (true, false) => Some(Axis::X),
            (true, true) => Some(Axis::Y),
            (false, true) => Some(Axis::Z),
            (false, false) => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }

    pub fn matrix(self) -> Mat2 {
        let (o, l, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
        match self {
            Axis::X => [[o, l], [l, o]],
            Axis::Y => [[o, -i], [i, o]],
            Axis::Z => [[l, o], [o, -l]],
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A Pauli axis with a sign: `negative` means `-σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedAxis {
    pub axis: Axis,
    pub negative: bool,
}

/// Element of the single-qubit Clifford group modulo phase, as a table index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clifford1(u8);

struct Tables {
    matrices: Vec<Mat2>,
    action: Vec<[SignedAxis; 3]>,
    compose: Vec<[u8; 24]>,
    inverse: Vec<u8>,
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub(crate) fn adjoint(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

fn close(a: &Mat2, b: &Mat2) -> bool {
    (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).norm() < 1e-9))
}

/// Heisenberg action `u† P u` on each axis, read off numerically.
pub(crate) fn action_of(u: &Mat2) -> Option<[SignedAxis; 3]> {
    let ud = adjoint(u);
    let mut out = [SignedAxis { axis: Axis::X, negative: false }; 3];
    for p in Axis::ALL {
        let m = mat_mul(&mat_mul(&ud, &p.matrix()), u);
        let mut found = None;
        for q in Axis::ALL {
            let qm = q.matrix();
            let neg = qm.map(|r| r.map(|c| -c));
            if close(&m, &qm) {
                found = Some(SignedAxis { axis: q, negative: false });
            } else if close(&m, &neg) {
                found = Some(SignedAxis { axis: q, negative: true });
            }
        }
        out[p.index()] = found?;
    }
    Some(out)
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let s2 = std::f64::consts::FRAC_1_SQRT_2;
        let (o, l, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
        let hadamard: Mat2 = [[l * s2, l * s2], [l * s2, -l * s2]];
        let phase: Mat2 = [[l, o], [o, i]];
        let identity: Mat2 = [[l, o], [o, l]];

        let mut matrices = vec![identity];
        let mut action = vec![action_of(&identity).expect("identity is Clifford")];
        let mut frontier = 0;
        while frontier < matrices.len() {
            let current = matrices[frontier];
            for g in [&hadamard, &phase] {
                let m = mat_mul(&current, g);
                let a = action_of(&m).expect("products of Clifford generators are Clifford");
                if !action.contains(&a) {
                    matrices.push(m);
                    action.push(a);
                }
            }
            frontier += 1;
        }
        assert_eq!(matrices.len(), 24, "single-qubit Clifford group has 24 elements mod phase");

        let index_of = |a: &[SignedAxis; 3]| action.iter().position(|b| b == a).expect("closed group") as u8;
        let compose: Vec<[u8; 24]> = (0..24)
            .map(|u| {
                let mut row = [0u8; 24];
                for (v, slot) in row.iter_mut().enumerate() {
                    *slot = index_of(&action_of(&mat_mul(&matrices[u], &matrices[v])).expect("closed"));
                }
                row
            })
            .collect();
        let inverse = (0..24)
            .map(|u| (0..24u8).find(|&v| compose[u][v as usize] == 0).expect("group inverse"))
            .collect();
        Tables {
            matrices,
            action,
            compose,
            inverse,
        }
    })
}

fn principal_sqrt_of_i_times(axis: Axis, positive: bool) -> Mat2 {
    // sqrt(±iσ) = (1 ± iσ)/√2 on the principal branch.
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let sign = if positive { 1.0 } else { -1.0 };
    let p = axis.matrix();
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let id = if r == c { 1.0 } else { 0.0 };
            out[r][c] = (Complex64::new(id, 0.0) + Complex64::new(0.0, sign) * p[r][c]) * s2;
        }
    }
    out
}

impl Clifford1 {
    pub const ORDER: usize = 24;
    pub const IDENTITY: Clifford1 = Clifford1(0);

    pub fn all() -> impl Iterator<Item = Clifford1> {
        (0..24u8).map(Clifford1)
    }

    pub fn from_index(i: usize) -> Option<Clifford1> {
        (i < 24).then_some(Clifford1(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Element represented by a unitary matrix, if it is Clifford.
    pub fn from_matrix(m: &Mat2) -> Option<Clifford1> {
        let a = action_of(m)?;
        tables().action.iter().position(|b| *b == a).map(|i| Clifford1(i as u8))
    }

    pub fn pauli(axis: Axis) -> Clifford1 {
        Clifford1::from_matrix(&axis.matrix()).expect("Paulis are Clifford")
    }

    /// `(±iσ)^{1/2}`, principal branch.
    pub fn sqrt_i_pauli(axis: Axis, positive: bool) -> Clifford1 {
        Clifford1::from_matrix(&principal_sqrt_of_i_times(axis, positive)).expect("Clifford")
    }

    pub fn hadamard() -> Clifford1 {
        let s2 = std::f64::consts::FRAC_1_SQRT_2;
        let l = Complex64::new(s2, 0.0);
        Clifford1::from_matrix(&[[l, l], [l, -l]]).expect("Clifford")
    }

    /// Representative unitary (defined up to phase).
    pub fn matrix(self) -> Mat2 {
        tables().matrices[self.index()]
    }

    /// Operator product `self · other` (apply `other` first).
    pub fn compose(self, other: Clifford1) -> Clifford1 {
        Clifford1(tables().compose[self.index()][other.index()])
    }

    pub fn inverse(self) -> Clifford1 {
        Clifford1(tables().inverse[self.index()])
    }

    /// `u† σ_axis u` as a signed axis.
    pub fn conjugate_axis(self, axis: Axis) -> SignedAxis {
        tables().action[self.index()][axis.index()]
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    /// Short name for the elements that appear as measurement byproducts,
    /// otherwise the action on X and Z, e.g. `[X>+Z,Z>-X]`.
    pub fn name(self) -> String {
        if self.is_identity() {
            return "I".into();
        }
        for axis in Axis::ALL {
            if self == Clifford1::pauli(axis) {
                return axis.letter().to_string();
            }
            for positive in [true, false] {
                if self == Clifford1::sqrt_i_pauli(axis, positive) {
                    return format!("sqrt({}i{})", if positive { '+' } else { '-' }, axis.letter());
                }
            }
        }
        if self == Clifford1::hadamard() {
            return "H".into();
        }
        let show = |s: SignedAxis| format!("{}{}", if s.negative { '-' } else { '+' }, s.axis);
        format!(
            "[X>{},Z>{}]",
            show(self.conjugate_axis(Axis::X)),
            show(self.conjugate_axis(Axis::Z))
        )
    }
}

impl fmt::Debug for Clifford1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Clifford1({})", self.name())
    }
}

impl fmt::Display for Clifford1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        for u in Clifford1::all() {
            assert_eq!(u.compose(Clifford1::IDENTITY), u);
            assert_eq!(Clifford1::IDENTITY.compose(u), u);
            assert_eq!(u.compose(u.inverse()), Clifford1::IDENTITY);
            for v in Clifford1::all() {
                for w in Clifford1::all() {
                    assert_eq!(u.compose(v).compose(w), u.compose(v.compose(w)));
                }
            }
        }
    }

    #[test]
    fn actions_are_signed_axis_permutations() {
        for u in Clifford1::all() {
            let images: Vec<Axis> = Axis::ALL.iter().map(|&a| u.conjugate_axis(a).axis).collect();
            let mut sorted = images.clone();
            sorted.sort();
            assert_eq!(sorted, Axis::ALL.to_vec());
        }
        // Composition acts in Heisenberg order: (uv)† P (uv) = v† (u† P u) v.
        for u in Clifford1::all() {
            for v in Clifford1::all() {
                for p in Axis::ALL {
                    let first = u.conjugate_axis(p);
                    let second = v.conjugate_axis(first.axis);
                    let direct = u.compose(v).conjugate_axis(p);
                    assert_eq!(direct.axis, second.axis);
                    assert_eq!(direct.negative, first.negative ^ second.negative);
                }
            }
        }
    }

    #[test]
    fn named_elements() {
        let sz = Clifford1::pauli(Axis::Z);
        let x = sz.conjugate_axis(Axis::X);
        assert_eq!((x.axis, x.negative), (Axis::X, true));
        let root_y = Clifford1::sqrt_i_pauli(Axis::Y, true);
        let z = root_y.conjugate_axis(Axis::Z);
        assert_eq!((z.axis, z.negative), (Axis::X, false));
        assert_eq!(root_y.compose(root_y), Clifford1::pauli(Axis::Y));
        assert_eq!(
            Clifford1::sqrt_i_pauli(Axis::Z, true).inverse(),
            Clifford1::sqrt_i_pauli(Axis::Z, false)
        );
        assert_eq!(Clifford1::sqrt_i_pauli(Axis::X, false).name(), "sqrt(-iX)");
        assert_eq!(Clifford1::hadamard().name(), "H");
        let distinct: std::collections::HashSet<String> = Clifford1::all().map(|u| u.name()).collect();
        assert_eq!(distinct.len(), 24);
    }
}
