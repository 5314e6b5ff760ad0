//! Graph states: entanglement bounds, Pauli measurement rules and
//! local-complementation classification.
//!
//! Vertices are labelled `0..n`. In dense state vectors vertex 0 is the most
//! significant bit of the amplitude index.

pub mod entanglement;
pub mod error;
pub mod gf2;
pub mod graphs;
pub mod measurement;
pub mod oracle;
pub mod orbits;
pub mod stabilizer;

pub use entanglement::{bounds, lower_bound_max_rank, pauli_persistency, schmidt_rank, Bipartition, BoundsReport, PersistencyConfig, RankIndex};
pub use error::{Error, Result};
pub use gf2::{kernel_basis_f2, rank_f2, BitMatrix, BitVector};
pub use graphs::{Edge, Graph, VertexSet};
pub use measurement::{apply_sequence, measure_pauli, measure_via_lc, MeasurementOutcome, Sign, Step};
pub use oracle::{graph_state, StateVector};
pub use orbits::{classify, lc_equivalent, lc_orbit_labeled, ClassRecord, OrbitConfig};
pub use stabilizer::{Axis, Clifford1, LocalClifford, PauliOp};
