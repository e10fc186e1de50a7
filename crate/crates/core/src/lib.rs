//! Classification of generalized Bell state (GBS) sets in `C^d ⊗ C^d` under
//! Clifford-operators-based local-unitary equivalence, plus one-way LOCC
//! distinguishability testing via the teleportation criterion.
//!
//! Every GBS corresponds to a generalized Pauli matrix (GPM) `X^m Z^n`,
//! identified here by its exponent pair `(m, n)` over `Z_d` with global
//! phases quotiented out. Local-unitary operations restricted to Clifford
//! conjugations act on exponent pairs through 2x2 determinant-one matrices
//! over `Z_d`, which makes the equivalence classes of GBS sets finite group
//! orbits that can be enumerated exactly.
//!
//! The crate provides:
//!
//! - exact arithmetic over `Z_d` ([`residue`]),
//! - the GPM quotient group and difference sets ([`gpm`]),
//! - the symplectic representation of Clifford operators ([`clifford`]),
//! - canonical GPM set handling ([`set`]),
//! - orbit computation and the two classification methods ([`classify`]),
//! - the one-way LOCC witness search ([`locc`]),
//! - JSON persistence and result caching ([`store`]),
//! - embedded reference tables for the d = 6 classifications ([`fixtures`]).

pub mod classify;
pub mod clifford;
pub mod error;
pub mod fixtures;
pub mod gpm;
pub mod locc;
pub mod residue;
pub mod set;
pub mod store;

pub use classify::{
    class_of, classify_all, classify_extension, identity_base, one_round_images, orbit,
    Classification, ClassifyOptions, Emit, EquivClass, Method,
};
pub use clifford::{canonicalizer_for, enumerate, CliffordMap};
pub use error::{Error, Result};
pub use gpm::{difference_set, Gpm, PowerProfile};
pub use locc::{
    apply_gpm, find_witness, gpm_eigenvectors, gradient, gradient_at, residual, residual_at,
    verify_witness, DiscriminationReport, SearchConfig, StateVector, Verdict, WitnessCheck,
};
pub use residue::{ext_gcd, gcd3, BezoutTriple, Residue};
pub use set::{lex_compare, GbsSet, PowerVector};
pub use store::{ClassificationDoc, FORMAT_VERSION};
