//! Error type shared by the library's fallible operations.
//!
//! Input-driven failures (parsing, invalid parameters, sets that violate an
//! operation's documented preconditions) surface as [`Error`] values.
//! Mixing moduli in low-level arithmetic is a programming error and panics
//! instead; see [`crate::residue`].

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty GPM collection")]
    EmptySet,

    #[error("set members carry mixed moduli")]
    MixedModuli,

    #[error("pivot {pivot} is not a member of the set")]
    PivotNotMember { pivot: String },

    #[error("set does not contain the identity (0,0)")]
    NonStandardSet,

    #[error("operation requires at least {min} members, got {got}")]
    SetTooSmall { min: usize, got: usize },

    #[error("dimension d={d} outside supported range {min}..={max}")]
    UnsupportedDimension { d: u32, min: u32, max: u32 },

    #[error("set size l={l} outside supported range 2..={max}")]
    CardinalityOutOfRange { l: usize, max: usize },

    #[error("the identity GPM has no canonicalizing map")]
    IdentityNotCanonicalizable,

    #[error("matrix determinant is {det}, not 1 (mod {d})")]
    NotUnimodular { d: u32, det: u32 },

    #[error("classification mismatch: {0}")]
    ClassificationMismatch(String),

    #[error("set is not covered by the classification")]
    NotInUniverse,

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("vector has dimension {got}, expected {want}")]
    DimensionMismatch { want: usize, got: usize },

    #[error("vector norm {norm} deviates from 1 beyond tolerance")]
    NotUnitNorm { norm: f64 },

    #[error("cannot normalize a zero or non-finite vector")]
    DegenerateVector,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
