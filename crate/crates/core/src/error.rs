//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),

    #[error("germ is not singular at the origin: partial with respect to `{0}` has a nonzero constant term")]
    NotSingular(String),

    #[error("germ has a non-isolated singularity: no pure power of variable {axis} in the leading ideal")]
    NotIsolated { axis: usize },

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("socle is not one-dimensional; upstream standard-basis computation is inconsistent")]
    SocleNotOneDimensional,

    #[error("residue pairing is degenerate; upstream computation is inconsistent")]
    DegeneratePairing,

    #[error("Newton diagram is not convenient (it misses a coordinate axis)")]
    NotConvenient,

    #[error("Newton boundary is degenerate; germ is outside the supported class")]
    DegenerateNewtonBoundary,

    #[error("operation requires {expected} variables, got {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("polynomial is not quasi-homogeneous of degree 1 for the given weights")]
    NotQuasiHomogeneous,

    #[error(
        "basis grading multiset does not equal the spectrum; germ is outside the supported class"
    )]
    SpectrumMismatch,

    #[error("multiplication operator violates the filtration shift: entry ({row},{col}) jumps by less than 1")]
    FiltrationViolation { row: usize, col: usize },

    #[error("no pairing partner with complementary grade for basis slot {0}; spectrum and pairing are inconsistent")]
    GradingPairingClash(usize),

    #[error("J = Q^{{-1}}S is not diagonal; construction is inconsistent")]
    NonDiagonalJ,

    #[error("invalid spectrum data: {0}")]
    InvalidSpectrum(String),

    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
