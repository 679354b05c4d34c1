use thiserror::Error;

/// Errors shared by the ladder algebra, the eigensolver, and the fermionic oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("number of pair states must be at least 1, got {0}")]
    PairCount(usize),

    #[error("ladder index {n} out of range for {n_s} pair states (allowed {min}..={max})")]
    LadderIndex {
        n: usize,
        n_s: usize,
        min: usize,
        max: usize,
    },

    #[error("squeeze amplitude must be a finite non-negative number, got {0}")]
    InvalidSqueezeAmplitude(f64),

    #[error("squeeze phase must be finite, got {0}")]
    InvalidSqueezePhase(f64),

    #[error("r = 0 is degenerate: the transformed ladder operator is nilpotent and has no eigenbasis")]
    DegenerateSqueeze,

    #[error("symmetrized solve requires phase 0, got phi = {0}")]
    PhaseNotZero(f64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("eigenpair {index}: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    ResidualTooLarge {
        index: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("tridiagonal eigenvalue iteration failed to converge")]
    EigenConvergence,

    #[error("{n_s} pair states need a 4^{n_s}-dimensional two-species Fock space; the oracle caps at {max} pair states")]
    OracleTooLarge { n_s: usize, max: usize },

    #[error("fermion mode {mode} out of range, space has {modes} modes")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("expected {expected} Schmidt phases, got {got}")]
    PhaseCountMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
