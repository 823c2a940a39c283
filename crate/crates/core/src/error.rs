use thiserror::Error;

use crate::half_int::HalfInt;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid spin magnitude {0}: must be non-negative")]
    InvalidSpin(HalfInt),

    #[error("cannot parse half-integer from {0:?}")]
    ParseHalfInt(String),

    #[error("projection {m} is not allowed for spin {j}")]
    InvalidProjection { j: HalfInt, m: HalfInt },

    #[error("Hilbert space dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("collective spin {s_total} cannot be formed from {n_spins} spins of {s_each}")]
    InvalidCollectiveSpin {
        n_spins: usize,
        s_each: HalfInt,
        s_total: HalfInt,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the J_z = {0} sector is empty")]
    EmptySector(HalfInt),

    #[error("J^2 eigenvalue {eigenvalue} is {distance:e} away from any J(J+1)")]
    CouplingFailure { eigenvalue: f64, distance: f64 },

    #[error("state is not a J_z eigenvector (residual {residual:e})")]
    NotJzEigenstate { residual: f64 },

    #[error("state vector has zero norm")]
    ZeroState,

    #[error("basis sector M_J = {basis} does not match state M_J = {state}")]
    SectorMismatch { basis: HalfInt, state: HalfInt },

    #[error("imaginary residue {0:e} above threshold")]
    ImaginaryResidue(f64),

    #[error("sine content {0:e} in <S_z>; the initial state has complex relative phases")]
    SineContent(f64),

    #[error("non-periodic J = 0 contribution {0:e}")]
    SecularTerm(f64),

    #[error("cosine-series residual {0:e} above threshold")]
    ExpansionResidual(f64),

    #[error("observable is not Hermitian (deviation {0:e})")]
    NonHermitian(f64),

    #[error("step too coarse: norm drift {0:e} in one step")]
    StepTooCoarse(f64),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("invalid pulse: {0}")]
    InvalidPulse(String),

    #[error("unsupported system: {0}")]
    UnsupportedSystem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
