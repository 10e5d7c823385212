use thiserror::Error;

/// Errors raised by the numerical kernels and the physics modules built on them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max deviation {max_deviation:e})")]
    NotHermitian { max_deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("normalization violated: expected {expected}, found {found}")]
    Normalization { expected: f64, found: f64 },

    #[error("matrix is not antisymmetric (max deviation {max_deviation:e})")]
    NotAntisymmetric { max_deviation: f64 },

    #[error("state does not decay at the grid edge: |psi|^2 = {edge_density:e} at x = {x}")]
    EdgeDecay { x: f64, edge_density: f64 },

    #[error("cumulant kappa_{index} = {value} makes |phi| non-integrable: {reason}")]
    NonIntegrable {
        index: usize,
        value: f64,
        reason: String,
    },

    #[error("characteristic function tail too large: |phi({t})| = {magnitude:e} (need < 1e-12)")]
    TailTooLarge { t: f64, magnitude: f64 },

    #[error(
        "one-particle matrix is not a rank-{rank} projector (idempotency residual {residual:e})"
    )]
    NotDeterminantal { rank: usize, residual: f64 },

    #[error("state has Slater rank 1; there is no entanglement to witness")]
    SlaterRankOne,

    #[error("ensemble size {size} is smaller than the state rank {rank}")]
    EnsembleTooSmall { size: usize, rank: usize },

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
