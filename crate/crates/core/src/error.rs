use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("basis function is singular at coordinate {index} (|mu| = 1)")]
    SingularBasis { index: usize },

    #[error("biased Hadamard requires |mu| < 1, got {mu}")]
    SingularGate { mu: f64 },

    #[error("{n} data qubits exceed the simulator capacity of {max}")]
    Capacity { n: usize, max: usize },

    #[error("gate is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("state norm drifted to {norm} (integrity violated)")]
    Integrity { norm: f64 },

    #[error("invalid bias vector: {0}")]
    InvalidBias(String),

    #[error("invalid noise parameters: {0}")]
    InvalidNoise(String),

    #[error("invalid bit string: {0}")]
    InvalidBits(String),

    #[error("empty sample")]
    EmptySample,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("regime violated: {0}")]
    Regime(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 3,
            Error::Io(_) | Error::Csv(_) => 1,
            _ => 2,
        }
    }
}
