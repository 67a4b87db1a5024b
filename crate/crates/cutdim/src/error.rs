use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid edge slot ({i}, {j}) for {n} vertices")]
    InvalidEdge { i: usize, j: usize, n: usize },

    #[error("invalid shore: {0}")]
    InvalidShore(String),

    #[error("graph has {n} vertices, exceeding the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("set family is not laminar")]
    NotLaminar,

    #[error("cut family is not cross-free")]
    NotCrossFree,

    #[error("cut family is not maximal: {0}")]
    NotMaximal(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction self-verification failed: {0}")]
    VerificationFailed(String),

    #[error("cannot parse rational '{0}'")]
    BadRational(String),
}
