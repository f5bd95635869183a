use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not in SL(2,C): det = {re} + {im}i")]
    NotUnimodular { re: f64, im: f64 },
    #[error("algebra element is not traceless: |tr| = {0}")]
    NotTraceless(f64),
    #[error("element is not in the little group: {0}")]
    Membership(String),
    #[error("zero momentum has no point on the forward light cone")]
    ZeroMomentum,
    #[error("direction lies on the singular ray of the chosen section: {0:?}")]
    SingularRay([f64; 3]),
    #[error("helicity must be a half-integer given as 2s, got {0}")]
    InvalidHelicity(String),
    #[error("grid specification rejected: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("model rejected: {0}")]
    Model(String),
    #[error("vector is not in the expected fiber: residual {0:e}")]
    NotInFiber(f64),
    #[error("wave function has zero norm")]
    ZeroNorm,
    #[error("matrix is not a density matrix: {0}")]
    NotDensity(String),
    #[error("refinement did not converge: {0}")]
    NonConvergence(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
