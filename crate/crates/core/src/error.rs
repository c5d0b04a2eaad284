use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("coupling does not admit the requested hidden integral: {0}")]
    IncompatibleCoupling(String),
    #[error("hamiltonian carries explicit time dependence")]
    NonAutonomous,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("matrix exponential diverged (norm {0})")]
    Divergent(f64),
    #[error("quadrature order {order} too low for polynomial degree {degree}")]
    QuadratureOrder { order: usize, degree: usize },
    #[error("non-finite value: {0}")]
    NonFinite(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: &str) -> Error {
    Error::InvalidParameter(String::from(msg))
}
