use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("couplings must be positive and finite (got A_a = {aa}, A_b = {ab})")]
    InvalidCoupling { aa: f64, ab: f64 },

    #[error("degenerate couplings A_a = A_b = {0}; use the homogeneous engine with J = 2A")]
    DegenerateCoupling(f64),

    #[error("homogeneous coupling J must be finite and nonzero (got {0})")]
    TrivialEvolution(f64),

    #[error("nu = {0} is a pole of the Bethe equation")]
    Pole(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("not a state: eigenvalue {0} is below -1e-9")]
    NotAState(f64),

    #[error("pair matrix is outside the one-down-spin shape (defect {0:e})")]
    UnsupportedShape(f64),

    #[error("state leaks {0:e} of its weight outside the one-down-spin sector")]
    SectorLeakage(f64),

    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
