use thiserror::Error;

use crate::numerics::ode::PotentialTrajectory;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate equation: both coefficients vanish")]
    DegenerateEquation,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parameter violation: {0}")]
    ParamViolation(String),

    #[error("exact data inconsistent with floating parameters: {0}")]
    InconsistentExactData(String),

    #[error("|alpha| and |beta| must coincide for this family (got {0} vs {1})")]
    ParamMismatch(f64, f64),

    #[error("potential ODE left the admissible band at theta = {theta}")]
    BlowUp {
        theta: f64,
        partial: Box<PotentialTrajectory>,
    },

    #[error("singular complex basis at this point")]
    SingularBasis,

    #[error("Gram matrix ill-conditioned (condition number {0:e})")]
    IllConditioned(f64),

    #[error("h is not strictly positive (minimum {0} on the sample grid)")]
    NonPositiveH(f64),

    #[error("parameters are not elliptic: {0}")]
    NotElliptic(String),

    #[error("stereographic projection undefined at the north pole")]
    PoleExcluded,

    #[error("classification not certified: {0}")]
    InexactClassification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
