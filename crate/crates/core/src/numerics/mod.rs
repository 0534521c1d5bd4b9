//! Scalar kernels shared by the geometry modules.

pub mod diff;
pub mod ode;
pub mod rational;
pub mod roots;

use serde::{Deserialize, Serialize};

pub use diff::{
    directional_derivative, directional_derivative_4th, directional_derivative_4th_array,
    try_directional_derivative_4th,
};
pub use ode::{integrate_potential, PotentialSample, PotentialTrajectory, POSITIVITY_FLOOR};
pub use rational::{recognize_rational, Rational};
pub use roots::{solve_monotone, solve_monotone_log};

use crate::error::{Error, Result};

/// Numerical tolerances threaded through every computation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative tolerance of the monotone root solver.
    pub root_tol: f64,
    /// Step used by finite differences along frame flows.
    pub derivative_step: f64,
    /// Residual bound for identity checks.
    pub residual_tol: f64,
    /// Distance within which a float is accepted as a rational.
    pub rational_tol: f64,
    pub max_denominator: i64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            root_tol: 1e-12,
            derivative_step: 1e-4,
            residual_tol: 1e-6,
            rational_tol: 1e-9,
            max_denominator: 1_000_000,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = [
            self.root_tol,
            self.derivative_step,
            self.residual_tol,
            self.rational_tol,
        ]
        .iter()
        .all(|v| v.is_finite() && *v > 0.0)
            && self.max_denominator > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "tolerances must be strictly positive: {self:?}"
            )))
        }
    }
}
