//! The diagonal family read on `ℂ² \ {0}` in the basis `dz1, dz2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_equal_moduli, HSpec};
use crate::error::{Error, Result};
use crate::frame::{HopfParams, UniversalPoint};

/// Hermitian matrix `M` with `g(X, Y) = Re(xᵀ M ȳ)` for `x, y ∈ ℂ²`:
/// `M = (I + (k − 1) z̄ zᵀ / r²) / r²` with `r² = ‖z1‖² + ‖z2‖²` and
/// `k` evaluated at `θ = π log r² / log‖α‖`.
pub fn invariant_metric_universal(
    params: &HopfParams,
    kappa: &HSpec,
    z: &UniversalPoint,
) -> Result<[[Complex64; 2]; 2]> {
    check_equal_moduli(params)?;
    let r2 = z.z1.norm_sqr() + z.z2.norm_sqr();
    if !(r2 > 0.0 && r2.is_finite()) {
        return Err(Error::InvalidInput("point must be nonzero and finite".into()));
    }
    let theta = PI * r2.ln() / params.log_mod_alpha();
    let k = kappa.value(theta);
    let zs = [z.z1, z.z2];
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            (Complex64::new(delta, 0.0) + (k - 1.0) * zs[i].conj() * zs[j] / r2) / r2
        })
    }))
}
