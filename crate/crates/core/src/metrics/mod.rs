//! Hermitian metrics on `(S¹ × S³, J)`, their Lee data, the l.c.K. identity
//! and the Levi-Civita connection.
//!
//! A metric is a positive hermitian 2×2 matrix `H` in the complex basis
//! `(e2, e3)`. With `x, y` the complex coordinates of two frame vectors,
//! `g(X, Y) = Re(xᵀ H ȳ)` and `Ω(X, Y) = g(JX, Y)`.

pub mod connection;
pub mod hspec;
pub mod lck;
pub mod universal;

use std::f64::consts::PI;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{
    complex_coords, g_value, j_apply, ComplexCoords, FrameAxis, FrameCovector, FramePoint,
    FrameVector, HopfParams,
};

pub use connection::{
    gram_derivatives, levi_civita, nabla_lee, nabla_lee_closed_form, Connection, VaismanReport,
    is_vaisman, CONDITION_LIMIT,
};
pub use hspec::HSpec;
pub use lck::{verify_lck, LckReport};
pub use universal::invariant_metric_universal;

/// Hermitian 2×2 matrix `[[h11, h12], [conj h12, h22]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HermitianMetric {
    pub h11: f64,
    pub h12: Complex64,
    pub h22: f64,
}

impl HermitianMetric {
    pub fn new(h11: f64, h12: Complex64, h22: f64) -> Self {
        HermitianMetric { h11, h12, h22 }
    }

    pub fn diagonal(a: f64, b: f64) -> Self {
        HermitianMetric::new(a, Complex64::new(0.0, 0.0), b)
    }

    pub fn det(&self) -> f64 {
        self.h11 * self.h22 - self.h12.norm_sqr()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.h11 > 0.0 && self.det() > 0.0
    }

    pub fn scale(&self, c: f64) -> Self {
        HermitianMetric::new(self.h11 * c, self.h12 * c, self.h22 * c)
    }

    /// `xᵀ H ȳ`, complex-linear in the first argument.
    pub fn product(&self, x: &ComplexCoords, y: &ComplexCoords) -> Complex64 {
        let (yu, yv) = (y.u.conj(), y.v.conj());
        x.u * (self.h11 * yu + self.h12 * yv) + x.v * (self.h12.conj() * yu + self.h22 * yv)
    }
}

/// A hermitian metric field together with the 1-form it is tested against.
pub trait MetricField {
    fn params(&self) -> &HopfParams;
    fn matrix(&self, p: &FramePoint) -> HermitianMetric;
    fn lee_form(&self, p: &FramePoint) -> FrameCovector;
}

/// The family `g^h` parametrized by a positive periodic function `h`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LckFamily {
    pub params: HopfParams,
    pub h: HSpec,
}

impl LckFamily {
    pub fn new(params: HopfParams, h: HSpec) -> Result<Self> {
        h.validate()?;
        Ok(LckFamily { params, h })
    }
}

impl MetricField for LckFamily {
    fn params(&self) -> &HopfParams {
        &self.params
    }

    fn matrix(&self, p: &FramePoint) -> HermitianMetric {
        let re = g_value(&self.params, p).re;
        let lq = self.params.log_mod_alpha() - self.params.log_mod_beta();
        let (m1, m2) = (p.xi1().norm_sqr(), p.xi2().norm_sqr());
        let w = p.xi1() * p.xi2();
        HermitianMetric::new(
            PI * self.h.value(p.theta()) / (re * re) + m1 * m2 * lq * lq / (re * re * re),
            Complex64::new(0.0, 1.0) * w * lq / (re * re),
            1.0 / re,
        )
    }

    fn lee_form(&self, p: &FramePoint) -> FrameCovector {
        FrameCovector([-self.h.value(p.theta()), 0.0, 0.0, 0.0])
    }
}

/// `diag(k(θ), 1)` for `‖α‖ = ‖β‖`; a constant multiple of [`LckFamily`]
/// with `h = k·log‖α‖/π`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagonalFamily {
    pub params: HopfParams,
    pub kappa: HSpec,
}

/// Tolerance on `‖α‖ = ‖β‖` for the diagonal family.
pub const EQUAL_MODULI_TOL: f64 = 1e-12;

pub(crate) fn check_equal_moduli(params: &HopfParams) -> Result<()> {
    let (a, b) = (params.alpha().norm(), params.beta().norm());
    if (a - b).abs() > EQUAL_MODULI_TOL * a {
        return Err(Error::ParamMismatch(a, b));
    }
    Ok(())
}

impl DiagonalFamily {
    pub fn new(params: HopfParams, kappa: HSpec) -> Result<Self> {
        check_equal_moduli(&params)?;
        kappa.validate()?;
        Ok(DiagonalFamily { params, kappa })
    }

    /// The member of [`LckFamily`] this metric is proportional to, with the
    /// constant `c` such that `diag(k, 1) = c · H^h`.
    pub fn equivalent_lck(&self) -> (LckFamily, f64) {
        let lm = self.params.log_mod_alpha();
        let h = match &self.kappa {
            HSpec::Constant { value } => HSpec::constant(value * lm / PI),
            HSpec::Fourier { a0, cos, sin } => HSpec::fourier(
                a0 * lm / PI,
                cos.iter().map(|c| c * lm / PI).collect(),
                sin.iter().map(|c| c * lm / PI).collect(),
            ),
        };
        (
            LckFamily {
                params: self.params,
                h,
            },
            lm,
        )
    }
}

pub fn diagonal_family_matrix(
    params: &HopfParams,
    kappa: &HSpec,
    p: &FramePoint,
) -> Result<HermitianMetric> {
    check_equal_moduli(params)?;
    Ok(HermitianMetric::diagonal(kappa.value(p.theta()), 1.0))
}

impl MetricField for DiagonalFamily {
    fn params(&self) -> &HopfParams {
        &self.params
    }

    fn matrix(&self, p: &FramePoint) -> HermitianMetric {
        HermitianMetric::diagonal(self.kappa.value(p.theta()), 1.0)
    }

    fn lee_form(&self, p: &FramePoint) -> FrameCovector {
        let k = self.kappa.value(p.theta());
        FrameCovector([-k * self.params.log_mod_alpha() / PI, 0.0, 0.0, 0.0])
    }
}

/// [`LckFamily`] with `H11` multiplied by `1 + ε‖ξ1‖²`; not l.c.K. for ε ≠ 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbedFamily {
    pub base: LckFamily,
    pub epsilon: f64,
}

impl MetricField for PerturbedFamily {
    fn params(&self) -> &HopfParams {
        &self.base.params
    }

    fn matrix(&self, p: &FramePoint) -> HermitianMetric {
        let mut m = self.base.matrix(p);
        m.h11 *= 1.0 + self.epsilon * p.xi1().norm_sqr();
        m
    }

    fn lee_form(&self, p: &FramePoint) -> FrameCovector {
        self.base.lee_form(p)
    }
}

pub fn metric_matrix<M: MetricField + ?Sized>(field: &M, p: &FramePoint) -> HermitianMetric {
    field.matrix(p)
}

/// `g(X, Y)` at `p`.
pub fn metric_eval<M: MetricField + ?Sized>(
    field: &M,
    p: &FramePoint,
    x: &FrameVector,
    y: &FrameVector,
) -> Result<f64> {
    let params = field.params();
    let cx = complex_coords(params, p, x)?;
    let cy = complex_coords(params, p, y)?;
    Ok(field.matrix(p).product(&cx, &cy).re)
}

/// `Ω(X, Y) = g(JX, Y)`.
pub fn fundamental_form<M: MetricField + ?Sized>(
    field: &M,
    p: &FramePoint,
    x: &FrameVector,
    y: &FrameVector,
) -> Result<f64> {
    let jx = j_apply(field.params(), p, x);
    metric_eval(field, p, &jx, y)
}

/// Gram matrix `g(e_i, e_j)`.
pub fn gram_matrix<M: MetricField + ?Sized>(field: &M, p: &FramePoint) -> Result<Matrix4<f64>> {
    let params = field.params();
    let h = field.matrix(p);
    let coords: Vec<ComplexCoords> = FrameAxis::ALL
        .iter()
        .map(|a| complex_coords(params, p, &FrameVector::axis(*a)))
        .collect::<Result<_>>()?;
    Ok(Matrix4::from_fn(|i, j| h.product(&coords[i], &coords[j]).re))
}

/// `Ω(e_i, e_j)`.
pub fn fundamental_matrix<M: MetricField + ?Sized>(
    field: &M,
    p: &FramePoint,
) -> Result<Matrix4<f64>> {
    let g = gram_matrix(field, p)?;
    let j = crate::frame::j_matrix(field.params(), p);
    // Ω(e_i, e_j) = g(J e_i, e_j) = Σ_k J_{k i} g_{k j}
    Ok(j.transpose() * g)
}

/// `Ω(e_i, e_j)` of [`LckFamily`] from its expansion in the basis `e^{ij}`,
/// scaled so that the `e^{34}` coefficient is `1/Re G`.
pub fn fundamental_form_expansion(family: &LckFamily, p: &FramePoint) -> Matrix4<f64> {
    let params = &family.params;
    let re = g_value(params, p).re;
    let w = p.xi1() * p.xi2();
    let (la, lb) = (params.log_mod_alpha(), params.log_mod_beta());
    let cross = la * params.arg_beta() - lb * params.arg_alpha();
    let lq = la - lb;
    let s = 1.0 / (2.0 * re);
    let mut m = Matrix4::zeros();
    let mut set = |i: usize, j: usize, v: f64| {
        m[(i, j)] = s * v;
        m[(j, i)] = -s * v;
    };
    set(0, 1, family.h.value(p.theta()));
    set(0, 2, -w.re * cross / (PI * re));
    set(0, 3, -w.im * cross / (PI * re));
    set(1, 2, -2.0 * w.re * lq / re);
    set(1, 3, -2.0 * w.im * lq / re);
    set(2, 3, 2.0);
    m
}

/// `B = −4π e1 + 2 Im G e2 + 2 Im(ξ1ξ2) arg(α/β) e3 − 2 Re(ξ1ξ2) arg(α/β) e4`,
/// with `arg(α/β) = arg α − arg β`; the same for every `h`.
pub fn lee_vector(params: &HopfParams, p: &FramePoint) -> FrameVector {
    let g = g_value(params, p);
    let w = p.xi1() * p.xi2();
    let d = params.arg_alpha() - params.arg_beta();
    FrameVector([-4.0 * PI, 2.0 * g.im, 2.0 * w.im * d, -2.0 * w.re * d])
}

/// `JB = −2 Re G e2 − 2 Im(ξ1ξ2) log‖α/β‖ e3 + 2 Re(ξ1ξ2) log‖α/β‖ e4`.
pub fn anti_lee_vector(params: &HopfParams, p: &FramePoint) -> FrameVector {
    let g = g_value(params, p);
    let w = p.xi1() * p.xi2();
    let lq = params.log_mod_alpha() - params.log_mod_beta();
    FrameVector([0.0, -2.0 * g.re, -2.0 * w.im * lq, 2.0 * w.re * lq])
}
