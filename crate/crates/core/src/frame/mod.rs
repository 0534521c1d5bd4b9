//! The global frame `e1, …, e4` on `S¹ × S³`, the diffeomorphism onto the
//! Hopf surface, and its complex structure in frame coordinates.
//!
//! `S³` is the unit sphere of `ℂ²` identified with unit quaternions by
//! `Q = ξ1 + j·conj(ξ2)`. `e1 = ∂/∂θ` and `e2, e3, e4` are `iQ, jQ, kQ`; their
//! flows are left multiplication by `exp(it)`, `exp(jt)`, `exp(kt)`.

pub mod params;

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{solve_monotone_log, ToleranceConfig};

pub use params::{Certainty, Decided, ExactData, ExactReal, HopfParams, Which, IRRATIONAL_UNIT};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FrameAxis {
    E1,
    E2,
    E3,
    E4,
}

impl FrameAxis {
    pub const ALL: [FrameAxis; 4] = [FrameAxis::E1, FrameAxis::E2, FrameAxis::E3, FrameAxis::E4];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// A point `(θ, ξ1, ξ2)` of `ℝ × S³`. `θ` is kept as given so that lifts
/// stay continuous; [`FramePoint::theta_reduced`] gives the angle in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FramePoint {
    theta: f64,
    xi1: Complex64,
    xi2: Complex64,
}

impl FramePoint {
    /// Normalizes `(ξ1, ξ2)` onto the unit sphere.
    pub fn new(theta: f64, xi1: Complex64, xi2: Complex64) -> Result<Self> {
        let r = (xi1.norm_sqr() + xi2.norm_sqr()).sqrt();
        if !(theta.is_finite() && r.is_finite()) || r == 0.0 {
            return Err(Error::InvalidInput(format!(
                "not a point of S¹×S³: θ = {theta}, ξ = ({xi1}, {xi2})"
            )));
        }
        Ok(FramePoint {
            theta,
            xi1: xi1 / r,
            xi2: xi2 / r,
        })
    }

    pub(crate) fn unchecked(theta: f64, xi1: Complex64, xi2: Complex64) -> Self {
        FramePoint { theta, xi1, xi2 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn theta_reduced(&self) -> f64 {
        self.theta.rem_euclid(TAU)
    }

    pub fn xi1(&self) -> Complex64 {
        self.xi1
    }

    pub fn xi2(&self) -> Complex64 {
        self.xi2
    }

    pub fn reduced(&self) -> Self {
        FramePoint {
            theta: self.theta_reduced(),
            ..*self
        }
    }

    /// Quaternion components `(w, x, y, z)` of `ξ1 + j·conj(ξ2)`.
    pub fn quaternion(&self) -> [f64; 4] {
        [self.xi1.re, self.xi1.im, self.xi2.re, self.xi2.im]
    }
}

/// A tangent vector in the ambient coordinates `(θ, ξ1, ξ2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AmbientVector {
    pub theta: f64,
    pub xi1: Complex64,
    pub xi2: Complex64,
}

impl AmbientVector {
    fn scale(self, c: f64) -> Self {
        AmbientVector {
            theta: self.theta * c,
            xi1: self.xi1 * c,
            xi2: self.xi2 * c,
        }
    }

    fn add(self, o: Self) -> Self {
        AmbientVector {
            theta: self.theta + o.theta,
            xi1: self.xi1 + o.xi1,
            xi2: self.xi2 + o.xi2,
        }
    }
}

/// Components of a tangent vector in the frame `e1, …, e4`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrameVector(pub [f64; 4]);

impl FrameVector {
    pub fn axis(a: FrameAxis) -> Self {
        let mut v = [0.0; 4];
        v[a.index()] = 1.0;
        FrameVector(v)
    }

    pub fn to_vector(self) -> Vector4<f64> {
        Vector4::from(self.0)
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        FrameVector([v[0], v[1], v[2], v[3]])
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// A 1-form in the dual frame `e¹, …, e⁴`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrameCovector(pub [f64; 4]);

impl FrameCovector {
    pub fn apply(&self, v: &FrameVector) -> f64 {
        (0..4).map(|i| self.0[i] * v.0[i]).sum()
    }
}

/// Holomorphic-type coordinates `(u, v)` of a tangent vector, read off the
/// basis `e2, Je2, e3, e4 = Je3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexCoords {
    pub u: Complex64,
    pub v: Complex64,
}

/// A point of `ℂ² \ {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UniversalPoint {
    pub z1: Complex64,
    pub z2: Complex64,
}

/// Result of inverting the diffeomorphism: the point with `θ ∈ [0, 2π)` and
/// the lifted angle `θ` that maps exactly onto the input.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UniversalPreimage {
    pub point: FramePoint,
    pub lifted_theta: f64,
}

impl UniversalPreimage {
    pub fn lifted(&self) -> FramePoint {
        FramePoint {
            theta: self.lifted_theta,
            ..self.point
        }
    }
}

/// The frame fields at `p` in ambient coordinates.
pub fn frame_fields(p: &FramePoint) -> [AmbientVector; 4] {
    let (x1, x2) = (p.xi1, p.xi2);
    let e3 = AmbientVector {
        theta: 0.0,
        xi1: -x2.conj(),
        xi2: x1.conj(),
    };
    [
        AmbientVector {
            theta: 1.0,
            xi1: Complex64::new(0.0, 0.0),
            xi2: Complex64::new(0.0, 0.0),
        },
        AmbientVector {
            theta: 0.0,
            xi1: I * x1,
            xi2: I * x2,
        },
        e3,
        AmbientVector {
            theta: 0.0,
            xi1: I * e3.xi1,
            xi2: I * e3.xi2,
        },
    ]
}

/// The ambient vector with frame components `v` at `p`.
pub fn frame_to_ambient(p: &FramePoint, v: &FrameVector) -> AmbientVector {
    let f = frame_fields(p);
    (0..4).fold(f[0].scale(0.0), |acc, i| acc.add(f[i].scale(v.0[i])))
}

/// Time-`t` map of the flow of a frame field.
pub fn frame_flow(p: &FramePoint, axis: FrameAxis, t: f64) -> FramePoint {
    let (c, s) = (t.cos(), t.sin());
    let (x1, x2) = (p.xi1, p.xi2);
    let (xi1, xi2) = match axis {
        FrameAxis::E1 => {
            return FramePoint {
                theta: p.theta + t,
                ..*p
            }
        }
        FrameAxis::E2 => {
            let e = Complex64::new(c, s);
            (e * x1, e * x2)
        }
        FrameAxis::E3 => (x1 * c - x2.conj() * s, x2 * c + x1.conj() * s),
        FrameAxis::E4 => (x1 * c - I * x2.conj() * s, x2 * c + I * x1.conj() * s),
    };
    FramePoint::unchecked(p.theta, xi1, xi2)
}

/// The constant frame brackets `[e_i, e_j]`.
pub fn frame_bracket(i: FrameAxis, j: FrameAxis) -> FrameVector {
    use FrameAxis::*;
    let mut v = [0.0; 4];
    match (i, j) {
        (E2, E3) => v[3] = -2.0,
        (E3, E2) => v[3] = 2.0,
        (E2, E4) => v[2] = 2.0,
        (E4, E2) => v[2] = -2.0,
        (E3, E4) => v[1] = -2.0,
        (E4, E3) => v[1] = 2.0,
        _ => {}
    }
    FrameVector(v)
}

/// `(exp(θ·log α/2π), exp(θ·log β/2π))`.
fn dilations(params: &HopfParams, theta: f64) -> (Complex64, Complex64) {
    (
        (params.log_alpha() * (theta / TAU)).exp(),
        (params.log_beta() * (theta / TAU)).exp(),
    )
}

/// The diffeomorphism `S¹ × S³ → H_{α,β}` evaluated on the universal cover.
/// Shifting `θ` by `2π` multiplies the image by `(α, β)`.
pub fn to_universal(params: &HopfParams, p: &FramePoint) -> UniversalPoint {
    let (l1, l2) = dilations(params, p.theta);
    UniversalPoint {
        z1: l1 * p.xi1,
        z2: l2 * p.xi2,
    }
}

/// Inverse of [`to_universal`] up to the deck group.
pub fn from_universal(
    params: &HopfParams,
    z: &UniversalPoint,
    cfg: &ToleranceConfig,
) -> Result<UniversalPreimage> {
    if !(z.z1.re.is_finite() && z.z1.im.is_finite() && z.z2.re.is_finite() && z.z2.im.is_finite())
    {
        return Err(Error::InvalidInput("non-finite point".into()));
    }
    let y = solve_monotone_log(
        z.z1.norm_sqr(),
        z.z2.norm_sqr(),
        params.log_mod_alpha(),
        params.log_mod_beta(),
        cfg.root_tol,
    )?;
    let theta = -PI * y;
    let (l1, l2) = dilations(params, theta);
    let lifted = FramePoint::new(theta, z.z1 / l1, z.z2 / l2)?;
    Ok(UniversalPreimage {
        point: lifted.reduced(),
        lifted_theta: theta,
    })
}

/// `G = ‖ξ1‖²·log α + ‖ξ2‖²·log β`.
pub fn g_value(params: &HopfParams, p: &FramePoint) -> Complex64 {
    params.log_alpha() * p.xi1.norm_sqr() + params.log_beta() * p.xi2.norm_sqr()
}

/// The differential of [`to_universal`] applied to a frame vector.
pub fn push_forward(params: &HopfParams, p: &FramePoint, v: &FrameVector) -> (Complex64, Complex64) {
    let a = frame_to_ambient(p, v);
    let (l1, l2) = dilations(params, p.theta);
    (
        a.theta * params.log_alpha() / TAU * l1 * p.xi1 + l1 * a.xi1,
        a.theta * params.log_beta() / TAU * l2 * p.xi2 + l2 * a.xi2,
    )
}

/// Matrix of the complex structure in the frame; column `j` holds `J e_j`.
pub fn j_matrix(params: &HopfParams, p: &FramePoint) -> Matrix4<f64> {
    let g = g_value(params, p);
    let w = p.xi1 * p.xi2;
    let l = params.log_quotient();
    let re = g.re;
    let a = I * w * g.conj() * l / (TAU * re);
    let b = w * l / re;
    Matrix4::new(
        -g.im / re,
        -TAU / re,
        0.0,
        0.0,
        g.norm_sqr() / (TAU * re),
        g.im / re,
        0.0,
        0.0,
        -a.re,
        -b.re,
        0.0,
        -1.0,
        -a.im,
        -b.im,
        1.0,
        0.0,
    )
}

pub fn j_apply(params: &HopfParams, p: &FramePoint, v: &FrameVector) -> FrameVector {
    FrameVector::from_vector(&(j_matrix(params, p) * v.to_vector()))
}

fn coordinate_basis(params: &HopfParams, p: &FramePoint) -> Matrix4<f64> {
    let j = j_matrix(params, p);
    let mut m = Matrix4::zeros();
    m[(1, 0)] = 1.0;
    m.set_column(1, &j.column(1));
    m[(2, 2)] = 1.0;
    m[(3, 3)] = 1.0;
    m
}

/// `(u, v)` with `X = Re u·e2 + Im u·Je2 + Re v·e3 + Im v·e4`.
pub fn complex_coords(params: &HopfParams, p: &FramePoint, x: &FrameVector) -> Result<ComplexCoords> {
    let m = coordinate_basis(params, p);
    let sol = m.lu().solve(&x.to_vector()).ok_or(Error::SingularBasis)?;
    if sol.iter().any(|c| !c.is_finite()) {
        return Err(Error::SingularBasis);
    }
    Ok(ComplexCoords {
        u: Complex64::new(sol[0], sol[1]),
        v: Complex64::new(sol[2], sol[3]),
    })
}

pub fn from_complex_coords(params: &HopfParams, p: &FramePoint, c: &ComplexCoords) -> FrameVector {
    let m = coordinate_basis(params, p);
    FrameVector::from_vector(&(m * Vector4::new(c.u.re, c.u.im, c.v.re, c.v.im)))
}
