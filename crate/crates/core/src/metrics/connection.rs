//! Levi-Civita connection in the frame from the Koszul formula, and the
//! covariant derivative of the Lee form.

use std::f64::consts::PI;

use nalgebra::{Matrix4, SymmetricEigen};
use serde::Serialize;

use super::{gram_matrix, LckFamily, MetricField};
use crate::error::{Error, Result};
use crate::frame::{frame_bracket, g_value, FrameAxis, FramePoint, FrameVector};
use crate::numerics::{try_directional_derivative_4th, ToleranceConfig};

/// Gram matrices with a larger condition number are rejected.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Christoffel symbols: `∇_{e_i} e_j = Σ_k gamma[i][j][k] e_k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Connection {
    pub gamma: [[[f64; 4]; 4]; 4],
}

impl Connection {
    pub fn covariant(&self, i: FrameAxis, j: FrameAxis) -> FrameVector {
        FrameVector(self.gamma[i.index()][j.index()])
    }
}

/// `dg[i][j][k] = e_i(g(e_j, e_k))`.
pub fn gram_derivatives<M: MetricField + ?Sized>(
    field: &M,
    p: &FramePoint,
    step: f64,
) -> Result<[[[f64; 4]; 4]; 4]> {
    let mut out = [[[0.0; 4]; 4]; 4];
    for a in FrameAxis::ALL {
        let flat = try_directional_derivative_4th(
            |q| {
                gram_matrix(field, q).map(|m| std::array::from_fn::<f64, 16, _>(|k| m[(k / 4, k % 4)]))
            },
            a,
            p,
            step,
        )?;
        for j in 0..4 {
            for k in 0..4 {
                out[a.index()][j][k] = flat[4 * j + k];
            }
        }
    }
    Ok(out)
}

fn bracket(i: usize, j: usize) -> [f64; 4] {
    frame_bracket(FrameAxis::ALL[i], FrameAxis::ALL[j]).0
}

/// Solves `2g(∇_X Y, Z) = X g(Y,Z) + Y g(X,Z) − Z g(X,Y) + g([X,Y],Z)
/// − g([Y,Z],X) + g([Z,X],Y)` on frame fields.
pub fn levi_civita<M: MetricField + ?Sized>(
    field: &M,
    p: &FramePoint,
    cfg: &ToleranceConfig,
) -> Result<Connection> {
    let g = gram_matrix(field, p)?;
    let eig = SymmetricEigen::new(g).eigenvalues;
    let (lo, hi) = eig
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), e| (lo.min(*e), hi.max(e.abs())));
    let cond = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !(cond <= CONDITION_LIMIT) {
        return Err(Error::IllConditioned(cond));
    }
    let ginv = g.try_inverse().ok_or(Error::IllConditioned(f64::INFINITY))?;
    let dg = gram_derivatives(field, p, cfg.derivative_step)?;
    let gv = |v: [f64; 4], k: usize| (0..4).map(|m| v[m] * g[(m, k)]).sum::<f64>();

    let mut gamma = [[[0.0; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let koszul: [f64; 4] = std::array::from_fn(|k| {
                0.5 * (dg[i][j][k] + dg[j][i][k] - dg[k][i][j] + gv(bracket(i, j), k)
                    - gv(bracket(j, k), i)
                    + gv(bracket(k, i), j))
            });
            for m in 0..4 {
                gamma[i][j][m] = (0..4).map(|k| koszul[k] * ginv[(k, m)]).sum();
            }
        }
    }
    Ok(Connection { gamma })
}

/// `(∇_{e_i} ω)(e_j) = e_i(ω_j) − ω(∇_{e_i} e_j)`.
pub fn nabla_lee<M: MetricField + ?Sized>(
    field: &M,
    p: &FramePoint,
    cfg: &ToleranceConfig,
) -> Result<Matrix4<f64>> {
    let conn = levi_civita(field, p, cfg)?;
    let omega = field.lee_form(p);
    let mut out = Matrix4::zeros();
    for a in FrameAxis::ALL {
        let d = try_directional_derivative_4th(
            |q| Ok::<_, Error>(field.lee_form(q).0),
            a,
            p,
            cfg.derivative_step,
        )?;
        let i = a.index();
        for j in 0..4 {
            let along: f64 = (0..4).map(|k| conn.gamma[i][j][k] * omega.0[k]).sum();
            out[(i, j)] = d[j] - along;
        }
    }
    Ok(out)
}

/// Closed form of `∇ω` for [`LckFamily`]: only the `e1, e2` block is nonzero
/// and every entry carries a factor `h′`.
pub fn nabla_lee_closed_form(family: &LckFamily, p: &FramePoint) -> Matrix4<f64> {
    let g = g_value(&family.params, p);
    let dh = family.h.derivative(p.theta());
    let re2 = g.re * g.re;
    let mut m = Matrix4::zeros();
    m[(0, 0)] = -dh * g.norm_sqr() / (2.0 * re2);
    m[(1, 1)] = -2.0 * dh * PI * PI / re2;
    m[(0, 1)] = -dh * PI * g.im / re2;
    m[(1, 0)] = m[(0, 1)];
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VaismanReport {
    pub verdict: bool,
    /// Largest Frobenius norm of `∇ω` over the samples.
    pub max_residual: f64,
}

/// Vaisman iff `∇ω` vanishes (below `threshold`) on every sample.
pub fn is_vaisman<M: MetricField + ?Sized>(
    field: &M,
    points: &[FramePoint],
    threshold: f64,
    cfg: &ToleranceConfig,
) -> Result<VaismanReport> {
    let mut max_residual: f64 = 0.0;
    for p in points {
        max_residual = max_residual.max(nabla_lee(field, p, cfg)?.norm());
    }
    Ok(VaismanReport {
        verdict: max_residual < threshold,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::HopfParams;
    use crate::metrics::HSpec;
    use crate::sampling::quasi_random;
    use num_complex::Complex64;

    fn family(a: (f64, f64), b: (f64, f64), h: &str) -> LckFamily {
        let pr = HopfParams::new(Complex64::new(a.0, a.1), Complex64::new(b.0, b.1)).unwrap();
        LckFamily::new(pr, h.parse::<HSpec>().unwrap()).unwrap()
    }

    #[test]
    fn metric_and_torsion_free() {
        let cfg = ToleranceConfig::default();
        let f = family((-3.0, 4.0), (1.2, -1.1), "fourier:2,0.2,0.5");
        for p in quasi_random(10) {
            let c = levi_civita(&f, &p, &cfg).unwrap();
            let g = gram_matrix(&f, &p).unwrap();
            let dg = gram_derivatives(&f, &p, cfg.derivative_step).unwrap();
            let gv = |v: &[f64; 4], k: usize| (0..4).map(|m| v[m] * g[(m, k)]).sum::<f64>();
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        let rhs = gv(&c.gamma[i][j], k) + gv(&c.gamma[i][k], j);
                        assert!((dg[i][j][k] - rhs).abs() < 1e-5);
                    }
                    let br = bracket(i, j);
                    for m in 0..4 {
                        let t = c.gamma[i][j][m] - c.gamma[j][i][m] - br[m];
                        assert!(t.abs() < 1e-5);
                    }
                }
            }
        }
    }

    #[test]
    fn lee_derivative_matches_closed_form() {
        let cfg = ToleranceConfig::default();
        for (a, b) in [((0.0, 2.0), (2.0, 0.0)), ((-3.0, 4.0), (1.2, -1.1))] {
            let f = family(a, b, "fourier:2,0.3,0.5");
            for p in quasi_random(10) {
                let n = nabla_lee(&f, &p, &cfg).unwrap();
                let c = nabla_lee_closed_form(&f, &p);
                assert!((n - c).amax() < 1e-6, "{n} vs {c}");
            }
        }
    }

    #[test]
    fn vaisman_dichotomy() {
        let cfg = ToleranceConfig::default();
        let pts = quasi_random(20);
        let r = is_vaisman(&family((0.0, 2.0), (2.0, 0.0), "const:3"), &pts, 1e-8, &cfg).unwrap();
        assert!(r.verdict, "{r:?}");
        let r = is_vaisman(&family((0.0, 2.0), (2.0, 0.0), "fourier:2,0,0.5"), &pts, 1e-8, &cfg)
            .unwrap();
        assert!(!r.verdict && r.max_residual > 1e-2, "{r:?}");
    }
}
