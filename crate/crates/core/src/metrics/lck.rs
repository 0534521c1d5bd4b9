//! Sample-based check of `dω = 0` and `dΩ = ω ∧ Ω`.

use nalgebra::Matrix4;
use serde::Serialize;

use super::{fundamental_matrix, MetricField};
use crate::error::Result;
use crate::frame::{frame_bracket, FrameAxis, FrameCovector, FramePoint};
use crate::numerics::{try_directional_derivative_4th, ToleranceConfig};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LckReport {
    pub samples: usize,
    /// Largest `|dω(e_i, e_j)|`.
    pub max_d_lee: f64,
    /// Largest `|dΩ − ω ∧ Ω|` on triples of frame vectors.
    pub max_d_fundamental: f64,
    pub positivity_violations: usize,
}

impl LckReport {
    pub fn max_residual(&self) -> f64 {
        self.max_d_lee.max(self.max_d_fundamental)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() < tol && self.positivity_violations == 0
    }
}

fn flatten(m: &Matrix4<f64>) -> [f64; 16] {
    std::array::from_fn(|k| m[(k / 4, k % 4)])
}

/// Residuals of `dω` and `dΩ − ω ∧ Ω` at one point.
pub fn lck_residuals<M: MetricField + ?Sized>(
    field: &M,
    p: &FramePoint,
    cfg: &ToleranceConfig,
) -> Result<(f64, f64)> {
    let step = cfg.derivative_step;
    let omega = field.lee_form(p);
    let big = fundamental_matrix(field, p)?;
    let mut d_lee = [[0.0; 4]; 4];
    let mut d_big = [[0.0; 16]; 4];
    for a in FrameAxis::ALL {
        d_lee[a.index()] = try_directional_derivative_4th(
            |q| Ok::<_, crate::Error>(field.lee_form(q).0),
            a,
            p,
            step,
        )?;
        d_big[a.index()] =
            try_directional_derivative_4th(|q| fundamental_matrix(field, q).map(|m| flatten(&m)), a, p, step)?;
    }
    let on = |c: &FrameCovector, v: [f64; 4]| (0..4).map(|k| c.0[k] * v[k]).sum::<f64>();
    let big_on = |v: [f64; 4], k: usize| (0..4).map(|m| v[m] * big[(m, k)]).sum::<f64>();
    let bracket = |i: usize, j: usize| frame_bracket(FrameAxis::ALL[i], FrameAxis::ALL[j]).0;

    let mut max_lee: f64 = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            let v = d_lee[i][j] - d_lee[j][i] - on(&omega, bracket(i, j));
            max_lee = max_lee.max(v.abs());
        }
    }
    let mut max_big: f64 = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in (j + 1)..4 {
                let cyc = [(i, j, k), (j, k, i), (k, i, j)];
                let mut d = 0.0;
                let mut wedge = 0.0;
                for &(a, b, c) in &cyc {
                    d += d_big[a][4 * b + c] - big_on(bracket(a, b), c);
                    wedge += omega.0[a] * big[(b, c)];
                }
                max_big = max_big.max((d - wedge).abs());
            }
        }
    }
    Ok((max_lee, max_big))
}

pub fn verify_lck<M: MetricField + ?Sized>(
    field: &M,
    points: &[FramePoint],
    cfg: &ToleranceConfig,
) -> Result<LckReport> {
    cfg.validate()?;
    let mut report = LckReport {
        samples: points.len(),
        max_d_lee: 0.0,
        max_d_fundamental: 0.0,
        positivity_violations: 0,
    };
    for p in points {
        if !field.matrix(p).is_positive_definite() {
            report.positivity_violations += 1;
        }
        let (a, b) = lck_residuals(field, p, cfg)?;
        report.max_d_lee = report.max_d_lee.max(a);
        report.max_d_fundamental = report.max_d_fundamental.max(b);
    }
    Ok(report)
}
