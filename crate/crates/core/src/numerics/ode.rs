//! Integration of the potential equation `L″ = h·L′ − (L′)²`.
//!
//! The state is `(L, L′)` with `L(θ0) = 0`. Steps are classical RK4 with
//! step-doubling error control; accepted steps use the Richardson-corrected
//! value. `L″` in the output is not read off the right-hand side: it is a
//! five-point difference of `L′` re-integrated around each sample, so the
//! reported residual measures how well the trajectory actually solves the
//! equation.

use serde::Serialize;

use super::ToleranceConfig;
use crate::error::{Error, Result};

/// `L′` must stay inside `(POSITIVITY_FLOOR, 1/POSITIVITY_FLOOR)`.
pub const POSITIVITY_FLOOR: f64 = 1e-8;

const LOCAL_TOL: f64 = 1e-13;
const MIN_STEP: f64 = 1e-9;
const MAX_STEP: f64 = 0.05;
const STENCIL_STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PotentialSample {
    pub theta: f64,
    pub l: f64,
    pub dl: f64,
    pub d2l: f64,
    /// `|((L′)² + L″)/L′ − h|`
    pub residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PotentialTrajectory {
    pub samples: Vec<PotentialSample>,
    /// Where `L′` left the admissible band, if it did.
    pub blow_up: Option<f64>,
}

impl PotentialTrajectory {
    pub fn max_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.residual)
            .fold(0.0, |m, r| if r.is_nan() { f64::NAN } else { m.max(r) })
    }
}

#[derive(Clone, Copy, Debug)]
struct State {
    l: f64,
    v: f64,
}

fn in_band(v: f64) -> bool {
    v.is_finite() && v > POSITIVITY_FLOOR && v < 1.0 / POSITIVITY_FLOOR
}

fn rk4_step<F: Fn(f64) -> f64>(h: &F, theta: f64, y: State, dt: f64) -> State {
    let f = |t: f64, s: State| -> (f64, f64) { (s.v, h(t) * s.v - s.v * s.v) };
    let k1 = f(theta, y);
    let y2 = State {
        l: y.l + 0.5 * dt * k1.0,
        v: y.v + 0.5 * dt * k1.1,
    };
    let k2 = f(theta + 0.5 * dt, y2);
    let y3 = State {
        l: y.l + 0.5 * dt * k2.0,
        v: y.v + 0.5 * dt * k2.1,
    };
    let k3 = f(theta + 0.5 * dt, y3);
    let y4 = State {
        l: y.l + dt * k3.0,
        v: y.v + dt * k3.1,
    };
    let k4 = f(theta + dt, y4);
    State {
        l: y.l + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        v: y.v + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    }
}

/// Adaptive integration from `from` to `to` (either direction). On leaving
/// the band returns `Err(theta)` where it happened.
fn advance<F: Fn(f64) -> f64>(
    h: &F,
    from: f64,
    to: f64,
    mut y: State,
    dt_hint: &mut f64,
) -> std::result::Result<State, f64> {
    let dir = if to >= from { 1.0 } else { -1.0 };
    let mut theta = from;
    while (to - theta) * dir > 0.0 {
        let remaining = (to - theta).abs();
        let mut dt = dt_hint.min(remaining).max(MIN_STEP.min(remaining));
        loop {
            let full = rk4_step(h, theta, y, dir * dt);
            let half = rk4_step(h, theta, y, dir * dt * 0.5);
            let two = rk4_step(h, theta + dir * dt * 0.5, half, dir * dt * 0.5);
            let err_l = (two.l - full.l).abs() / 15.0;
            let err_v = (two.v - full.v).abs() / 15.0;
            let scale_l = 1.0 + two.l.abs();
            let scale_v = 1.0 + two.v.abs();
            let err = (err_l / scale_l).max(err_v / scale_v);
            if !err.is_finite() {
                if dt <= MIN_STEP {
                    return Err(theta);
                }
                dt *= 0.25;
                continue;
            }
            if err <= LOCAL_TOL || dt <= MIN_STEP {
                y = State {
                    l: two.l + (two.l - full.l) / 15.0,
                    v: two.v + (two.v - full.v) / 15.0,
                };
                theta += dir * dt;
                if dt >= remaining {
                    theta = to;
                }
                if !in_band(y.v) {
                    return Err(theta);
                }
                let grow = if err == 0.0 {
                    4.0
                } else {
                    (0.9 * (LOCAL_TOL / err).powf(0.2)).clamp(0.2, 4.0)
                };
                *dt_hint = (dt * grow).clamp(MIN_STEP, MAX_STEP);
                break;
            }
            let shrink = (0.9 * (LOCAL_TOL / err).powf(0.2)).clamp(0.1, 0.5);
            dt = (dt * shrink).max(MIN_STEP);
        }
    }
    Ok(y)
}

/// `L″` at `theta` as the five-point derivative of `L′`, where the nearby
/// values of `L′` come from short fixed-step re-integration.
fn stencil_second_derivative<F: Fn(f64) -> f64>(h: &F, theta: f64, y: State) -> f64 {
    let sub = 8;
    let at = |offset: f64| -> f64 {
        let mut s = y;
        let dt = offset / sub as f64;
        let mut t = theta;
        for _ in 0..sub {
            s = rk4_step(h, t, s, dt);
            t += dt;
        }
        s.v
    };
    let d = STENCIL_STEP;
    let (m2, m1, p1, p2) = (at(-2.0 * d), at(-d), at(d), at(2.0 * d));
    (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * d)
}

fn sample<F: Fn(f64) -> f64>(h: &F, theta: f64, y: State) -> PotentialSample {
    let d2l = stencil_second_derivative(h, theta, y);
    let residual = ((y.v * y.v + d2l) / y.v - h(theta)).abs();
    PotentialSample {
        theta,
        l: y.l,
        dl: y.v,
        d2l,
        residual,
    }
}

/// Integrates the potential equation with `L(θ0) = 0`, `L′(θ0) = v0`, and
/// samples it on `samples` evenly spaced points of `span` (both ends
/// included). `span` must contain `theta0`.
///
/// On leaving the band `(floor, 1/floor)` the error carries the partial
/// trajectory computed up to that point.
pub fn integrate_potential<F: Fn(f64) -> f64>(
    h: F,
    theta0: f64,
    v0: f64,
    span: (f64, f64),
    samples: usize,
    cfg: &ToleranceConfig,
) -> Result<PotentialTrajectory> {
    cfg.validate()?;
    let (lo, hi) = span;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidInput(format!("bad span [{lo}, {hi}]")));
    }
    if !(theta0 >= lo && theta0 <= hi) {
        return Err(Error::InvalidInput(format!(
            "theta0 = {theta0} outside span [{lo}, {hi}]"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidInput("need at least two samples".into()));
    }
    if !v0.is_finite() || v0 <= 0.0 {
        return Err(Error::InvalidInput(format!("v0 must be positive, got {v0}")));
    }
    let grid: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect();
    let start = State { l: 0.0, v: v0 };
    let blow = |theta: f64, samples: Vec<PotentialSample>| Error::BlowUp {
        theta,
        partial: Box::new(PotentialTrajectory {
            samples,
            blow_up: Some(theta),
        }),
    };
    if !in_band(v0) {
        return Err(blow(theta0, Vec::new()));
    }

    let split = grid.partition_point(|&t| t < theta0);
    let mut forward = Vec::with_capacity(samples - split);
    let mut dt = 0.01;
    let mut y = start;
    let mut theta = theta0;
    for &t in &grid[split..] {
        match advance(&h, theta, t, y, &mut dt) {
            Ok(next) => {
                y = next;
                theta = t;
                forward.push(sample(&h, t, y));
            }
            Err(at) => return Err(blow(at, forward)),
        }
    }
    let mut backward = Vec::with_capacity(split);
    let mut dt = 0.01;
    let mut y = start;
    let mut theta = theta0;
    for &t in grid[..split].iter().rev() {
        match advance(&h, theta, t, y, &mut dt) {
            Ok(next) => {
                y = next;
                theta = t;
                backward.push(sample(&h, t, y));
            }
            Err(at) => {
                backward.reverse();
                backward.extend(forward);
                return Err(blow(at, backward));
            }
        }
    }
    backward.reverse();
    backward.extend(forward);
    Ok(PotentialTrajectory {
        samples: backward,
        blow_up: None,
    })
}
