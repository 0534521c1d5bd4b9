//! Flows of the Lee field `B` and anti-Lee field `JB`, the leaves they
//! generate, and a brute-force return-time oracle.
//!
//! Both flows act diagonally on `(θ, arg ξ1, arg ξ2)` and preserve `‖ξ1‖`:
//! the Lee flow moves `θ` at rate `−4π` and the phases at rates `2 arg α`,
//! `2 arg β`; the anti-Lee flow fixes `θ` and moves the phases at rates
//! `−2 log‖α‖`, `−2 log‖β‖`.

pub mod classify;

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{FramePoint, HopfParams};

pub use classify::{
    classify_leaf, elliptic_condition, knot_type, lattice, Classification, EllipticWitness,
    KnotType, LeafClass, Lattice, LatticeCertificate, AXIS_THRESHOLD,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FoliationKind {
    /// Leaves are the slices `{θ} × S³`.
    KernelLee,
    LeeFlow,
    AntiLeeFlow,
    /// The plane field spanned by `B` and `JB`.
    LeeAntiLeePlane,
}

impl FoliationKind {
    pub const ALL: [FoliationKind; 4] = [
        FoliationKind::KernelLee,
        FoliationKind::LeeFlow,
        FoliationKind::AntiLeeFlow,
        FoliationKind::LeeAntiLeePlane,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FoliationKind::KernelLee => "kernel-lee",
            FoliationKind::LeeFlow => "lee-flow",
            FoliationKind::AntiLeeFlow => "anti-lee-flow",
            FoliationKind::LeeAntiLeePlane => "lee-anti-lee-plane",
        }
    }
}

impl fmt::Display for FoliationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FoliationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kernel-lee" | "kernel" => Ok(FoliationKind::KernelLee),
            "lee-flow" | "lee" => Ok(FoliationKind::LeeFlow),
            "anti-lee-flow" | "anti-lee" => Ok(FoliationKind::AntiLeeFlow),
            "lee-anti-lee-plane" | "plane" => Ok(FoliationKind::LeeAntiLeePlane),
            _ => Err(Error::InvalidInput(format!("unknown foliation '{s}'"))),
        }
    }
}

fn rotate(p: &FramePoint, dtheta: f64, phase1: f64, phase2: f64) -> FramePoint {
    FramePoint::unchecked(
        (p.theta() + dtheta).rem_euclid(TAU),
        p.xi1() * Complex64::from_polar(1.0, phase1),
        p.xi2() * Complex64::from_polar(1.0, phase2),
    )
}

/// Time-`t` map of the Lee flow.
pub fn flow_lee(params: &HopfParams, p0: &FramePoint, t: f64) -> FramePoint {
    rotate(
        p0,
        -4.0 * PI * t,
        2.0 * t * params.arg_alpha(),
        2.0 * t * params.arg_beta(),
    )
}

/// Time-`s` map of the anti-Lee flow.
pub fn flow_anti_lee(params: &HopfParams, p0: &FramePoint, s: f64) -> FramePoint {
    rotate(
        p0,
        0.0,
        -2.0 * s * params.log_mod_alpha(),
        -2.0 * s * params.log_mod_beta(),
    )
}

/// The leaf of the plane field through `p0` parametrized by `(t, s)`.
pub fn leaf_surface(params: &HopfParams, p0: &FramePoint, t: f64, s: f64) -> FramePoint {
    rotate(
        p0,
        -4.0 * PI * t,
        2.0 * (t * params.arg_alpha() - s * params.log_mod_alpha()),
        2.0 * (t * params.arg_beta() - s * params.log_mod_beta()),
    )
}

/// Flow of `kind` for the one-dimensional foliations.
pub fn flow(params: &HopfParams, kind: FoliationKind, p0: &FramePoint, t: f64) -> Result<FramePoint> {
    match kind {
        FoliationKind::LeeFlow => Ok(flow_lee(params, p0, t)),
        FoliationKind::AntiLeeFlow => Ok(flow_anti_lee(params, p0, t)),
        other => Err(Error::InvalidInput(format!("{other} is not a flow"))),
    }
}

/// `max(angular distance of θ, ‖ξ − ξ′‖)`.
pub fn distance(p: &FramePoint, q: &FramePoint) -> f64 {
    let d = (p.theta() - q.theta()).rem_euclid(TAU);
    let angular = d.min(TAU - d);
    let chord = ((p.xi1() - q.xi1()).norm_sqr() + (p.xi2() - q.xi2()).norm_sqr()).sqrt();
    angular.max(chord)
}

/// `(arg ξ1, arg ξ2)` in `[0, 2π)`: the position on the torus `‖ξ1‖ = const`.
pub fn torus_angles(p: &FramePoint) -> (f64, f64) {
    (p.xi1().arg().rem_euclid(TAU), p.xi2().arg().rem_euclid(TAU))
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Smallest `t ∈ (0, t_max]` with `distance(flow(p0, t), p0) < tol`, found by
/// scanning `grid` evenly spaced times and refining each local minimum.
pub fn period_oracle(
    params: &HopfParams,
    p0: &FramePoint,
    kind: FoliationKind,
    t_max: f64,
    grid: usize,
    tol: f64,
) -> Result<Option<f64>> {
    if !(t_max > 0.0 && t_max.is_finite()) || grid < 3 || !(tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "bad oracle settings t_max = {t_max}, grid = {grid}, tol = {tol}"
        )));
    }
    flow(params, kind, p0, 0.0)?;
    let p0 = p0.reduced();
    let dist = |t: f64| distance(&flow(params, kind, &p0, t).expect("checked above"), &p0);
    let dt = t_max / grid as f64;
    let mut prev = (0.0, 0.0);
    let mut cur = (dt, dist(dt));
    for i in 2..=grid + 1 {
        let t = dt * i as f64;
        let next = (t, dist(t));
        let is_min = cur.1 <= next.1 && (i == 2 || cur.1 <= prev.1);
        if is_min {
            let lo = if i == 2 { cur.0 * 0.5 } else { prev.0 };
            let (t, d) = golden_min(&dist, lo, next.0);
            if d < tol && t > 0.0 && t <= t_max * (1.0 + 1e-12) {
                return Ok(Some(t));
            }
        }
        prev = cur;
        cur = next;
    }
    Ok(None)
}
