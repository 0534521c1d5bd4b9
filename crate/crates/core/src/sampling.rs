//! Deterministic sample sets on `S¹ × S³`.
//!
//! A unit cube point `u ∈ [0,1)⁴` maps to `θ = 2πu₀`, `‖ξ1‖² = u₁` and
//! phases `2πu₂`, `2πu₃`; this is uniform for the product measure.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::frame::FramePoint;

/// Unique positive root of `x⁵ = x + 1`; its inverse powers give the
/// additive recurrence with the best known discrepancy in four dimensions.
const PLASTIC_4: f64 = 1.167_303_978_261_418_7;

pub fn cube_to_point(u: [f64; 4]) -> FramePoint {
    let r1 = u[1].clamp(0.0, 1.0).sqrt();
    let r2 = (1.0 - u[1].clamp(0.0, 1.0)).sqrt();
    FramePoint::new(
        TAU * u[0],
        Complex64::from_polar(r1, TAU * u[2]),
        Complex64::from_polar(r2, TAU * u[3]),
    )
    .expect("cube points map onto the sphere")
}

/// First `n` points of the additive low-discrepancy sequence.
pub fn quasi_random(n: usize) -> Vec<FramePoint> {
    let step: [f64; 4] = std::array::from_fn(|i| PLASTIC_4.powi(-(i as i32 + 1)));
    (1..=n)
        .map(|k| cube_to_point(std::array::from_fn(|i| (0.5 + k as f64 * step[i]).fract())))
        .collect()
}

/// `n` points of the cell-centred product grid with `⌈n^{1/4}⌉` nodes per
/// axis, taken at evenly spaced indices.
pub fn grid(n: usize) -> Vec<FramePoint> {
    if n == 0 {
        return Vec::new();
    }
    let m = (n as f64).powf(0.25).ceil() as usize;
    let total = m.pow(4);
    (0..n)
        .map(|k| {
            let mut idx = k * total / n;
            let u = std::array::from_fn(|_| {
                let c = idx % m;
                idx /= m;
                (c as f64 + 0.5) / m as f64
            });
            cube_to_point(u)
        })
        .collect()
}

/// `quasi_random` or, when `seedless`, `grid`.
pub fn sample_points(n: usize, seedless: bool) -> Vec<FramePoint> {
    if seedless {
        grid(n)
    } else {
        quasi_random(n)
    }
}
