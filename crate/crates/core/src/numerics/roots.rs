//! Root of the strictly increasing map `x ↦ a·x^A + b·x^B` on `x > 0`.

use crate::error::{Error, Result};

const MAX_BRACKET_STEPS: usize = 2200;
const BISECTION_STEPS: usize = 60;
const NEWTON_STEPS: usize = 8;

/// Solves `a·x^A + b·x^B = 1` for `x > 0` and returns `ln x`.
///
/// Working in `y = ln x` keeps the left side convex and increasing in `y`, so
/// Newton steps started right of the root converge monotonically.
pub fn solve_monotone_log(a: f64, b: f64, exp_a: f64, exp_b: f64, root_tol: f64) -> Result<f64> {
    if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "coefficients must be finite and non-negative (a = {a}, b = {b})"
        )));
    }
    if !(exp_a > 0.0 && exp_b > 0.0 && exp_a.is_finite() && exp_b.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "exponents must be positive (A = {exp_a}, B = {exp_b})"
        )));
    }
    if a == 0.0 && b == 0.0 {
        return Err(Error::DegenerateEquation);
    }
    let f = |y: f64| a * (exp_a * y).exp() + b * (exp_b * y).exp();
    let df = |y: f64| a * exp_a * (exp_a * y).exp() + b * exp_b * (exp_b * y).exp();

    // bracket by doubling the step away from y = 0 (x = 1)
    let (mut lo, mut hi) = if f(0.0) < 1.0 {
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut n = 0;
        while f(hi) < 1.0 {
            lo = hi;
            hi *= 2.0;
            n += 1;
            if n > MAX_BRACKET_STEPS || !hi.is_finite() {
                return Err(Error::InvalidInput("failed to bracket root".into()));
            }
        }
        (lo, hi)
    } else {
        let (mut lo, mut hi) = (-1.0, 0.0);
        let mut n = 0;
        while f(lo) > 1.0 {
            hi = lo;
            lo *= 2.0;
            n += 1;
            if n > MAX_BRACKET_STEPS || !lo.is_finite() {
                return Err(Error::InvalidInput("failed to bracket root".into()));
            }
        }
        (lo, hi)
    };
    debug_assert!(f(lo) <= 1.0 && f(hi) >= 1.0);

    for _ in 0..BISECTION_STEPS {
        if hi - lo <= 1e-3 * (1.0 + hi.abs().min(lo.abs())) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Newton from the right end of the bracket
    let mut y = hi;
    for _ in 0..NEWTON_STEPS * 4 {
        let r = f(y) - 1.0;
        let d = df(y);
        if d <= 0.0 || !d.is_finite() {
            break;
        }
        let next = (y - r / d).clamp(lo, hi);
        let done = (next - y).abs() <= 1e-17 * (1.0 + y.abs()) || r.abs() <= 0.25 * f64::EPSILON;
        y = next;
        if done {
            break;
        }
    }
    let fx = f(y);
    if (fx - 1.0).abs() > root_tol.max(4.0 * f64::EPSILON) * fx {
        // fall back to plain bisection; Newton can stall only through rounding
        let (mut lo, mut hi) = (lo, hi);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if f(mid) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return Ok(0.5 * (lo + hi));
    }
    Ok(y)
}

/// Solves `a·x^A + b·x^B = 1` for the unique `x > 0`.
pub fn solve_monotone(a: f64, b: f64, exp_a: f64, exp_b: f64, root_tol: f64) -> Result<f64> {
    solve_monotone_log(a, b, exp_a, exp_b, root_tol).map(f64::exp)
}
