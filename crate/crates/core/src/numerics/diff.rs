//! Finite differences along the exact flows of the frame fields.

use crate::frame::{frame_flow, FrameAxis, FramePoint};

/// Central difference `(f(φ_h p) − f(φ_{−h} p)) / 2h` along the flow of `axis`.
pub fn directional_derivative<F>(f: F, axis: FrameAxis, p: &FramePoint, step: f64) -> f64
where
    F: Fn(&FramePoint) -> f64,
{
    let plus = f(&frame_flow(p, axis, step));
    let minus = f(&frame_flow(p, axis, -step));
    (plus - minus) / (2.0 * step)
}

/// Fourth-order five-point stencil along the flow of `axis`.
pub fn directional_derivative_4th<F>(f: F, axis: FrameAxis, p: &FramePoint, step: f64) -> f64
where
    F: Fn(&FramePoint) -> f64,
{
    let at = |t: f64| f(&frame_flow(p, axis, t));
    (at(-2.0 * step) - 8.0 * at(-step) + 8.0 * at(step) - at(2.0 * step)) / (12.0 * step)
}

/// Same stencil applied componentwise to array-valued fields.
pub fn directional_derivative_4th_array<const N: usize, F>(
    f: F,
    axis: FrameAxis,
    p: &FramePoint,
    step: f64,
) -> [f64; N]
where
    F: Fn(&FramePoint) -> [f64; N],
{
    let m2 = f(&frame_flow(p, axis, -2.0 * step));
    let m1 = f(&frame_flow(p, axis, -step));
    let p1 = f(&frame_flow(p, axis, step));
    let p2 = f(&frame_flow(p, axis, 2.0 * step));
    std::array::from_fn(|i| (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * step))
}

/// Fallible variant of [`directional_derivative_4th_array`].
pub fn try_directional_derivative_4th<const N: usize, F, E>(
    f: F,
    axis: FrameAxis,
    p: &FramePoint,
    step: f64,
) -> Result<[f64; N], E>
where
    F: Fn(&FramePoint) -> Result<[f64; N], E>,
{
    let m2 = f(&frame_flow(p, axis, -2.0 * step))?;
    let m1 = f(&frame_flow(p, axis, -step))?;
    let p1 = f(&frame_flow(p, axis, step))?;
    let p2 = f(&frame_flow(p, axis, 2.0 * step))?;
    Ok(std::array::from_fn(|i| {
        (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * step)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn point(theta: f64, a: [f64; 4]) -> FramePoint {
        FramePoint::new(
            theta,
            Complex64::new(a[0], a[1]),
            Complex64::new(a[2], a[3]),
        )
        .unwrap()
    }

    #[test]
    fn theta_along_e1_is_one() {
        let p = point(1.3, [0.3, -0.2, 0.5, 0.7]);
        let d = directional_derivative(|q| q.theta(), FrameAxis::E1, &p, 1e-4);
        assert!((d - 1.0).abs() < 1e-10);
    }

    #[test]
    fn modulus_is_invariant_along_e2() {
        let p = point(0.4, [0.3, -0.2, 0.5, 0.7]);
        let d = directional_derivative(|q| q.xi1().norm_sqr(), FrameAxis::E2, &p, 1e-4);
        assert!(d.abs() < 1e-10);
    }

    #[test]
    fn real_part_along_e2_at_base_point() {
        let p = point(0.0, [1.0, 0.0, 0.0, 0.0]);
        let d = directional_derivative(|q| q.xi1().re, FrameAxis::E2, &p, 1e-4);
        assert!(d.abs() < 1e-12);
        // d/dt Im(e^{it}) = 1
        let d = directional_derivative(|q| q.xi1().im, FrameAxis::E2, &p, 1e-4);
        assert!((d - 1.0).abs() < 1e-8);
    }

    #[test]
    fn second_order_convergence() {
        // f = Re ξ1 · Im ξ2 along e3 against the analytic derivative via the
        // ambient field e3 = (−conj ξ2, conj ξ1)
        let p = point(0.2, [0.4, 0.1, -0.6, 0.3]);
        let f = |q: &FramePoint| q.xi1().re * q.xi2().im;
        let (x1, x2) = (p.xi1(), p.xi2());
        let (v1, v2) = (-x2.conj(), x1.conj());
        let exact = v1.re * x2.im + x1.re * v2.im;
        let e1 = (directional_derivative(f, FrameAxis::E3, &p, 1e-2) - exact).abs();
        let e2 = (directional_derivative(f, FrameAxis::E3, &p, 5e-3) - exact).abs();
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");
        let e4 = (directional_derivative_4th(f, FrameAxis::E3, &p, 2e-3) - exact).abs();
        assert!(e4 < 1e-9);
    }
}
