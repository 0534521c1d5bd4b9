//! The map `(θ, ξ1, ξ2) ↦ [e^{iθc} ξ1^m : ξ2^n]` onto `ℂP¹` whose fibres
//! are the compact leaves of the plane field when `α^m = β^n`.

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::foliations::elliptic_condition;
use crate::frame::{Certainty, Decided, FramePoint, HopfParams, UniversalPoint};
use crate::numerics::ToleranceConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyData {
    pub m: i64,
    pub n: i64,
    /// `(m arg α − n arg β) / 2π`.
    pub monodromy_c: i64,
}

/// Minimal `(m, n)` with `α^m = β^n` and the winding integer `c`.
pub fn monodromy(params: &HopfParams, cfg: &ToleranceConfig) -> Result<Decided<MonodromyData>> {
    let w = elliptic_condition(params, cfg);
    let Some(wt) = w.value else {
        return Err(Error::NotElliptic("no integers m, n with α^m = β^n".into()));
    };
    let data = MonodromyData {
        m: wt.m,
        n: wt.n,
        monodromy_c: wt.monodromy_c,
    };
    debug_assert_eq!(wt.m.gcd(&wt.n).gcd(&wt.monodromy_c), 1);
    Ok(Decided {
        value: data,
        certainty: w.certainty,
    })
}

/// A point `[w0 : w1]` of `ℂP¹`, scaled so that the entry of larger modulus
/// (`w0` on ties) equals 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProjectivePoint {
    pub w0: Complex64,
    pub w1: Complex64,
}

impl ProjectivePoint {
    pub fn new(w0: Complex64, w1: Complex64) -> Result<Self> {
        let (a, b) = (w0.norm(), w1.norm());
        if !(a.is_finite() && b.is_finite()) || (a == 0.0 && b == 0.0) {
            return Err(Error::InvalidInput("[0:0] is not a projective point".into()));
        }
        let one = Complex64::new(1.0, 0.0);
        Ok(if a >= b {
            ProjectivePoint { w0: one, w1: w1 / w0 }
        } else {
            ProjectivePoint { w0: w0 / w1, w1: one }
        })
    }
}

/// Fubini–Study distance in `[0, π/2]`.
pub fn fs_distance(a: &ProjectivePoint, b: &ProjectivePoint) -> f64 {
    let cross = (a.w0 * b.w1 - a.w1 * b.w0).norm();
    let inner = (a.w0 * b.w0.conj() + a.w1 * b.w1.conj()).norm();
    cross.atan2(inner)
}

/// `[e^{iθc} ξ1^m : ξ2^n]`.
pub fn fibration_map(data: &MonodromyData, p: &FramePoint) -> ProjectivePoint {
    let w0 = Complex64::from_polar(1.0, p.theta() * data.monodromy_c as f64)
        * p.xi1().powi(data.m as i32);
    let w1 = p.xi2().powi(data.n as i32);
    ProjectivePoint::new(w0, w1).expect("ξ1 and ξ2 do not vanish together")
}

/// `[z1^m : z2^n]` on the universal cover.
pub fn universal_map(data: &MonodromyData, z: &UniversalPoint) -> Result<ProjectivePoint> {
    ProjectivePoint::new(z.z1.powi(data.m as i32), z.z2.powi(data.n as i32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicities {
    pub generic: i64,
    /// Leaves through points `(θ, 0, ξ2)`.
    pub xi2_axis: i64,
    /// Leaves through points `(θ, ξ1, 0)`.
    pub xi1_axis: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrbifoldData {
    pub regular: bool,
    pub quasi_regular: bool,
    pub cone_orders: Option<(i64, i64)>,
    pub multiplicities: Option<Multiplicities>,
    pub certainty: Certainty,
}

pub fn regularity(params: &HopfParams, cfg: &ToleranceConfig) -> OrbifoldData {
    let eq = params.alpha_equals_beta(cfg);
    let w = elliptic_condition(params, cfg);
    let cone_orders = w.value.map(|w| (w.m, w.n));
    OrbifoldData {
        regular: eq.value,
        quasi_regular: cone_orders.is_some(),
        cone_orders,
        multiplicities: cone_orders.map(|(m, n)| Multiplicities {
            generic: 1,
            xi2_axis: m,
            xi1_axis: n,
        }),
        certainty: eq.certainty.and(w.certainty),
    }
}

/// Projection of `S³ ⊂ ℝ⁴` from the north pole `(0, 0, 0, 1)`.
pub fn stereographic(x: [f64; 4]) -> Result<[f64; 3]> {
    let d = 1.0 - x[3];
    if d.abs() < 1e-12 {
        return Err(Error::PoleExcluded);
    }
    Ok([x[0] / d, x[1] / d, x[2] / d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliations::{flow_anti_lee, flow_lee};
    use crate::frame::to_universal;
    use crate::sampling::quasi_random;
    use std::f64::consts::TAU;

    fn params(a: (f64, f64), b: (f64, f64)) -> HopfParams {
        HopfParams::new(Complex64::new(a.0, a.1), Complex64::new(b.0, b.1)).unwrap()
    }

    #[test]
    fn monodromy_examples() {
        let cfg = ToleranceConfig::default();
        let m = monodromy(&params((0.0, 2.0), (2.0, 0.0)), &cfg).unwrap().value;
        assert_eq!((m.m, m.n, m.monodromy_c), (4, 4, 1));
        let m = monodromy(&params((4.0, 0.0), (2.0, 0.0)), &cfg).unwrap().value;
        assert_eq!((m.m, m.n, m.monodromy_c), (1, 2, 0));
        assert!(matches!(
            monodromy(&params((3.0, 0.0), (2.0, 0.0)), &cfg),
            Err(Error::NotElliptic(_))
        ));
    }

    #[test]
    fn invariant_along_flows_and_equivariant() {
        let cfg = ToleranceConfig::default();
        for pr in [params((0.0, 2.0), (2.0, 0.0)), params((4.0, 0.0), (-2.0, 0.0))] {
            let data = monodromy(&pr, &cfg).unwrap().value;
            for p in quasi_random(20) {
                let f = fibration_map(&data, &p);
                for t in [0.3, -1.7, 5.0] {
                    assert!(fs_distance(&f, &fibration_map(&data, &flow_lee(&pr, &p, t))) < 1e-9);
                    assert!(
                        fs_distance(&f, &fibration_map(&data, &flow_anti_lee(&pr, &p, t))) < 1e-9
                    );
                }
                let u = universal_map(&data, &to_universal(&pr, &p)).unwrap();
                assert!(fs_distance(&f, &u) < 1e-9);
            }
        }
    }

    #[test]
    fn axis_images_and_distance() {
        let data = MonodromyData {
            m: 4,
            n: 4,
            monodromy_c: 1,
        };
        let zero = Complex64::new(0.0, 0.0);
        let p = FramePoint::new(1.0, Complex64::new(0.6, 0.8), zero).unwrap();
        let f = fibration_map(&data, &p);
        assert_eq!((f.w0, f.w1), (Complex64::new(1.0, 0.0), zero));
        let q = FramePoint::new(1.0, zero, Complex64::new(0.0, 1.0)).unwrap();
        let g = fibration_map(&data, &q);
        assert_eq!((g.w0, g.w1), (zero, Complex64::new(1.0, 0.0)));
        assert!((fs_distance(&f, &g) - TAU / 4.0).abs() < 1e-15);
    }

    #[test]
    fn regularity_examples() {
        let cfg = ToleranceConfig::default();
        let r = regularity(&params((2.0, 0.0), (2.0, 0.0)), &cfg);
        assert!(r.regular && r.quasi_regular && r.cone_orders == Some((1, 1)));
        let r = regularity(&params((4.0, 0.0), (2.0, 0.0)), &cfg);
        assert!(!r.regular && r.quasi_regular);
        assert_eq!(r.multiplicities.unwrap().xi1_axis, 2);
    }

    #[test]
    fn stereographic_examples() {
        assert_eq!(stereographic([1.0, 0.0, 0.0, 0.0]).unwrap(), [1.0, 0.0, 0.0]);
        assert_eq!(stereographic([0.0, 0.0, 0.0, -1.0]).unwrap(), [0.0, 0.0, 0.0]);
        assert!(matches!(stereographic([0.0, 0.0, 0.0, 1.0]), Err(Error::PoleExcluded)));
    }
}
