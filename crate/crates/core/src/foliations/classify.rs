//! Compactness of leaves, knot types, the elliptic condition and the period
//! lattice of compact leaves of the plane field.
//!
//! Work in turns: along the Lee flow `θ` turns at rate 2 and the phases of
//! `ξ1, ξ2` at rates `a = arg α/π` and `b = arg β/π`. A generic orbit closes
//! iff all three rates are commensurable, and then its minimal period is
//! `1 / gcd(2, a, b)`.

use std::f64::consts::PI;

use num_integer::Integer;
use serde::Serialize;

use super::{distance, leaf_surface, FoliationKind};
use crate::error::{Error, Result};
use crate::frame::{Certainty, Decided, FramePoint, HopfParams, Which};
use crate::numerics::{Rational, ToleranceConfig};
use crate::sampling::quasi_random;

/// A point with `‖ξ1‖` or `‖ξ2‖` below this lies on an axis circle.
pub const AXIS_THRESHOLD: f64 = 1e-12;

/// Points at which lattice vectors are checked to be periods.
const CERTIFICATE_POINTS: usize = 10;
const CERTIFICATE_TOL: f64 = 1e-9;
/// Floating witnesses must satisfy `|α^m β^{−n} − 1| ≤ WITNESS_TOL`.
pub const WITNESS_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LatticeCertificate {
    pub l: i64,
    pub k: i64,
    pub p: i64,
    pub q: i64,
    pub p_prime: Rational,
    pub q_prime: Rational,
    pub b: i64,
    pub lattice_c: i64,
}

/// Periods `(t, s)` of the leaf parametrization of a compact plane leaf.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Lattice {
    pub v: (f64, f64),
    pub w: (f64, f64),
    pub certificate: LatticeCertificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EllipticWitness {
    pub m: i64,
    pub n: i64,
    /// `(m arg α − n arg β) / 2π`.
    pub monodromy_c: i64,
    /// `log‖α‖/log‖β‖ = l/k` and `(k arg α − l arg β)/π = p/q`, lowest terms.
    pub l: i64,
    pub k: i64,
    pub p: i64,
    pub q: i64,
    /// `|α^m β^{−n} − 1|` in floating point.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum LeafClass {
    /// A whole slice `{θ} × S³`.
    Sphere3Slice,
    CircleCompact { period: f64 },
    /// A leaf on an axis circle that is dense in the torus `S¹ × {axis}`.
    DenseInAxisTorus,
    ToralKnot { knot_type: Rational, period: f64 },
    DenseIn2Torus,
    CompactTorus { lattice: Lattice },
    /// The compact plane leaf `S¹ × {axis circle}`.
    AxisTorus,
    DenseIn3Torus,
}

impl LeafClass {
    pub fn is_compact(&self) -> bool {
        matches!(
            self,
            LeafClass::Sphere3Slice
                | LeafClass::CircleCompact { .. }
                | LeafClass::ToralKnot { .. }
                | LeafClass::CompactTorus { .. }
                | LeafClass::AxisTorus
        )
    }

    /// Return time of a compact one-dimensional leaf.
    pub fn period(&self) -> Option<f64> {
        match self {
            LeafClass::CircleCompact { period } | LeafClass::ToralKnot { period, .. } => {
                Some(*period)
            }
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Classification {
    #[serde(flatten)]
    pub class: LeafClass,
    pub certainty: Certainty,
}

impl Classification {
    /// The class, provided it was decided from exact data.
    pub fn certified(&self) -> Result<LeafClass> {
        match self.certainty {
            Certainty::Exact => Ok(self.class),
            Certainty::WithinTolerance {
                tol,
                max_denominator,
            } => Err(Error::InexactClassification(format!(
                "decided within tolerance {tol} (max denominator {max_denominator})"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum KnotType {
    Rational(Rational),
    /// The defining ratio is irrational: no closed knot.
    Irrational,
    /// A rate vanishes, so the projected curve does not wind.
    Degenerate,
}

/// `arg α / arg β` for the Lee flow, `log‖α‖ / log‖β‖` for the anti-Lee flow.
pub fn knot_type(
    params: &HopfParams,
    kind: FoliationKind,
    cfg: &ToleranceConfig,
) -> Result<Decided<KnotType>> {
    match kind {
        FoliationKind::LeeFlow => {
            let za = params.arg_is_zero(Which::Alpha, cfg);
            let zb = params.arg_is_zero(Which::Beta, cfg);
            let certainty = za.certainty.and(zb.certainty);
            if za.value || zb.value {
                return Ok(Decided {
                    value: KnotType::Degenerate,
                    certainty,
                });
            }
            let r = params.arg_ratio(cfg);
            Ok(Decided {
                value: r.value.map_or(KnotType::Irrational, KnotType::Rational),
                certainty: certainty.and(r.certainty),
            })
        }
        FoliationKind::AntiLeeFlow => {
            let r = params.log_ratio(cfg);
            Ok(Decided {
                value: r.value.map_or(KnotType::Irrational, KnotType::Rational),
                certainty: r.certainty,
            })
        }
        other => Err(Error::InvalidInput(format!("no knot type for {other}"))),
    }
}

/// Minimal `(m, n)` with `α^m = β^n`, if it exists.
pub fn elliptic_condition(
    params: &HopfParams,
    cfg: &ToleranceConfig,
) -> Decided<Option<EllipticWitness>> {
    let ratio = params.log_ratio(cfg);
    let Some(r) = ratio.value else {
        return Decided {
            value: None,
            certainty: ratio.certainty,
        };
    };
    let (l, k) = (r.numer(), r.denom());
    let comb = params.arg_combination(k, l, cfg);
    let certainty = ratio.certainty.and(comb.certainty);
    let Some(pq) = comb.value else {
        return Decided {
            value: None,
            certainty,
        };
    };
    let (p, q) = (pq.numer(), pq.denom());
    let j = if p == 0 {
        1
    } else if p.is_odd() {
        2 * q
    } else {
        q
    };
    let (m, n) = (j * k, j * l);
    let monodromy_c = j * p / (2 * q);
    let z = params.log_alpha() * m as f64 - params.log_beta() * n as f64;
    let residual = (z.exp() - 1.0).norm();
    if !certainty.is_exact() && !(residual <= WITNESS_TOL) {
        // a convergent that merely approximates an irrational ratio
        return Decided {
            value: None,
            certainty,
        };
    }
    Decided {
        value: Some(EllipticWitness {
            m,
            n,
            monodromy_c,
            l,
            k,
            p,
            q,
            residual,
        }),
        certainty,
    }
}

fn modular_inverse(a: i64, m: i64) -> i64 {
    let e = a.extended_gcd(&m);
    e.x.rem_euclid(m)
}

/// Lattice of periods of compact plane leaves; every vector is checked on
/// sample points before it is returned.
pub fn lattice(params: &HopfParams, cfg: &ToleranceConfig) -> Result<Decided<Lattice>> {
    let witness = elliptic_condition(params, cfg);
    let Some(wt) = witness.value else {
        return Err(Error::NotElliptic(
            "no integers m, n with α^m = β^n".into(),
        ));
    };
    let (l, k, p, q) = (wt.l, wt.k, wt.p, wt.q);
    let (p_prime, q_prime) = if p.is_odd() {
        (Rational::integer(p), Rational::integer(q))
    } else {
        (Rational::new(p, 2), Rational::new(q, 2))
    };
    let lattice_c = if k == 1 {
        0
    } else {
        (-modular_inverse(l.rem_euclid(k), k)).rem_euclid(k)
    };
    let b = (1 + lattice_c * l) / k;
    debug_assert_eq!(b * k - lattice_c * l, 1);
    let lb = params.log_mod_beta();
    let qp = q_prime.to_f64();
    let v = (
        qp,
        (qp * params.arg_beta() - p_prime.to_f64() * lattice_c as f64 * PI) / lb,
    );
    let w = (0.0, k as f64 * PI / lb);
    for p0 in quasi_random(CERTIFICATE_POINTS) {
        for (t, s) in [v, w] {
            let d = distance(&leaf_surface(params, &p0, t, s), &p0);
            if !(d < CERTIFICATE_TOL) {
                return Err(Error::NotElliptic(format!(
                    "lattice vector ({t}, {s}) fails to close the leaf (distance {d:e})"
                )));
            }
        }
    }
    Ok(Decided {
        value: Lattice {
            v,
            w,
            certificate: LatticeCertificate {
                l,
                k,
                p,
                q,
                p_prime,
                q_prime,
                b,
                lattice_c,
            },
        },
        certainty: witness.certainty,
    })
}

/// Which axis circle `p` lies on, if any: `Some(Which::Alpha)` means `ξ2 = 0`.
fn axis(p: &FramePoint) -> Option<Which> {
    if p.xi2().norm() < AXIS_THRESHOLD {
        Some(Which::Alpha)
    } else if p.xi1().norm() < AXIS_THRESHOLD {
        Some(Which::Beta)
    } else {
        None
    }
}

fn exact(class: LeafClass) -> Classification {
    Classification {
        class,
        certainty: Certainty::Exact,
    }
}

pub fn classify_leaf(
    params: &HopfParams,
    p0: &FramePoint,
    kind: FoliationKind,
    cfg: &ToleranceConfig,
) -> Classification {
    match kind {
        FoliationKind::KernelLee => exact(LeafClass::Sphere3Slice),
        FoliationKind::LeeFlow => classify_lee(params, p0, cfg),
        FoliationKind::AntiLeeFlow => classify_anti_lee(params, p0, cfg),
        FoliationKind::LeeAntiLeePlane => classify_plane(params, p0, cfg),
    }
}

fn classify_lee(params: &HopfParams, p0: &FramePoint, cfg: &ToleranceConfig) -> Classification {
    let two = Rational::integer(2);
    if let Some(which) = axis(p0) {
        let a = params.arg_over_pi(which, cfg);
        let class = match a.value {
            Some(a) => LeafClass::CircleCompact {
                period: two.gcd(&a).recip().to_f64(),
            },
            None => LeafClass::DenseInAxisTorus,
        };
        return Classification {
            class,
            certainty: a.certainty,
        };
    }
    let rank = params.arg_rank(cfg);
    let class = match rank.value {
        1 => {
            let a = params.arg_over_pi(Which::Alpha, cfg).value.unwrap_or_default();
            let b = params.arg_over_pi(Which::Beta, cfg).value.unwrap_or_default();
            LeafClass::CircleCompact {
                period: two.gcd(&a).gcd(&b).recip().to_f64(),
            }
        }
        2 => LeafClass::DenseIn2Torus,
        _ => LeafClass::DenseIn3Torus,
    };
    Classification {
        class,
        certainty: rank.certainty,
    }
}

fn classify_anti_lee(params: &HopfParams, p0: &FramePoint, cfg: &ToleranceConfig) -> Classification {
    match axis(p0) {
        Some(Which::Alpha) => exact(LeafClass::CircleCompact {
            period: PI / params.log_mod_alpha(),
        }),
        Some(Which::Beta) => exact(LeafClass::CircleCompact {
            period: PI / params.log_mod_beta(),
        }),
        None => {
            let r = params.log_ratio(cfg);
            let class = match r.value {
                Some(r) => LeafClass::ToralKnot {
                    knot_type: r,
                    period: r.denom() as f64 * PI / params.log_mod_beta(),
                },
                None => LeafClass::DenseIn2Torus,
            };
            Classification {
                class,
                certainty: r.certainty,
            }
        }
    }
}

fn classify_plane(params: &HopfParams, p0: &FramePoint, cfg: &ToleranceConfig) -> Classification {
    if axis(p0).is_some() {
        return exact(LeafClass::AxisTorus);
    }
    let witness = elliptic_condition(params, cfg);
    let class = match witness.value {
        Some(_) => match lattice(params, cfg) {
            Ok(l) => LeafClass::CompactTorus { lattice: l.value },
            // a witness whose lattice does not close is a float misdetection
            Err(_) => LeafClass::DenseIn3Torus,
        },
        None => LeafClass::DenseIn3Torus,
    };
    Classification {
        class,
        certainty: witness.certainty,
    }
}
