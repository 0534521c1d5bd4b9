//! The Hopf parameters `(α, β)` and the arithmetic data that decides
//! compactness questions.
//!
//! Floating parameters answer "is this quantity rational?" only within a
//! tolerance. Exact parameters carry each quantity as `r + s·ι` with
//! rationals `r, s` and the fixed irrational unit `ι = √2`, which makes every
//! question the classifier asks decidable.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{recognize_rational, Rational, ToleranceConfig};

/// Numerical value of the irrational unit `ι` used by [`ExactReal`].
pub const IRRATIONAL_UNIT: f64 = SQRT_2;

/// A real number `rational + irrational·ι` with `ι = √2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactReal {
    pub rational: Rational,
    pub irrational: Rational,
}

impl ExactReal {
    pub fn rational(r: Rational) -> Self {
        ExactReal {
            rational: r,
            irrational: Rational::ZERO,
        }
    }

    pub fn new(rational: Rational, irrational: Rational) -> Self {
        ExactReal {
            rational,
            irrational,
        }
    }

    /// The declared irrational `ι` itself.
    pub fn unit() -> Self {
        ExactReal::new(Rational::ZERO, Rational::ONE)
    }

    pub fn value(&self) -> f64 {
        self.rational.to_f64() + self.irrational.to_f64() * IRRATIONAL_UNIT
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.irrational.is_zero().then_some(self.rational)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_zero()
    }

    pub fn scale(&self, c: Rational) -> Self {
        ExactReal::new(self.rational * c, self.irrational * c)
    }

    pub fn sub(&self, other: &ExactReal) -> Self {
        ExactReal::new(
            self.rational - other.rational,
            self.irrational - other.irrational,
        )
    }

    /// `self / other` when that quotient is rational.
    pub fn ratio(&self, other: &ExactReal) -> Option<Rational> {
        if other.is_zero() {
            return None;
        }
        // parallel iff the 2x2 determinant vanishes
        if self.rational * other.irrational != self.irrational * other.rational {
            return None;
        }
        if !other.rational.is_zero() {
            Some(self.rational / other.rational)
        } else {
            Some(self.irrational / other.irrational)
        }
    }

    /// Shifts the rational part by an even integer so the value lies in (−1, 1].
    pub fn normalize_half_turns(&self) -> Self {
        let v = self.value();
        let k = ((v - 1.0) / 2.0).ceil() as i64;
        let mut out = ExactReal::new(self.rational - Rational::integer(2 * k), self.irrational);
        // guard the boundary against rounding of the float estimate
        let w = out.value();
        if w <= -1.0 {
            out.rational = out.rational + Rational::integer(2);
        } else if w > 1.0 {
            out.rational = out.rational - Rational::integer(2);
        }
        out
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.irrational.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}*irr", self.irrational),
            (false, false) => write!(f, "{}+{}*irr", self.rational, self.irrational),
        }
    }
}

impl FromStr for ExactReal {
    type Err = Error;

    /// Accepts sums of terms separated by `+`, each either a rational `N/D`
    /// or an irrational term `irr`, `-irr`, `N/D*irr`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = ExactReal::default();
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty exact quantity".into()));
        }
        for term in s.split('+') {
            let term = term.trim();
            if let Some(coef) = term.strip_suffix("irr") {
                let coef = coef.trim().trim_end_matches('*').trim();
                let c = match coef {
                    "" => Rational::ONE,
                    "-" => -Rational::ONE,
                    other => other.parse()?,
                };
                out.irrational = out.irrational + c;
            } else {
                out.rational = out.rational + term.parse::<Rational>()?;
            }
        }
        Ok(out)
    }
}

impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Exact description of `(α, β)`: `log‖β‖`, the ratio `log‖α‖/log‖β‖`, and
/// both arguments in units of π.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExactData {
    pub log_mod_beta: f64,
    pub log_ratio: ExactReal,
    pub arg_alpha_over_pi: ExactReal,
    pub arg_beta_over_pi: ExactReal,
}

/// How far a yes/no answer about rationality can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certainty {
    Exact,
    WithinTolerance { tol: f64, max_denominator: i64 },
}

impl Certainty {
    pub fn is_exact(&self) -> bool {
        matches!(self, Certainty::Exact)
    }

    /// The weaker of the two.
    pub fn and(self, other: Certainty) -> Certainty {
        match (self, other) {
            (Certainty::Exact, c) | (c, Certainty::Exact) => c,
            (c, _) => c,
        }
    }
}

/// A value together with how it was decided.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Decided<T> {
    pub value: T,
    pub certainty: Certainty,
}

/// Which of the two parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HopfParams {
    alpha: Complex64,
    beta: Complex64,
    #[serde(skip)]
    log_alpha: Complex64,
    #[serde(skip)]
    log_beta: Complex64,
    exact: Option<ExactData>,
}

impl HopfParams {
    /// Floating parameters; requires `‖α‖ ≥ ‖β‖ > 1`.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        if !(alpha.re.is_finite() && alpha.im.is_finite() && beta.re.is_finite() && beta.im.is_finite())
        {
            return Err(Error::ParamViolation("non-finite parameter".into()));
        }
        let (ma, mb) = (alpha.norm(), beta.norm());
        if !(mb > 1.0) {
            return Err(Error::ParamViolation(format!("need ‖β‖ > 1, got {mb}")));
        }
        if !(ma >= mb) {
            return Err(Error::ParamViolation(format!(
                "need ‖α‖ ≥ ‖β‖, got {ma} < {mb}"
            )));
        }
        Ok(HopfParams {
            alpha,
            beta,
            log_alpha: alpha.ln(),
            log_beta: beta.ln(),
            exact: None,
        })
    }

    /// Parameters built from exact data; the floating values are derived from it.
    pub fn from_exact(data: ExactData) -> Result<Self> {
        if !(data.log_mod_beta.is_finite() && data.log_mod_beta > 0.0) {
            return Err(Error::ParamViolation(format!(
                "need log‖β‖ > 0, got {}",
                data.log_mod_beta
            )));
        }
        let ratio = data.log_ratio.value();
        if !(ratio >= 1.0) {
            return Err(Error::ParamViolation(format!(
                "need log‖α‖/log‖β‖ ≥ 1, got {}",
                data.log_ratio
            )));
        }
        let data = ExactData {
            arg_alpha_over_pi: data.arg_alpha_over_pi.normalize_half_turns(),
            arg_beta_over_pi: data.arg_beta_over_pi.normalize_half_turns(),
            ..data
        };
        let log_alpha = Complex64::new(
            data.log_mod_beta * ratio,
            PI * data.arg_alpha_over_pi.value(),
        );
        let log_beta = Complex64::new(data.log_mod_beta, PI * data.arg_beta_over_pi.value());
        Ok(HopfParams {
            alpha: log_alpha.exp(),
            beta: log_beta.exp(),
            log_alpha,
            log_beta,
            exact: Some(data),
        })
    }

    /// Floating parameters with exact data attached; rejects exact data that
    /// disagrees with `(α, β)` beyond `cfg.rational_tol`.
    pub fn with_exact(
        alpha: Complex64,
        beta: Complex64,
        data: ExactData,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        let floating = HopfParams::new(alpha, beta)?;
        let exact = HopfParams::from_exact(data)?;
        let tol = cfg.rational_tol;
        let rel = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0);
        let angle = |a: f64, b: f64| {
            let d = (a - b).rem_euclid(2.0 * PI);
            d.min(2.0 * PI - d) <= tol
        };
        let checks = [
            ("log‖β‖", rel(floating.log_mod_beta(), exact.log_mod_beta())),
            ("log‖α‖", rel(floating.log_mod_alpha(), exact.log_mod_alpha())),
            ("arg α", angle(floating.arg_alpha(), exact.arg_alpha())),
            ("arg β", angle(floating.arg_beta(), exact.arg_beta())),
        ];
        if let Some((what, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(Error::InconsistentExactData(format!(
                "{what} of ({alpha}, {beta}) does not match the exact data"
            )));
        }
        Ok(HopfParams {
            exact: exact.exact,
            ..floating
        })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// Principal logarithm of α.
    pub fn log_alpha(&self) -> Complex64 {
        self.log_alpha
    }

    pub fn log_beta(&self) -> Complex64 {
        self.log_beta
    }

    pub fn log_mod_alpha(&self) -> f64 {
        self.log_alpha.re
    }

    pub fn log_mod_beta(&self) -> f64 {
        self.log_beta.re
    }

    /// Principal argument in (−π, π].
    pub fn arg_alpha(&self) -> f64 {
        self.log_alpha.im
    }

    pub fn arg_beta(&self) -> f64 {
        self.log_beta.im
    }

    /// `log α − log β`, the branch under which every frame formula is consistent.
    pub fn log_quotient(&self) -> Complex64 {
        self.log_alpha - self.log_beta
    }

    pub fn exact(&self) -> Option<&ExactData> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    fn tolerance(cfg: &ToleranceConfig) -> Certainty {
        Certainty::WithinTolerance {
            tol: cfg.rational_tol,
            max_denominator: cfg.max_denominator,
        }
    }

    fn recognize(x: f64, cfg: &ToleranceConfig) -> Decided<Option<Rational>> {
        Decided {
            value: recognize_rational(x, cfg.rational_tol, cfg.max_denominator),
            certainty: Self::tolerance(cfg),
        }
    }

    /// `log‖α‖ / log‖β‖` if rational.
    pub fn log_ratio(&self, cfg: &ToleranceConfig) -> Decided<Option<Rational>> {
        match &self.exact {
            Some(d) => Decided {
                value: d.log_ratio.as_rational(),
                certainty: Certainty::Exact,
            },
            None => Self::recognize(self.log_mod_alpha() / self.log_mod_beta(), cfg),
        }
    }

    /// `arg / π` if rational.
    pub fn arg_over_pi(&self, which: Which, cfg: &ToleranceConfig) -> Decided<Option<Rational>> {
        match (&self.exact, which) {
            (Some(d), Which::Alpha) => Decided {
                value: d.arg_alpha_over_pi.as_rational(),
                certainty: Certainty::Exact,
            },
            (Some(d), Which::Beta) => Decided {
                value: d.arg_beta_over_pi.as_rational(),
                certainty: Certainty::Exact,
            },
            (None, Which::Alpha) => Self::recognize(self.arg_alpha() / PI, cfg),
            (None, Which::Beta) => Self::recognize(self.arg_beta() / PI, cfg),
        }
    }

    /// Whether `arg α` (or `arg β`) vanishes.
    pub fn arg_is_zero(&self, which: Which, cfg: &ToleranceConfig) -> Decided<bool> {
        match &self.exact {
            Some(d) => Decided {
                value: match which {
                    Which::Alpha => d.arg_alpha_over_pi.is_zero(),
                    Which::Beta => d.arg_beta_over_pi.is_zero(),
                },
                certainty: Certainty::Exact,
            },
            None => {
                let a = match which {
                    Which::Alpha => self.arg_alpha(),
                    Which::Beta => self.arg_beta(),
                };
                Decided {
                    value: (a / PI).abs() <= cfg.rational_tol,
                    certainty: Self::tolerance(cfg),
                }
            }
        }
    }

    /// `arg α / arg β` if rational; `None` also when `arg β = 0`.
    pub fn arg_ratio(&self, cfg: &ToleranceConfig) -> Decided<Option<Rational>> {
        match &self.exact {
            Some(d) => Decided {
                value: d.arg_alpha_over_pi.ratio(&d.arg_beta_over_pi),
                certainty: Certainty::Exact,
            },
            None => {
                if (self.arg_beta() / PI).abs() <= cfg.rational_tol {
                    return Decided {
                        value: None,
                        certainty: Self::tolerance(cfg),
                    };
                }
                Self::recognize(self.arg_alpha() / self.arg_beta(), cfg)
            }
        }
    }

    /// `(k·arg α − l·arg β) / π` if rational.
    pub fn arg_combination(&self, k: i64, l: i64, cfg: &ToleranceConfig) -> Decided<Option<Rational>> {
        match &self.exact {
            Some(d) => {
                let v = d
                    .arg_alpha_over_pi
                    .scale(Rational::integer(k))
                    .sub(&d.arg_beta_over_pi.scale(Rational::integer(l)));
                Decided {
                    value: v.as_rational(),
                    certainty: Certainty::Exact,
                }
            }
            None => Self::recognize(
                (k as f64 * self.arg_alpha() - l as f64 * self.arg_beta()) / PI,
                cfg,
            ),
        }
    }

    /// Dimension over ℚ of `span{1, arg α/π, arg β/π}`: the dimension of the
    /// closure of a generic Lee-flow leaf.
    pub fn arg_rank(&self, cfg: &ToleranceConfig) -> Decided<usize> {
        match &self.exact {
            Some(d) => {
                let irr = !d.arg_alpha_over_pi.irrational.is_zero()
                    || !d.arg_beta_over_pi.irrational.is_zero();
                Decided {
                    value: if irr { 2 } else { 1 },
                    certainty: Certainty::Exact,
                }
            }
            None => {
                let a = self.arg_alpha() / PI;
                let b = self.arg_beta() / PI;
                let rat = |x: f64| recognize_rational(x, cfg.rational_tol, cfg.max_denominator).is_some();
                let value = match (rat(a), rat(b)) {
                    (true, true) => 1,
                    (true, false) | (false, true) => 2,
                    (false, false) => {
                        // look for a small integer relation u·a + v·b ∈ ℚ
                        let related = (-16i32..=16).any(|u| {
                            (1i32..=16).any(|v| rat(u as f64 * a + v as f64 * b))
                        });
                        if related {
                            2
                        } else {
                            3
                        }
                    }
                };
                Decided {
                    value,
                    certainty: Self::tolerance(cfg),
                }
            }
        }
    }

    /// Whether `α = β`.
    pub fn alpha_equals_beta(&self, cfg: &ToleranceConfig) -> Decided<bool> {
        match &self.exact {
            Some(d) => Decided {
                value: d.log_ratio == ExactReal::rational(Rational::ONE)
                    && d.arg_alpha_over_pi == d.arg_beta_over_pi,
                certainty: Certainty::Exact,
            },
            None => Decided {
                value: (self.alpha - self.beta).norm() <= cfg.rational_tol * self.alpha.norm(),
                certainty: Self::tolerance(cfg),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parameter_constraints() {
        assert!(HopfParams::new(c(4.0, 0.0), c(2.0, 0.0)).is_ok());
        assert!(HopfParams::new(c(2.0, 0.0), c(2.0, 0.0)).is_ok());
        assert!(matches!(
            HopfParams::new(c(2.0, 0.0), c(4.0, 0.0)),
            Err(Error::ParamViolation(_))
        ));
        assert!(matches!(
            HopfParams::new(c(4.0, 0.0), c(1.0, 0.0)),
            Err(Error::ParamViolation(_))
        ));
        assert!(HopfParams::new(c(f64::NAN, 0.0), c(2.0, 0.0)).is_err());
    }

    #[test]
    fn exact_real_parse_display() {
        let x: ExactReal = "1/3+-2/5*irr".parse().unwrap();
        assert_eq!(x, ExactReal::new(Rational::new(1, 3), Rational::new(-2, 5)));
        assert_eq!(x.to_string(), "1/3+-2/5*irr");
        assert_eq!("irr".parse::<ExactReal>().unwrap(), ExactReal::unit());
        assert_eq!(
            "-irr".parse::<ExactReal>().unwrap(),
            ExactReal::new(Rational::ZERO, -Rational::ONE)
        );
        assert_eq!(
            "5/3".parse::<ExactReal>().unwrap().as_rational(),
            Some(Rational::new(5, 3))
        );
        assert!("".parse::<ExactReal>().is_err());
        assert!("foo".parse::<ExactReal>().is_err());
    }

    #[test]
    fn exact_ratio() {
        let a = ExactReal::new(Rational::ZERO, Rational::integer(-3));
        let b = ExactReal::new(Rational::ZERO, Rational::integer(5));
        assert_eq!(a.ratio(&b), Some(Rational::new(-3, 5)));
        let c = ExactReal::new(Rational::ONE, Rational::ONE);
        assert_eq!(a.ratio(&c), None);
        assert_eq!(c.ratio(&c.scale(Rational::integer(2))), Some(Rational::new(1, 2)));
        assert_eq!(a.ratio(&ExactReal::default()), None);
    }

    #[test]
    fn half_turn_normalization() {
        let x = ExactReal::unit().normalize_half_turns();
        assert!(x.value() > -1.0 && x.value() <= 1.0);
        assert_eq!(x.irrational, Rational::ONE);
        assert_eq!(x.rational, Rational::integer(-2));
        let y = ExactReal::rational(Rational::integer(1)).normalize_half_turns();
        assert_eq!(y.as_rational(), Some(Rational::ONE));
        let z = ExactReal::rational(Rational::integer(-1)).normalize_half_turns();
        assert_eq!(z.as_rational(), Some(Rational::ONE));
    }

    #[test]
    fn exact_construction_matches_floats() {
        let data = ExactData {
            log_mod_beta: 2f64.ln(),
            log_ratio: ExactReal::rational(Rational::ONE),
            arg_alpha_over_pi: ExactReal::rational(Rational::new(1, 2)),
            arg_beta_over_pi: ExactReal::default(),
        };
        let p = HopfParams::from_exact(data).unwrap();
        assert!((p.alpha() - c(0.0, 2.0)).norm() < 1e-14);
        assert!((p.beta() - c(2.0, 0.0)).norm() < 1e-14);
        let cfg = ToleranceConfig::default();
        assert!(HopfParams::with_exact(c(0.0, 2.0), c(2.0, 0.0), data, &cfg).is_ok());
        assert!(matches!(
            HopfParams::with_exact(c(0.1, 2.0), c(2.0, 0.0), data, &cfg),
            Err(Error::InconsistentExactData(_))
        ));
        let bad = ExactData {
            log_ratio: ExactReal::rational(Rational::new(1, 2)),
            ..data
        };
        assert!(matches!(HopfParams::from_exact(bad), Err(Error::ParamViolation(_))));
    }

    #[test]
    fn float_decisions() {
        let cfg = ToleranceConfig::default();
        let p = HopfParams::new(c(0.0, 2.0), c(2.0, 0.0)).unwrap();
        assert_eq!(p.log_ratio(&cfg).value, Some(Rational::ONE));
        assert_eq!(p.arg_over_pi(Which::Alpha, &cfg).value, Some(Rational::new(1, 2)));
        assert_eq!(p.arg_combination(1, 1, &cfg).value, Some(Rational::new(1, 2)));
        assert!(!p.arg_combination(1, 1, &cfg).certainty.is_exact());
        assert!(!p.alpha_equals_beta(&cfg).value);
        assert_eq!(p.arg_rank(&cfg).value, 1);
    }
}
