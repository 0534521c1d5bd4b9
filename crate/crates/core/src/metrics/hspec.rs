//! Positive 2π-periodic functions of `θ` given by trigonometric polynomials.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Grid on which positivity is checked.
pub const POSITIVITY_GRID: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HSpec {
    Constant {
        value: f64,
    },
    /// `a0 + Σ cos[n−1]·cos(nθ) + sin[n−1]·sin(nθ)`
    Fourier {
        a0: f64,
        cos: Vec<f64>,
        sin: Vec<f64>,
    },
}

impl HSpec {
    pub fn constant(value: f64) -> Self {
        HSpec::Constant { value }
    }

    pub fn fourier(a0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        HSpec::Fourier { a0, cos, sin }
    }

    pub fn value(&self, theta: f64) -> f64 {
        match self {
            HSpec::Constant { value } => *value,
            HSpec::Fourier { a0, cos, sin } => {
                let mut v = *a0;
                for (n, c) in cos.iter().enumerate() {
                    v += c * ((n + 1) as f64 * theta).cos();
                }
                for (n, s) in sin.iter().enumerate() {
                    v += s * ((n + 1) as f64 * theta).sin();
                }
                v
            }
        }
    }

    pub fn derivative(&self, theta: f64) -> f64 {
        match self {
            HSpec::Constant { .. } => 0.0,
            HSpec::Fourier { cos, sin, .. } => {
                let mut v = 0.0;
                for (n, c) in cos.iter().enumerate() {
                    let k = (n + 1) as f64;
                    v -= c * k * (k * theta).sin();
                }
                for (n, s) in sin.iter().enumerate() {
                    let k = (n + 1) as f64;
                    v += s * k * (k * theta).cos();
                }
                v
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            HSpec::Constant { .. } => true,
            HSpec::Fourier { cos, sin, .. } => cos.iter().chain(sin).all(|c| *c == 0.0),
        }
    }

    pub fn grid_min(&self) -> f64 {
        (0..POSITIVITY_GRID)
            .map(|i| self.value(TAU * i as f64 / POSITIVITY_GRID as f64))
            .fold(f64::INFINITY, f64::min)
    }

    /// Rejects functions that are not strictly positive on the grid.
    pub fn validate(&self) -> Result<()> {
        let m = self.grid_min();
        if m > 0.0 && m.is_finite() {
            Ok(())
        } else {
            Err(Error::NonPositiveH(m))
        }
    }
}

impl fmt::Display for HSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HSpec::Constant { value } => write!(f, "const:{value}"),
            HSpec::Fourier { a0, cos, sin } => {
                write!(f, "fourier:{a0}")?;
                for n in 0..cos.len().max(sin.len()) {
                    let c = cos.get(n).copied().unwrap_or(0.0);
                    let s = sin.get(n).copied().unwrap_or(0.0);
                    write!(f, ",{c},{s}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for HSpec {
    type Err = Error;

    /// `const:V` or `fourier:a0,a1,b1,a2,b2,…` with `aₙ` the cosine and `bₙ`
    /// the sine coefficient of frequency `n`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot parse h spec '{s}'"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<f64> = rest
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        if nums.iter().any(|x| !x.is_finite()) {
            return Err(bad());
        }
        match kind.trim() {
            "const" if nums.len() == 1 => Ok(HSpec::constant(nums[0])),
            "fourier" if !nums.is_empty() => {
                let cos = nums[1..].iter().step_by(2).copied().collect();
                let sin = nums[1..].iter().skip(1).step_by(2).copied().collect();
                Ok(HSpec::fourier(nums[0], cos, sin))
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_evaluate() {
        let h: HSpec = "fourier:2,0,0.5".parse().unwrap();
        assert_eq!(h, HSpec::fourier(2.0, vec![0.0], vec![0.5]));
        assert!((h.value(1.0) - (2.0 + 0.5 * 1f64.sin())).abs() < 1e-15);
        assert!((h.derivative(1.0) - 0.5 * 1f64.cos()).abs() < 1e-15);
        assert_eq!("const:2".parse::<HSpec>().unwrap(), HSpec::constant(2.0));
        assert!("const:".parse::<HSpec>().is_err());
        assert!("poly:1".parse::<HSpec>().is_err());
        assert_eq!(h.to_string().parse::<HSpec>().unwrap(), h);
    }

    #[test]
    fn derivative_matches_difference() {
        let h: HSpec = "fourier:3,0.2,-0.4,0.1,0.3".parse().unwrap();
        let d = 1e-6;
        for i in 0..20 {
            let t = 0.3 * i as f64;
            let fd = (h.value(t + d) - h.value(t - d)) / (2.0 * d);
            assert!((fd - h.derivative(t)).abs() < 1e-8);
        }
    }

    #[test]
    fn positivity() {
        assert!(HSpec::constant(1e-3).validate().is_ok());
        assert!(matches!(
            HSpec::constant(-1.0).validate(),
            Err(Error::NonPositiveH(_))
        ));
        assert!("fourier:0.5,0,1".parse::<HSpec>().unwrap().validate().is_err());
    }
}
