use clap::Args;
use hopf_lck::frame::{ExactData, ExactReal, HopfParams};
use hopf_lck::numerics::ToleranceConfig;
use hopf_lck::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Parameters either as complex literals or in exact form.
#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// α as a complex literal, e.g. `4`, `2i`, `-3+4i`
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// β as a complex literal
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// log‖α‖/log‖β‖ as `N/D`, `irr` or a sum such as `1+1/2*irr`
    #[arg(long, allow_hyphen_values = true)]
    pub log_mod_ratio: Option<String>,
    /// log‖β‖ (exact mode)
    #[arg(long, allow_hyphen_values = true)]
    pub log_mod_beta: Option<f64>,
    /// arg α / π (exact mode)
    #[arg(long, allow_hyphen_values = true)]
    pub arg_alpha_pi: Option<String>,
    /// arg β / π (exact mode)
    #[arg(long, allow_hyphen_values = true)]
    pub arg_beta_pi: Option<String>,
}

fn complex(name: &str, s: &str) -> Result<Complex64> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| Error::InvalidInput(format!("cannot parse {name} = '{s}' as a+bi")))
}

fn exact(s: &Option<String>, default: &str) -> Result<ExactReal> {
    s.as_deref().unwrap_or(default).parse()
}

impl ParamArgs {
    fn exact_mode(&self) -> bool {
        self.log_mod_ratio.is_some()
            || self.log_mod_beta.is_some()
            || self.arg_alpha_pi.is_some()
            || self.arg_beta_pi.is_some()
    }

    pub fn resolve(&self, cfg: &ToleranceConfig) -> Result<HopfParams> {
        let floating = match (&self.alpha, &self.beta) {
            (Some(a), Some(b)) => Some((complex("alpha", a)?, complex("beta", b)?)),
            (None, None) => None,
            _ => {
                return Err(Error::InvalidInput(
                    "--alpha and --beta must be given together".into(),
                ))
            }
        };
        if !self.exact_mode() {
            let (a, b) = floating.ok_or_else(|| {
                Error::InvalidInput("give --alpha/--beta or the exact-mode flags".into())
            })?;
            return HopfParams::new(a, b);
        }
        let log_mod_beta = match (self.log_mod_beta, floating) {
            (Some(v), _) => v,
            (None, Some((_, b))) => b.norm().ln(),
            (None, None) => {
                return Err(Error::InvalidInput("exact mode needs --log-mod-beta".into()))
            }
        };
        let ratio = self.log_mod_ratio.as_ref().ok_or_else(|| {
            Error::InvalidInput("exact mode needs --log-mod-ratio".into())
        })?;
        let data = ExactData {
            log_mod_beta,
            log_ratio: ratio.parse()?,
            arg_alpha_over_pi: exact(&self.arg_alpha_pi, "0")?,
            arg_beta_over_pi: exact(&self.arg_beta_pi, "0")?,
        };
        match floating {
            Some((a, b)) => HopfParams::with_exact(a, b, data, cfg),
            None => HopfParams::from_exact(data),
        }
    }
}

/// The resolved parameter set as echoed in every report.
#[derive(Serialize)]
pub struct ParamsEcho {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub log_mod_alpha: f64,
    pub log_mod_beta: f64,
    pub arg_alpha: f64,
    pub arg_beta: f64,
    pub exact: Option<ExactData>,
}

impl From<&HopfParams> for ParamsEcho {
    fn from(p: &HopfParams) -> Self {
        ParamsEcho {
            alpha: p.alpha(),
            beta: p.beta(),
            log_mod_alpha: p.log_mod_alpha(),
            log_mod_beta: p.log_mod_beta(),
            arg_alpha: p.arg_alpha(),
            arg_beta: p.arg_beta(),
            exact: p.exact().copied(),
        }
    }
}
