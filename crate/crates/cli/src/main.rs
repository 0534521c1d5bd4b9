//! `hopf-lck`: classification reports, identity checks, leaf tracing and
//! fibration evaluation for Hopf surfaces.
//!
//! Exit codes: 2 bad parameters or input, 3 inconsistent exact data,
//! 4 non-positive `h`, 5 unknown projection, 6 not elliptic, 7 blow-up of the
//! potential equation.

mod commands;
mod params;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hopf_lck::foliations::FoliationKind;
use hopf_lck::frame::FramePoint;
use hopf_lck::metrics::HSpec;
use hopf_lck::numerics::ToleranceConfig;
use hopf_lck::{Error, Result};
use num_complex::Complex64;

use commands::{Format, LeafRequest, Projection};
use params::ParamArgs;

/// Relative output paths are resolved against this directory when set.
const OUTPUT_DIR_VAR: &str = "HOPF_LCK_OUTPUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "hopf-lck", version, about = "l.c.K. geometry of Hopf surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Tolerance override: rational recognition for classify, leaf and
    /// fibrate; residual bound for verify and solve-potential
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Use the product grid instead of the quasi-random sequence
    #[arg(long, global = true)]
    seedless: bool,
    /// Write to this file instead of standard output
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the leaves of all four foliations
    Classify {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Check the l.c.K. identities and the Vaisman condition
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "const:2", allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Trace a leaf and write it as CSV or SVG
    Leaf {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "lee-flow")]
        kind: String,
        /// θ,re ξ1,im ξ1,re ξ2,im ξ2
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long, default_value = "torus-angles")]
        project: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Evaluate the map to the projective line at a point
    Fibrate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Integrate the potential equation
    SolvePotential {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta0: f64,
        /// Defaults to h(theta0)
        #[arg(long)]
        v0: Option<f64>,
        /// lo,hi
        #[arg(long, default_value = "0,6.283185307179586", allow_hyphen_values = true)]
        span: String,
        #[arg(long, default_value_t = 257)]
        samples: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InconsistentExactData(_) => 3,
        Error::NonPositiveH(_) => 4,
        Error::NotElliptic(_) => 6,
        Error::BlowUp { .. } => 7,
        Error::ParamViolation(_)
        | Error::InvalidInput(_)
        | Error::ParamMismatch(..)
        | Error::DegenerateEquation
        | Error::PoleExcluded => 2,
        _ => 1,
    }
}

enum Failure {
    Lib(Error),
    Projection(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn parse_point(s: &str) -> Result<FramePoint> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("bad point '{s}'")))?;
    let [theta, a, b, c, d] = v[..] else {
        return Err(Error::InvalidInput(format!(
            "point needs five numbers θ,re1,im1,re2,im2, got '{s}'"
        )));
    };
    FramePoint::new(theta, Complex64::new(a, b), Complex64::new(c, d))
}

fn parse_span(s: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || Error::InvalidInput(format!("bad span '{s}'"));
    let [lo, hi] = parts[..] else {
        return Err(bad());
    };
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}

fn config(tol: Option<f64>, residual: bool) -> Result<ToleranceConfig> {
    let mut cfg = ToleranceConfig::default();
    if let Some(t) = tol {
        if residual {
            cfg.residual_tol = t;
        } else {
            cfg.rational_tol = t;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_output(path: &Option<PathBuf>, bytes: &[u8]) -> std::io::Result<()> {
    use std::io::Write;
    match path {
        Some(p) => {
            let p = match std::env::var_os(OUTPUT_DIR_VAR) {
                Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
                _ => p.clone(),
            };
            std::fs::write(p, bytes)
        }
        None => std::io::stdout().lock().write_all(bytes),
    }
}

fn run(cli: &Cli) -> std::result::Result<(), Failure> {
    let bytes = match &cli.command {
        Command::Classify { params } => {
            let cfg = config(cli.tol, false)?;
            commands::classify(&params.resolve(&cfg)?, &cfg, cli.seedless)?
        }
        Command::Verify { params, h, samples } => {
            let cfg = config(cli.tol, true)?;
            let pr = params.resolve(&cfg)?;
            let h: HSpec = h.parse()?;
            commands::verify(&pr, &h, *samples, &cfg, cli.seedless)?
        }
        Command::Leaf {
            params,
            kind,
            point,
            samples,
            t_max,
            project,
            format,
        } => {
            let cfg = config(cli.tol, false)?;
            let projection: Projection = project.parse().map_err(Failure::Projection)?;
            let pr = params.resolve(&cfg)?;
            let req = LeafRequest {
                kind: kind.parse::<FoliationKind>()?,
                point: parse_point(point)?,
                samples: *samples,
                t_max: *t_max,
                projection,
                format: *format,
            };
            commands::leaf(&pr, &req, &cfg)?
        }
        Command::Fibrate { params, point } => {
            let cfg = config(cli.tol, false)?;
            let pr = params.resolve(&cfg)?;
            commands::fibrate(&pr, &parse_point(point)?, &cfg)?
        }
        Command::SolvePotential {
            h,
            theta0,
            v0,
            span,
            samples,
        } => {
            let cfg = config(cli.tol, true)?;
            let h: HSpec = h.parse()?;
            let v0 = v0.unwrap_or_else(|| h.value(*theta0));
            let (table, err) =
                commands::solve_potential(&h, *theta0, v0, parse_span(span)?, *samples, &cfg)?;
            write_output(&cli.output, &table).map_err(Failure::Io)?;
            return match err {
                Some(e) => Err(Failure::Lib(e)),
                None => Ok(()),
            };
        }
    };
    write_output(&cli.output, &bytes).map_err(Failure::Io)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            match &e {
                Error::BlowUp { theta, .. } => eprintln!("error: L′ left its band at θ = {theta}"),
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Projection(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(5)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
