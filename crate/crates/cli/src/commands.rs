use std::f64::consts::TAU;

use hopf_lck::fibration::{
    fibration_map, fs_distance, monodromy, regularity, stereographic, MonodromyData,
    OrbifoldData, ProjectivePoint,
};
use hopf_lck::foliations::{
    classify_leaf, elliptic_condition, flow, knot_type, lattice, leaf_surface, torus_angles,
    Classification, EllipticWitness, FoliationKind, KnotType, Lattice, LeafClass,
};
use hopf_lck::frame::{j_matrix, Certainty, FramePoint, HopfParams};
use hopf_lck::metrics::{
    gram_matrix, is_vaisman, lee_vector, verify_lck, HSpec, LckFamily, LckReport, MetricField,
    VaismanReport,
};
use hopf_lck::numerics::{integrate_potential, PotentialSample, ToleranceConfig};
use hopf_lck::sampling::sample_points;
use hopf_lck::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

use crate::params::ParamsEcho;
use crate::render;

pub fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("reports serialize");
    out.push(b'\n');
    out
}

fn sampling_name(seedless: bool) -> &'static str {
    if seedless {
        "grid"
    } else {
        "quasi-random"
    }
}

#[derive(Serialize)]
struct LeafReport {
    point: &'static str,
    #[serde(flatten)]
    classification: Classification,
}

#[derive(Serialize)]
struct FoliationReport {
    kind: FoliationKind,
    leaves: Vec<LeafReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    knot_type: Option<KnotType>,
}

#[derive(Serialize)]
struct EllipticReport {
    elliptic: bool,
    witness: Option<EllipticWitness>,
    monodromy: Option<MonodromyData>,
    lattice: Option<Lattice>,
    certainty: Certainty,
}

#[derive(Serialize)]
struct ClassifyReport {
    params: ParamsEcho,
    tolerances: ToleranceConfig,
    generic_point: PointEcho,
    foliations: Vec<FoliationReport>,
    elliptic: EllipticReport,
    orbifold: OrbifoldData,
}

#[derive(Serialize)]
struct PointEcho {
    theta: f64,
    xi1: Complex64,
    xi2: Complex64,
}

impl From<&FramePoint> for PointEcho {
    fn from(p: &FramePoint) -> Self {
        PointEcho {
            theta: p.theta(),
            xi1: p.xi1(),
            xi2: p.xi2(),
        }
    }
}

pub fn classify(params: &HopfParams, cfg: &ToleranceConfig, seedless: bool) -> Result<Vec<u8>> {
    let generic = sample_points(1, seedless)[0];
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let points = [
        ("generic", generic),
        ("xi1-axis", FramePoint::new(0.0, one, zero)?),
        ("xi2-axis", FramePoint::new(0.0, zero, one)?),
    ];
    let mut foliations = Vec::new();
    for kind in FoliationKind::ALL {
        let leaves = points
            .iter()
            .map(|(name, p)| LeafReport {
                point: name,
                classification: classify_leaf(params, p, kind, cfg),
            })
            .collect();
        let knot = match kind {
            FoliationKind::LeeFlow | FoliationKind::AntiLeeFlow => {
                Some(knot_type(params, kind, cfg)?.value)
            }
            _ => None,
        };
        foliations.push(FoliationReport {
            kind,
            leaves,
            knot_type: knot,
        });
    }
    let witness = elliptic_condition(params, cfg);
    let mono = monodromy(params, cfg).ok().map(|d| d.value);
    let lat = match lattice(params, cfg) {
        Ok(l) => Some(l.value),
        Err(Error::NotElliptic(_)) => None,
        Err(e) => return Err(e),
    };
    let report = ClassifyReport {
        params: params.into(),
        tolerances: *cfg,
        generic_point: (&generic).into(),
        foliations,
        elliptic: EllipticReport {
            elliptic: witness.value.is_some(),
            witness: witness.value,
            monodromy: mono,
            lattice: lat,
            certainty: witness.certainty,
        },
        orbifold: regularity(params, cfg),
    };
    Ok(json(&report))
}

#[derive(Serialize)]
struct Check {
    max_residual: f64,
    threshold: f64,
    pass: bool,
}

impl Check {
    fn new(max_residual: f64, threshold: f64) -> Self {
        Check {
            max_residual,
            threshold,
            pass: max_residual < threshold,
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    params: ParamsEcho,
    tolerances: ToleranceConfig,
    h: String,
    samples: usize,
    sampling: &'static str,
    lck: LckReport,
    lck_pass: bool,
    vaisman: VaismanReport,
    vaisman_threshold: f64,
    duality: Check,
    j_invariance: Check,
}

const ALGEBRAIC_TOL: f64 = 1e-8;

pub fn verify(
    params: &HopfParams,
    h: &HSpec,
    samples: usize,
    cfg: &ToleranceConfig,
    seedless: bool,
) -> Result<Vec<u8>> {
    let family = LckFamily::new(*params, h.clone())?;
    let points = sample_points(samples, seedless);
    let lck = verify_lck(&family, &points, cfg)?;
    let vaisman = is_vaisman(&family, &points, cfg.residual_tol, cfg)?;
    let (mut dual, mut jinv) = (0.0f64, 0.0f64);
    for p in &points {
        let g = gram_matrix(&family, p)?;
        let b = lee_vector(params, p).to_vector();
        let omega = family.lee_form(p).0;
        let gb = g * b;
        for i in 0..4 {
            dual = dual.max((gb[i] - omega[i]).abs());
        }
        let j = j_matrix(params, p);
        jinv = jinv.max((j.transpose() * g * j - g).abs().max());
    }
    let report = VerifyReport {
        params: params.into(),
        tolerances: *cfg,
        h: h.to_string(),
        samples,
        sampling: sampling_name(seedless),
        lck_pass: lck.passes(cfg.residual_tol),
        lck,
        vaisman,
        vaisman_threshold: cfg.residual_tol,
        duality: Check::new(dual, ALGEBRAIC_TOL),
        j_invariance: Check::new(jinv, ALGEBRAIC_TOL),
    };
    Ok(json(&report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    Stereo,
    TorusAngles,
}

impl std::str::FromStr for Projection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "stereo" => Ok(Projection::Stereo),
            "torus-angles" => Ok(Projection::TorusAngles),
            other => Err(format!("unknown projection '{other}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

pub struct LeafRequest {
    pub kind: FoliationKind,
    pub point: FramePoint,
    pub samples: usize,
    pub t_max: Option<f64>,
    pub projection: Projection,
    pub format: Format,
}

const DEFAULT_T_MAX: f64 = 20.0;

fn num(x: f64) -> String {
    format!("{x:?}")
}

fn project(p: &FramePoint, projection: Projection) -> Option<Vec<f64>> {
    match projection {
        Projection::TorusAngles => {
            let (a, b) = torus_angles(p);
            Some(vec![a, b])
        }
        Projection::Stereo => {
            let x = [p.xi1().re, p.xi1().im, p.xi2().re, p.xi2().im];
            stereographic(x).ok().map(|y| y.to_vec())
        }
    }
}

fn point_columns(p: &FramePoint) -> [String; 5] {
    [
        num(p.theta()),
        num(p.xi1().re),
        num(p.xi1().im),
        num(p.xi2().re),
        num(p.xi2().im),
    ]
}

pub fn leaf(params: &HopfParams, req: &LeafRequest, cfg: &ToleranceConfig) -> Result<Vec<u8>> {
    if req.samples < 2 {
        return Err(Error::InvalidInput("need at least two samples".into()));
    }
    if let Some(t) = req.t_max {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidInput(format!("bad --t-max {t}")));
        }
    }
    let class = classify_leaf(params, &req.point, req.kind, cfg);
    let title = format!("{} leaf: {}", req.kind, class_name(&class.class));
    let proj_cols: &[&str] = match req.projection {
        Projection::TorusAngles => &["t1", "t2"],
        Projection::Stereo => &["x", "y", "z"],
    };
    let wrap = req.projection == Projection::TorusAngles;
    match req.kind {
        FoliationKind::KernelLee => {
            let note = format!("sphere3-slice theta={}", req.point.theta());
            match req.format {
                Format::Csv => render::csv_table(
                    &["theta", "note"],
                    &[vec![num(req.point.theta()), "sphere3-slice".into()]],
                ),
                Format::Svg => Ok(render::svg_note(&title, &note)),
            }
        }
        FoliationKind::LeeFlow | FoliationKind::AntiLeeFlow => {
            let t_max = req.t_max.or(class.class.period()).unwrap_or(DEFAULT_T_MAX);
            let mut rows = Vec::new();
            let mut pts = Vec::new();
            for i in 0..req.samples {
                let t = t_max * i as f64 / (req.samples - 1) as f64;
                let p = flow(params, req.kind, &req.point, t)?;
                let Some(c) = project(&p, req.projection) else {
                    continue;
                };
                pts.push((c[0], c[1]));
                let mut row = vec![num(t)];
                row.extend(point_columns(&p));
                row.extend(c.iter().map(|v| num(*v)));
                rows.push(row);
            }
            match req.format {
                Format::Csv => {
                    let mut header = vec!["t", "theta", "re_xi1", "im_xi1", "re_xi2", "im_xi2"];
                    header.extend_from_slice(proj_cols);
                    render::csv_table(&header, &rows)
                }
                Format::Svg => Ok(render::svg_curve(&title, &pts, wrap)),
            }
        }
        FoliationKind::LeeAntiLeePlane => {
            let t_max = req.t_max.unwrap_or(match class.class {
                LeafClass::CompactTorus { lattice } => lattice.v.0.abs().max(lattice.w.0.abs()),
                _ => 1.0,
            });
            let s_max = match class.class {
                LeafClass::CompactTorus { lattice } => lattice.w.1.abs().max(lattice.v.1.abs()),
                _ => TAU / params.log_mod_beta(),
            };
            let side = ((req.samples as f64).sqrt().ceil() as usize).max(2);
            let mut rows = Vec::new();
            let mut pts = Vec::new();
            for i in 0..side {
                for k in 0..side {
                    let t = t_max * i as f64 / (side - 1) as f64;
                    let s = s_max * k as f64 / (side - 1) as f64;
                    let p = leaf_surface(params, &req.point, t, s);
                    let Some(c) = project(&p, req.projection) else {
                        continue;
                    };
                    pts.push((c[0], c[1]));
                    let mut row = vec![num(t), num(s)];
                    row.extend(point_columns(&p));
                    row.extend(c.iter().map(|v| num(*v)));
                    rows.push(row);
                }
            }
            match req.format {
                Format::Csv => {
                    let mut header =
                        vec!["t", "s", "theta", "re_xi1", "im_xi1", "re_xi2", "im_xi2"];
                    header.extend_from_slice(proj_cols);
                    render::csv_table(&header, &rows)
                }
                Format::Svg => Ok(render::svg_cloud(&title, &pts, wrap)),
            }
        }
    }
}

fn class_name(c: &LeafClass) -> &'static str {
    match c {
        LeafClass::Sphere3Slice => "sphere3_slice",
        LeafClass::CircleCompact { .. } => "circle_compact",
        LeafClass::DenseInAxisTorus => "dense_in_axis_torus",
        LeafClass::ToralKnot { .. } => "toral_knot",
        LeafClass::DenseIn2Torus => "dense_in2_torus",
        LeafClass::CompactTorus { .. } => "compact_torus",
        LeafClass::AxisTorus => "axis_torus",
        LeafClass::DenseIn3Torus => "dense_in3_torus",
    }
}

#[derive(Serialize)]
struct FibrateReport {
    params: ParamsEcho,
    tolerances: ToleranceConfig,
    point: PointEcho,
    monodromy: MonodromyData,
    image: ProjectivePoint,
    leaf_samples: usize,
    spread: f64,
}

const LEAF_SAMPLES: usize = 16;

pub fn fibrate(params: &HopfParams, p: &FramePoint, cfg: &ToleranceConfig) -> Result<Vec<u8>> {
    let data = monodromy(params, cfg)?.value;
    let image = fibration_map(&data, p);
    let spread = (1..=LEAF_SAMPLES)
        .map(|i| {
            let (t, s) = (0.37 * i as f64, 0.61 * i as f64);
            fs_distance(&image, &fibration_map(&data, &leaf_surface(params, p, t, s)))
        })
        .fold(0.0, f64::max);
    Ok(json(&FibrateReport {
        params: params.into(),
        tolerances: *cfg,
        point: p.into(),
        monodromy: data,
        image,
        leaf_samples: LEAF_SAMPLES,
        spread,
    }))
}

fn potential_rows(samples: &[PotentialSample]) -> Vec<Vec<String>> {
    samples
        .iter()
        .map(|s| {
            vec![
                num(s.theta),
                num(s.l),
                num(s.dl),
                num(s.d2l),
                num(s.residual),
                "0".into(),
            ]
        })
        .collect()
}

const POTENTIAL_HEADER: [&str; 6] = ["theta", "l", "dl", "d2l", "residual", "blow_up"];

/// The CSV table and, on blow-up, the error to report after writing it.
pub fn solve_potential(
    h: &HSpec,
    theta0: f64,
    v0: f64,
    span: (f64, f64),
    samples: usize,
    cfg: &ToleranceConfig,
) -> Result<(Vec<u8>, Option<Error>)> {
    h.validate()?;
    match integrate_potential(|t| h.value(t), theta0, v0, span, samples, cfg) {
        Ok(traj) => Ok((render::csv_table(&POTENTIAL_HEADER, &potential_rows(&traj.samples))?, None)),
        Err(Error::BlowUp { theta, partial }) => {
            let mut rows = potential_rows(&partial.samples);
            let blank = String::new;
            rows.push(vec![num(theta), blank(), blank(), blank(), blank(), "1".into()]);
            let table = render::csv_table(&POTENTIAL_HEADER, &rows)?;
            Ok((table, Some(Error::BlowUp { theta, partial })))
        }
        Err(e) => Err(e),
    }
}
