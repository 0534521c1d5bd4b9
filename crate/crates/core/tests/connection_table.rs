//! Connection forms of the diagonal family `diag(k, 1)` for `α = β`.

use std::f64::consts::PI;

use hopf_lck::frame::{FramePoint, HopfParams};
use hopf_lck::metrics::{levi_civita, nabla_lee, DiagonalFamily, HSpec, MetricField};
use hopf_lck::numerics::ToleranceConfig;
use hopf_lck::sampling::quasi_random;
use num_complex::Complex64;

/// `θ_j^k(e_i) = Γ_{ij}^k`; indices are 1-based in the table below.
type Table = [[[f64; 4]; 4]; 4];

fn expected(params: &HopfParams, k: f64, dk: f64) -> Table {
    let a = params.arg_alpha();
    let la = params.log_mod_alpha();
    let nl2 = params.log_alpha().norm_sqr();
    let den = k * la * la;
    let mut t = [[[0.0; 4]; 4]; 4];
    // set(i, j, k, v): Γ_{ij}^k = v
    let mut set = |i: usize, j: usize, kk: usize, v: f64| t[i - 1][j - 1][kk - 1] = v;
    set(1, 1, 1, dk * (la * la - a * a) / (2.0 * den));
    set(2, 1, 1, -PI * dk * a / den);
    set(1, 2, 1, -PI * dk * a / den);
    set(2, 2, 1, -2.0 * PI * PI * dk / den);
    set(1, 1, 2, dk * nl2 * a / (4.0 * PI * den));
    set(2, 1, 2, dk * nl2 / (2.0 * den));
    set(1, 2, 2, dk * nl2 / (2.0 * den));
    set(2, 2, 2, PI * dk * a / den);
    set(4, 3, 2, 1.0);
    set(4, 2, 3, -k);
    set(3, 2, 4, k);
    set(3, 4, 2, -1.0);
    set(1, 4, 3, -k * a / (2.0 * PI));
    set(2, 4, 3, 2.0 - k);
    set(4, 1, 3, -k * a / (2.0 * PI));
    set(3, 1, 4, k * a / (2.0 * PI));
    set(1, 3, 4, k * a / (2.0 * PI));
    set(2, 3, 4, k - 2.0);
    t
}

fn family(alpha: Complex64, kappa: &str) -> DiagonalFamily {
    let pr = HopfParams::new(alpha, alpha).unwrap();
    DiagonalFamily::new(pr, kappa.parse::<HSpec>().unwrap()).unwrap()
}

fn compare(f: &DiagonalFamily, p: &FramePoint, tol: f64) -> Vec<String> {
    let cfg = ToleranceConfig::default();
    let c = levi_civita(f, p, &cfg).unwrap();
    let k = f.kappa.value(p.theta());
    let dk = f.kappa.derivative(p.theta());
    let e = expected(&f.params, k, dk);
    let mut bad = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for m in 0..4 {
                let (got, want) = (c.gamma[i][j][m], e[i][j][m]);
                if (got - want).abs() > tol {
                    bad.push(format!("Γ_{}{}^{}: got {got:.6}, table {want:.6}", i + 1, j + 1, m + 1));
                }
            }
        }
    }
    bad
}

#[test]
fn constant_kappa_matches_table() {
    for alpha in [Complex64::new(2.0, 0.0), Complex64::from_polar(3.0, 1.1), Complex64::from_polar(1.5, -2.5)] {
        for kappa in ["const:1", "const:2.5"] {
            let f = family(alpha, kappa);
            for p in quasi_random(8) {
                let bad = compare(&f, &p, 1e-6);
                assert!(bad.is_empty(), "α = {alpha}, k = {kappa}: {bad:#?}");
            }
        }
    }
}

#[test]
fn varying_kappa_matches_table() {
    for alpha in [Complex64::new(2.0, 0.0), Complex64::from_polar(3.0, 1.1)] {
        let f = family(alpha, "fourier:2,0.3,0.5");
        for p in quasi_random(8) {
            let bad = compare(&f, &p, 1e-6);
            assert!(bad.is_empty(), "α = {alpha}: {bad:#?}");
        }
    }
}

#[test]
fn lee_derivative_on_classical_parameters() {
    // α = β = e^{2π}, k = 2 + sin θ: ∇_{e1}ω = −cos θ e¹
    let a = Complex64::new((2.0 * PI).exp(), 0.0);
    let f = family(a, "fourier:2,0,1");
    let cfg = ToleranceConfig::default();
    let p = FramePoint::new(0.0, Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
    let n = nabla_lee(&f, &p, &cfg).unwrap();
    assert!((n[(0, 0)] + 1.0).abs() < 1e-5, "{n}");
    assert!(f.lee_form(&p).0[0] < 0.0);
}
