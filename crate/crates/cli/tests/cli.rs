use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopf-lck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn foliation<'a>(r: &'a Value, kind: &str) -> &'a Value {
    r["foliations"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["kind"] == kind)
        .unwrap()
}

#[test]
fn classify_elliptic_example() {
    let r = report(&["classify", "--alpha", "4", "--beta", "2"]);
    assert_eq!(r["elliptic"]["elliptic"], true);
    let m = &r["elliptic"]["monodromy"];
    assert_eq!((m["m"].as_i64(), m["n"].as_i64(), m["monodromy_c"].as_i64()), (Some(1), Some(2), Some(0)));
    let plane = &foliation(&r, "lee-anti-lee-plane")["leaves"][0];
    assert_eq!(plane["class"], "compact_torus");
    assert_eq!(plane["certainty"]["kind"], "within_tolerance");
    assert_eq!(r["tolerances"]["rational_tol"], 1e-9);
    assert_eq!(r["params"]["alpha"][0], 4.0);
}

#[test]
fn classify_regular_and_exact() {
    let r = report(&["classify", "--alpha", "2", "--beta", "2"]);
    assert_eq!(r["orbifold"]["regular"], true);
    let r = report(&["classify", "--log-mod-ratio", "irr", "--log-mod-beta", "0.5"]);
    let plane = &foliation(&r, "lee-anti-lee-plane")["leaves"][0];
    assert_eq!(plane["class"], "dense_in3_torus");
    assert_eq!(plane["certainty"]["kind"], "exact");
    assert_eq!(r["params"]["exact"]["log_ratio"], "1*irr");
    assert_eq!(r["elliptic"]["elliptic"], false);
}

#[test]
fn tol_flag_is_echoed() {
    let r = report(&["classify", "--alpha", "4", "--beta", "2", "--tol", "1e-7"]);
    assert_eq!(r["tolerances"]["rational_tol"], 1e-7);
    let r = report(&["verify", "--alpha", "2", "--beta", "2", "--samples", "5", "--tol", "1e-5"]);
    assert_eq!(r["tolerances"]["residual_tol"], 1e-5);
}

#[test]
fn verify_examples() {
    let r = report(&["verify", "--alpha", "2i", "--beta", "2", "--h", "const:2", "--samples", "40"]);
    assert_eq!(r["vaisman"]["verdict"], true);
    assert!(r["lck"]["max_d_fundamental"].as_f64().unwrap() < 1e-6);
    assert_eq!(r["lck_pass"], true);
    assert_eq!(r["duality"]["pass"], true);
    assert_eq!(r["j_invariance"]["pass"], true);
    let r = report(&[
        "verify", "--alpha", "2i", "--beta", "2", "--h", "fourier:2,0,0.5", "--samples", "40", "--seedless",
    ]);
    assert_eq!(r["vaisman"]["verdict"], false);
    assert_eq!(r["lck_pass"], true);
    assert_eq!(r["sampling"], "grid");
}

fn csv_rows(bytes: &[u8]) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = String::from_utf8(bytes.to_vec()).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn leaf_closes_after_one_period() {
    let e = std::f64::consts::TAU.exp().to_string();
    let out = run(&[
        "leaf", "--alpha", &e, "--beta", &e, "--kind", "lee-flow", "--point", "0,1,0,0,0", "--samples", "101",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(header[..2], ["t", "theta"]);
    let (first, last) = (&rows[0], rows.last().unwrap());
    assert!((last[0] - 0.5).abs() < 1e-12);
    for k in 1..6 {
        assert!((first[k] - last[k]).abs() < 1e-9, "column {k}");
    }
}

#[test]
fn leaf_knot_winds_five_three() {
    let out = run(&[
        "leaf", "--log-mod-ratio", "5/3", "--log-mod-beta", "3", "--kind", "anti-lee-flow", "--point",
        "0,0.6,0,0.8,0", "--samples", "2001",
    ]);
    let (header, rows) = csv_rows(&out.stdout);
    assert_eq!(header[6..], ["t1", "t2"]);
    let wraps = |col: usize| {
        rows.windows(2)
            .filter(|w| (w[1][col] - w[0][col]).abs() > std::f64::consts::PI)
            .count()
    };
    assert_eq!((wraps(6), wraps(7)), (5, 3));
}

#[test]
fn leaf_outputs() {
    let base = ["--alpha", "4", "--beta", "2", "--point", "0.2,0.6,0,0,0.8"];
    let svg = |extra: &[&str]| {
        let mut args = vec!["leaf"];
        args.extend_from_slice(&base);
        args.extend_from_slice(extra);
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0));
        String::from_utf8(out.stdout).unwrap()
    };
    for extra in [
        &["--format", "svg"][..],
        &["--format", "svg", "--project", "stereo"],
        &["--format", "svg", "--kind", "plane", "--samples", "64"],
        &["--format", "svg", "--kind", "kernel-lee"],
    ] {
        let s = svg(extra);
        assert!(s.starts_with("<svg ") && s.trim_end().ends_with("</svg>"), "{extra:?}");
        assert_eq!(s.matches("<svg").count(), 1);
    }
    let s = svg(&["--kind", "kernel-lee"]);
    assert!(s.starts_with("theta,note\n") && s.contains("sphere3-slice"));
    let s = svg(&["--kind", "plane", "--samples", "16", "--project", "stereo"]);
    assert!(s.starts_with("t,s,theta,re_xi1,im_xi1,re_xi2,im_xi2,x,y,z\n"));
    assert_eq!(s.lines().count(), 17);
}

#[test]
fn fibrate_examples() {
    let r = report(&["fibrate", "--alpha", "2i", "--beta", "2", "--point", "0.3,0.6,0.1,0.5,-0.2"]);
    assert!(r["spread"].as_f64().unwrap() < 1e-9);
    let r = report(&["fibrate", "--alpha", "2i", "--beta", "2", "--point", "0.3,0.6,0.8,0,0"]);
    assert_eq!(r["image"]["w0"], serde_json::json!([1.0, 0.0]));
    assert_eq!(r["image"]["w1"], serde_json::json!([0.0, 0.0]));
    assert_eq!(r["spread"], 0.0);
}

#[test]
fn potential_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.csv");
    let out = run(&["solve-potential", "--h", "const:2", "--v0", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let (header, rows) = csv_rows(&std::fs::read(&path).unwrap());
    assert_eq!(header, ["theta", "l", "dl", "d2l", "residual", "blow_up"]);
    for r in &rows {
        assert!((r[1] - 2.0 * r[0]).abs() < 1e-8 && r[5] == 0.0);
    }
    let out = run(&["solve-potential", "--h", "fourier:2,0.3,-0.4", "--theta0", "1"]);
    let (_, rows) = csv_rows(&out.stdout);
    assert!(rows.iter().all(|r| r[4] < 1e-8));

    let out = run(&["solve-potential", "--h", "const:2", "--v0", "1e-12"]);
    assert_eq!(out.status.code(), Some(7));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("theta,l,dl,d2l,residual,blow_up\n"));
    assert!(text.trim_end().ends_with(",1"));
}

#[test]
fn output_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hopf-lck"))
        .args(["classify", "--alpha", "2", "--beta", "2", "--output", "r.json"])
        .env("HOPF_LCK_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&std::fs::read(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(r["orbifold"]["regular"], true);
}

#[test]
fn input_errors() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["classify", "--alpha", "4"]), Some(2));
    assert_eq!(code(&["classify", "--alpha", "x+yi", "--beta", "2"]), Some(2));
    assert_eq!(code(&["classify", "--log-mod-ratio", "1/2", "--log-mod-beta", "1"]), Some(2));
    assert_eq!(code(&["leaf", "--alpha", "2", "--beta", "2", "--point", "1,2,3"]), Some(2));
    assert_eq!(code(&["leaf", "--alpha", "2", "--beta", "2", "--point", "0,1,0,0,0", "--kind", "x"]), Some(2));
    assert_eq!(code(&["verify", "--alpha", "2", "--beta", "2", "--h", "fourier:1,2"]), Some(4));
    assert_eq!(code(&["classify", "--alpha", "2", "--beta", "2", "--tol", "-1"]), Some(2));
}
