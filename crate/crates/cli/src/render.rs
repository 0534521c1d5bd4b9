//! CSV and SVG emission. Numbers use Rust's shortest round-trip formatting,
//! so output is locale independent and byte-stable.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use hopf_lck::{Error, Result};

pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.into_inner()
        .map_err(|e| Error::InvalidInput(format!("csv: {e}")))
}

const SIZE: f64 = 512.0;
const MARGIN: f64 = 16.0;

fn header(out: &mut String, title: &str) {
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n<title>{title}</title>\n<rect x=\"0\" y=\"0\" width=\"{s}\" height=\"{s}\" fill=\"white\"/>\n",
        s = SIZE + 2.0 * MARGIN
    );
}

struct Frame {
    x0: f64,
    y0: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[(f64, f64)]) -> Frame {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if points.is_empty() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        Frame { x0, y0, scale: SIZE / span }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            MARGIN + (x - self.x0) * self.scale,
            MARGIN + SIZE - (y - self.y0) * self.scale,
        )
    }
}

fn polyline(out: &mut String, frame: &Frame, run: &[(f64, f64)]) {
    if run.len() < 2 {
        return;
    }
    out.push_str("<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"");
    for (i, p) in run.iter().enumerate() {
        let (x, y) = frame.map(*p);
        let sep = if i == 0 { "" } else { " " };
        let _ = write!(out, "{sep}{x:.4},{y:.4}");
    }
    out.push_str("\"/>\n");
}

/// Polylines through `points`; with `wrap`, coordinates live on `[0, 2π)²`
/// and the curve is cut where it crosses the boundary.
pub fn svg_curve(title: &str, points: &[(f64, f64)], wrap: bool) -> Vec<u8> {
    let mut out = String::new();
    header(&mut out, title);
    let frame = if wrap {
        Frame::fit(&[(0.0, 0.0), (TAU, TAU)])
    } else {
        Frame::fit(points)
    };
    if wrap {
        let (a, b) = (frame.map((0.0, 0.0)), frame.map((TAU, TAU)));
        let _ = writeln!(
            out,
            "<rect x=\"{:.4}\" y=\"{:.4}\" width=\"{:.4}\" height=\"{:.4}\" fill=\"none\" stroke=\"gray\"/>",
            a.0,
            b.1,
            b.0 - a.0,
            a.1 - b.1
        );
    }
    let mut run: Vec<(f64, f64)> = Vec::new();
    for &p in points {
        if let Some(&q) = run.last() {
            let jump = (p.0 - q.0).abs() > TAU / 2.0 || (p.1 - q.1).abs() > TAU / 2.0;
            if wrap && jump {
                polyline(&mut out, &frame, &run);
                run.clear();
            }
        }
        run.push(p);
    }
    polyline(&mut out, &frame, &run);
    out.push_str("</svg>\n");
    out.into_bytes()
}

pub fn svg_cloud(title: &str, points: &[(f64, f64)], wrap: bool) -> Vec<u8> {
    let mut out = String::new();
    header(&mut out, title);
    let frame = if wrap {
        Frame::fit(&[(0.0, 0.0), (TAU, TAU)])
    } else {
        Frame::fit(points)
    };
    for p in points {
        let (x, y) = frame.map(*p);
        let _ = writeln!(out, "<circle cx=\"{x:.4}\" cy=\"{y:.4}\" r=\"1\" fill=\"black\"/>");
    }
    out.push_str("</svg>\n");
    out.into_bytes()
}

pub fn svg_note(title: &str, note: &str) -> Vec<u8> {
    let mut out = String::new();
    header(&mut out, title);
    let _ = writeln!(
        out,
        "<text x=\"{m}\" y=\"{y}\" font-family=\"monospace\" font-size=\"14\">{note}</text>",
        m = MARGIN,
        y = MARGIN + SIZE / 2.0
    );
    out.push_str("</svg>\n");
    out.into_bytes()
}
