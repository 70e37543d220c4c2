//! Self-contained SVG plots.

use crate::swimmer::SimulationTrace;
use crate::{Error, Result, Vec3};
use std::fmt::Write as _;
use std::path::Path;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 50.0;

/// Coordinate plane a centerline is projected onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plane {
    XY,
    XZ,
    YZ,
}

impl Plane {
    fn project(&self, v: &Vec3) -> (f64, f64) {
        match self {
            Plane::XY => (v.x, v.y),
            Plane::XZ => (v.x, v.z),
            Plane::YZ => (v.y, v.z),
        }
    }

    fn labels(&self) -> (&'static str, &'static str) {
        match self {
            Plane::XY => ("x", "y"),
            Plane::XZ => ("x", "z"),
            Plane::YZ => ("y", "z"),
        }
    }
}

/// Error-versus-resolution data for a log–log convergence plot.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub label: String,
    /// `(h, error)` pairs; both must be positive to be drawn.
    pub points: Vec<(f64, f64)>,
}

pub enum PlotSource<'a> {
    /// Centerlines of up to `max_frames` evenly chosen frames.
    Trace {
        trace: &'a SimulationTrace,
        plane: Plane,
        max_frames: usize,
    },
    /// Log–log lines with an optional reference slope.
    Convergence {
        series: &'a [Series],
        reference_slope: Option<f64>,
    },
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
}

fn colour(k: usize, n: usize) -> String {
    let t = if n > 1 { k as f64 / (n - 1) as f64 } else { 1.0 };
    format!("rgb({},{},{})", (40.0 + 200.0 * t) as u8, 60, (220.0 - 180.0 * t) as u8)
}

/// Linear map of `[lo, hi]` onto the drawable span.
struct Axis {
    lo: f64,
    hi: f64,
    start: f64,
    end: f64,
}

impl Axis {
    fn map(&self, x: f64) -> f64 {
        let span = if self.hi > self.lo { self.hi - self.lo } else { 1.0 };
        self.start + (x - self.lo) / span * (self.end - self.start)
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

pub fn trace_svg(trace: &SimulationTrace, plane: Plane, max_frames: usize) -> Result<String> {
    if trace.frames.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let n = trace.frames.len();
    let shown: Vec<usize> = if n <= max_frames.max(1) {
        (0..n).collect()
    } else {
        let m = max_frames.max(2);
        let mut idx: Vec<usize> = (0..m).map(|k| k * (n - 1) / (m - 1)).collect();
        idx.dedup();
        idx
    };
    let pts: Vec<Vec<(f64, f64)>> = shown
        .iter()
        .map(|&k| trace.frames[k].positions.iter().map(|r| plane.project(r)).collect())
        .collect();
    let (xlo, xhi) = bounds(pts.iter().flatten().map(|p| p.0));
    let (ylo, yhi) = bounds(pts.iter().flatten().map(|p| p.1));
    // equal scales on both axes
    let span = (xhi - xlo).max(yhi - ylo).max(1e-12);
    let (xc, yc) = (0.5 * (xlo + xhi), 0.5 * (ylo + yhi));
    let side = (HEIGHT - 2.0 * MARGIN).min(WIDTH - 2.0 * MARGIN);
    let x0 = (WIDTH - side) / 2.0;
    let xa = Axis {
        lo: xc - span / 2.0,
        hi: xc + span / 2.0,
        start: x0,
        end: x0 + side,
    };
    let ya = Axis {
        lo: yc - span / 2.0,
        hi: yc + span / 2.0,
        start: MARGIN + side,
        end: MARGIN,
    };
    let mut out = String::new();
    header(&mut out, "centerline");
    let _ = writeln!(
        out,
        r#"<rect x="{x0}" y="{MARGIN}" width="{side}" height="{side}" fill="none" stroke="gray"/>"#
    );
    for (k, line) in pts.iter().enumerate() {
        let coords: Vec<String> = line.iter().map(|(x, y)| format!("{:.2},{:.2}", xa.map(*x), ya.map(*y))).collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"><title>t = {:.6e}</title></polyline>"#,
            colour(k, pts.len()),
            coords.join(" "),
            trace.frames[shown[k]].time
        );
    }
    let (hx, hy) = plane.labels();
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{hx}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{hy}</text>"#,
        x0 - 20.0,
        HEIGHT / 2.0
    );
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn convergence_svg(series: &[Series], reference_slope: Option<f64>) -> Result<String> {
    let usable = |p: &&(f64, f64)| p.0 > 0.0 && p.1 > 0.0 && p.0.is_finite() && p.1.is_finite();
    let all: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().filter(usable).copied()).collect();
    if all.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let (xlo, xhi) = bounds(all.iter().map(|p| p.0.log10()));
    let (ylo, yhi) = bounds(all.iter().map(|p| p.1.log10()));
    let pad = |lo: f64, hi: f64| if hi > lo { (lo - 0.1 * (hi - lo), hi + 0.1 * (hi - lo)) } else { (lo - 1.0, hi + 1.0) };
    let (xlo, xhi) = pad(xlo, xhi);
    let (ylo, yhi) = pad(ylo, yhi);
    let xa = Axis {
        lo: xlo,
        hi: xhi,
        start: MARGIN + 20.0,
        end: WIDTH - MARGIN,
    };
    let ya = Axis {
        lo: ylo,
        hi: yhi,
        start: HEIGHT - MARGIN,
        end: MARGIN,
    };
    let mut out = String::new();
    header(&mut out, "convergence");
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="gray"/>"#,
        xa.start,
        xa.end - xa.start,
        ya.start - ya.end
    );
    for (k, s) in series.iter().enumerate() {
        let pts: Vec<(f64, f64)> = s.points.iter().filter(usable).map(|p| (p.0.log10(), p.1.log10())).collect();
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{:.2},{:.2}", xa.map(*x), ya.map(*y))).collect();
        let c = colour(k, series.len());
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{c}" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        );
        for (x, y) in &pts {
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{c}"/>"#, xa.map(*x), ya.map(*y));
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="{c}">{}</text>"#,
            xa.start + 10.0,
            MARGIN + 16.0 * (k + 1) as f64,
            escape(&s.label)
        );
    }
    if let Some(slope) = reference_slope {
        // anchored at the finest point of the first series
        if let Some(&(x, y)) = series
            .first()
            .and_then(|s| s.points.iter().filter(usable).min_by(|a, b| a.0.total_cmp(&b.0)))
        {
            let (lx, ly) = (x.log10(), y.log10());
            let x1 = xhi;
            let y1 = ly + slope * (x1 - lx);
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-dasharray="6,4"/>"#,
                xa.map(lx),
                ya.map(ly),
                xa.map(x1),
                ya.map(y1)
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">slope {slope}</text>"#,
                xa.map(x1) - 60.0,
                ya.map(y1).clamp(MARGIN + 12.0, HEIGHT - MARGIN) - 6.0
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">log10 h</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        out,
        r#"<text x="10" y="{}" font-family="sans-serif" font-size="12">log10 error</text>"#,
        MARGIN - 10.0
    );
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn emit_plot(source: &PlotSource, path: &Path) -> Result<()> {
    let svg = match source {
        PlotSource::Trace {
            trace,
            plane,
            max_frames,
        } => trace_svg(trace, *plane, *max_frames)?,
        PlotSource::Convergence {
            series,
            reference_slope,
        } => convergence_svg(series, *reference_slope)?,
    };
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}
