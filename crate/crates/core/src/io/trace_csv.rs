use crate::swimmer::SimulationTrace;
use crate::{Error, Result, Vec3};
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

pub const TRACE_HEADER: &str = "step,time,node,x,y,z,qx,qy,qz,px,py,pz";

/// One CSV row of a trace.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub step: usize,
    pub time: f64,
    pub node: usize,
    pub position: Vec3,
    pub q: Vec3,
    pub p: Vec3,
}

/// `{:.16e}` keeps 17 significant digits, enough to round-trip any `f64`.
pub(crate) fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_trace_to<W: Write>(trace: &SimulationTrace, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{TRACE_HEADER}")?;
    for frame in &trace.frames {
        for (i, r) in frame.positions.iter().enumerate() {
            let (q, p) = (frame.q[i], frame.p[i]);
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                frame.step,
                num(frame.time),
                i,
                num(r.x),
                num(r.y),
                num(r.z),
                num(q.x),
                num(q.y),
                num(q.z),
                num(p.x),
                num(p.y),
                num(p.z)
            )?;
        }
    }
    out.flush()
}

pub fn write_trace(trace: &SimulationTrace, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_trace_to(trace, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn read_trace(path: &Path) -> Result<Vec<TraceRow>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rows = Vec::new();
    for (idx, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if idx == 0 {
            if line != TRACE_HEADER {
                return Err(Error::Parse {
                    line: 1,
                    reason: "unexpected trace header".into(),
                });
            }
            continue;
        }
        let bad = |reason: &str| Error::Parse {
            line: idx + 1,
            reason: reason.to_string(),
        };
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 12 {
            return Err(bad("expected 12 columns"));
        }
        let f = |k: usize| cols[k].parse::<f64>().map_err(|_| bad("malformed number"));
        let u = |k: usize| cols[k].parse::<usize>().map_err(|_| bad("malformed integer"));
        rows.push(TraceRow {
            step: u(0)?,
            time: f(1)?,
            node: u(2)?,
            position: Vec3::new(f(3)?, f(4)?, f(5)?),
            q: Vec3::new(f(6)?, f(7)?, f(8)?),
            p: Vec3::new(f(9)?, f(10)?, f(11)?),
        });
    }
    Ok(rows)
}
