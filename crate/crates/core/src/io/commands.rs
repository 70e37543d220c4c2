//! Drivers behind the `cosserat-kin` subcommands. Each writes only into the
//! output directory it is given.

use super::config::RunConfig;
use super::plot::{emit_plot, Plane, PlotSource};
use super::trace_csv::{num, write_trace};
use super::verify::{cmd_verify, VerificationReport};
use crate::rod::{stable_step_search, StabilityScenario, Stepper};
use crate::stokes::{pressure_at, total_velocity_at, FluidParams, PointForceSet, ProbeBox};
use crate::swimmer::{run_simulation, trace_metrics, SimulationTrace, TraceMetrics, TraceStatus};
use crate::{Error, Result, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use std::time::Instant;

/// Process exit code for an error: 2 for configuration and file problems,
/// 3 for numerical failures.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Validation { .. } | Error::InvalidArgument(_) | Error::Io { .. } => 2,
        _ => 3,
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// Runs the verification suite and writes `verify.csv` and `verify.svg`.
pub fn run_verify(out: &Path) -> Result<VerificationReport> {
    ensure_dir(out)?;
    let report = cmd_verify();
    write_file(&out.join("verify.csv"), &report.to_csv())?;
    emit_plot(
        &PlotSource::Convergence {
            series: &report.convergence,
            reference_slope: Some(2.0),
        },
        &out.join("verify.svg"),
    )?;
    Ok(report)
}

pub struct RunOutput {
    pub trace: SimulationTrace,
    pub metrics: TraceMetrics,
}

/// Runs the swimmer and writes `trace.csv`, `trace.svg` and `metrics.csv`.
/// A trace cut short by a numerical failure is still written before the
/// failure is returned.
pub fn run_swimmer(config: &RunConfig, out: &Path) -> Result<RunOutput> {
    ensure_dir(out)?;
    let trace = run_simulation(&config.swimmer)?;
    write_trace(&trace, &out.join("trace.csv"))?;
    emit_plot(
        &PlotSource::Trace {
            trace: &trace,
            plane: Plane::XZ,
            max_frames: 8,
        },
        &out.join("trace.svg"),
    )?;
    let metrics = trace_metrics(&trace)?;
    let d = metrics.displacement;
    let status = match &trace.status {
        TraceStatus::Completed => "completed".to_string(),
        TraceStatus::Failed { step, .. } => format!("failed at step {step}"),
    };
    let csv = format!(
        "metric,value\nscenario,{}\nmode,{}\nstatus,{}\ndisplacement_x,{}\ndisplacement_y,{}\ndisplacement_z,{}\n\
         elapsed,{}\nmean_speed,{}\nbase_rotation_rate,{}\nefficiency,{}\naxis_angle,{}\n",
        config.scenario,
        config.swimmer.mode.name(),
        status,
        num(d.x),
        num(d.y),
        num(d.z),
        num(metrics.elapsed),
        num(metrics.mean_speed),
        num(metrics.base_rotation_rate),
        num(metrics.efficiency),
        num(metrics.axis_angle),
    );
    write_file(&out.join("metrics.csv"), &csv)?;
    if let TraceStatus::Failed { step, reason } = trace.status {
        return Err(Error::SimulationFailed { step, reason });
    }
    Ok(RunOutput { trace, metrics })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchReport {
    pub dt_semi: f64,
    pub dt_full: f64,
    pub ratio: f64,
    /// Steps per second of each stepper at its own `dt_max`. Wall-clock, so
    /// it is printed but never written to disk.
    pub throughput_semi: f64,
    pub throughput_full: f64,
}

pub fn stiffness_scenario(config: &RunConfig) -> StabilityScenario {
    let b = &config.bench;
    let mut scenario = StabilityScenario::bent_cantilever(
        b.rod_parameters(),
        b.n_nodes,
        b.length,
        b.curvature,
        b.noise,
        config.swimmer.seed,
    );
    scenario.steps = b.steps;
    scenario.growth_limit = b.growth_limit;
    scenario
}

fn throughput(scenario: &StabilityScenario, stepper: Stepper, dt: f64) -> f64 {
    let start = Instant::now();
    let _ = scenario.run(stepper, dt);
    scenario.steps as f64 / start.elapsed().as_secs_f64().max(1e-9)
}

/// Largest stable step of both steppers on the reference stiff rod; writes
/// `bench.csv`.
pub fn bench_stiffness(config: &RunConfig, out: &Path) -> Result<BenchReport> {
    ensure_dir(out)?;
    let scenario = stiffness_scenario(config);
    let range = (config.bench.dt_min, config.bench.dt_max);
    let dt_semi = stable_step_search(Stepper::SemiAnalytical, &scenario, range)?;
    let dt_full = stable_step_search(Stepper::FullNumeric, &scenario, range)?;
    let report = BenchReport {
        dt_semi,
        dt_full,
        ratio: dt_semi / dt_full,
        throughput_semi: throughput(&scenario, Stepper::SemiAnalytical, dt_semi),
        throughput_full: throughput(&scenario, Stepper::FullNumeric, dt_full),
    };
    let csv = format!(
        "stepper,dt_max\n{},{}\n{},{}\nratio,{}\n",
        Stepper::SemiAnalytical.name(),
        num(dt_semi),
        Stepper::FullNumeric.name(),
        num(dt_full),
        num(report.ratio)
    );
    write_file(&out.join("bench.csv"), &csv)?;
    Ok(report)
}

pub struct ProbeRow {
    pub point: Vec3,
    pub velocity: Vec3,
    pub pressure: f64,
    pub divergence: f64,
}

/// Seeded random forces in `[−extent/2, extent/2]³`.
pub fn probe_sources(config: &RunConfig) -> PointForceSet {
    let p = &config.probe;
    let mut rng = ChaCha8Rng::seed_from_u64(config.swimmer.seed);
    let mut unit = || Vec3::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
    let points = (0..p.sources).map(|_| unit() * p.extent).collect();
    let forces = (0..p.sources).map(|_| unit() * 2.0).collect();
    PointForceSet {
        points,
        forces,
        torques: None,
    }
}

fn divergence_at(x: &Vec3, sources: &PointForceSet, fp: &FluidParams, h: f64) -> f64 {
    (0..3)
        .map(|axis| {
            let mut e = Vec3::zeros();
            e[axis] = h;
            let up = total_velocity_at(&(x + e), sources, fp)[axis];
            let down = total_velocity_at(&(x - e), sources, fp)[axis];
            (up - down) / (2.0 * h)
        })
        .sum()
}

/// Velocity, pressure and divergence of a random regularized force field on
/// a probe grid; writes `probe.csv`.
pub fn stokes_probe(config: &RunConfig, out: &Path) -> Result<Vec<ProbeRow>> {
    ensure_dir(out)?;
    let fp = config.swimmer.fluid;
    fp.validate()?;
    let p = &config.probe;
    let sources = probe_sources(config);
    let probe = ProbeBox {
        lower: Vec3::repeat(-p.extent),
        upper: Vec3::repeat(p.extent),
        n: p.points_per_axis,
        h: p.h,
    };
    let rows: Vec<ProbeRow> = probe
        .points()
        .into_iter()
        .map(|x| ProbeRow {
            point: x,
            velocity: total_velocity_at(&x, &sources, &fp),
            pressure: pressure_at(&x, &sources, &fp),
            divergence: divergence_at(&x, &sources, &fp, p.h),
        })
        .collect();
    let mut csv = String::from("x,y,z,ux,uy,uz,pressure,divergence\n");
    for r in &rows {
        let v = [
            r.point.x,
            r.point.y,
            r.point.z,
            r.velocity.x,
            r.velocity.y,
            r.velocity.z,
            r.pressure,
            r.divergence,
        ];
        csv.push_str(&v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(","));
        csv.push('\n');
    }
    write_file(&out.join("probe.csv"), &csv)?;
    Ok(rows)
}
