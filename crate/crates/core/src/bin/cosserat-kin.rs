use clap::{Parser, Subcommand};
use cosserat_kin::io::{bench_stiffness, exit_code, run_swimmer, run_verify, stokes_probe, RunConfig};
use cosserat_kin::{Error, Result};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cosserat-kin", version, about = "Cosserat rod kinematics, rod dynamics and Stokes swimmers")]
struct Cli {
    /// Output directory; overrides `out_dir` in the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// RNG seed; overrides `seed` in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Trace recording stride; overrides `stride` in the config.
    #[arg(long, global = true)]
    stride: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in verification suite.
    Verify,
    /// Simulate a swimmer and write its trace, plot and metrics.
    Run { config: PathBuf },
    /// Compare the largest stable steps of the two rod steppers.
    BenchStiffness { config: PathBuf },
    /// Evaluate a random regularized Stokeslet field on a probe grid.
    StokesProbe { config: PathBuf },
}

fn load(cli: &Cli, path: &Path) -> Result<RunConfig> {
    let mut cfg = RunConfig::from_file(path)?;
    if let Some(seed) = cli.seed {
        cfg.swimmer.seed = seed;
    }
    if let Some(stride) = cli.stride {
        cfg.swimmer.stride = stride;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn out_dir(cli: &Cli, cfg: Option<&RunConfig>) -> PathBuf {
    cli.out
        .clone()
        .or_else(|| cfg.map(|c| c.out_dir.clone()))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("COSSERAT_KIN_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Validation {
            key: "COSSERAT_KIN_THREADS".into(),
            constraint: "must be a positive integer".into(),
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn run(cli: &Cli) -> Result<bool> {
    configure_threads()?;
    match &cli.command {
        Command::Verify => {
            let out = out_dir(cli, None);
            let report = run_verify(&out)?;
            for c in &report.checks {
                println!(
                    "{:<28} {:>12.3e} <= {:<10.1e} {}",
                    c.name,
                    c.value,
                    c.tolerance,
                    if c.passed { "pass" } else { "FAIL" }
                );
            }
            Ok(report.passed())
        }
        Command::Run { config } => {
            let cfg = load(cli, config)?;
            let out = run_swimmer(&cfg, &out_dir(cli, Some(&cfg)))?;
            let m = out.metrics;
            println!(
                "{}: displacement {:.4e} over t = {:.4e}, speed {:.4e}, roll rate {:.4e}, axis angle {:.2} deg",
                cfg.scenario,
                m.displacement.norm(),
                m.elapsed,
                m.mean_speed,
                m.base_rotation_rate,
                m.axis_angle.to_degrees()
            );
            Ok(true)
        }
        Command::BenchStiffness { config } => {
            let cfg = load(cli, config)?;
            let r = bench_stiffness(&cfg, &out_dir(cli, Some(&cfg)))?;
            println!("semi-analytical dt_max {:.4e} ({:.0} steps/s)", r.dt_semi, r.throughput_semi);
            println!("full-numeric    dt_max {:.4e} ({:.0} steps/s)", r.dt_full, r.throughput_full);
            println!("ratio {:.4e}", r.ratio);
            Ok(true)
        }
        Command::StokesProbe { config } => {
            let cfg = load(cli, config)?;
            let rows = stokes_probe(&cfg, &out_dir(cli, Some(&cfg)))?;
            let worst = rows.iter().map(|r| r.divergence.abs()).fold(0.0, f64::max);
            println!("{} probe points, max |div u| = {:.3e}", rows.len(), worst);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
