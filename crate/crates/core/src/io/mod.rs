//! Configuration files, CSV and SVG output, and the command drivers.

mod commands;
mod config;
pub mod plot;
mod quad;
mod trace_csv;
mod verify;

pub use commands::{
    bench_stiffness, exit_code, probe_sources, run_swimmer, run_verify, stiffness_scenario, stokes_probe,
    BenchReport, ProbeRow, RunOutput,
};
pub use config::{BenchConfig, ProbeConfig, RunConfig};
pub use plot::{convergence_svg, emit_plot, trace_svg, Plane, PlotSource, Series};
pub use quad::{integrate, integrate_to_infinity};
pub use trace_csv::{read_trace, write_trace, write_trace_to, TraceRow, TRACE_HEADER};
pub use verify::{cmd_verify, verify_with, CheckResult, Fixture, VerificationReport};

/// Reads and validates a config file.
pub fn parse_config(path: &std::path::Path) -> crate::Result<RunConfig> {
    RunConfig::from_file(path)
}
