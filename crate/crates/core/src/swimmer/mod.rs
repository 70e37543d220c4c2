//! A flagellated microswimmer: an elastic rod coupled two ways to Stokes flow.
//!
//! In overdamped mode every node moves with the local fluid velocity and its
//! frame turns with the local fluid angular velocity, where the flow is
//! generated by the rod's own elastic loads and the motor. A motor at the base
//! turns the flagellum and counter-rotates a head blob, so the swimmer as a
//! whole is force and torque free.

mod config;
mod elastic;
mod sim;
mod trace;

pub use config::{SwimMode, SwimmerConfig};
pub use sim::{coupled_step, helix_centerline, init_swimmer, motor_torque, run_simulation, StepInfo, Swimmer};
pub use trace::{trace_metrics, SimulationTrace, TraceFrame, TraceMetrics, TraceStatus};
