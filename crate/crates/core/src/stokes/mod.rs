//! Regularized Stokeslets for the steady Stokes equations.
//!
//! Point forces are smeared over the blob
//! `φ_ε(r) = 15ε⁴ / (8π(r² + ε²)^{7/2})`, which turns the singular Stokes
//! solution into a smooth, exactly divergence-free field. Torques are carried
//! by the matching regularized rotlet.

mod field;
mod kernels;
mod lsqr;
mod mobility;

pub use field::{
    angular_velocity_at, divergence_residual, pressure_at, rodlet_velocity_at, total_velocity_at, velocities_at,
    velocity_at, PointForceSet, ProbeBox,
};
pub use kernels::{blob_phi, blob_kernels, pressure_factor, rotlet_factor, self_mobility, Kernels};
pub use lsqr::{lsqr, LsqrOptions, LsqrSolution};
pub use mobility::{assemble_mobility, solve_forces_for_velocities, solve_forces_for_velocities_with, ForceSolve, MobilityMatrix};

use crate::{Error, Result};

/// Viscosity and blob radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluidParams {
    pub viscosity: f64,
    pub epsilon: f64,
}

impl FluidParams {
    pub fn new(viscosity: f64, epsilon: f64) -> Result<Self> {
        let fp = FluidParams { viscosity, epsilon };
        fp.validate()?;
        Ok(fp)
    }

    pub fn validate(&self) -> Result<()> {
        for (key, x) in [("viscosity", self.viscosity), ("epsilon", self.epsilon)] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::Validation {
                    key: key.into(),
                    constraint: "must be > 0".into(),
                });
            }
        }
        Ok(())
    }
}
