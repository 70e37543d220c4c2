//! Cosserat rod dynamics.
//!
//! The dynamical half of the governing system, in body (director) components:
//!
//! ```text
//! ρJ ω_t = m_s + κ×m + ν×n − ω×(ρJ ω) + L
//! ρA v_t = n_s + κ×n − ω×(ρA v) + F
//! ```
//!
//! [`step_semi_analytical`] advances `(p, q, ω, v)` and derives `κ, ν` from the
//! closed-form kinematics each step, so compatibility holds by construction.
//! [`step_full_numeric`] integrates all twelve fields directly and serves as a
//! baseline.

mod centerline;
mod full;
mod model;
mod semi;
pub mod stability;

pub use centerline::reconstruct_centerline;
pub use full::{step_full_numeric, FullState};
pub use model::{
    constitutive_forces, dynamic_rhs, spatial_derivative, Boundary, EndCondition, ExternalLoads, RodModel,
    RodParameters,
};
pub use semi::{elastic_load_densities, step_semi_analytical, RodState};
pub use stability::{stable_step_search, StabilityScenario, Stepper};

/// Components beyond this magnitude are treated as a numerical blow-up.
pub const BLOWUP_THRESHOLD: f64 = 1e12;

use crate::{Error, Result, Vec3};

pub(crate) fn check_finite(step: usize, fields: &[&[Vec3]]) -> Result<()> {
    for field in fields {
        for v in field.iter() {
            let m = v.amax();
            if !(m <= BLOWUP_THRESHOLD) {
                return Err(Error::NumericalBlowup { step, magnitude: m });
            }
        }
    }
    Ok(())
}
