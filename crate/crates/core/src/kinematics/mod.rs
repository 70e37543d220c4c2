//! Closed-form solution of the kinematic Cosserat equations.
//!
//! Everything here is a pure function of its inputs. The rotation-vector maps
//! live in [`rotation`], grid fields and PDE residuals in [`fields`], and the
//! inverse problem (finding `p`, `q` for given `ω, κ, ν, v`) in [`recovery`].

pub mod fields;
pub mod recovery;
pub mod rotation;
pub mod samples;

pub use fields::{kinematic_residuals, GridField, GridSpec, KinematicFields, ParameterSample};
pub use recovery::{recover_parameterization, recover_parameterization_with, Recovery, RecoveryOptions};
pub use rotation::{
    body_rate_from_p, cross_matrix, dexp_matrix, jacobian_det, log_rotation, nearest_equivalent,
    phi_inverse, rebase_rotation_vector, rotation_from_p, RotationVector, SINGULARITY_GUARD,
};
pub use samples::TrigParameterization;

use crate::Vec3;

/// Linear strain and velocity generated by `q`: `ν = q×κ − q_s`, `v = q×ω − q_t`.
pub fn strain_velocity_from_q(q: Vec3, dq_s: Vec3, dq_t: Vec3, kappa: Vec3, omega: Vec3) -> (Vec3, Vec3) {
    (q.cross(&kappa) - dq_s, q.cross(&omega) - dq_t)
}
