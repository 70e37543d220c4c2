//! Closed-form kinematics for Cosserat rods and what can be built on top of it.
//!
//! The kinematic half of the Cosserat equations,
//!
//! ```text
//! κ_t = ω_s − ω×κ
//! ν_t = v_s + κ×v − ω×ν
//! ```
//!
//! is solved in closed form by two arbitrary vector fields `p(s,t)` (a rotation
//! vector) and `q(s,t)`:
//!
//! ```text
//! ω = A(p) p_t      κ = A(p) p_s
//! ν = q×κ − q_s     v = q×ω − q_t
//! ```
//!
//! where `A(p)` is the right-trivialised differential of the exponential map on
//! SO(3). The crate is organised in layers:
//!
//! * [`kinematics`] – `A(p)`, its determinant, the inverse map, frame
//!   reconstruction, residuals of the kinematic PDEs and recovery of `(p, q)`
//!   from sampled fields.
//! * [`rod`] – a linear constitutive law, the dynamical equations, the
//!   semi-analytical stepper (state `(p, q, ω, v)`), a fully numerical
//!   twelve-field baseline and a stable-step search.
//! * [`stokes`] – regularized Stokeslets and rotlets, dense mobility matrices and
//!   an LSQR solve for the inverse problem.
//! * [`swimmer`] – a flagellum driven by a base motor in a viscous fluid.
//! * [`io`] – config files, CSV traces, SVG plots and the verification and
//!   benchmark drivers used by the `cosserat-kin` binary.
//!
//! Runnable walkthroughs live in `examples/`.

pub mod error;
pub mod fd;
pub mod io;
pub mod kinematics;
pub mod rod;
pub mod stokes;
pub mod swimmer;

pub use error::{Error, Result};

/// Three-vector of reals.
pub type Vec3 = nalgebra::Vector3<f64>;
/// 3×3 real matrix.
pub type Mat3 = nalgebra::Matrix3<f64>;
