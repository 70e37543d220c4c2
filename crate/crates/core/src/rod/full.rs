use super::model::{dynamic_rhs, EndCondition, ExternalLoads, RodModel};
use crate::fd;
use crate::{Error, Result, Vec3};

/// The twelve scalar fields `κ, ν, ω, v` per node, integrated directly by the
/// baseline scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct FullState {
    pub ds: f64,
    pub time: f64,
    pub kappa: Vec<Vec3>,
    pub nu: Vec<Vec3>,
    pub omega: Vec<Vec3>,
    pub v: Vec<Vec3>,
}

impl FullState {
    pub fn n_nodes(&self) -> usize {
        self.kappa.len()
    }
}

/// Forward Euler on all twelve fields:
/// `κ_t = ω_s − ω×κ`, `ν_t = v_s + κ×v − ω×ν` and the balance laws.
pub fn step_full_numeric(state: &FullState, loads: &ExternalLoads, model: &RodModel, dt: f64) -> Result<FullState> {
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument(format!("dt must be > 0, got {dt}")));
    }
    let n = state.n_nodes();
    let (omega_t, v_t) = dynamic_rhs(state, loads, model, None)?;
    let omega_s = fd::derivative(&state.omega, state.ds)?;
    let v_s = fd::derivative(&state.v, state.ds)?;
    let mut next = state.clone();
    for i in 0..n {
        let (k, nu, w, v) = (state.kappa[i], state.nu[i], state.omega[i], state.v[i]);
        next.kappa[i] = k + (omega_s[i] - w.cross(&k)) * dt;
        next.nu[i] = nu + (v_s[i] + k.cross(&v) - w.cross(&nu)) * dt;
        next.omega[i] = w + omega_t[i] * dt;
        next.v[i] = v + v_t[i] * dt;
    }
    if model.boundary.base == EndCondition::Clamped {
        next.omega[0] = Vec3::zeros();
        next.v[0] = Vec3::zeros();
    }
    if model.boundary.tip == EndCondition::Clamped {
        next.omega[n - 1] = Vec3::zeros();
        next.v[n - 1] = Vec3::zeros();
    }
    next.time += dt;
    let step = (next.time / dt).round() as usize;
    super::check_finite(step, &[&next.kappa, &next.nu, &next.omega, &next.v])?;
    Ok(next)
}
