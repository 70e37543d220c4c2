use super::full::FullState;
use super::model::{dynamic_rhs, EndCondition, ExternalLoads, RodModel};
use crate::fd::derivative_strided;
use crate::kinematics::{
    body_rate_from_p, jacobian_det, nearest_equivalent, phi_inverse, rebase_rotation_vector, rotation_from_p,
    RotationVector, SINGULARITY_GUARD,
};
use crate::{Error, Mat3, Result, Vec3};

/// State of the semi-analytical scheme: the generating fields `p`, `q` and the
/// body rates `ω`, `v` at every node.
#[derive(Clone, Debug, PartialEq)]
pub struct RodState {
    pub ds: f64,
    pub time: f64,
    pub step: usize,
    /// Centerline position of node 0 in the fixed frame.
    pub base_position: Vec3,
    pub p: Vec<Vec3>,
    pub q: Vec<Vec3>,
    pub omega: Vec<Vec3>,
    pub v: Vec<Vec3>,
}

impl RodState {
    /// A state at rest with the given generating fields.
    pub fn at_rest(ds: f64, base_position: Vec3, p: Vec<Vec3>, q: Vec<Vec3>) -> Self {
        let n = p.len();
        RodState {
            ds,
            time: 0.0,
            step: 0,
            base_position,
            p,
            q,
            omega: vec![Vec3::zeros(); n],
            v: vec![Vec3::zeros(); n],
        }
    }

    /// Straight rod of `n` nodes along `e₃` starting at the origin, with
    /// `ν = e₃` exactly.
    pub fn straight(n: usize, length: f64) -> Self {
        let ds = length / (n - 1) as f64;
        let q = (0..n).map(|i| Vec3::new(0.0, 0.0, -(i as f64) * ds)).collect();
        RodState::at_rest(ds, Vec3::zeros(), vec![Vec3::zeros(); n], q)
    }

    pub fn n_nodes(&self) -> usize {
        self.p.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_nodes();
        if n < 3 {
            return Err(Error::GridTooSmall { required: 3, got: n });
        }
        if self.q.len() != n || self.omega.len() != n || self.v.len() != n {
            return Err(Error::InvalidArgument("per-node fields differ in length".into()));
        }
        for p in &self.p {
            let j = jacobian_det(&RotationVector(*p));
            if j.abs() <= SINGULARITY_GUARD {
                return Err(Error::SingularParameterization {
                    norm: p.norm(),
                    jacobian: j,
                });
            }
        }
        Ok(())
    }

    /// Director frames `Rᵢ = exp([pᵢ]×)`; columns are `d₁, d₂, d₃`.
    pub fn frames(&self) -> Vec<Mat3> {
        self.p.iter().map(|p| rotation_from_p(&RotationVector(*p))).collect()
    }

    /// `κ = A(p) p_s` and `ν = q×κ − q_s` at every node.
    ///
    /// Neighbouring rotation vectors are unwrapped onto the branch of the node
    /// being differenced, so independently rebased nodes do not produce jumps.
    /// `ν` is evaluated as `−Rᵢᵀ D(R q)ᵢ`, which equals `q×κ − q_s` in the
    /// continuum. Differencing the product `q×κ` node by node instead leaves
    /// the rotation–shear coupling of the odd–even mode with the wrong sign,
    /// and that mode then grows exponentially at any step size.
    pub fn strains(&self) -> Result<(Vec<Vec3>, Vec<Vec3>)> {
        let n = self.n_nodes();
        if n < 3 {
            return Err(Error::GridTooSmall { required: 3, got: n });
        }
        let frames = self.frames();
        let rq: Vec<Vec3> = frames.iter().zip(&self.q).map(|(r, q)| r * q).collect();
        let mut kappa = Vec::with_capacity(n);
        let mut nu = Vec::with_capacity(n);
        for i in 0..n {
            let pi = self.p[i];
            let p_s = derivative_strided(n, i, self.ds, |k| nearest_equivalent(&self.p[k], &pi));
            let rq_s = derivative_strided(n, i, self.ds, |k| rq[k]);
            kappa.push(body_rate_from_p(&pi, &p_s));
            nu.push(-(frames[i].transpose() * rq_s));
        }
        Ok((kappa, nu))
    }

    /// Strains with `ν = q×κ − D q` differenced node by node. Agrees with
    /// [`RodState::strains`] to `O(Δs²)` on smooth states.
    pub fn strains_pointwise(&self) -> Result<(Vec<Vec3>, Vec<Vec3>)> {
        let (kappa, _) = self.strains()?;
        let q_s = crate::fd::derivative(&self.q, self.ds)?;
        let nu = (0..self.n_nodes()).map(|i| self.q[i].cross(&kappa[i]) - q_s[i]).collect();
        Ok((kappa, nu))
    }

    /// The twelve kinematic fields induced by this state.
    pub fn to_full_state(&self) -> Result<FullState> {
        let (kappa, nu) = self.strains()?;
        Ok(FullState {
            ds: self.ds,
            time: self.time,
            kappa,
            nu,
            omega: self.omega.clone(),
            v: self.v.clone(),
        })
    }
}

/// One step of the semi-analytical scheme.
///
/// 1. `κ, ν` from `(p, q)` through the closed-form kinematics.
/// 2. `ω_t, v_t` from the balance laws.
/// 3. Forward Euler on `ω, v`.
/// 4. Forward Euler on `p` with `p_t = Φ(ω_new, p)` and on `q` with
///    `q_t = q×ω_new − v_new`.
/// 5. Rebase `p` wherever `‖p‖ > π`.
pub fn step_semi_analytical(state: &RodState, loads: &ExternalLoads, model: &RodModel, dt: f64) -> Result<RodState> {
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument(format!("dt must be > 0, got {dt}")));
    }
    let n = state.n_nodes();
    let fields = state.to_full_state()?;
    let frames = state.frames();
    let (omega_t, v_t) = dynamic_rhs(&fields, loads, model, Some(&frames))?;

    let mut next = state.clone();
    let fixed = |i: usize| {
        (i == 0 && model.boundary.base == EndCondition::Clamped)
            || (i == n - 1 && model.boundary.tip == EndCondition::Clamped)
    };
    for i in 0..n {
        if fixed(i) {
            continue;
        }
        let w = state.omega[i] + omega_t[i] * dt;
        let v = state.v[i] + v_t[i] * dt;
        let p = RotationVector(state.p[i]);
        let p_t = phi_inverse(&w, &p)?;
        let q_t = state.q[i].cross(&w) - v;
        next.omega[i] = w;
        next.v[i] = v;
        next.p[i] = rebase_rotation_vector(&RotationVector(p.0 + p_t * dt)).0;
        next.q[i] = state.q[i] + q_t * dt;
    }
    if model.boundary.base == EndCondition::Free {
        next.base_position += frames[0] * next.v[0] * dt;
    }
    next.time += dt;
    next.step += 1;
    super::check_finite(next.step, &[&next.p, &next.q, &next.omega, &next.v])?;
    Ok(next)
}

/// Elastic force and torque per unit length acting on the rod, in the fixed
/// frame: `D(R n)` and `D(R m) + r_s × (R n)` with `r_s = R ν`. Free ends
/// carry no contact loads.
pub fn elastic_load_densities(state: &RodState, model: &RodModel) -> Result<(Vec<Vec3>, Vec<Vec3>)> {
    let n = state.n_nodes();
    let (kappa, nu) = state.strains()?;
    let frames = state.frames();
    let (m, f) = model.contact_loads(&kappa, &nu);
    let rm: Vec<Vec3> = (0..n).map(|i| frames[i] * m[i]).collect();
    let rn: Vec<Vec3> = (0..n).map(|i| frames[i] * f[i]).collect();
    let d_rm = crate::fd::derivative(&rm, state.ds)?;
    let d_rn = crate::fd::derivative(&rn, state.ds)?;
    let torque = (0..n).map(|i| d_rm[i] + (frames[i] * nu[i]).cross(&rn[i])).collect();
    Ok((d_rn, torque))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rod::{Boundary, RodParameters};

    #[test]
    fn equilibrium_is_stationary() {
        let params = RodParameters::circular(0.05, 1.0, 100.0, 40.0);
        let state = RodState::straight(8, 1.0);
        let model = RodModel::relaxed_at(params, &state.to_full_state().unwrap(), Boundary::default());
        let next = step_semi_analytical(&state, &ExternalLoads::zeros(8), &model, 1e-3).unwrap();
        assert_eq!(next.p, state.p);
        assert_eq!(next.q, state.q);
        assert_eq!(next.omega, state.omega);
        assert_eq!(next.v, state.v);
        assert!((next.time - 1e-3).abs() < 1e-18);
    }

    #[test]
    fn straight_rod_has_unit_stretch() {
        let (kappa, nu) = RodState::straight(5, 2.0).strains().unwrap();
        for i in 0..5 {
            assert_eq!(kappa[i], Vec3::zeros());
            assert!((nu[i] - Vec3::z()).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_nonpositive_dt() {
        let state = RodState::straight(5, 1.0);
        let model = RodModel::uniform(RodParameters::circular(0.1, 1.0, 1.0, 1.0), 5, Boundary::default());
        assert!(step_semi_analytical(&state, &ExternalLoads::zeros(5), &model, 0.0).is_err());
    }
}
