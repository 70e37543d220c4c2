//! Largest stable step of the two schemes on a fixed scenario.
//!
//! A step `dt` counts as stable when `steps` steps complete without a
//! blow-up or a singular parameterization and the total energy never exceeds
//! `growth_limit` times its initial value.

use super::full::step_full_numeric;
use super::model::{ExternalLoads, RodModel};
use super::semi::{step_semi_analytical, RodState};
use super::model::{Boundary, RodParameters};
use crate::kinematics::{rotation_from_p, RotationVector};
use crate::{Error, Result, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stepper {
    SemiAnalytical,
    FullNumeric,
}

impl Stepper {
    pub fn name(&self) -> &'static str {
        match self {
            Stepper::SemiAnalytical => "semi-analytical",
            Stepper::FullNumeric => "full-numeric",
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabilityScenario {
    pub model: RodModel,
    pub initial: RodState,
    pub loads: ExternalLoads,
    pub steps: usize,
    pub growth_limit: f64,
}

impl StabilityScenario {
    pub fn new(model: RodModel, initial: RodState) -> Self {
        let n = initial.n_nodes();
        StabilityScenario {
            model,
            initial,
            loads: ExternalLoads::zeros(n),
            steps: 1000,
            growth_limit: 10.0,
        }
    }

    /// A straight clamped-free rod released from a uniformly bent shape of
    /// curvature `curvature` about `d₁`, with seeded uniform noise of relative
    /// size `noise` on `p` and `q` so that every discrete mode is excited.
    pub fn bent_cantilever(
        params: RodParameters,
        n_nodes: usize,
        length: f64,
        curvature: f64,
        noise: f64,
        seed: u64,
    ) -> Self {
        let ds = length / (n_nodes - 1) as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut jitter = || Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * noise;
        let mut p = Vec::with_capacity(n_nodes);
        let mut q = Vec::with_capacity(n_nodes);
        for i in 0..n_nodes {
            let s = i as f64 * ds;
            let k = curvature;
            let arc = if k == 0.0 {
                Vec3::new(0.0, 0.0, s)
            } else {
                Vec3::new(0.0, -(1.0 - (k * s).cos()) / k, (k * s).sin() / k)
            };
            let pi = Vec3::new(k * s, 0.0, 0.0);
            let qi = -(rotation_from_p(&RotationVector(pi)).transpose() * arc);
            if i == 0 {
                p.push(pi);
                q.push(qi);
            } else {
                p.push(pi + jitter());
                q.push(qi + jitter() * length);
            }
        }
        let initial = RodState::at_rest(ds, Vec3::zeros(), p, q);
        let model = RodModel::uniform(params, n_nodes, Boundary::default());
        StabilityScenario::new(model, initial)
    }

    pub fn is_stable(&self, stepper: Stepper, dt: f64) -> bool {
        self.run(stepper, dt).is_ok()
    }

    /// Runs the scenario; `Ok` carries the largest energy ratio seen.
    pub fn run(&self, stepper: Stepper, dt: f64) -> Result<f64> {
        let e0 = self.model.energy(&self.initial.to_full_state()?);
        let mut worst: f64 = 1.0;
        let mut check = |e: f64, step: usize| {
            let ratio = e / e0;
            worst = worst.max(ratio);
            if !(ratio < self.growth_limit) {
                Err(Error::NumericalBlowup { step, magnitude: e })
            } else {
                Ok(())
            }
        };
        match stepper {
            Stepper::SemiAnalytical => {
                let mut s = self.initial.clone();
                for k in 0..self.steps {
                    s = step_semi_analytical(&s, &self.loads, &self.model, dt)?;
                    check(self.model.energy(&s.to_full_state()?), k + 1)?;
                }
            }
            Stepper::FullNumeric => {
                let mut s = self.initial.to_full_state()?;
                for k in 0..self.steps {
                    s = step_full_numeric(&s, &self.loads, &self.model, dt)?;
                    check(self.model.energy(&s), k + 1)?;
                }
            }
        }
        Ok(worst)
    }
}

/// Bisection over `log dt` for the largest stable step, to within a factor
/// of 1.2. `dt_range` must span at least six decades.
pub fn stable_step_search(stepper: Stepper, scenario: &StabilityScenario, dt_range: (f64, f64)) -> Result<f64> {
    let (lo, hi) = dt_range;
    if !(lo > 0.0 && hi / lo >= 1e6) {
        return Err(Error::InvalidArgument(format!(
            "dt range [{lo:e}, {hi:e}] must be positive and span six decades"
        )));
    }
    if !scenario.is_stable(stepper, lo) {
        return Err(Error::NoStableStep { dt_min: lo, dt_max: hi });
    }
    if scenario.is_stable(stepper, hi) {
        return Ok(hi);
    }
    let (mut a, mut b) = (lo.ln(), hi.ln());
    while b - a > 1.2f64.ln() {
        let mid = 0.5 * (a + b);
        if scenario.is_stable(stepper, mid.exp()) {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(a.exp())
}
