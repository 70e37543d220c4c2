//! Smooth seeded `(p, q)` fields with exact derivatives, for exercising the
//! kinematics on known solutions.

use super::fields::ParameterSample;
use crate::Vec3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One term `a sin(k s + l t + φ)` per component.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Mode {
    amplitude: Vec3,
    k: f64,
    l: f64,
    phase: Vec3,
}

impl Mode {
    fn eval(&self, s: f64, t: f64) -> (Vec3, Vec3, Vec3) {
        let mut v = Vec3::zeros();
        let mut ds = Vec3::zeros();
        let mut dt = Vec3::zeros();
        for c in 0..3 {
            let arg = self.k * s + self.l * t + self.phase[c];
            v[c] = self.amplitude[c] * arg.sin();
            ds[c] = self.amplitude[c] * self.k * arg.cos();
            dt[c] = self.amplitude[c] * self.l * arg.cos();
        }
        (v, ds, dt)
    }
}

/// A pair of trigonometric fields `p(s, t)`, `q(s, t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigParameterization {
    p_modes: Vec<Mode>,
    q_modes: Vec<Mode>,
}

impl TrigParameterization {
    /// `modes` terms per field with wavenumbers in `[0.5, 3]` and amplitudes
    /// chosen so that each component stays within `amplitude`.
    pub fn random(seed: u64, modes: usize, amplitude: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let per = amplitude / modes.max(1) as f64;
        let draw = |rng: &mut ChaCha8Rng| Mode {
            amplitude: Vec3::new(rng.gen_range(-per..per), rng.gen_range(-per..per), rng.gen_range(-per..per)),
            k: rng.gen_range(0.5..3.0),
            l: rng.gen_range(0.5..3.0),
            phase: Vec3::new(rng.gen_range(0.0..6.3), rng.gen_range(0.0..6.3), rng.gen_range(0.0..6.3)),
        };
        let p_modes = (0..modes).map(|_| draw(&mut rng)).collect();
        let q_modes = (0..modes).map(|_| draw(&mut rng)).collect();
        TrigParameterization { p_modes, q_modes }
    }

    pub fn sample(&self, s: f64, t: f64) -> ParameterSample {
        let sum = |modes: &[Mode]| {
            modes.iter().fold((Vec3::zeros(), Vec3::zeros(), Vec3::zeros()), |acc, m| {
                let (v, ds, dt) = m.eval(s, t);
                (acc.0 + v, acc.1 + ds, acc.2 + dt)
            })
        };
        let (p, p_s, p_t) = sum(&self.p_modes);
        let (q, q_s, q_t) = sum(&self.q_modes);
        ParameterSample { p, p_s, p_t, q, q_s, q_t }
    }
}
