use crate::rod::RodParameters;
use crate::stokes::FluidParams;
use crate::{Error, Result, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwimMode {
    /// Nodes follow the fluid; no inertia.
    Overdamped,
    /// Rod inertia with hydrodynamic drag from a mobility solve.
    Inertial,
}

impl SwimMode {
    pub fn name(&self) -> &'static str {
        match self {
            SwimMode::Overdamped => "overdamped",
            SwimMode::Inertial => "inertial",
        }
    }
}

impl std::str::FromStr for SwimMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "overdamped" => Ok(SwimMode::Overdamped),
            "inertial" => Ok(SwimMode::Inertial),
            _ => Err(Error::Validation {
                key: "mode".into(),
                constraint: "must be overdamped or inertial".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwimmerConfig {
    pub length: f64,
    pub n_nodes: usize,
    /// Material constants; the reference curvature is replaced by the helix.
    pub rod: RodParameters,
    /// Radius of the relaxed helix; zero gives a straight flagellum.
    pub helix_amplitude: f64,
    /// Pitch of the relaxed helix.
    pub helix_wavelength: f64,
    pub fluid: FluidParams,
    /// Blob radius of the head.
    pub head_epsilon: f64,
    /// Signed motor torque about the base director `d₃`. Negative values drive
    /// the right-handed default helix head first.
    pub motor_torque: f64,
    pub mode: SwimMode,
    pub chemotaxis_gain: f64,
    /// Constant concentration gradient.
    pub gradient: Vec3,
    pub dt: f64,
    pub n_steps: usize,
    pub stride: usize,
    pub seed: u64,
    /// Amplitude of the seeded random perturbation of the initial `p`.
    pub perturbation: f64,
}

impl Default for SwimmerConfig {
    /// The monotrichous bacterium scenario.
    fn default() -> Self {
        SwimmerConfig {
            length: 1.0,
            n_nodes: 25,
            rod: RodParameters {
                density: 1.0,
                area: 1e-3,
                inertia: Vec3::new(1e-7, 1e-7, 2e-7),
                bend_stiffness: Vec3::new(1.0, 1.0, 1.0),
                shear_stiffness: Vec3::new(50.0, 50.0, 50.0),
                ref_curvature: Vec3::zeros(),
                ref_strain: Vec3::z(),
            },
            helix_amplitude: 0.08,
            helix_wavelength: 0.4,
            fluid: FluidParams {
                viscosity: 1.0,
                epsilon: 0.04,
            },
            head_epsilon: 0.1,
            motor_torque: -1.0,
            mode: SwimMode::Overdamped,
            chemotaxis_gain: 0.0,
            gradient: Vec3::zeros(),
            dt: 1e-5,
            n_steps: 100_000,
            stride: 1000,
            seed: 0,
            perturbation: 0.0,
        }
    }
}

impl SwimmerConfig {
    pub fn validate(&self) -> Result<()> {
        let check = |key: &str, ok: bool, constraint: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Validation {
                    key: key.into(),
                    constraint: constraint.into(),
                })
            }
        };
        check("length", self.length > 0.0 && self.length.is_finite(), "must be > 0")?;
        check("n_nodes", self.n_nodes >= 5, "must be >= 5")?;
        check("helix_amplitude", self.helix_amplitude >= 0.0, "must be >= 0")?;
        check(
            "helix_wavelength",
            self.helix_amplitude == 0.0 || self.helix_wavelength > 0.0,
            "must be > 0",
        )?;
        check("head_epsilon", self.head_epsilon > 0.0, "must be > 0")?;
        check("motor_torque", self.motor_torque.is_finite(), "must be finite")?;
        check("chemotaxis_gain", self.chemotaxis_gain.is_finite(), "must be finite")?;
        check("dt", self.dt > 0.0 && self.dt.is_finite(), "must be > 0")?;
        check("stride", self.stride >= 1, "must be >= 1")?;
        check("perturbation", self.perturbation >= 0.0, "must be >= 0")?;
        self.rod.validate()?;
        self.fluid.validate()
    }

    pub fn ds(&self) -> f64 {
        self.length / (self.n_nodes - 1) as f64
    }

    /// Body-frame curvature `(k, 0, τ)` of the relaxed helix, with
    /// `k = a/(a² + b²)`, `τ = b/(a² + b²)`, `b = λ/2π`.
    pub fn helix_curvature(&self) -> Vec3 {
        let a = self.helix_amplitude;
        if a == 0.0 {
            return Vec3::zeros();
        }
        let b = self.helix_wavelength / (2.0 * std::f64::consts::PI);
        let c = a * a + b * b;
        Vec3::new(a / c, 0.0, b / c)
    }

    /// Axis of the relaxed helix (the initial `d₃` for a straight flagellum).
    pub fn flagellum_axis(&self) -> Vec3 {
        let k = self.helix_curvature();
        if k.norm() > 0.0 {
            k.normalize()
        } else {
            Vec3::z()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        SwimmerConfig::default().validate().unwrap();
    }

    #[test]
    fn helix_radius_and_pitch() {
        let cfg = SwimmerConfig::default();
        let k = cfg.helix_curvature();
        let w2 = k.norm_squared();
        assert!((k.x / w2 - cfg.helix_amplitude).abs() < 1e-15);
        assert!((2.0 * std::f64::consts::PI * k.z / w2 - cfg.helix_wavelength).abs() < 1e-14);
    }

    #[test]
    fn rejects_negative_dt() {
        let cfg = SwimmerConfig {
            dt: -1.0,
            ..SwimmerConfig::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::Validation { key, .. }) if key == "dt"));
    }
}
