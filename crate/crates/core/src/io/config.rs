//! Flat `key = value` configuration files.
//!
//! Blank lines and `#` comments are ignored; vectors are written as three
//! comma-separated numbers. Every key is optional and defaults to the
//! bacterium scenario, the reference stiff rod and a five-source probe.

use crate::rod::RodParameters;
use crate::swimmer::SwimmerConfig;
use crate::{Error, Result, Vec3};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Settings of the stiffness benchmark: a bent clamped–free rod of circular
/// cross-section released from rest.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub n_nodes: usize,
    pub length: f64,
    pub radius: f64,
    pub density: f64,
    pub young: f64,
    pub shear: f64,
    pub curvature: f64,
    pub noise: f64,
    pub steps: usize,
    pub growth_limit: f64,
    pub dt_min: f64,
    pub dt_max: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n_nodes: 50,
            length: 1.0,
            radius: 0.01,
            density: 1000.0,
            young: 1e9,
            shear: 4e8,
            curvature: 1.0,
            noise: 1e-6,
            steps: 1000,
            growth_limit: 10.0,
            dt_min: 1e-12,
            dt_max: 1e-2,
        }
    }
}

/// Settings of `stokes-probe`: random regularized forces and a probe grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeConfig {
    pub sources: usize,
    /// Sources lie in `[−extent/2, extent/2]³`, probes in `[−extent, extent]³`.
    pub extent: f64,
    pub points_per_axis: usize,
    /// Finite-difference step of the divergence.
    pub h: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            sources: 5,
            extent: 1.0,
            points_per_axis: 6,
            h: 1e-4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub scenario: String,
    pub out_dir: PathBuf,
    /// Also carries `seed` and `stride`.
    pub swimmer: SwimmerConfig,
    pub bench: BenchConfig,
    pub probe: ProbeConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: "bacteria".into(),
            out_dir: PathBuf::from("out"),
            swimmer: SwimmerConfig::default(),
            bench: BenchConfig::default(),
            probe: ProbeConfig::default(),
        }
    }
}

fn parse_f64(v: &str) -> std::result::Result<f64, String> {
    v.parse::<f64>().map_err(|_| format!("`{v}` is not a number"))
}

fn parse_usize(v: &str) -> std::result::Result<usize, String> {
    v.parse::<usize>().map_err(|_| format!("`{v}` is not a non-negative integer"))
}

fn parse_vec3(v: &str) -> std::result::Result<Vec3, String> {
    let parts: Vec<&str> = v.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("`{v}` is not three comma-separated numbers"));
    }
    Ok(Vec3::new(parse_f64(parts[0])?, parse_f64(parts[1])?, parse_f64(parts[2])?))
}

fn fmt_vec3(v: &Vec3) -> String {
    format!("{:?}, {:?}, {:?}", v.x, v.y, v.z)
}

impl RunConfig {
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    line: line_no,
                    reason: format!("expected `key = value`, found `{line}`"),
                });
            };
            cfg.set(key.trim(), value.trim()).map_err(|reason| Error::Parse { line: line_no, reason })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RunConfig::parse_str(&text)
    }

    fn set(&mut self, key: &str, v: &str) -> std::result::Result<(), String> {
        let s = &mut self.swimmer;
        let b = &mut self.bench;
        let p = &mut self.probe;
        match key {
            "scenario" => self.scenario = v.to_string(),
            "out_dir" => self.out_dir = PathBuf::from(v),
            "seed" => s.seed = v.parse().map_err(|_| format!("`{v}` is not a u64"))?,
            "stride" => s.stride = parse_usize(v)?,
            "length" => s.length = parse_f64(v)?,
            "n_nodes" => s.n_nodes = parse_usize(v)?,
            "density" => s.rod.density = parse_f64(v)?,
            "area" => s.rod.area = parse_f64(v)?,
            "inertia" => s.rod.inertia = parse_vec3(v)?,
            "bend_stiffness" => s.rod.bend_stiffness = parse_vec3(v)?,
            "shear_stiffness" => s.rod.shear_stiffness = parse_vec3(v)?,
            "ref_strain" => s.rod.ref_strain = parse_vec3(v)?,
            "helix_amplitude" => s.helix_amplitude = parse_f64(v)?,
            "helix_wavelength" => s.helix_wavelength = parse_f64(v)?,
            "viscosity" => s.fluid.viscosity = parse_f64(v)?,
            "epsilon" => s.fluid.epsilon = parse_f64(v)?,
            "head_epsilon" => s.head_epsilon = parse_f64(v)?,
            "motor_torque" => s.motor_torque = parse_f64(v)?,
            "mode" => s.mode = v.parse().map_err(|e: Error| e.to_string())?,
            "chemotaxis_gain" => s.chemotaxis_gain = parse_f64(v)?,
            "gradient" => s.gradient = parse_vec3(v)?,
            "dt" => s.dt = parse_f64(v)?,
            "n_steps" => s.n_steps = parse_usize(v)?,
            "perturbation" => s.perturbation = parse_f64(v)?,
            "bench_nodes" => b.n_nodes = parse_usize(v)?,
            "bench_length" => b.length = parse_f64(v)?,
            "bench_radius" => b.radius = parse_f64(v)?,
            "bench_density" => b.density = parse_f64(v)?,
            "bench_young" => b.young = parse_f64(v)?,
            "bench_shear" => b.shear = parse_f64(v)?,
            "bench_curvature" => b.curvature = parse_f64(v)?,
            "bench_noise" => b.noise = parse_f64(v)?,
            "bench_steps" => b.steps = parse_usize(v)?,
            "bench_growth_limit" => b.growth_limit = parse_f64(v)?,
            "bench_dt_min" => b.dt_min = parse_f64(v)?,
            "bench_dt_max" => b.dt_max = parse_f64(v)?,
            "probe_sources" => p.sources = parse_usize(v)?,
            "probe_extent" => p.extent = parse_f64(v)?,
            "probe_points" => p.points_per_axis = parse_usize(v)?,
            "probe_h" => p.h = parse_f64(v)?,
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.swimmer.validate()?;
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
        let b = &self.bench;
        check("bench_nodes", b.n_nodes >= 5, "must be >= 5")?;
        for (key, x) in [
            ("bench_length", b.length),
            ("bench_radius", b.radius),
            ("bench_density", b.density),
            ("bench_young", b.young),
            ("bench_shear", b.shear),
            ("bench_growth_limit", b.growth_limit),
            ("bench_dt_min", b.dt_min),
        ] {
            check(key, x > 0.0 && x.is_finite(), "must be > 0")?;
        }
        check("bench_noise", b.noise >= 0.0, "must be >= 0")?;
        check("bench_steps", b.steps >= 1, "must be >= 1")?;
        check("bench_dt_max", b.dt_max >= 1e6 * b.dt_min, "must be at least 1e6 * bench_dt_min")?;
        let p = &self.probe;
        check("probe_sources", p.sources >= 1, "must be >= 1")?;
        check("probe_extent", p.extent > 0.0, "must be > 0")?;
        check("probe_points", p.points_per_axis >= 1, "must be >= 1")?;
        check("probe_h", p.h > 0.0, "must be > 0")?;
        Ok(())
    }

    /// Canonical text form; parses back to an equal config.
    pub fn to_config_string(&self) -> String {
        let s = &self.swimmer;
        let b = &self.bench;
        let p = &self.probe;
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        kv("scenario", self.scenario.clone());
        kv("out_dir", self.out_dir.display().to_string());
        kv("seed", s.seed.to_string());
        kv("stride", s.stride.to_string());
        kv("length", format!("{:?}", s.length));
        kv("n_nodes", s.n_nodes.to_string());
        kv("density", format!("{:?}", s.rod.density));
        kv("area", format!("{:?}", s.rod.area));
        kv("inertia", fmt_vec3(&s.rod.inertia));
        kv("bend_stiffness", fmt_vec3(&s.rod.bend_stiffness));
        kv("shear_stiffness", fmt_vec3(&s.rod.shear_stiffness));
        kv("ref_strain", fmt_vec3(&s.rod.ref_strain));
        kv("helix_amplitude", format!("{:?}", s.helix_amplitude));
        kv("helix_wavelength", format!("{:?}", s.helix_wavelength));
        kv("viscosity", format!("{:?}", s.fluid.viscosity));
        kv("epsilon", format!("{:?}", s.fluid.epsilon));
        kv("head_epsilon", format!("{:?}", s.head_epsilon));
        kv("motor_torque", format!("{:?}", s.motor_torque));
        kv("mode", s.mode.name().to_string());
        kv("chemotaxis_gain", format!("{:?}", s.chemotaxis_gain));
        kv("gradient", fmt_vec3(&s.gradient));
        kv("dt", format!("{:?}", s.dt));
        kv("n_steps", s.n_steps.to_string());
        kv("perturbation", format!("{:?}", s.perturbation));
        kv("bench_nodes", b.n_nodes.to_string());
        kv("bench_length", format!("{:?}", b.length));
        kv("bench_radius", format!("{:?}", b.radius));
        kv("bench_density", format!("{:?}", b.density));
        kv("bench_young", format!("{:?}", b.young));
        kv("bench_shear", format!("{:?}", b.shear));
        kv("bench_curvature", format!("{:?}", b.curvature));
        kv("bench_noise", format!("{:?}", b.noise));
        kv("bench_steps", b.steps.to_string());
        kv("bench_growth_limit", format!("{:?}", b.growth_limit));
        kv("bench_dt_min", format!("{:?}", b.dt_min));
        kv("bench_dt_max", format!("{:?}", b.dt_max));
        kv("probe_sources", p.sources.to_string());
        kv("probe_extent", format!("{:?}", p.extent));
        kv("probe_points", p.points_per_axis.to_string());
        kv("probe_h", format!("{:?}", p.h));
        out
    }
}

impl BenchConfig {
    pub fn rod_parameters(&self) -> RodParameters {
        RodParameters::circular(self.radius, self.density, self.young, self.shear)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(RunConfig::parse_str("").unwrap(), RunConfig::default());
        assert_eq!(RunConfig::parse_str("# only a comment\n\n").unwrap(), RunConfig::default());
    }

    #[test]
    fn negative_dt_is_a_validation_error() {
        match RunConfig::parse_str("dt = -1") {
            Err(Error::Validation { key, constraint }) => {
                assert_eq!(key, "dt");
                assert_eq!(constraint, "must be > 0");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_key_reports_its_line() {
        match RunConfig::parse_str("dt = 1e-5\nspeed = 3\n") {
            Err(Error::Parse { line, reason }) => {
                assert_eq!(line, 2);
                assert!(reason.contains("speed"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_lines_are_parse_errors() {
        assert!(matches!(RunConfig::parse_str("dt"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(RunConfig::parse_str("gradient = 1, 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(RunConfig::parse_str("mode = fast"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn round_trip() {
        let text = "scenario = sperm # trailing comment\nmode = inertial\ngradient = 0.1, -2e-3, 1\nseed = 42\ndt = 3.3e-6\n";
        let cfg = RunConfig::parse_str(text).unwrap();
        assert_eq!(cfg.swimmer.gradient, Vec3::new(0.1, -2e-3, 1.0));
        let again = RunConfig::parse_str(&cfg.to_config_string()).unwrap();
        assert_eq!(again, cfg);
    }
}
