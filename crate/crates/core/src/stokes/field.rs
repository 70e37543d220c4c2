use super::kernels::{pressure_factor, rotlet_factor, stokeslet_coefficients};
use super::FluidParams;
use crate::{Error, Result, Vec3};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Regularized point forces, optionally with point torques at the same
/// locations.
#[derive(Clone, Debug, PartialEq)]
pub struct PointForceSet {
    pub points: Vec<Vec3>,
    pub forces: Vec<Vec3>,
    pub torques: Option<Vec<Vec3>>,
}

impl PointForceSet {
    pub fn new(points: Vec<Vec3>, forces: Vec<Vec3>) -> Result<Self> {
        let set = PointForceSet {
            points,
            forces,
            torques: None,
        };
        set.validate()?;
        Ok(set)
    }

    pub fn with_torques(mut self, torques: Vec<Vec3>) -> Result<Self> {
        self.torques = Some(torques);
        self.validate()?;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.points.len();
        if n == 0 {
            return Err(Error::InvalidArgument("a force set needs at least one point".into()));
        }
        if self.forces.len() != n || self.torques.as_ref().is_some_and(|t| t.len() != n) {
            return Err(Error::InvalidArgument("points, forces and torques differ in length".into()));
        }
        let finite = |v: &Vec3| v.iter().all(|c| c.is_finite());
        if !self.points.iter().all(finite) {
            return Err(Error::InvalidArgument("non-finite source position".into()));
        }
        Ok(())
    }

    /// The same sources moved by `shift`.
    pub fn translated(&self, shift: &Vec3) -> Self {
        PointForceSet {
            points: self.points.iter().map(|p| p + shift).collect(),
            ..self.clone()
        }
    }
}

pub fn pressure_at(x: &Vec3, sources: &PointForceSet, fp: &FluidParams) -> f64 {
    let mut p = 0.0;
    for (xk, fk) in sources.points.iter().zip(&sources.forces) {
        let d = x - xk;
        p += fk.dot(&d) * pressure_factor(d.norm(), fp.epsilon);
    }
    p
}

/// Velocity induced by the forces of `sources` (torques are ignored; see
/// [`rodlet_velocity_at`]).
pub fn velocity_at(x: &Vec3, sources: &PointForceSet, fp: &FluidParams) -> Vec3 {
    let mut u = Vec3::zeros();
    for (xk, fk) in sources.points.iter().zip(&sources.forces) {
        let d = x - xk;
        let (a, b) = stokeslet_coefficients(d.norm(), fp.epsilon);
        u += fk * a + d * (b * fk.dot(&d));
    }
    u / fp.viscosity
}

/// Velocity induced by the torques of `sources`; zero when there are none.
pub fn rodlet_velocity_at(x: &Vec3, sources: &PointForceSet, fp: &FluidParams) -> Vec3 {
    let Some(torques) = &sources.torques else {
        return Vec3::zeros();
    };
    let mut u = Vec3::zeros();
    for (xk, tk) in sources.points.iter().zip(torques) {
        let d = x - xk;
        u += tk.cross(&d) * rotlet_factor(d.norm(), fp.epsilon);
    }
    u / fp.viscosity
}

pub fn total_velocity_at(x: &Vec3, sources: &PointForceSet, fp: &FluidParams) -> Vec3 {
    velocity_at(x, sources, fp) + rodlet_velocity_at(x, sources, fp)
}

/// Local fluid angular velocity `½∇×u` of the full field (forces and torques).
pub fn angular_velocity_at(x: &Vec3, sources: &PointForceSet, fp: &FluidParams) -> Vec3 {
    let e2 = fp.epsilon * fp.epsilon;
    let mut w = Vec3::zeros();
    for (k, (xk, fk)) in sources.points.iter().zip(&sources.forces).enumerate() {
        let d = x - xk;
        let r = d.norm();
        w += fk.cross(&d) * rotlet_factor(r, fp.epsilon);
        if let Some(torques) = &sources.torques {
            let t = torques[k];
            let r2 = r * r;
            let big2 = r2 + e2;
            let big7 = big2 * big2 * big2 * big2.sqrt();
            let iso = 10.0 * e2 * e2 - 7.0 * e2 * r2 - 2.0 * r2 * r2;
            w += (t * iso + d * (3.0 * t.dot(&d) * (2.0 * r2 + 7.0 * e2))) / (32.0 * PI * big7);
        }
    }
    w / fp.viscosity
}

/// Total velocity at many targets, evaluated in parallel. Each target is summed
/// sequentially, so results do not depend on the worker count.
pub fn velocities_at(targets: &[Vec3], sources: &PointForceSet, fp: &FluidParams) -> Vec<Vec3> {
    targets.par_iter().map(|x| total_velocity_at(x, sources, fp)).collect()
}

/// A regular grid of probe points and the finite-difference step used there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeBox {
    pub lower: Vec3,
    pub upper: Vec3,
    /// Points per axis.
    pub n: usize,
    pub h: f64,
}

impl ProbeBox {
    pub fn points(&self) -> Vec<Vec3> {
        let n = self.n.max(1);
        let coord = |k: usize, axis: usize| {
            if n == 1 {
                0.5 * (self.lower[axis] + self.upper[axis])
            } else {
                self.lower[axis] + (self.upper[axis] - self.lower[axis]) * k as f64 / (n - 1) as f64
            }
        };
        let mut pts = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    pts.push(Vec3::new(coord(i, 0), coord(j, 1), coord(k, 2)));
                }
            }
        }
        pts
    }
}

/// Largest `|∇·u|` over the probe grid, by central differences of step `h`.
pub fn divergence_residual(sources: &PointForceSet, fp: &FluidParams, probe: &ProbeBox) -> f64 {
    let h = probe.h;
    probe
        .points()
        .par_iter()
        .map(|x| {
            let mut div = 0.0;
            for axis in 0..3 {
                let mut e = Vec3::zeros();
                e[axis] = h;
                let up = total_velocity_at(&(x + e), sources, fp)[axis];
                let down = total_velocity_at(&(x - e), sources, fp)[axis];
                div += (up - down) / (2.0 * h);
            }
            div.abs()
        })
        .reduce(|| 0.0, f64::max)
}
