//! Elastic loads of the flagellum on a staggered grid.
//!
//! Strains live on the edges between consecutive nodes: `κ` from the relative
//! rotation `log(RᵢᵀRᵢ₊₁)/Δs`, `ν` from the edge vector in the midpoint
//! frame. Node loads are differences of edge loads, so the internal forces
//! and torques of the whole rod sum to zero exactly and a free end needs no
//! special closure.

use crate::kinematics::{log_rotation, rotation_from_p, RotationVector};
use crate::rod::{constitutive_forces, RodParameters};
use crate::{Mat3, Vec3};

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct EdgeStrains {
    pub kappa: Vec<Vec3>,
    pub nu: Vec<Vec3>,
    pub frames: Vec<Mat3>,
}

pub(crate) fn edge_strains(frames: &[Mat3], positions: &[Vec3], ds: f64) -> EdgeStrains {
    let edges = frames.len() - 1;
    let mut kappa = Vec::with_capacity(edges);
    let mut nu = Vec::with_capacity(edges);
    let mut mids = Vec::with_capacity(edges);
    for i in 0..edges {
        let rel = log_rotation(&(frames[i].transpose() * frames[i + 1]));
        let mid = frames[i] * rotation_from_p(&RotationVector(rel * 0.5));
        kappa.push(rel / ds);
        nu.push(mid.transpose() * (positions[i + 1] - positions[i]) / ds);
        mids.push(mid);
    }
    EdgeStrains {
        kappa,
        nu,
        frames: mids,
    }
}

/// Internal elastic force and torque on every node, in the fixed frame.
pub(crate) fn node_loads(
    frames: &[Mat3],
    positions: &[Vec3],
    ds: f64,
    params: &RodParameters,
    reference: &EdgeStrains,
) -> (Vec<Vec3>, Vec<Vec3>) {
    let n = frames.len();
    let strains = edge_strains(frames, positions, ds);
    let mut force = vec![Vec3::zeros(); n];
    let mut torque = vec![Vec3::zeros(); n];
    for e in 0..n - 1 {
        let local = RodParameters {
            ref_curvature: reference.kappa[e],
            ref_strain: reference.nu[e],
            ..*params
        };
        let (m, f) = constitutive_forces(&strains.kappa[e], &strains.nu[e], &local);
        let big_m = strains.frames[e] * m;
        let big_n = strains.frames[e] * f;
        let arm = (positions[e + 1] - positions[e]).cross(&big_n) * 0.5;
        force[e] += big_n;
        force[e + 1] -= big_n;
        torque[e] += big_m + arm;
        torque[e + 1] += -big_m + arm;
    }
    (force, torque)
}
