//! Recovering the generating fields `p`, `q` from sampled `ω, κ, ν, v`.
//!
//! `p` solves `p_s = Φ(κ, p)`, `p_t = Φ(ω, p)` and `q` solves
//! `q_s = q×κ − ν`, `q_t = q×ω − v`. Both systems are integrated with RK4,
//! first along the `s` edge at `t_min` and then along `t` for every `s`. The
//! opposite path (first `t`, then `s`) is integrated as well; when the two
//! disagree the fields are not integrable and recovery fails.

use super::fields::{GridField, KinematicFields};
use super::rotation::{
    body_rate_from_p, nearest_equivalent, phi_inverse_guarded, rebase_rotation_vector, rotation_from_p,
    RotationVector, SINGULARITY_GUARD,
};
use super::strain_velocity_from_q;
use crate::{Error, Result, Vec3};

#[derive(Clone, Copy, Debug)]
pub struct RecoveryOptions {
    pub singularity_guard: f64,
    /// Largest tolerated difference between the two integration paths, in
    /// rotation-matrix entries and in `q` relative to `1 + ‖q‖`.
    pub consistency_tolerance: f64,
}

impl Default for RecoveryOptions {
    fn default() -> Self {
        RecoveryOptions {
            singularity_guard: SINGULARITY_GUARD,
            consistency_tolerance: 1e-5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Recovery {
    pub p: GridField<Vec3>,
    pub q: GridField<Vec3>,
    /// RMS over all samples of the four fields of `|reproduced − input|`, with
    /// the derivatives of `p` and `q` taken by fourth-order differences.
    pub rms_error: f64,
    /// Largest difference between the `s`-first and `t`-first integrations.
    pub path_discrepancy: f64,
}

/// Recovers `(p, q)` with `p(s_min, t_min) = p0` and `q(s_min, t_min) = q0`.
pub fn recover_parameterization(fields: &KinematicFields, p0: Vec3, q0: Vec3) -> Result<Recovery> {
    recover_parameterization_with(fields, p0, q0, &RecoveryOptions::default())
}

pub fn recover_parameterization_with(
    fields: &KinematicFields,
    p0: Vec3,
    q0: Vec3,
    opts: &RecoveryOptions,
) -> Result<Recovery> {
    let g = fields.grid;
    if g.n_s < 5 || g.n_t < 5 {
        return Err(Error::GridTooSmall {
            required: 5,
            got: g.n_s.min(g.n_t),
        });
    }
    let (ds, dt) = (g.ds(), g.dt());
    let row = |f: &GridField<Vec3>, j: usize| (0..g.n_s).map(|i| f[(i, j)]).collect::<Vec<_>>();
    let col = |f: &GridField<Vec3>, i: usize| (0..g.n_t).map(|j| f[(i, j)]).collect::<Vec<_>>();

    // s first, then t
    let mut p_a = GridField::filled(&g, Vec3::zeros());
    let mut q_a = GridField::filled(&g, Vec3::zeros());
    let edge_p = integrate_p(&row(&fields.kappa, 0), ds, p0, opts.singularity_guard)?;
    let edge_q = integrate_q(&row(&fields.kappa, 0), &row(&fields.nu, 0), ds, q0);
    for i in 0..g.n_s {
        let ps = integrate_p(&col(&fields.omega, i), dt, edge_p[i], opts.singularity_guard)?;
        let qs = integrate_q(&col(&fields.omega, i), &col(&fields.v, i), dt, edge_q[i]);
        for j in 0..g.n_t {
            p_a[(i, j)] = ps[j];
            q_a[(i, j)] = qs[j];
        }
    }

    // t first, then s
    let mut discrepancy: f64 = 0.0;
    let edge_p = integrate_p(&col(&fields.omega, 0), dt, p0, opts.singularity_guard)?;
    let edge_q = integrate_q(&col(&fields.omega, 0), &col(&fields.v, 0), dt, q0);
    for j in 0..g.n_t {
        let ps = integrate_p(&row(&fields.kappa, j), ds, edge_p[j], opts.singularity_guard)?;
        let qs = integrate_q(&row(&fields.kappa, j), &row(&fields.nu, j), ds, edge_q[j]);
        for i in 0..g.n_s {
            let ra = rotation_from_p(&RotationVector(p_a[(i, j)]));
            let rb = rotation_from_p(&RotationVector(ps[i]));
            let dr = (ra - rb).amax();
            let dq = (q_a[(i, j)] - qs[i]).norm() / (1.0 + qs[i].norm());
            discrepancy = discrepancy.max(dr).max(dq);
        }
    }
    if !(discrepancy <= opts.consistency_tolerance) {
        return Err(Error::InconsistentFields {
            discrepancy,
            tolerance: opts.consistency_tolerance,
        });
    }

    let rms_error = reproduction_rms(fields, &p_a, &q_a);
    Ok(Recovery {
        p: p_a,
        q: q_a,
        rms_error,
        path_discrepancy: discrepancy,
    })
}

/// Cubic interpolation of `f` halfway between samples `k` and `k + 1`.
fn midpoint(f: &[Vec3], k: usize) -> Vec3 {
    let n = f.len();
    if k == 0 {
        (f[0] * 5.0 + f[1] * 15.0 - f[2] * 5.0 + f[3]) / 16.0
    } else if k + 2 >= n {
        (f[n - 4] - f[n - 3] * 5.0 + f[n - 2] * 15.0 + f[n - 1] * 5.0) / 16.0
    } else {
        (f[k] * 9.0 + f[k + 1] * 9.0 - f[k - 1] - f[k + 2]) / 16.0
    }
}

/// RK4 for `p' = Φ(rate, p)` along a line of samples, rebasing after each step.
fn integrate_p(rate: &[Vec3], h: f64, start: Vec3, guard: f64) -> Result<Vec<Vec3>> {
    let phi = |x: &Vec3, p: Vec3| phi_inverse_guarded(x, &RotationVector(p), guard);
    let mut out = Vec::with_capacity(rate.len());
    let mut p = rebase_rotation_vector(&RotationVector(start)).0;
    out.push(p);
    for k in 0..rate.len() - 1 {
        let mid = midpoint(rate, k);
        let k1 = phi(&rate[k], p)?;
        let k2 = phi(&mid, p + k1 * (0.5 * h))?;
        let k3 = phi(&mid, p + k2 * (0.5 * h))?;
        let k4 = phi(&rate[k + 1], p + k3 * h)?;
        p += (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0);
        p = rebase_rotation_vector(&RotationVector(p)).0;
        out.push(p);
    }
    Ok(out)
}

/// RK4 for `q' = q×rate − strain`.
fn integrate_q(rate: &[Vec3], strain: &[Vec3], h: f64, start: Vec3) -> Vec<Vec3> {
    let f = |q: Vec3, r: Vec3, e: Vec3| q.cross(&r) - e;
    let mut out = Vec::with_capacity(rate.len());
    let mut q = start;
    out.push(q);
    for k in 0..rate.len() - 1 {
        let (rm, em) = (midpoint(rate, k), midpoint(strain, k));
        let k1 = f(q, rate[k], strain[k]);
        let k2 = f(q + k1 * (0.5 * h), rm, em);
        let k3 = f(q + k2 * (0.5 * h), rm, em);
        let k4 = f(q + k3 * h, rate[k + 1], strain[k + 1]);
        q += (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0);
        out.push(q);
    }
    out
}

/// Fourth-order first derivative at sample `i` of `n >= 5`.
fn d4(n: usize, i: usize, h: f64, get: impl Fn(usize) -> Vec3) -> Vec3 {
    let inv = 1.0 / (12.0 * h);
    if i == 0 {
        (get(1) * 48.0 - get(0) * 25.0 - get(2) * 36.0 + get(3) * 16.0 - get(4) * 3.0) * inv
    } else if i == 1 {
        (get(2) * 18.0 - get(0) * 3.0 - get(1) * 10.0 - get(3) * 6.0 + get(4)) * inv
    } else if i == n - 1 {
        -(get(n - 2) * 48.0 - get(n - 1) * 25.0 - get(n - 3) * 36.0 + get(n - 4) * 16.0 - get(n - 5) * 3.0) * inv
    } else if i == n - 2 {
        -(get(n - 3) * 18.0 - get(n - 1) * 3.0 - get(n - 2) * 10.0 - get(n - 4) * 6.0 + get(n - 5)) * inv
    } else {
        (get(i - 2) - get(i - 1) * 8.0 + get(i + 1) * 8.0 - get(i + 2)) * inv
    }
}

fn reproduction_rms(fields: &KinematicFields, p: &GridField<Vec3>, q: &GridField<Vec3>) -> f64 {
    let g = fields.grid;
    let (ds, dt) = (g.ds(), g.dt());
    let mut sum = 0.0;
    for i in 0..g.n_s {
        for j in 0..g.n_t {
            let pc = p[(i, j)];
            let p_s = d4(g.n_s, i, ds, |k| nearest_equivalent(&p[(k, j)], &pc));
            let p_t = d4(g.n_t, j, dt, |k| nearest_equivalent(&p[(i, k)], &pc));
            let q_s = d4(g.n_s, i, ds, |k| q[(k, j)]);
            let q_t = d4(g.n_t, j, dt, |k| q[(i, k)]);
            let omega = body_rate_from_p(&pc, &p_t);
            let kappa = body_rate_from_p(&pc, &p_s);
            let (nu, v) = strain_velocity_from_q(q[(i, j)], q_s, q_t, kappa, omega);
            sum += (omega - fields.omega[(i, j)]).norm_squared()
                + (kappa - fields.kappa[(i, j)]).norm_squared()
                + (nu - fields.nu[(i, j)]).norm_squared()
                + (v - fields.v[(i, j)]).norm_squared();
        }
    }
    (sum / (4 * g.len()) as f64).sqrt()
}
