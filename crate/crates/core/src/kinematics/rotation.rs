//! Rotation-vector maps on SO(3).
//!
//! `A(p)` sends a derivative of the rotation vector to the matching body rate:
//! `ω = A(p) p_t`, `κ = A(p) p_s`. With `θ = ‖p‖`,
//!
//! ```text
//! A(p) = I + c₁(θ) (p pᵀ − θ² I) − c₂(θ) [p]×
//! c₁ = (θ − sin θ)/θ³,   c₂ = (1 − cos θ)/θ²
//! ```
//!
//! `A(p)` is singular exactly on the spheres `θ = 2πk`, `k ≥ 1`.

use nalgebra::UnitQuaternion;

use crate::{Error, Mat3, Result, Vec3};

/// Below this angle the coefficient functions switch to truncated series.
pub const SMALL_ANGLE: f64 = 1e-4;

/// `(θ − sin θ)/θ³` loses `~6ε/θ²` relative precision to cancellation, so its
/// series is used on a wider range.
const C1_SERIES_BELOW: f64 = 0.1;

/// Default guard on `|J(p)|` for the inverse map.
pub const SINGULARITY_GUARD: f64 = 1e-8;

/// A rotation vector (axis times angle, radians).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationVector(pub Vec3);

impl RotationVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        RotationVector(Vec3::new(x, y, z))
    }

    pub fn angle(&self) -> f64 {
        self.0.norm()
    }

    pub fn vector(&self) -> Vec3 {
        self.0
    }
}

impl From<Vec3> for RotationVector {
    fn from(v: Vec3) -> Self {
        RotationVector(v)
    }
}

/// `[p]×`, the matrix with `[p]× x = p × x`.
pub fn cross_matrix(p: &Vec3) -> Mat3 {
    Mat3::new(0.0, -p.z, p.y, p.z, 0.0, -p.x, -p.y, p.x, 0.0)
}

/// `(θ − sin θ)/θ³`
fn c1(theta: f64) -> f64 {
    if theta < C1_SERIES_BELOW {
        let t2 = theta * theta;
        1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0 - t2 * t2 * t2 / 362_880.0
    } else {
        (theta - theta.sin()) / (theta * theta * theta)
    }
}

/// `(1 − cos θ)/θ²`, evaluated as `2 sin²(θ/2)/θ²`.
fn c2(theta: f64) -> f64 {
    if theta < SMALL_ANGLE {
        let t2 = theta * theta;
        0.5 - t2 / 24.0 + t2 * t2 / 720.0 - t2 * t2 * t2 / 40_320.0
    } else {
        let s = (0.5 * theta).sin();
        2.0 * s * s / (theta * theta)
    }
}

/// `sin θ / θ`
fn sinc(theta: f64) -> f64 {
    if theta < SMALL_ANGLE {
        let t2 = theta * theta;
        1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0
    } else {
        theta.sin() / theta
    }
}

/// The matrix `A(p)` with `ω = A(p)·p_t` and `κ = A(p)·p_s`.
pub fn dexp_matrix(p: &RotationVector) -> Mat3 {
    let p = p.0;
    let theta = p.norm();
    let a = c1(theta);
    let b = c2(theta);
    let pp = p * p.transpose();
    Mat3::identity() + (pp - Mat3::identity() * (theta * theta)) * a - cross_matrix(&p) * b
}

/// Body rate generated by a derivative `dp` of the rotation vector.
///
/// The same map serves the twist vector (`dp = ∂_t p`) and the Darboux vector
/// (`dp = ∂_s p`).
pub fn body_rate_from_p(p: &Vec3, dp: &Vec3) -> Vec3 {
    let theta = p.norm();
    let a = c1(theta);
    let b = c2(theta);
    dp + (p * p.dot(dp) - dp * (theta * theta)) * a - p.cross(dp) * b
}

/// `J(p) = 2(cos‖p‖ − 1)/‖p‖²`, which lies in `[−1, 0]` and vanishes at `‖p‖ = 2πk`.
///
/// Note that `det A(p) = −J(p)`; only `|J|` is meaningful as a singularity
/// measure.
pub fn jacobian_det(p: &RotationVector) -> f64 {
    -2.0 * c2(p.angle())
}

/// Solves `A(p) y = x`, i.e. `Φ(x, p)` with `p_t = Φ(ω, p)` and `p_s = Φ(κ, p)`.
pub fn phi_inverse(x: &Vec3, p: &RotationVector) -> Result<Vec3> {
    phi_inverse_guarded(x, p, SINGULARITY_GUARD)
}

pub fn phi_inverse_guarded(x: &Vec3, p: &RotationVector, guard: f64) -> Result<Vec3> {
    let j = jacobian_det(p);
    if j.abs() <= guard {
        return Err(Error::SingularParameterization {
            norm: p.angle(),
            jacobian: j,
        });
    }
    dexp_matrix(p)
        .lu()
        .solve(x)
        .ok_or(Error::SingularParameterization {
            norm: p.angle(),
            jacobian: j,
        })
}

/// Rodrigues' formula, `exp([p]×)`.
pub fn rotation_from_p(p: &RotationVector) -> Mat3 {
    let theta = p.angle();
    let k = cross_matrix(&p.0);
    Mat3::identity() + k * sinc(theta) + k * k * c2(theta)
}

/// Principal rotation vector of a rotation matrix (angle in `[0, π]`).
pub fn log_rotation(r: &Mat3) -> Vec3 {
    let rot = nalgebra::Rotation3::from_matrix_unchecked(*r);
    UnitQuaternion::from_rotation_matrix(&rot).scaled_axis()
}

/// Shifts `‖p‖` by multiples of `2π` so that `‖p‖ ≤ π`; the rotation is unchanged.
///
/// A single shift maps `p` to `p·(1 − 2π/‖p‖)`, which flips the axis when
/// `π < ‖p‖ < 2π`.
pub fn rebase_rotation_vector(p: &RotationVector) -> RotationVector {
    use std::f64::consts::PI;
    let theta = p.0.norm();
    if !theta.is_finite() || theta <= PI {
        return *p;
    }
    // whole turns to remove; the slack keeps an exact 3π at +π
    let turns = ((theta - PI) / (2.0 * PI) - 1e-12).ceil();
    let v = p.0 * ((theta - 2.0 * PI * turns) / theta);
    RotationVector(v)
}

/// Among the rotation vectors describing the same rotation as `p`, the one
/// closest to `reference`. Used to difference neighbouring nodes that were
/// rebased independently.
pub fn nearest_equivalent(p: &Vec3, reference: &Vec3) -> Vec3 {
    let theta = p.norm();
    if theta < 1e-12 {
        return *p;
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let axis = p / theta;
    let k0 = ((reference.dot(&axis) - theta) / two_pi).round();
    let mut best = *p;
    let mut best_d = f64::INFINITY;
    for k in [k0 - 1.0, k0, k0 + 1.0] {
        let cand = axis * (theta + two_pi * k);
        let d = (cand - reference).norm_squared();
        if d < best_d {
            best_d = d;
            best = cand;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rv(x: f64, y: f64, z: f64) -> RotationVector {
        RotationVector::new(x, y, z)
    }

    #[test]
    fn identity_at_origin() {
        assert_eq!(dexp_matrix(&rv(0.0, 0.0, 0.0)), Mat3::identity());
        let dp = Vec3::new(0.3, -2.0, 5.0);
        assert_eq!(body_rate_from_p(&Vec3::zeros(), &dp), dp);
        assert_eq!(rotation_from_p(&rv(0.0, 0.0, 0.0)), Mat3::identity());
        assert!((jacobian_det(&rv(0.0, 0.0, 0.0)) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn axis_is_fixed_point() {
        for p in [rv(0.1, 0.2, 0.3), rv(-2.0, 1.0, 0.5), rv(0.0, 0.0, 3.0), rv(1e-6, 0.0, 2e-6)] {
            let ap = dexp_matrix(&p) * p.0;
            assert!((ap - p.0).norm() < 1e-14 * (1.0 + p.angle()));
        }
    }

    #[test]
    fn axis_parallel_rate_passes_through() {
        for theta in [0.0, 0.5, 2.0, 5.0] {
            let out = body_rate_from_p(&Vec3::new(0.0, 0.0, theta), &Vec3::new(0.0, 0.0, 1.7));
            assert!((out - Vec3::new(0.0, 0.0, 1.7)).norm() < 1e-14);
        }
    }

    #[test]
    fn quarter_turn_about_x() {
        // oracle: hand evaluation, c1 = (π/2 − 1)/(π/2)³, c2 = 4/π²
        let out = body_rate_from_p(&Vec3::new(PI / 2.0, 0.0, 0.0), &Vec3::new(0.0, 1.0, 0.0));
        let expected = Vec3::new(0.0, 2.0 / PI, -2.0 / PI);
        assert!((out - expected).norm() < 1e-14);
    }

    #[test]
    fn quarter_turn_about_x_matches_rodrigues_derivative() {
        // [ω]× = Rᵀ dR/dt, with dR/dt by central differences
        let p = Vec3::new(PI / 2.0, 0.0, 0.0);
        let dp = Vec3::new(0.0, 1.0, 0.0);
        let h = 1e-5;
        let rp = rotation_from_p(&RotationVector(p + dp * h));
        let rm = rotation_from_p(&RotationVector(p - dp * h));
        let r = rotation_from_p(&RotationVector(p));
        let w = r.transpose() * (rp - rm) / (2.0 * h);
        let omega = Vec3::new(w[(2, 1)], w[(0, 2)], w[(1, 0)]);
        assert!((omega - Vec3::new(0.0, 2.0 / PI, -2.0 / PI)).norm() < 1e-9);
    }

    #[test]
    fn jacobian_closed_form_values() {
        assert!(jacobian_det(&rv(0.0, 0.0, 2.0 * PI)).abs() < 1e-16);
        assert!((jacobian_det(&rv(PI, 0.0, 0.0)) + 4.0 / (PI * PI)).abs() < 1e-15);
        // determinant of A is the negative of the closed form
        assert!((dexp_matrix(&rv(PI, 0.0, 0.0)).determinant() - 4.0 / (PI * PI)).abs() < 1e-14);
    }

    #[test]
    fn series_branch_is_continuous() {
        for theta in [SMALL_ANGLE, C1_SERIES_BELOW] {
            let below = c1(theta * (1.0 - 1e-13));
            let above = c1(theta * (1.0 + 1e-13));
            assert!((below - above).abs() < 1e-12);
            assert!((c2(theta * (1.0 - 1e-13)) - c2(theta * (1.0 + 1e-13))).abs() < 1e-13);
            assert!((sinc(theta * (1.0 - 1e-13)) - sinc(theta * (1.0 + 1e-13))).abs() < 1e-13);
        }
    }

    #[test]
    fn series_matches_extended_precision_values() {
        // Reference values from the series summed to convergence.
        let theta: f64 = 0.05;
        let mut c1_ref: f64 = 0.0;
        let mut term: f64 = 1.0 / 6.0;
        let mut k = 0;
        while term.abs() > 1e-30 {
            c1_ref += term;
            k += 1;
            term *= -theta * theta / (((2 * k + 2) * (2 * k + 3)) as f64);
        }
        assert!((c1(theta) - c1_ref).abs() / c1_ref < 1e-13);
    }

    #[test]
    fn inverse_at_origin() {
        let x = Vec3::new(1.0, 2.0, 3.0);
        let y = phi_inverse(&x, &rv(0.0, 0.0, 0.0)).unwrap();
        assert!((y - x).norm() < 1e-15);
    }

    #[test]
    fn inverse_guard_near_two_pi() {
        let p = rv(0.0, 2.0 * PI - 1e-9, 0.0);
        assert!(matches!(
            phi_inverse(&Vec3::x(), &p),
            Err(Error::SingularParameterization { .. })
        ));
    }

    #[test]
    fn quarter_turn_about_z() {
        let r = rotation_from_p(&rv(0.0, 0.0, PI / 2.0));
        assert!((r * Vec3::x() - Vec3::y()).norm() < 1e-15);
        assert!((r * Vec3::y() + Vec3::x()).norm() < 1e-15);
        assert!((r * Vec3::z() - Vec3::z()).norm() < 1e-15);
    }

    #[test]
    fn rebase_examples() {
        let p = rebase_rotation_vector(&rv(0.0, 0.0, 3.0 * PI));
        assert!((p.0 - Vec3::new(0.0, 0.0, PI)).norm() < 1e-14);
        let small = rv(0.3, 0.4, 0.0);
        assert_eq!(rebase_rotation_vector(&small), small);
        // 1.5π flips the axis
        let p = rebase_rotation_vector(&rv(1.5 * PI, 0.0, 0.0));
        assert!((p.0 - Vec3::new(-0.5 * PI, 0.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn log_inverts_exp() {
        for p in [rv(0.1, -0.2, 0.3), rv(2.0, 1.0, -0.5), rv(0.0, 0.0, 3.1)] {
            let back = log_rotation(&rotation_from_p(&p));
            assert!((back - p.0).norm() < 1e-12, "{back:?} vs {:?}", p.0);
        }
    }

    #[test]
    fn nearest_equivalent_unwraps_across_pi() {
        let a = Vec3::new(0.0, 0.0, PI - 0.01);
        let b = Vec3::new(0.0, 0.0, -(PI - 0.02));
        let u = nearest_equivalent(&b, &a);
        assert!((u - Vec3::new(0.0, 0.0, PI + 0.02)).norm() < 1e-14);
        assert_eq!(nearest_equivalent(&a, &a), a);
    }
}
