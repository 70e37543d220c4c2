use cosserat_kin::kinematics::*;
use cosserat_kin::{Mat3, Vec3};
use proptest::prelude::*;

fn vec3(max: f64) -> impl Strategy<Value = Vec3> {
    (-max..max, -max..max, -max..max).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

/// Rotation vectors with `‖p‖ ≤ 3`.
fn small_p() -> impl Strategy<Value = Vec3> {
    vec3(3.0).prop_filter("norm <= 3", |p| p.norm() <= 3.0)
}

/// Rodrigues' formula, written out independently of the crate.
fn rodrigues(p: &Vec3) -> Mat3 {
    let theta = p.norm();
    if theta == 0.0 {
        return Mat3::identity();
    }
    let k = p / theta;
    let kx = Mat3::new(0.0, -k.z, k.y, k.z, 0.0, -k.x, -k.y, k.x, 0.0);
    Mat3::identity() + kx * theta.sin() + kx * kx * (1.0 - theta.cos())
}

fn vee(m: &Mat3) -> Vec3 {
    Vec3::new(m[(2, 1)] - m[(1, 2)], m[(0, 2)] - m[(2, 0)], m[(1, 0)] - m[(0, 1)]) * 0.5
}

proptest! {
    #[test]
    fn axis_is_a_fixed_point(p in vec3(10.0)) {
        let ap = dexp_matrix(&RotationVector(p)) * p;
        prop_assert!((ap - p).norm() <= 1e-12 * (1.0 + p.norm()));
    }

    #[test]
    fn determinant_is_minus_jacobian(p in small_p()) {
        let rp = RotationVector(p);
        prop_assert!((dexp_matrix(&rp).determinant() + jacobian_det(&rp)).abs() <= 1e-9);
    }

    #[test]
    fn inverse_round_trip(p in small_p(), x in vec3(5.0)) {
        let rp = RotationVector(p);
        prop_assume!(jacobian_det(&rp).abs() > 1e-4);
        let y = phi_inverse(&x, &rp).unwrap();
        prop_assert!((body_rate_from_p(&p, &y) - x).norm() <= 1e-12 * (1.0 + x.norm()));
        prop_assert!((phi_inverse(&body_rate_from_p(&p, &x), &rp).unwrap() - x).norm() <= 1e-12 * (1.0 + x.norm()));
    }

    #[test]
    fn rotation_is_orthonormal(p in vec3(20.0)) {
        let r = rotation_from_p(&RotationVector(p));
        prop_assert!((r.transpose() * r - Mat3::identity()).amax() <= 1e-12);
        prop_assert!((r.determinant() - 1.0).abs() <= 1e-12);
        prop_assert!((r - rodrigues(&p)).amax() <= 1e-12);
    }

    #[test]
    fn body_rate_matches_rotation_derivative(p in small_p(), dp in vec3(1.0)) {
        // [ω]× = Rᵀ dR/dτ along p + τ dp
        let h = 1e-5;
        let r = rodrigues(&p);
        let dr = (rodrigues(&(p + dp * h)) - rodrigues(&(p - dp * h))) / (2.0 * h);
        let omega = vee(&(r.transpose() * dr));
        prop_assert!((body_rate_from_p(&p, &dp) - omega).norm() <= 1e-8);
    }

    #[test]
    fn strain_velocity_is_linear(q in vec3(2.0), qs in vec3(2.0), qt in vec3(2.0), k in vec3(2.0), w in vec3(2.0)) {
        let (nu, v) = strain_velocity_from_q(q, qs, qt, k, w);
        let (nu2, v2) = strain_velocity_from_q(q * 2.0, qs * 2.0, qt * 2.0, k, w);
        prop_assert_eq!(nu2, nu * 2.0);
        prop_assert_eq!(v2, v * 2.0);
    }

    #[test]
    fn rebase_shrinks_and_keeps_the_rotation(dir in vec3(1.0), theta in 0.0..(4.0 * std::f64::consts::PI)) {
        prop_assume!(dir.norm() > 1e-3);
        let p = dir.normalize() * theta;
        let q = rebase_rotation_vector(&RotationVector(p)).0;
        prop_assert!(q.norm() <= p.norm() + 1e-15);
        prop_assert!(q.norm() <= std::f64::consts::PI + 1e-12);
        let a = rotation_from_p(&RotationVector(p));
        let b = rotation_from_p(&RotationVector(q));
        prop_assert!((a - b).amax() <= 1e-12);
    }
}

#[test]
fn jacobian_determinant_by_differences() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let dir = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)).normalize();
        let p = dir * rng.gen_range(0.1..3.0);
        let h = 1e-6;
        let mut jac = Mat3::zeros();
        for j in 0..3 {
            let mut e = Vec3::zeros();
            e[j] = h;
            jac.set_column(j, &((body_rate_from_p(&p, &e) - body_rate_from_p(&p, &(-e))) / (2.0 * h)));
        }
        assert!((jac.determinant() + jacobian_det(&RotationVector(p))).abs() < 1e-9);
    }
}

#[test]
fn director_derivatives_follow_the_darboux_vector() {
    // ∂_s d_k = (R κ) × d_k, checked by central differences at shrinking h
    let f = TrigParameterization::random(8, 3, 1.0);
    let (s, t) = (0.4, 0.7);
    let x = f.sample(s, t);
    let r = rotation_from_p(&RotationVector(x.p));
    let kappa_world = r * body_rate_from_p(&x.p, &x.p_s);
    let error = |h: f64| {
        let rp = rotation_from_p(&RotationVector(f.sample(s + h, t).p));
        let rm = rotation_from_p(&RotationVector(f.sample(s - h, t).p));
        let mut worst: f64 = 0.0;
        for k in 0..3 {
            let d_s = (rp.column(k) - rm.column(k)) / (2.0 * h);
            worst = worst.max((d_s - kappa_world.cross(&r.column(k).into_owned())).norm());
        }
        worst
    };
    let order = (error(1e-2) / error(5e-3)).log2();
    assert!((order - 2.0).abs() < 0.2, "order {order}");
}

#[test]
fn residuals_converge_for_seeded_fields() {
    for seed in 0..5 {
        let f = TrigParameterization::random(seed, 3, 1.0);
        let res: Vec<f64> = [16, 32, 64]
            .iter()
            .map(|&n| {
                let g = GridSpec::unit_square(n).unwrap();
                let fields = KinematicFields::from_parameterization(g, |s, t| f.sample(s, t));
                let (h1, h2) = kinematic_residuals(&fields).unwrap();
                h1.max_norm().max(h2.max_norm())
            })
            .collect();
        let ds = |n: f64| 1.0 / (n - 1.0);
        let order = (res[1] / res[2]).ln() / (ds(32.0) / ds(64.0)).ln();
        assert!((order - 2.0).abs() < 0.3, "seed {seed}: order {order}");
    }
}

#[test]
fn recovery_reproduces_generating_fields() {
    let f = TrigParameterization::random(21, 3, 1.0);
    let g = GridSpec::unit_square(40).unwrap();
    let fields = KinematicFields::from_parameterization(g, |s, t| f.sample(s, t));
    let x0 = f.sample(0.0, 0.0);
    let rec = recover_parameterization(&fields, x0.p, x0.q).unwrap();
    for i in 0..g.n_s {
        for j in 0..g.n_t {
            let exact = f.sample(g.s(i), g.t(j));
            let ra = rotation_from_p(&RotationVector(rec.p[(i, j)]));
            let rb = rotation_from_p(&RotationVector(exact.p));
            assert!((ra - rb).amax() < 1e-6);
            assert!((rec.q[(i, j)] - exact.q).norm() < 1e-6);
        }
    }
}
