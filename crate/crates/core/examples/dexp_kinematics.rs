//! Rotation vectors, the dexp matrix and the singular shells `‖p‖ = 2πk`.

use cosserat_kin::kinematics::{
    body_rate_from_p, dexp_matrix, jacobian_det, phi_inverse, rebase_rotation_vector, rotation_from_p, RotationVector,
};
use cosserat_kin::Vec3;
use std::f64::consts::PI;

fn main() {
    let axis = Vec3::new(1.0, 2.0, -0.5).normalize();
    println!("{:>8} {:>14} {:>14}", "|p|", "det A(p)", "J(p)");
    for theta in [0.0, 0.5, 1.0, 2.0, PI, 5.0, 2.0 * PI - 1e-3] {
        let p = RotationVector(axis * theta);
        println!("{theta:>8.4} {:>14.6e} {:>14.6e}", dexp_matrix(&p).determinant(), jacobian_det(&p));
    }

    // ω = A(p) p_t, and back
    let p = RotationVector(axis * 1.3);
    let p_t = Vec3::new(0.2, -0.1, 0.4);
    let omega = body_rate_from_p(&p.0, &p_t);
    let back = phi_inverse(&omega, &p).unwrap();
    println!("ω = {:?}, round trip error {:.2e}", omega.as_slice(), (back - p_t).norm());

    // near 2π the map cannot be inverted
    let near = RotationVector(axis * (2.0 * PI - 1e-9));
    println!("inverse at |p| = 2π − 1e-9: {}", phi_inverse(&omega, &near).unwrap_err());

    // rebasing keeps the rotation but moves p into the ball |p| ≤ π
    let rebased = rebase_rotation_vector(&near);
    let same = (rotation_from_p(&rebased) - rotation_from_p(&near)).amax();
    println!("rebased |p| = {:.3e}, rotation change {same:.2e}", rebased.angle());
}
