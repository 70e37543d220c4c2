//! Given sampled ω, κ, ν, v, integrate back to the rotation vector field p
//! and the field q that generate them.

use cosserat_kin::kinematics::{
    recover_parameterization, rotation_from_p, GridSpec, KinematicFields, RotationVector, TrigParameterization,
};

fn main() {
    let truth = TrigParameterization::random(5, 3, 1.0);
    let grid = GridSpec::unit_square(50).unwrap();
    let fields = KinematicFields::from_parameterization(grid, |s, t| truth.sample(s, t));
    let start = truth.sample(0.0, 0.0);
    let rec = recover_parameterization(&fields, start.p, start.q).unwrap();
    println!("reproduced fields, RMS error  {:.3e}", rec.rms_error);
    println!("s-first vs t-first, max diff  {:.3e}", rec.path_discrepancy);

    let mut worst_frame: f64 = 0.0;
    let mut worst_q: f64 = 0.0;
    for i in 0..grid.n_s {
        for j in 0..grid.n_t {
            let exact = truth.sample(grid.s(i), grid.t(j));
            let dr = rotation_from_p(&RotationVector(rec.p[(i, j)])) - rotation_from_p(&RotationVector(exact.p));
            worst_frame = worst_frame.max(dr.amax());
            worst_q = worst_q.max((rec.q[(i, j)] - exact.q).norm());
        }
    }
    println!("max frame error {worst_frame:.3e}, max q error {worst_q:.3e}");
}
