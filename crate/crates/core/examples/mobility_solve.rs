//! Assemble the 3N×3N mobility of N regularized Stokeslets and find the
//! forces that produce prescribed velocities.

use cosserat_kin::stokes::{assemble_mobility, solve_forces_for_velocities, FluidParams};
use cosserat_kin::Vec3;

fn main() {
    // a straight filament of 40 points
    let n = 40;
    let points: Vec<Vec3> = (0..n).map(|i| Vec3::new(0.0, 0.0, i as f64 / (n - 1) as f64)).collect();
    let fp = FluidParams {
        viscosity: 1.0,
        epsilon: 0.5 / (n - 1) as f64,
    };
    let m = assemble_mobility(&points, &fp).unwrap();
    println!("mobility {}×{}, asymmetry {:.2e}", m.matrix.nrows(), m.matrix.ncols(), m.max_asymmetry());

    // drag on the filament moving broadside and lengthwise
    for (name, u) in [("broadside", Vec3::x()), ("lengthwise", Vec3::z())] {
        let sol = solve_forces_for_velocities(&m, &vec![u; n]).unwrap();
        let drag: Vec3 = sol.forces.iter().sum();
        println!(
            "{name:>10}: total force {:.4} ({} iterations, residual {:.1e})",
            drag.dot(&u),
            sol.iterations,
            sol.relative_residual
        );
    }
}
