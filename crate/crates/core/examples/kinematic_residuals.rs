//! The closed-form general solution satisfies the compatibility equations:
//! residuals of a random smooth `(p, q)` pair fall off at second order.

use cosserat_kin::kinematics::{kinematic_residuals, GridSpec, KinematicFields, TrigParameterization};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let f = TrigParameterization::random(seed, 3, 1.0);
    let mut prev: Option<(f64, f64, f64)> = None;
    println!("{:>5} {:>12} {:>12} {:>7}", "n", "max |h1|", "max |h2|", "order");
    for n in [16, 32, 64, 128, 256] {
        let grid = GridSpec::unit_square(n).unwrap();
        let fields = KinematicFields::from_parameterization(grid, |s, t| f.sample(s, t));
        let (h1, h2) = kinematic_residuals(&fields).unwrap();
        let (e1, e2) = (h1.max_norm(), h2.max_norm());
        let order = prev.map(|(h, a, b)| (a.max(b) / e1.max(e2)).ln() / (h / grid.ds()).ln());
        match order {
            Some(o) => println!("{n:>5} {e1:>12.4e} {e2:>12.4e} {o:>7.3}"),
            None => println!("{n:>5} {e1:>12.4e} {e2:>12.4e}"),
        }
        prev = Some((grid.ds(), e1, e2));
    }
}
