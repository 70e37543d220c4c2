//! A regularized Stokeslet: finite at its centre, the singular Stokeslet far
//! away, divergence free everywhere.

use cosserat_kin::stokes::{divergence_residual, pressure_at, velocity_at, FluidParams, PointForceSet, ProbeBox};
use cosserat_kin::Vec3;
use std::f64::consts::PI;

fn main() {
    let fp = FluidParams {
        viscosity: 1.0,
        epsilon: 0.05,
    };
    let f = Vec3::new(0.0, 0.0, 1.0);
    let src = PointForceSet::new(vec![Vec3::zeros()], vec![f]).unwrap();
    let dir = Vec3::new(1.0, 0.0, 1.0).normalize();
    println!("{:>8} {:>12} {:>12} {:>10} {:>12}", "r/ε", "|u|", "|u_oseen|", "rel diff", "pressure");
    for ratio in [0.0, 0.5, 1.0, 4.0, 20.0, 100.0, 1000.0] {
        let x = dir * ratio * fp.epsilon;
        let u = velocity_at(&x, &src, &fp);
        let p = pressure_at(&x, &src, &fp);
        if ratio == 0.0 {
            println!("{ratio:>8} {:>12.5e} {:>12} {:>10} {p:>12.4e}", u.norm(), "inf", "");
            continue;
        }
        let r = x.norm();
        let oseen = (f + dir * f.dot(&dir)) / (8.0 * PI * fp.viscosity * r);
        let rel = (u - oseen).norm() / oseen.norm();
        println!("{ratio:>8} {:>12.5e} {:>12.5e} {rel:>10.2e} {p:>12.4e}", u.norm(), oseen.norm());
    }
    let probe = ProbeBox {
        lower: Vec3::repeat(-0.5),
        upper: Vec3::repeat(0.5),
        n: 6,
        h: 1e-4,
    };
    println!("max |div u| on a 6³ probe grid: {:.2e}", divergence_residual(&src, &fp, &probe));
}
