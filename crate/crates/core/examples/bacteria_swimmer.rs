//! A monotrichous bacterium: a helical flagellum turned by a constant motor
//! torque at its base, swimming through a viscous fluid.

use cosserat_kin::swimmer::{run_simulation, trace_metrics, SwimmerConfig};

fn main() {
    let cfg = SwimmerConfig {
        n_steps: 50_000,
        stride: 5_000,
        ..SwimmerConfig::default()
    };
    let trace = run_simulation(&cfg).unwrap();
    println!("{:>8} {:>11} {:>11} {:>11} {:>9}", "t", "x", "y", "z", "roll");
    for f in &trace.frames {
        let c = f.centroid();
        println!("{:>8.3} {:>11.5} {:>11.5} {:>11.5} {:>9.3}", f.time, c.x, c.y, c.z, f.roll);
    }
    let m = trace_metrics(&trace).unwrap();
    println!(
        "swam {:.4} lengths at {:.4} per unit time, {:.1}° off the flagellum axis, rolling at {:.2} rad/s",
        m.displacement.norm() / cfg.length,
        m.mean_speed,
        m.axis_angle.to_degrees(),
        m.base_rotation_rate
    );
}
