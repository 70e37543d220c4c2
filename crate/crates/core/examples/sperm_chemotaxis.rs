//! A sperm-like swimmer whose motor torque rises when it heads up a linear
//! chemoattractant gradient, compared with the same swimmer ignoring it.

use cosserat_kin::io::parse_config;
use cosserat_kin::swimmer::{run_simulation, trace_metrics};
use std::path::Path;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/sperm_chemotaxis.conf");
    let base = parse_config(&path).unwrap().swimmer;
    let up = base.gradient.normalize();
    for gain in [0.0, base.chemotaxis_gain] {
        let cfg = cosserat_kin::swimmer::SwimmerConfig {
            chemotaxis_gain: gain,
            ..base.clone()
        };
        let trace = run_simulation(&cfg).unwrap();
        let m = trace_metrics(&trace).unwrap();
        let torque: f64 =
            trace.frames.iter().map(|f| f.motor_torque.norm()).sum::<f64>() / trace.frames.len() as f64;
        println!(
            "gain {gain:.1}: up-gradient displacement {:+.4}, total {:.4}, mean |motor torque| {torque:.3}",
            m.displacement.dot(&up),
            m.displacement.norm()
        );
    }
}
