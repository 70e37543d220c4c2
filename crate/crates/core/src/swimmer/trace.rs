use crate::{Error, Mat3, Result, Vec3};

#[derive(Clone, Debug, PartialEq)]
pub struct TraceFrame {
    pub step: usize,
    pub time: f64,
    pub positions: Vec<Vec3>,
    pub p: Vec<Vec3>,
    pub q: Vec<Vec3>,
    pub base_frame: Mat3,
    pub motor_torque: Vec3,
    pub net_force: Vec3,
    pub roll: f64,
}

impl TraceFrame {
    pub fn centroid(&self) -> Vec3 {
        self.positions.iter().sum::<Vec3>() / self.positions.len().max(1) as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TraceStatus {
    Completed,
    Failed { step: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationTrace {
    pub stride: usize,
    /// Flagellum axis the roll is measured about.
    pub axis: Vec3,
    pub frames: Vec<TraceFrame>,
    pub status: TraceStatus,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceMetrics {
    /// Centroid displacement between the first and last frame.
    pub displacement: Vec3,
    pub elapsed: f64,
    pub mean_speed: f64,
    /// Mean base roll rate about the flagellum axis (rad/s).
    pub base_rotation_rate: f64,
    /// Mean speed per unit mean motor torque.
    pub efficiency: f64,
    /// Angle between the displacement and the flagellum axis line, in
    /// `[0, π/2]`.
    pub axis_angle: f64,
}

pub fn trace_metrics(trace: &SimulationTrace) -> Result<TraceMetrics> {
    let (first, last) = match (trace.frames.first(), trace.frames.last()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::EmptyTrace),
    };
    let displacement = last.centroid() - first.centroid();
    let elapsed = last.time - first.time;
    let per_time = |x: f64| if elapsed > 0.0 { x / elapsed } else { 0.0 };
    let mean_speed = per_time(displacement.norm());
    let torque =
        trace.frames.iter().map(|f| f.motor_torque.norm()).sum::<f64>() / trace.frames.len() as f64;
    let axis_angle = if displacement.norm() > 0.0 && trace.axis.norm() > 0.0 {
        let c = displacement.normalize().dot(&trace.axis.normalize()).abs().min(1.0);
        c.acos()
    } else {
        0.0
    };
    Ok(TraceMetrics {
        displacement,
        elapsed,
        mean_speed,
        base_rotation_rate: per_time(last.roll - first.roll),
        efficiency: if torque > 0.0 { mean_speed / torque } else { 0.0 },
        axis_angle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(time: f64, shift: Vec3) -> TraceFrame {
        TraceFrame {
            step: 0,
            time,
            positions: vec![shift, shift + Vec3::z()],
            p: vec![Vec3::zeros(); 2],
            q: vec![Vec3::zeros(); 2],
            base_frame: Mat3::identity(),
            motor_torque: Vec3::z(),
            net_force: Vec3::zeros(),
            roll: 0.0,
        }
    }

    fn trace(frames: Vec<TraceFrame>) -> SimulationTrace {
        SimulationTrace {
            stride: 1,
            axis: Vec3::z(),
            frames,
            status: TraceStatus::Completed,
        }
    }

    #[test]
    fn empty_trace_is_an_error() {
        assert!(matches!(trace_metrics(&trace(vec![])), Err(Error::EmptyTrace)));
    }

    #[test]
    fn stationary_trace() {
        let m = trace_metrics(&trace(vec![frame(0.0, Vec3::zeros()), frame(2.0, Vec3::zeros())])).unwrap();
        assert_eq!(m.displacement, Vec3::zeros());
        assert_eq!(m.mean_speed, 0.0);
    }

    #[test]
    fn uniform_translation_speed() {
        let d = Vec3::new(0.3, 0.4, 0.0);
        let m = trace_metrics(&trace(vec![frame(1.0, Vec3::zeros()), frame(3.0, d)])).unwrap();
        assert_eq!(m.mean_speed, 0.5 / 2.0);
        assert!((m.axis_angle - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
