use super::config::{SwimMode, SwimmerConfig};
use super::elastic::{edge_strains, node_loads, EdgeStrains};
use super::trace::{SimulationTrace, TraceFrame, TraceStatus};
use crate::fd::summation_weights;
use crate::kinematics::{log_rotation, rebase_rotation_vector, rotation_from_p, RotationVector};
use crate::rod::{step_semi_analytical, Boundary, ExternalLoads, RodModel, RodState};
use crate::stokes::{
    angular_velocity_at, assemble_mobility, rodlet_velocity_at, solve_forces_for_velocities, total_velocity_at,
    FluidParams, PointForceSet,
};
use crate::{Result, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Arc-length parameterized curve with body curvature `κ̄` and `ν = e₃`,
/// starting at the origin with identity frame.
pub fn helix_centerline(kappa: &Vec3, s: f64) -> Vec3 {
    let w = kappa.norm();
    if w * s == 0.0 {
        return Vec3::z() * s;
    }
    let u = kappa / w;
    let along = u.z;
    Vec3::z() * ((w * s).sin() / w) + u.cross(&Vec3::z()) * ((1.0 - (w * s).cos()) / w) + u * ((s - (w * s).sin() / w) * along)
}

/// The relaxed flagellum: `p = s κ̄` (rebased), `q = −Rᵀ r` with `r` the exact
/// helix, at rest. With a nonzero `perturbation`, seeded noise of that size is
/// added to `p` away from the base while `q` keeps the same centerline.
pub fn init_swimmer(config: &SwimmerConfig) -> Result<RodState> {
    config.validate()?;
    let kappa = config.helix_curvature();
    let ds = config.ds();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut p = Vec::with_capacity(config.n_nodes);
    let mut q = Vec::with_capacity(config.n_nodes);
    for i in 0..config.n_nodes {
        let s = i as f64 * ds;
        let mut pi = kappa * s;
        if config.perturbation > 0.0 && i > 0 {
            pi += Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                * config.perturbation;
        }
        let pi = rebase_rotation_vector(&RotationVector(pi));
        q.push(-(rotation_from_p(&pi).transpose() * helix_centerline(&kappa, s)));
        p.push(pi.0);
    }
    let state = RodState::at_rest(ds, Vec3::zeros(), p, q);
    state.validate()?;
    Ok(state)
}

/// Motor torque on the flagellum base, in the fixed frame: the configured
/// magnitude along `d₃`, scaled by `1 + gain (∇c · heading)` and clamped to
/// `[0, 2]` times the nominal magnitude.
pub fn motor_torque(config: &SwimmerConfig, base_director: &Vec3, heading: &Vec3) -> Vec3 {
    let scale = (1.0 + config.chemotaxis_gain * config.gradient.dot(heading)).clamp(0.0, 2.0);
    base_director * (config.motor_torque * scale)
}

/// Diagnostics of one coupled evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepInfo {
    pub motor_torque: Vec3,
    /// Sum of the point forces the rod exerts on the fluid.
    pub net_force: Vec3,
    /// Fixed-frame angular velocity of the base node.
    pub base_angular_velocity: Vec3,
}

/// Node positions `r = −R q`.
fn positions(state: &RodState) -> Vec<Vec3> {
    state
        .p
        .iter()
        .zip(&state.q)
        .map(|(p, q)| -(rotation_from_p(&RotationVector(*p)) * q))
        .collect()
}

struct Loads {
    points: Vec<Vec3>,
    forces: Vec<Vec3>,
    torques: Vec<Vec3>,
    weights: Vec<f64>,
    motor: Vec3,
}

/// Point forces and torques the rod exerts on the fluid: its internal elastic
/// loads, plus the motor torque at the base.
fn fluid_loads(swimmer: &Swimmer) -> Loads {
    let state = &swimmer.state;
    let n = state.n_nodes();
    let points = positions(state);
    let frames = state.frames();
    let weights = summation_weights(n, state.ds);
    let (forces, mut torques) = node_loads(&frames, &points, state.ds, &swimmer.config.rod, &swimmer.reference);
    let base_director = frames[0].column(2).into_owned();
    let tail = points[0] - points[n - 1];
    let heading = if tail.norm() > 0.0 { tail.normalize() } else { Vec3::zeros() };
    let motor = motor_torque(&swimmer.config, &base_director, &heading);
    torques[0] += motor;
    Loads {
        points,
        forces,
        torques,
        weights,
        motor,
    }
}

/// One step of the coupled rod–fluid system.
///
/// Overdamped: node velocities `u` and angular velocities `w` are evaluated
/// from the regularized Stokeslets and rotlets of the rod loads and the head,
/// the body rates `ω = Rᵀw`, `v = Rᵀu` are stored, the frames advance by
/// `R exp(dt ω̂)` and `q` by forward Euler on `q_t = q×ω − v`. Inertial: drag forces from a mobility solve at the current
/// node velocities enter [`step_semi_analytical`] as external loads.
pub fn coupled_step(swimmer: &Swimmer) -> Result<(RodState, StepInfo)> {
    let (state, model, config) = (&swimmer.state, &swimmer.model, &swimmer.config);
    let loads = fluid_loads(swimmer);
    let net_force = loads.forces.iter().sum();
    let n = state.n_nodes();
    match config.mode {
        SwimMode::Overdamped => {
            let fp = config.fluid;
            let head_fp = FluidParams {
                viscosity: fp.viscosity,
                epsilon: config.head_epsilon,
            };
            let rod = PointForceSet {
                points: loads.points.clone(),
                forces: loads.forces,
                torques: Some(loads.torques),
            };
            let head = PointForceSet {
                points: vec![loads.points[0]],
                forces: vec![Vec3::zeros()],
                torques: Some(vec![-loads.motor]),
            };
            let mut next = state.clone();
            let mut base_w = Vec3::zeros();
            for i in 0..n {
                let x = &loads.points[i];
                let u = total_velocity_at(x, &rod, &fp) + rodlet_velocity_at(x, &head, &head_fp);
                let w = angular_velocity_at(x, &rod, &fp) + angular_velocity_at(x, &head, &head_fp);
                if i == 0 {
                    base_w = w;
                }
                let frame = rotation_from_p(&RotationVector(state.p[i]));
                let omega = frame.transpose() * w;
                let v = frame.transpose() * u;
                // R ← R exp(dt ω̂) rather than p ← p + dt Φ(ω, p): the two agree to
                // first order, but only the group update commutes with a rigid
                // rotation of the whole swimmer
                next.p[i] = log_rotation(&(frame * rotation_from_p(&RotationVector(omega * config.dt))));
                next.q[i] = state.q[i] + (state.q[i].cross(&omega) - v) * config.dt;
                next.omega[i] = omega;
                next.v[i] = v;
                if i == 0 {
                    next.base_position += u * config.dt;
                }
            }
            next.time += config.dt;
            next.step += 1;
            crate::rod::check_finite(next.step, &[&next.p, &next.q])?;
            Ok((
                next,
                StepInfo {
                    motor_torque: loads.motor,
                    net_force,
                    base_angular_velocity: base_w,
                },
            ))
        }
        SwimMode::Inertial => {
            let frames = state.frames();
            let velocities: Vec<Vec3> = (0..n).map(|i| frames[i] * state.v[i]).collect();
            let mobility = assemble_mobility(&loads.points, &config.fluid)?;
            let drag = solve_forces_for_velocities(&mobility, &velocities)?;
            let mut ext = ExternalLoads::zeros(n);
            for i in 0..n {
                ext.force[i] = -(frames[i].transpose() * drag.forces[i]) / loads.weights[i];
            }
            ext.torque[0] = frames[0].transpose() * loads.motor / loads.weights[0];
            let next = step_semi_analytical(state, &ext, model, config.dt)?;
            let base_w = frames[0] * next.omega[0];
            Ok((
                next,
                StepInfo {
                    motor_torque: loads.motor,
                    net_force: drag.forces.iter().sum(),
                    base_angular_velocity: base_w,
                },
            ))
        }
    }
}

/// A swimmer in motion: configuration, elastic model and current state.
#[derive(Clone, Debug)]
pub struct Swimmer {
    pub config: SwimmerConfig,
    pub model: RodModel,
    pub state: RodState,
    /// Accumulated rotation of the base frame about the flagellum axis (rad).
    pub roll: f64,
    pub axis: Vec3,
    reference: EdgeStrains,
}

impl Swimmer {
    /// The relaxed swimmer; its reference strains are the discrete strains of
    /// the unperturbed helix, so without a motor it stays exactly at rest.
    pub fn new(config: SwimmerConfig) -> Result<Self> {
        let relaxed = init_swimmer(&SwimmerConfig {
            perturbation: 0.0,
            ..config.clone()
        })?;
        let mut params = config.rod;
        params.ref_curvature = config.helix_curvature();
        let model = RodModel::relaxed_at(params, &relaxed.to_full_state()?, Boundary::free());
        let reference = edge_strains(&relaxed.frames(), &positions(&relaxed), relaxed.ds);
        let state = init_swimmer(&config)?;
        let axis = config.flagellum_axis();
        Ok(Swimmer {
            config,
            model,
            state,
            roll: 0.0,
            axis,
            reference,
        })
    }

    pub fn step(&mut self) -> Result<StepInfo> {
        let (next, info) = coupled_step(self)?;
        self.roll += self.config.dt * info.base_angular_velocity.dot(&self.axis);
        self.state = next;
        Ok(info)
    }

    pub fn positions(&self) -> Vec<Vec3> {
        positions(&self.state)
    }

    fn frame(&self, info: Option<&StepInfo>) -> Result<TraceFrame> {
        let (motor_torque, net_force) = match info {
            Some(i) => (i.motor_torque, i.net_force),
            None => {
                let loads = fluid_loads(self);
                (loads.motor, loads.forces.iter().sum())
            }
        };
        Ok(TraceFrame {
            step: self.state.step,
            time: self.state.time,
            positions: self.positions(),
            p: self.state.p.clone(),
            q: self.state.q.clone(),
            base_frame: rotation_from_p(&RotationVector(self.state.p[0])),
            motor_torque,
            net_force,
            roll: self.roll,
        })
    }
}

/// Runs `n_steps` coupled steps, recording the initial state, every
/// `stride`-th step and the last step. A numerical failure ends the trace
/// early and is stored in its status.
pub fn run_simulation(config: &SwimmerConfig) -> Result<SimulationTrace> {
    let mut swimmer = Swimmer::new(config.clone())?;
    let mut trace = SimulationTrace {
        stride: config.stride,
        axis: swimmer.axis,
        frames: vec![swimmer.frame(None)?],
        status: TraceStatus::Completed,
    };
    for k in 1..=config.n_steps {
        match swimmer.step() {
            Ok(info) => {
                if k % config.stride == 0 || k == config.n_steps {
                    trace.frames.push(swimmer.frame(Some(&info))?);
                }
            }
            Err(e) => {
                trace.status = TraceStatus::Failed {
                    step: k,
                    reason: e.to_string(),
                };
                break;
            }
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SwimmerConfig {
        SwimmerConfig {
            n_nodes: 13,
            n_steps: 20,
            stride: 5,
            ..SwimmerConfig::default()
        }
    }

    #[test]
    fn straight_flagellum_along_e3() {
        let cfg = SwimmerConfig {
            helix_amplitude: 0.0,
            ..small()
        };
        let s = Swimmer::new(cfg).unwrap();
        for (i, r) in s.positions().iter().enumerate() {
            assert!((r - Vec3::z() * (i as f64 * s.state.ds)).norm() < 1e-14);
        }
    }

    #[test]
    fn no_motor_means_no_motion() {
        let cfg = SwimmerConfig {
            motor_torque: 0.0,
            ..small()
        };
        let mut s = Swimmer::new(cfg).unwrap();
        let before = s.positions();
        for _ in 0..5 {
            s.step().unwrap();
        }
        let after = s.positions();
        for (a, b) in before.iter().zip(&after) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn helix_is_unit_speed_with_constant_curvature() {
        let k = Vec3::new(3.0, 0.0, 2.0);
        let h = 1e-5;
        for s in [0.1, 0.7, 2.0] {
            let t = (helix_centerline(&k, s + h) - helix_centerline(&k, s - h)) / (2.0 * h);
            assert!((t.norm() - 1.0).abs() < 1e-9);
            // tangent equals d₃ of exp(s[κ̄]×)
            let d3 = rotation_from_p(&RotationVector(k * s)).column(2).into_owned();
            assert!((t - d3).norm() < 1e-9);
        }
    }

    #[test]
    fn motor_clamps_and_scales() {
        let mut cfg = small();
        let d3 = Vec3::z();
        assert_eq!(motor_torque(&cfg, &d3, &Vec3::x()), d3 * cfg.motor_torque);
        cfg.chemotaxis_gain = 1.0;
        cfg.gradient = Vec3::new(0.5, 0.0, 0.0);
        assert!(motor_torque(&cfg, &d3, &Vec3::x()).z.abs() > cfg.motor_torque.abs());
        cfg.gradient = Vec3::new(1e6, 0.0, 0.0);
        assert_eq!(motor_torque(&cfg, &d3, &Vec3::x()), d3 * (2.0 * cfg.motor_torque));
        assert_eq!(motor_torque(&cfg, &d3, &-Vec3::x()), Vec3::zeros());
    }

    #[test]
    fn zero_steps_gives_initial_frame_only() {
        let cfg = SwimmerConfig { n_steps: 0, ..small() };
        let trace = run_simulation(&cfg).unwrap();
        assert_eq!(trace.frames.len(), 1);
        assert_eq!(trace.frames[0].step, 0);
    }

    #[test]
    fn records_at_stride() {
        let trace = run_simulation(&small()).unwrap();
        let steps: Vec<usize> = trace.frames.iter().map(|f| f.step).collect();
        assert_eq!(steps, vec![0, 5, 10, 15, 20]);
        assert_eq!(trace.status, TraceStatus::Completed);
    }
}
