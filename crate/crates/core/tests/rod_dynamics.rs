use cosserat_kin::fd::summation_weights;
use cosserat_kin::kinematics::{kinematic_residuals, GridSpec, KinematicFields};
use cosserat_kin::rod::*;
use cosserat_kin::{Error, Vec3};
use proptest::prelude::*;

/// A soft rod whose fastest waves allow steps around 1e-3.
fn soft() -> RodParameters {
    RodParameters::circular(0.05, 1.0, 1e3, 4e2)
}

fn cantilever(n: usize) -> StabilityScenario {
    StabilityScenario::bent_cantilever(soft(), n, 1.0, 1.0, 0.0, 1)
}

/// A free–free arc, stress free at t = 0, moving with smooth body rates.
fn moving_arc(n: usize) -> StabilityScenario {
    let mut init = cantilever(n).initial;
    for i in 0..n {
        let s = i as f64 * init.ds;
        init.v[i] = Vec3::new(0.3 * (3.0 * s).sin(), 0.2 * (2.0 * s).cos(), 0.0);
        init.omega[i] = Vec3::new(0.0, 0.5 * (2.0 * s).cos(), 0.3 * s);
    }
    let model = RodModel::relaxed_at(soft(), &init.to_full_state().unwrap(), Boundary::free());
    StabilityScenario::new(model, init)
}

fn semi(s: &StabilityScenario, dt: f64, steps: usize) -> Vec<RodState> {
    let mut out = vec![s.initial.clone()];
    for _ in 0..steps {
        let next = step_semi_analytical(out.last().unwrap(), &s.loads, &s.model, dt).unwrap();
        out.push(next);
    }
    out
}

fn full(s: &StabilityScenario, dt: f64, steps: usize) -> Vec<FullState> {
    let mut out = vec![s.initial.to_full_state().unwrap()];
    for _ in 0..steps {
        let next = step_full_numeric(out.last().unwrap(), &s.loads, &s.model, dt).unwrap();
        out.push(next);
    }
    out
}

fn max_diff(a: &[Vec3], b: &[Vec3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn semi_analytical_converges_at_first_order_in_dt() {
    let s = cantilever(21);
    let horizon = 0.02;
    let reference = semi(&s, horizon / 20_000.0, 20_000).pop().unwrap().to_full_state().unwrap();
    let err = |k: usize| {
        let end = semi(&s, horizon / k as f64, k).pop().unwrap().to_full_state().unwrap();
        max_diff(&end.kappa, &reference.kappa).max(max_diff(&end.v, &reference.v))
    };
    let (e1, e2, e3) = (err(200), err(400), err(800));
    for order in [(e1 / e2).log2(), (e2 / e3).log2()] {
        assert!((order - 1.0).abs() < 0.15, "order {order}");
    }
}

#[test]
fn schemes_agree_under_refinement() {
    let horizon = 0.01;
    let gap = |n: usize, k: usize| {
        let s = moving_arc(n);
        let a = semi(&s, horizon / k as f64, k).pop().unwrap().to_full_state().unwrap();
        let b = full(&s, horizon / k as f64, k).pop().unwrap();
        [
            max_diff(&a.kappa, &b.kappa),
            max_diff(&a.nu, &b.nu),
            max_diff(&a.omega, &b.omega),
            max_diff(&a.v, &b.v),
        ]
    };
    let coarse = gap(21, 1000);
    let fine = gap(81, 4000);
    for (c, f) in coarse.iter().zip(&fine) {
        assert!(*f < c / 3.0, "coarse {c:e}, fine {f:e}");
    }
    assert!(coarse.iter().all(|&x| x < 0.05));
}

fn momentum(state: &RodState, params: &RodParameters) -> Vec3 {
    let w = summation_weights(state.n_nodes(), state.ds);
    let frames = state.frames();
    (0..state.n_nodes())
        .map(|i| frames[i] * state.v[i] * (w[i] * params.density * params.area))
        .sum()
}

#[test]
fn free_rod_momentum_drift_halves_with_dt() {
    let mut s = cantilever(21);
    s.model.boundary = Boundary::free();
    let horizon = 0.05;
    let drift = |k: usize| {
        let states = semi(&s, horizon / k as f64, k);
        let p0 = momentum(&states[0], &s.model.params);
        (momentum(states.last().unwrap(), &s.model.params) - p0).norm()
    };
    let (d1, d2, d3) = (drift(1000), drift(2000), drift(4000));
    assert!(d1 < 1e-6);
    for ratio in [d1 / d2, d2 / d3] {
        assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio}");
    }
}

/// Largest interior `|h₁|`, `|h₂|` over a window of consecutive states.
fn interior_residual(fields: &[FullState], dt: f64) -> f64 {
    let n = fields[0].n_nodes();
    let grid = GridSpec::new((0.0, 1.0), (0.0, dt * (fields.len() - 1) as f64), n, fields.len()).unwrap();
    let mut k = KinematicFields::zeros(grid);
    for i in 0..n {
        for (j, f) in fields.iter().enumerate() {
            k.kappa[(i, j)] = f.kappa[i];
            k.nu[(i, j)] = f.nu[i];
            k.omega[(i, j)] = f.omega[i];
            k.v[(i, j)] = f.v[i];
        }
    }
    let (h1, h2) = kinematic_residuals(&k).unwrap();
    let mut worst: f64 = 0.0;
    for i in 2..n - 2 {
        for j in 0..fields.len() {
            worst = worst.max(h1[(i, j)].norm()).max(h2[(i, j)].norm());
        }
    }
    worst
}

#[test]
fn compatibility_residual_grows_less_for_the_semi_analytical_scheme() {
    let s = moving_arc(21);
    let dt = 1e-5;
    let a: Vec<FullState> = semi(&s, dt, 1005).iter().map(|x| x.to_full_state().unwrap()).collect();
    let b = full(&s, dt, 1005);
    let growth = |f: &[FullState]| interior_residual(&f[1000..1005], dt) / interior_residual(&f[1..6], dt);
    let (g_semi, g_full) = (growth(&a), growth(&b));
    assert!(g_semi < g_full, "semi ×{g_semi:.1}, full ×{g_full:.1}");
}

#[test]
fn shifting_the_base_shifts_the_centerline() {
    let s = moving_arc(15);
    let shift = Vec3::new(0.375, -1.25, 2.5);
    let mut moved = s.initial.clone();
    moved.base_position += shift;
    let (a, fa) = reconstruct_centerline(&s.initial).unwrap();
    let (b, fb) = reconstruct_centerline(&moved).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((y - x - shift).norm() <= 1e-15 * (1.0 + shift.norm()));
    }
    assert_eq!(fa, fb);
    let next_a = step_semi_analytical(&s.initial, &s.loads, &s.model, 1e-4).unwrap();
    let next_b = step_semi_analytical(&moved, &s.loads, &s.model, 1e-4).unwrap();
    assert_eq!((next_a.p, next_a.q, next_a.omega, next_a.v), (next_b.p.clone(), next_b.q.clone(), next_b.omega.clone(), next_b.v.clone()));
    assert!((next_b.base_position - next_a.base_position - shift).norm() <= 1e-15 * (1.0 + shift.norm()));
}

fn quick(mut s: StabilityScenario) -> StabilityScenario {
    s.steps = 300;
    s
}

#[test]
fn stiffer_bending_shrinks_the_full_numeric_step() {
    let base = quick(StabilityScenario::bent_cantilever(soft(), 21, 1.0, 1.0, 1e-6, 2));
    let mut stiff = base.clone();
    stiff.model.params.bend_stiffness *= 100.0;
    let range = (1e-10, 1e-2);
    let soft_dt = stable_step_search(Stepper::FullNumeric, &base, range).unwrap();
    let stiff_dt = stable_step_search(Stepper::FullNumeric, &stiff, range).unwrap();
    assert!(stiff_dt < soft_dt, "{stiff_dt:e} vs {soft_dt:e}");
}

#[test]
fn both_steppers_are_stable_well_below_their_limits() {
    let s = quick(StabilityScenario::bent_cantilever(soft(), 21, 1.0, 1.0, 1e-6, 3));
    for stepper in [Stepper::SemiAnalytical, Stepper::FullNumeric] {
        let dt_max = stable_step_search(stepper, &s, (1e-10, 1e-2)).unwrap();
        assert!(s.is_stable(stepper, 1e-2 * dt_max), "{}", stepper.name());
        assert!(!s.is_stable(stepper, 2.0 * dt_max), "{}", stepper.name());
    }
}

#[test]
fn step_search_is_deterministic_and_checks_its_range() {
    let s = quick(StabilityScenario::bent_cantilever(soft(), 15, 1.0, 1.0, 1e-6, 4));
    let a = stable_step_search(Stepper::SemiAnalytical, &s, (1e-10, 1e-2)).unwrap();
    let b = stable_step_search(Stepper::SemiAnalytical, &s, (1e-10, 1e-2)).unwrap();
    assert_eq!(a.to_bits(), b.to_bits());
    assert!(matches!(
        stable_step_search(Stepper::SemiAnalytical, &s, (1e-4, 1e-2)),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        stable_step_search(Stepper::FullNumeric, &s, (1.0, 1e6)),
        Err(Error::NoStableStep { .. })
    ));
}

proptest! {
    #[test]
    fn relaxed_states_stay_at_rest(
        k in prop::array::uniform3(-2.0..2.0f64),
        twist in -1.0..1.0f64,
        n in 5usize..20,
    ) {
        // helical arcs p = s·κ, q = −s e₃ (unit stretch along d₃)
        let ds = 1.0 / (n - 1) as f64;
        let kappa = Vec3::new(k[0], k[1], twist) * 0.5;
        let p = (0..n).map(|i| kappa * (i as f64 * ds)).collect();
        let q = (0..n).map(|i| Vec3::new(0.0, 0.0, -(i as f64) * ds)).collect();
        let state = RodState::at_rest(ds, Vec3::new(k[2], 0.0, 0.0), p, q);
        let model = RodModel::relaxed_at(soft(), &state.to_full_state().unwrap(), Boundary::free());
        let next = step_semi_analytical(&state, &ExternalLoads::zeros(n), &model, 1e-3).unwrap();
        prop_assert_eq!(&next.p, &state.p);
        prop_assert_eq!(&next.q, &state.q);
        prop_assert_eq!(next.base_position, state.base_position);
        let full_next = step_full_numeric(&state.to_full_state().unwrap(), &ExternalLoads::zeros(n), &model, 1e-3).unwrap();
        prop_assert_eq!(&full_next.kappa, &state.to_full_state().unwrap().kappa);
    }
}
