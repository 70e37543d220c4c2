//! Largest stable time step of the semi-analytical and the full-numeric rod
//! steppers on a stiff bent cantilever, over a range of stiffnesses.

use cosserat_kin::rod::{stable_step_search, RodParameters, StabilityScenario, Stepper};

fn main() {
    println!("{:>10} {:>14} {:>14} {:>8}", "young", "semi dt_max", "full dt_max", "ratio");
    for young in [1e5, 1e7, 1e9] {
        let params = RodParameters::circular(0.01, 1000.0, young, 0.4 * young);
        let mut scenario = StabilityScenario::bent_cantilever(params, 50, 1.0, 1.0, 1e-6, 7);
        scenario.steps = 500;
        let range = (1e-12, 1e-1);
        let semi = stable_step_search(Stepper::SemiAnalytical, &scenario, range).unwrap();
        let full = stable_step_search(Stepper::FullNumeric, &scenario, range).unwrap();
        println!("{young:>10.0e} {semi:>14.4e} {full:>14.4e} {:>8.2}", semi / full);
    }
}
