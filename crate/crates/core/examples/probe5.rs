// scratch: radial-leg fidelity for the dyadic bundle
use num_complex::Complex64;
use oscdisc_core::builder::build_coefficient;
use oscdisc_core::disc::DiscPoint;
use oscdisc_core::oscillation::{count_zeros, integrate, CircleContour, OdeState};
use oscdisc_core::sequences::PointSequence;
use oscdisc_core::PathSpec;

fn main() {
    let zeros = PointSequence::dyadic(8);
    let bundle = build_coefficient(&zeros).unwrap();
    let initial = OdeState::from_function(&bundle.solution, DiscPoint::origin());
    println!("initial: f={:?} f'={:?}", initial.f, initial.fprime);

    let end = DiscPoint::from_parts(0.9, 0.0).unwrap();
    let path = PathSpec::new(vec![DiscPoint::origin(), end], 1).unwrap();
    let trace = integrate(&bundle.coefficient, initial, &path, 1e-10).unwrap();
    let got = trace.final_state();
    let want = bundle.solution.jet3(end);
    println!("ode f(0.9) = {:?}", got.f);
    println!("cf  f(0.9) = {:?}", want.value);
    println!("ode f'(0.9) = {:?}", got.fprime);
    println!("cf  f'(0.9) = {:?}", want.d1);
    println!("steps: {}", trace.states.len());

    let c = count_zeros(&bundle.coefficient, initial, CircleContour::centered(0.9).unwrap(), 1e-10);
    println!("count at 0.9: {c:?}");
}
