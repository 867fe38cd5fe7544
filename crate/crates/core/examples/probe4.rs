// scratch: multi-zero count check with a simple coefficient
use num_complex::Complex64;
use oscdisc_core::analytic::AnalyticFunction;
use oscdisc_core::disc::DiscPoint;
use oscdisc_core::oscillation::{count_zeros, CircleContour, OdeState};

fn main() {
    // f = sin(3 pi z): zeros 0, ±1/3, ±2/3 -> 5 inside |z| <= 0.9
    let k = 3.0 * std::f64::consts::PI;
    let a = AnalyticFunction::constant(Complex64::new(k * k, 0.0));
    let initial = OdeState::new(
        DiscPoint::origin(),
        Complex64::new(0.0, 0.0),
        Complex64::new(k, 0.0),
    );
    let contour = CircleContour::centered(0.9).unwrap();
    println!("sin(3 pi z): {:?}", count_zeros(&a, initial, contour, 1e-10));
}
