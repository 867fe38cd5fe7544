// scratch: debug count_zeros on the dyadic bundle
use num_complex::Complex64;
use oscdisc_core::builder::build_coefficient;
use oscdisc_core::disc::DiscPoint;
use oscdisc_core::oscillation::{count_zeros, CircleContour, OdeState};
use oscdisc_core::sequences::PointSequence;

fn main() {
    let zeros = PointSequence::dyadic(8);
    let bundle = build_coefficient(&zeros).unwrap();
    let initial = OdeState::from_function(&bundle.solution, DiscPoint::origin());

    // closed-form |f| and winding oracle on circles
    for &r in &[0.9, 0.95, 0.98, 0.997] {
        let n = 400_000;
        let mut prev_arg = f64::NAN;
        let mut winding = 0.0_f64;
        let mut min_f = f64::INFINITY;
        let mut max_f = 0.0_f64;
        let mut max_re_h = f64::NEG_INFINITY;
        let mut min_re_h = f64::INFINITY;
        for k in 0..=n {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
            let z = DiscPoint::new(Complex64::from_polar(r, theta)).unwrap();
            let f = bundle.solution.eval(z);
            let h = bundle.auxiliary.eval(z);
            max_re_h = max_re_h.max(h.re);
            min_re_h = min_re_h.min(h.re);
            min_f = min_f.min(f.norm());
            max_f = max_f.max(f.norm());
            let arg = f.arg();
            if k > 0 {
                let mut d = arg - prev_arg;
                while d > std::f64::consts::PI {
                    d -= 2.0 * std::f64::consts::PI;
                }
                while d < -std::f64::consts::PI {
                    d += 2.0 * std::f64::consts::PI;
                }
                winding += d;
            }
            prev_arg = arg;
        }
        let expected = zeros.points().iter().filter(|z| z.modulus() <= r).count();
        println!(
            "r={r}: oracle winding {:.4} (expect {expected}), |f| in [{min_f:.3e}, {max_f:.3e}], Re h in [{min_re_h:.2}, {max_re_h:.2}]",
            winding / (2.0 * std::f64::consts::PI)
        );

        let t = std::time::Instant::now();
        let result = count_zeros(
            &bundle.coefficient,
            initial,
            CircleContour::centered(r).unwrap(),
            1e-10,
        );
        println!("  count_zeros -> {result:?} in {:?}", t.elapsed());
    }
}
