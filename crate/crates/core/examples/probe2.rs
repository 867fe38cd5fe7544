// scratch: decompose the coefficient scale for the dyadic bundle
use num_complex::Complex64;
use oscdisc_core::builder::{build_coefficient, interpolation_targets, solve_interpolation};
use oscdisc_core::disc::DiscPoint;
use oscdisc_core::sequences::PointSequence;

fn main() {
    let zeros = PointSequence::dyadic(8);
    let problem = interpolation_targets(&zeros).unwrap();
    println!(
        "targets: {:?}",
        problem.targets.iter().map(|t| t.norm()).collect::<Vec<_>>()
    );
    let (k, diag) = solve_interpolation(&problem).unwrap();
    println!("solve diag: {diag:?}");

    let bundle = build_coefficient(&zeros).unwrap();
    // |k|, |h|, |B'|, components along the radius
    for &r in &[0.0, 0.5, 0.9, 0.96, 0.98, 0.99, 0.995, 0.999] {
        let z = Complex64::new(r, 0.0);
        let kj = k.jet3(DiscPoint::new(z).unwrap());
        let bj = bundle.blaschke.as_analytic().jet3(DiscPoint::new(z).unwrap());
        let hj = bundle.auxiliary.jet3(DiscPoint::new(z).unwrap());
        let t = 1.0 - r * r;
        let quot = (bj.d2 + 2.0 * bj.d1 * hj.d1) / bj.value;
        let a = bundle.coefficient.eval(DiscPoint::new(z).unwrap());
        println!(
            "r={r}: |k|={:.3e} |h|={:.3e} |B|={:.3e} t|h'|={:.3e} t^2|A|={:.3e} [quot {:.2e} h'^2 {:.2e} h'' {:.2e}]",
            kj.value.norm(),
            hj.value.norm(),
            bj.value.norm(),
            t * hj.d1.norm(),
            t * t * a.norm(),
            t * t * quot.norm(),
            t * t * hj.d1.norm().powi(2),
            t * t * hj.d2.norm(),
        );
    }
    // same at angle pi (away from the zeros)
    for &r in &[0.9, 0.99, 0.999] {
        let z = Complex64::new(-r, 0.0);
        let t = 1.0 - r * r;
        let a = bundle.coefficient.eval(DiscPoint::new(z).unwrap());
        println!("r={r} angle pi: t^2|A|={:.3e}", t * t * a.norm());
    }
    // values at zeros
    for (n, &zn) in zeros.points().iter().enumerate() {
        let t = 1.0 - zn.modulus().powi(2);
        let a = bundle.coefficient.eval(zn);
        println!("at zero {n} ({}): t^2|A| = {:.3e}", zn.re(), t * t * a.norm());
    }
    // f' at zeros (needed later for normality scale): f'(z_n) = B'(z_n) e^{h(z_n)}
    for (n, &zn) in zeros.points().iter().enumerate() {
        let fj = bundle.solution.jet3(zn);
        let hv = bundle.auxiliary.eval(zn);
        println!(
            "zero {n}: |f'| = {:.3e}, Re h = {:.3}, (1-|z|^2)|f'| = {:.3e}",
            fj.d1.norm(),
            hv.re,
            (1.0 - zn.modulus().powi(2)) * fj.d1.norm()
        );
    }
}
