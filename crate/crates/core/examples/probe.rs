// scratch measurement run (deleted before release)
use num_complex::Complex64;
use oscdisc_core::analytic::{growth_norm, AnalyticFunction};
use oscdisc_core::builder::build_coefficient;
use oscdisc_core::carleson::{invariant_constant_area, AreaMeasureSpec, PolarQuadSpec};
use oscdisc_core::disc::{make_grid, DiscPoint};
use oscdisc_core::oscillation::{
    integrate, normality_diagnostic, ode_solution_evaluator, verify_prescribed_zeros, OdeState,
};
use oscdisc_core::sequences::{
    density_upper, seip_lattice_with_cutoff, LatticeParams, PointSequence,
};
use oscdisc_core::PathSpec;

fn main() {
    let t0 = std::time::Instant::now();

    // ---- dyadic bundle ----
    let zeros = PointSequence::dyadic(8);
    let bundle = build_coefficient(&zeros).unwrap();
    println!("build dyadic(8): {:?}", t0.elapsed());
    println!("diagnostics: {:?}", bundle.diagnostics);

    let t = std::time::Instant::now();
    let report = verify_prescribed_zeros(&bundle, 1e-8, 0.997);
    println!("verify: {:?} -> {:?}", t.elapsed(), report);

    // ---- mu_{A,p} constants for p in {1/4, 1/2, 1} ----
    for &p in &[0.25, 0.5, 1.0] {
        let t = std::time::Instant::now();
        let quad = PolarQuadSpec {
            radial_refinement: 1,
            angular_nodes: 4096,
        };
        let spec = AreaMeasureSpec::new(bundle.coefficient.clone(), p, 0.999)
            .unwrap()
            .with_quadrature(quad);
        let centers: Vec<DiscPoint> = {
            let mut c = vec![DiscPoint::origin()];
            c.extend_from_slice(bundle.zeros.points());
            c
        };
        let report = invariant_constant_area(&spec, &centers);
        println!("p={p}: {report:?} time {:?}", t.elapsed());
    }

    // ---- normality growth at zeros ----
    let t = std::time::Instant::now();
    let f0 = bundle.solution.jet3(DiscPoint::origin());
    // g(0) = 0, g'(0) = 1/f(0) makes W = 1
    let g_init = OdeState::new(
        DiscPoint::origin(),
        Complex64::new(0.0, 0.0),
        1.0 / f0.value,
    );
    let g_fn = ode_solution_evaluator(&bundle.coefficient, g_init, 1e-11);
    let grid = make_grid(0.9, 4, 8).unwrap();
    let report = normality_diagnostic(
        &bundle.solution,
        &g_fn,
        DiscPoint::origin(),
        &grid,
        Some(&bundle.zeros),
    )
    .unwrap();
    println!("normality: {:?} (W resid {:.2e})", t.elapsed(), report.wronskian_residual);
    let values: Vec<f64> = report.at_zeros.iter().map(|(_, v)| *v).collect();
    println!("at-zero values: {values:?}");
    let ratios: Vec<f64> = values.windows(2).map(|w| w[1] / w[0]).collect();
    println!("consecutive ratios: {ratios:?}");

    // ---- Schwarzian identity S_w = 2A ----
    let t = std::time::Instant::now();
    let mut worst = 0.0_f64;
    for &(re, im) in &[(0.25, 0.1), (-0.2, 0.15), (0.0, -0.3), (-0.3, -0.05), (0.1, 0.3)] {
        let z = DiscPoint::from_parts(re, im).unwrap();
        let f_j = bundle.solution.jet3(z);
        let g_j = g_fn.jet3(z); // quadrature jets: each node re-integrates the ODE
        let sw = oscdisc_core::oscillation::schwarzian_of_ratio(&f_j, &g_j).unwrap();
        let two_a = 2.0 * bundle.coefficient.eval(z);
        let rel = (sw - two_a).norm() / two_a.norm();
        worst = worst.max(rel);
        println!("  S_w vs 2A at {re},{im}: rel {rel:.3e}");
    }
    println!("schwarzian check: {:?}, worst {worst:.3e}", t.elapsed());

    // ---- ODE re-integration error profile ----
    let t = std::time::Instant::now();
    let initial = OdeState::from_function(&bundle.solution, DiscPoint::origin());
    let path = PathSpec::new(
        vec![DiscPoint::origin(), DiscPoint::from_parts(0.997, 0.0).unwrap()],
        16,
    )
    .unwrap();
    let trace = integrate(&bundle.coefficient, initial, &path, 1e-10).unwrap();
    println!(
        "radial integration: {:?}, {} steps, achieved {:.2e}",
        t.elapsed(),
        trace.states.len(),
        trace.tolerance_achieved
    );

    // ---- Seip lattice density ----
    let t = std::time::Instant::now();
    let a = (2.0 * std::f64::consts::PI).exp();
    let params = LatticeParams::new(a, 2.0, -3..=3, -360_000..=360_000).unwrap();
    let lattice = seip_lattice_with_cutoff(&params, 1e-6);
    println!("lattice size {} in {:?}", lattice.len(), t.elapsed());
    let t = std::time::Instant::now();
    let mut centers = vec![DiscPoint::origin()];
    // a few atoms at varied moduli
    let pts = lattice.points();
    for idx in [pts.len() / 7, pts.len() / 3, pts.len() / 2, 2 * pts.len() / 3] {
        centers.push(pts[idx]);
    }
    let grid = oscdisc_core::disc::DiscGrid::from_points(
        centers,
        oscdisc_core::disc::GridScheme::PseudoUniform,
    )
    .unwrap();
    let est = density_upper(&lattice, 0.99999, &grid).unwrap();
    println!(
        "density proxy: {:.4} (target 0.5, rel err {:.3}) in {:?}",
        est.value,
        (est.value - 0.5_f64).abs() / 0.5,
        t.elapsed()
    );

    // growth norm of a transported coefficient identity sanity
    let gcheck = growth_norm(&bundle.coefficient, 2.0, &make_grid(0.999, 16, 32).unwrap());
    println!("h2 norm grid: {gcheck:.4}");

    let one = AnalyticFunction::constant(Complex64::new(1.0, 0.0));
    let _ = one;
    println!("total: {:?}", t0.elapsed());
}
