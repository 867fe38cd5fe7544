//! p-Carleson measure constants in box and conformally invariant form.
//!
//! Two measures matter here: the point measure `sum (1 - |z_n|)^p delta_{z_n}`
//! attached to a sequence, and the area measure
//! `d mu_{A,p} = |A|^2 (1 - |z|^2)^{2+p} dm` attached to a coefficient.
//! Conventions follow the mixed normalization of the source quantities:
//! `dm` is the unnormalized Lebesgue area measure, while arc lengths on the
//! boundary are normalized so `|∂D| = 1`. That makes the closed-form check
//! `mu_{1,1}` over the disc at center 0 equal to `pi/4` and box masses
//! directly comparable to `|I|^p`.

use num_complex::Complex64;

use crate::analytic::AnalyticFunction;
use crate::disc::{DiscGrid, DiscPoint};
use crate::error::{Error, Result};
use crate::sequences::PointSequence;

/// Default truncation radius for area integrals.
pub const DEFAULT_TRUNCATION_RADIUS: f64 = 1.0 - 1e-4;

/// Relative disagreement between successive quadrature refinements beyond
/// which an area constant is reported unstable instead of silently accepted.
pub const REFINEMENT_THRESHOLD: f64 = 0.01;

const GL16_NODES: [f64; 8] = [
    0.095_012_509_837_637_44,
    0.281_603_550_779_258_9,
    0.458_016_777_657_227_4,
    0.617_876_244_402_643_7,
    0.755_404_408_355_003_0,
    0.865_631_202_387_831_7,
    0.944_575_023_073_232_6,
    0.989_400_934_991_649_9,
];
const GL16_WEIGHTS: [f64; 8] = [
    0.189_450_610_455_068_5,
    0.182_603_415_044_923_6,
    0.169_156_519_395_002_54,
    0.149_595_988_816_576_73,
    0.124_628_971_255_533_87,
    0.095_158_511_682_492_79,
    0.062_253_523_938_647_89,
    0.027_152_459_411_754_095,
];

/// Point measure `sum (1 - |z_n|)^p delta_{z_n}` with `p` in `(0, 1]`.
#[derive(Debug, Clone)]
pub struct PointMeasure {
    pub sequence: PointSequence,
    pub p: f64,
}

impl PointMeasure {
    pub fn new(sequence: PointSequence, p: f64) -> Result<Self> {
        check_p(p)?;
        Ok(Self { sequence, p })
    }
}

/// Area measure `|A|^2 (1 - |z|^2)^{2+p} dm` truncated at a radius below 1,
/// integrated by a Gauss-Legendre (radial, boundary-clustered cells) times
/// trapezoid (angular) product rule.
#[derive(Debug, Clone)]
pub struct AreaMeasureSpec {
    pub coefficient: AnalyticFunction,
    pub p: f64,
    pub truncation_radius: f64,
    pub quadrature: PolarQuadSpec,
}

impl AreaMeasureSpec {
    pub fn new(coefficient: AnalyticFunction, p: f64, truncation_radius: f64) -> Result<Self> {
        check_p(p)?;
        if !(truncation_radius > 0.0 && truncation_radius < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "truncation radius must lie in (0, 1), got {truncation_radius}"
            )));
        }
        Ok(Self {
            coefficient,
            p,
            truncation_radius,
            quadrature: PolarQuadSpec::default(),
        })
    }

    pub fn with_quadrature(mut self, quadrature: PolarQuadSpec) -> Self {
        self.quadrature = quadrature;
        self
    }
}

/// Polar product quadrature: 16-point Gauss-Legendre on radial cells whose
/// widths shrink geometrically toward the boundary, trapezoid in the angle.
#[derive(Debug, Clone, Copy)]
pub struct PolarQuadSpec {
    /// Extra radial cell subdivisions on top of the geometric cells.
    pub radial_refinement: usize,
    pub angular_nodes: usize,
}

impl Default for PolarQuadSpec {
    fn default() -> Self {
        Self {
            radial_refinement: 1,
            angular_nodes: 192,
        }
    }
}

impl PolarQuadSpec {
    fn doubled(self) -> Self {
        Self {
            radial_refinement: self.radial_refinement * 2,
            angular_nodes: self.angular_nodes * 2,
        }
    }

    /// Radial cell boundaries on `[lo, hi]`, halving the remaining gap to 1
    /// at each step so the boundary-weighted integrand is resolved.
    fn radial_cells(&self, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        let mut breaks = vec![hi];
        let mut r = hi;
        while 1.0 - r < 0.5 && r > lo {
            r = 1.0 - 2.0 * (1.0 - r);
            if r > lo {
                breaks.push(r);
            }
        }
        breaks.push(lo);
        breaks.reverse();
        let mut cells = Vec::new();
        for pair in breaks.windows(2) {
            let width = (pair[1] - pair[0]) / self.radial_refinement as f64;
            for i in 0..self.radial_refinement {
                let a = pair[0] + width * i as f64;
                cells.push((a, a + width));
            }
        }
        cells
    }
}

/// Subarc of the boundary circle: center angle in radians, length normalized
/// so the full circle has length 1.
#[derive(Debug, Clone, Copy)]
pub struct CarlesonBox {
    pub arc_center: f64,
    pub arc_length: f64,
}

impl CarlesonBox {
    pub fn new(arc_center: f64, arc_length: f64) -> Result<Self> {
        if !(arc_length > 0.0 && arc_length <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "normalized arc length must lie in (0, 1], got {arc_length}"
            )));
        }
        Ok(Self {
            arc_center,
            arc_length,
        })
    }

    /// Whether `z` lies in the box `Q(I) = {r e^{i theta} : 1 - |I| <= r < 1,
    /// e^{i theta} in I}`.
    pub fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        if r < 1.0 - self.arc_length {
            return false;
        }
        let mut diff = (z.arg() - self.arc_center) % (2.0 * std::f64::consts::PI);
        if diff > std::f64::consts::PI {
            diff -= 2.0 * std::f64::consts::PI;
        }
        if diff < -std::f64::consts::PI {
            diff += 2.0 * std::f64::consts::PI;
        }
        diff.abs() <= std::f64::consts::PI * self.arc_length
    }
}

/// A Carleson constant together with the center (or box) that attained it.
#[derive(Debug, Clone, Copy)]
pub struct CarlesonReport {
    pub constant: f64,
    pub maximizer: Complex64,
    /// Relative change under quadrature refinement (0 for exact point sums).
    pub refinement_delta: f64,
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Carleson exponent p must lie in (0, 1], got {p}"
        )));
    }
    Ok(())
}

/// Möbius kernel `((1 - |a|^2) / |1 - conj(a) z|^2)^p`.
fn kernel(a: Complex64, z: Complex64, p: f64) -> f64 {
    let denom = (Complex64::new(1.0, 0.0) - a.conj() * z).norm_sqr();
    ((1.0 - a.norm_sqr()) / denom).powf(p)
}

/// Invariant constant of a point measure: maximum over the centers of
/// `sum_n kernel(a, z_n)^p (1 - |z_n|)^p`, an exact sum per center.
pub fn invariant_constant_point(measure: &PointMeasure, centers: &[DiscPoint]) -> CarlesonReport {
    let mut best = 0.0;
    let mut maximizer = Complex64::new(0.0, 0.0);
    for &a in centers {
        let total: f64 = measure
            .sequence
            .points()
            .iter()
            .map(|&z| {
                kernel(a.value(), z.value(), measure.p) * (1.0 - z.modulus()).powf(measure.p)
            })
            .sum();
        if total > best {
            best = total;
            maximizer = a.value();
        }
    }
    CarlesonReport {
        constant: best,
        maximizer,
        refinement_delta: 0.0,
    }
}

/// Default center set for invariant suprema: the measure's own atoms plus a
/// boundary-clustered polar grid. Kernels peak near the mass.
pub fn default_centers(seq: &PointSequence, grid: &DiscGrid) -> Vec<DiscPoint> {
    let mut centers = vec![DiscPoint::origin()];
    centers.extend_from_slice(seq.points());
    centers.extend_from_slice(grid.points());
    centers
}

/// Quadrature nodes with the measure part `|A(z)|^2 (1-|z|^2)^{2+p} dm`
/// pre-evaluated; only the Möbius kernel varies across centers.
fn measure_node_cache(
    spec: &AreaMeasureSpec,
    quad: &PolarQuadSpec,
    radial_lo: f64,
    angle: Option<(f64, f64)>,
) -> Vec<(Complex64, f64)> {
    let (theta_lo, theta_span) = match angle {
        Some((lo, span)) => (lo, span),
        None => (0.0, 2.0 * std::f64::consts::PI),
    };
    let full_circle = angle.is_none();
    let n_theta = quad.angular_nodes;
    let mut thetas = Vec::with_capacity(n_theta + 1);
    let mut weights = Vec::with_capacity(n_theta + 1);
    if full_circle {
        // periodic trapezoid: uniform nodes, uniform weights
        for k in 0..n_theta {
            thetas.push(theta_lo + theta_span * (k as f64) / (n_theta as f64));
            weights.push(theta_span / n_theta as f64);
        }
    } else {
        for k in 0..=n_theta {
            thetas.push(theta_lo + theta_span * (k as f64) / (n_theta as f64));
            let w = if k == 0 || k == n_theta { 0.5 } else { 1.0 };
            weights.push(w * theta_span / n_theta as f64);
        }
    }

    let mut cache = Vec::new();
    for (lo, hi) in quad.radial_cells(radial_lo, spec.truncation_radius) {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for i in 0..16 {
            let (node, w_r) = if i < 8 {
                (-GL16_NODES[7 - i], GL16_WEIGHTS[7 - i])
            } else {
                (GL16_NODES[i - 8], GL16_WEIGHTS[i - 8])
            };
            let r = mid + half * node;
            let radial_weight = w_r * half * r * (1.0 - r * r).powf(2.0 + spec.p);
            for (theta, w_t) in thetas.iter().zip(weights.iter()) {
                let z = Complex64::from_polar(r, *theta);
                let av = spec.coefficient.eval_raw(z).norm_sqr();
                let mass = radial_weight * w_t * av;
                if mass != 0.0 {
                    cache.push((z, mass));
                }
            }
        }
    }
    cache
}

fn integral_from_cache(cache: &[(Complex64, f64)], a: Complex64, p: f64) -> f64 {
    cache.iter().map(|&(z, mass)| mass * kernel(a, z, p)).sum()
}

/// Invariant constant of an area measure: maximum over the centers of the
/// truncated kernel integral. A refinement pass (doubled radial and angular
/// resolution) certifies stability; disagreement above 1% is an error.
pub fn invariant_constant_area(
    spec: &AreaMeasureSpec,
    centers: &[DiscPoint],
) -> Result<CarlesonReport> {
    if centers.is_empty() {
        return Err(Error::InvalidParameter("center set must be nonempty".into()));
    }
    let cache = measure_node_cache(spec, &spec.quadrature, 0.0, None);
    let mut best = 0.0;
    let mut maximizer = Complex64::new(0.0, 0.0);
    for &a in centers {
        let value = integral_from_cache(&cache, a.value(), spec.p);
        if value > best {
            best = value;
            maximizer = a.value();
        }
    }
    let fine_cache = measure_node_cache(spec, &spec.quadrature.doubled(), 0.0, None);
    let refined = integral_from_cache(&fine_cache, maximizer, spec.p);
    let delta = if best == 0.0 && refined == 0.0 {
        0.0
    } else {
        (best - refined).abs() / best.abs().max(refined.abs())
    };
    if delta > REFINEMENT_THRESHOLD {
        return Err(Error::QuadratureUnstable {
            coarse: best,
            fine: refined,
            threshold: REFINEMENT_THRESHOLD * 100.0,
        });
    }
    Ok(CarlesonReport {
        constant: best,
        maximizer,
        refinement_delta: delta,
    })
}

/// Box constant of a point measure: maximum over the boxes of
/// `mu(Q(I)) / |I|^p` with masses summed exactly.
pub fn box_constant_point(measure: &PointMeasure, boxes: &[CarlesonBox]) -> Result<f64> {
    if boxes.is_empty() {
        return Err(Error::InvalidParameter("box list must be nonempty".into()));
    }
    let mut best: f64 = 0.0;
    for b in boxes {
        let mass: f64 = measure
            .sequence
            .points()
            .iter()
            .filter(|z| b.contains(z.value()))
            .map(|z| (1.0 - z.modulus()).powf(measure.p))
            .sum();
        best = best.max(mass / b.arc_length.powf(measure.p));
    }
    Ok(best)
}

/// Box constant of an area measure, with the mass of each box computed by
/// the same polar product quadrature restricted to the box.
pub fn box_constant_area(spec: &AreaMeasureSpec, boxes: &[CarlesonBox]) -> Result<f64> {
    if boxes.is_empty() {
        return Err(Error::InvalidParameter("box list must be nonempty".into()));
    }
    let mut best: f64 = 0.0;
    for b in boxes {
        let theta_span = 2.0 * std::f64::consts::PI * b.arc_length;
        let theta_lo = b.arc_center - 0.5 * theta_span;
        let radial_lo = (1.0 - b.arc_length).max(0.0);
        if radial_lo >= spec.truncation_radius {
            continue;
        }
        let cache = measure_node_cache(spec, &spec.quadrature, radial_lo, Some((theta_lo, theta_span)));
        let mass: f64 = cache.iter().map(|&(_, m)| m).sum();
        best = best.max(mass / b.arc_length.powf(spec.p));
    }
    Ok(best)
}

/// Dyadic box family covering all centers at lengths `2^{-1}, ..., 2^{-levels}`.
pub fn dyadic_boxes(levels: u32) -> Vec<CarlesonBox> {
    let mut boxes = vec![CarlesonBox::new(0.0, 1.0).expect("unit arc")];
    for level in 1..=levels {
        let len = 0.5_f64.powi(level as i32);
        let count = 1 << level;
        for i in 0..count {
            let center = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) * len;
            boxes.push(CarlesonBox::new(center, len).expect("dyadic arc"));
        }
    }
    boxes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::make_grid;

    fn seq(xs: &[f64]) -> PointSequence {
        PointSequence::from_reals(xs).unwrap()
    }

    #[test]
    fn point_constant_empty_sequence() {
        let m = PointMeasure::new(PointSequence::empty(), 1.0).unwrap();
        let report = invariant_constant_point(&m, &[DiscPoint::origin()]);
        assert_eq!(report.constant, 0.0);
    }

    #[test]
    fn point_constant_single_atom() {
        // {0.5}, p = 1: kernel maximized at a = z_0, value (4/3) * (1/2) = 2/3.
        let m = PointMeasure::new(seq(&[0.5]), 1.0).unwrap();
        let grid = make_grid(0.999, 16, 64).unwrap();
        let centers = default_centers(&m.sequence, &grid);
        let report = invariant_constant_point(&m, &centers);
        assert!((report.constant - 2.0 / 3.0).abs() < 1e-6, "{}", report.constant);
        assert!((report.maximizer - Complex64::new(0.5, 0.0)).norm() < 1e-12);

        // p = 1/2: same maximizer, square root of the p = 1 value.
        let m = PointMeasure::new(seq(&[0.5]), 0.5).unwrap();
        let report = invariant_constant_point(&m, &centers);
        assert!((report.constant - (2.0_f64 / 3.0).sqrt()).abs() < 1e-6);
    }

    #[test]
    fn point_constant_stability_for_dyadic_sequence() {
        let m = PointMeasure::new(PointSequence::dyadic(10), 1.0).unwrap();
        let coarse_grid = make_grid(0.9999, 16, 32).unwrap();
        let fine_grid = make_grid(0.9999, 32, 64).unwrap();
        let coarse = invariant_constant_point(&m, &default_centers(&m.sequence, &coarse_grid));
        let fine = invariant_constant_point(&m, &default_centers(&m.sequence, &fine_grid));
        assert!(coarse.constant.is_finite());
        let change = (coarse.constant - fine.constant).abs() / coarse.constant;
        assert!(change < 0.05, "constant unstable under grid doubling: {change}");
    }

    #[test]
    fn area_constant_of_unit_coefficient() {
        // A = 1, p = 1, a = 0: 2 pi ∫ (1-r^2)^3 r dr = pi/4.
        let spec = AreaMeasureSpec::new(
            AnalyticFunction::constant(Complex64::new(1.0, 0.0)),
            1.0,
            0.9999,
        )
        .unwrap();
        let report = invariant_constant_area(&spec, &[DiscPoint::origin()]).unwrap();
        let expected = std::f64::consts::FRAC_PI_4;
        assert!(
            (report.constant - expected).abs() / expected < 0.005,
            "{} vs {}",
            report.constant,
            expected
        );

        // full center search keeps the maximizer at the origin
        let grid = make_grid(0.99, 6, 16).unwrap();
        let centers = default_centers(&PointSequence::empty(), &grid);
        let report = invariant_constant_area(&spec, &centers).unwrap();
        assert!((report.constant - expected).abs() / expected < 0.005);
        assert!(report.maximizer.norm() < 1e-12);
    }

    #[test]
    fn area_constant_zero_coefficient() {
        let spec = AreaMeasureSpec::new(
            AnalyticFunction::constant(Complex64::new(0.0, 0.0)),
            1.0,
            0.999,
        )
        .unwrap();
        let report = invariant_constant_area(&spec, &[DiscPoint::origin()]).unwrap();
        assert_eq!(report.constant, 0.0);
    }

    #[test]
    fn area_constant_scales_quadratically() {
        let base = AreaMeasureSpec::new(
            AnalyticFunction::constant(Complex64::new(1.0, 0.0)),
            0.5,
            0.999,
        )
        .unwrap();
        let scaled = AreaMeasureSpec::new(
            AnalyticFunction::constant(Complex64::new(3.0, 0.0)),
            0.5,
            0.999,
        )
        .unwrap();
        let centers = [DiscPoint::origin(), DiscPoint::from_parts(0.3, 0.1).unwrap()];
        let a = invariant_constant_area(&base, &centers).unwrap().constant;
        let b = invariant_constant_area(&scaled, &centers).unwrap().constant;
        assert!((b - 9.0 * a).abs() < 1e-12 * b.max(1.0));
    }

    #[test]
    fn area_constant_monotone_in_truncation() {
        let make = |radius| {
            AreaMeasureSpec::new(
                AnalyticFunction::constant(Complex64::new(1.0, 0.0)),
                1.0,
                radius,
            )
            .unwrap()
        };
        let centers = [DiscPoint::origin()];
        let small = invariant_constant_area(&make(0.9), &centers).unwrap().constant;
        let large = invariant_constant_area(&make(0.99), &centers).unwrap().constant;
        assert!(large >= small);
    }

    #[test]
    fn box_constant_point_examples() {
        let boxes = [CarlesonBox::new(0.0, 0.5).unwrap()];
        let empty = PointMeasure::new(PointSequence::empty(), 1.0).unwrap();
        assert_eq!(box_constant_point(&empty, &boxes).unwrap(), 0.0);

        // z = 0.5 sits in Q(I) for |I| = 0.5; the ratio is exactly 1 for any p.
        for &p in &[0.25, 0.5, 1.0] {
            let m = PointMeasure::new(seq(&[0.5]), p).unwrap();
            let c = box_constant_point(&m, &boxes).unwrap();
            assert!((c - 1.0).abs() < 1e-12, "p = {p}: {c}");
        }

        // |I| = 0.25: the box floor 0.75 misses the point.
        let small = [CarlesonBox::new(0.0, 0.25).unwrap()];
        let m = PointMeasure::new(seq(&[0.5]), 1.0).unwrap();
        assert_eq!(box_constant_point(&m, &small).unwrap(), 0.0);
    }

    #[test]
    fn box_and_invariant_constants_are_comparable() {
        // Qualitative two-sided comparability on a test family: the
        // invariant form dominates a fixed multiple of the box form.
        let boxes = dyadic_boxes(6);
        let grid = make_grid(0.9999, 16, 32).unwrap();
        for xs in [vec![0.5], vec![0.0, 0.5, 0.75, 0.875], PointSequence::dyadic(8)
            .points()
            .iter()
            .map(|p| p.re())
            .collect::<Vec<_>>()]
        {
            let m = PointMeasure::new(seq(&xs), 1.0).unwrap();
            let box_c = box_constant_point(&m, &boxes).unwrap();
            let inv_c =
                invariant_constant_point(&m, &default_centers(&m.sequence, &grid)).constant;
            assert!(box_c > 0.0);
            assert!(inv_c >= 0.2 * box_c, "inv {inv_c} vs box {box_c}");
        }
    }

    #[test]
    fn box_membership_geometry() {
        let b = CarlesonBox::new(0.0, 0.5).unwrap();
        assert!(b.contains(Complex64::new(0.5, 0.0)));
        assert!(b.contains(Complex64::from_polar(0.9, 1.5)));
        assert!(!b.contains(Complex64::from_polar(0.9, 2.0)));
        assert!(!b.contains(Complex64::new(0.4, 0.0)));

        // wrap-around arc
        let b = CarlesonBox::new(std::f64::consts::PI, 0.25).unwrap();
        assert!(b.contains(Complex64::from_polar(0.9, std::f64::consts::PI + 0.7)));
        assert!(b.contains(Complex64::from_polar(0.9, -std::f64::consts::PI + 0.3)));
    }

    #[test]
    fn area_box_constant_of_unit_coefficient() {
        // mass of Q(I) for A = 1, p = 1: ∫_{1-l}^{1} (1-r^2)^3 r dr * (2 pi l).
        let spec = AreaMeasureSpec::new(
            AnalyticFunction::constant(Complex64::new(1.0, 0.0)),
            1.0,
            0.99999,
        )
        .unwrap();
        let l = 0.25_f64;
        let boxes = [CarlesonBox::new(1.0, l).unwrap()];
        let got = box_constant_area(&spec, &boxes).unwrap();
        let radial = |r: f64| -(1.0 - r * r).powi(4) / 8.0;
        let mass = (radial(0.99999) - radial(1.0 - l)) * 2.0 * std::f64::consts::PI * l;
        let expected = mass / l;
        assert!((got - expected).abs() / expected < 0.01, "{got} vs {expected}");
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(PointMeasure::new(PointSequence::empty(), 0.0).is_err());
        assert!(PointMeasure::new(PointSequence::empty(), 1.5).is_err());
        assert!(CarlesonBox::new(0.0, 0.0).is_err());
        assert!(CarlesonBox::new(0.0, 1.2).is_err());
        let one = AnalyticFunction::constant(Complex64::new(1.0, 0.0));
        assert!(AreaMeasureSpec::new(one, 1.0, 1.0).is_err());
    }
}
