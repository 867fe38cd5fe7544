//! Finite Blaschke products with stable derivatives at their own zeros.
//!
//! Each factor is `b_n(z) = (|z_n|/z_n) (z_n - z) / (1 - conj(z_n) z)` for
//! `z_n != 0` and `b_n(z) = z` for `z_n = 0`. The unimodular constant
//! `|z_n|/z_n` is a fixed convention (any choice gives the same `|B|`, zeros,
//! and norms); pinning it makes numeric examples reproducible.
//!
//! Derivatives at a zero `z_n` always come from the factorized closed form —
//! the `n`-th factor's derivative times the remaining factors — never from
//! finite differences, which would cancel catastrophically where `B`
//! vanishes.

use num_complex::Complex64;

use crate::analytic::{AnalyticFunction, Jet};
use crate::disc::{pseudo_distance, DiscGrid, DiscPoint};
use crate::error::{Error, Result};
use crate::sequences::PointSequence;

/// Above this many zeros, plain products of factor values are replaced by
/// accumulated log-magnitudes and phases; below it, direct products are
/// exact enough and faster.
const LOG_ACCUM_THRESHOLD: usize = 32;

/// Finite Blaschke product indexed by its zero sequence.
#[derive(Debug, Clone)]
pub struct BlaschkeProduct {
    zeros: PointSequence,
}

/// Derivative data of `B` at one of its own zeros.
#[derive(Debug, Clone, Copy)]
pub struct ZeroDerivative {
    /// `B'(z_n)` from the factorized closed form.
    pub derivative: Complex64,
    /// `(1 - |z_n|^2) |B'(z_n)|`, which equals `prod_{k != n} rho(z_k, z_n)`.
    pub weighted_modulus: f64,
}

/// Empirical Schwarz-lemma constant: the largest observed ratio
/// `|g(z)| (1 - |z0|^2)^alpha / (grid norm * rho(z, z0))` over grid points in
/// the pseudo-disc around `z0`.
#[derive(Debug, Clone, Copy)]
pub struct SchwarzBoundReport {
    pub max_ratio: f64,
    /// Grid points that landed inside the pseudo-disc.
    pub samples: usize,
    /// Grid estimate of the growth-space norm used in the denominator.
    pub grid_norm: f64,
}

impl BlaschkeProduct {
    pub fn new(zeros: PointSequence) -> Self {
        Self { zeros }
    }

    pub fn zeros(&self) -> &PointSequence {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Evaluates the product. Exact factor products for sequences up to 32
    /// zeros; accumulated logs and phases beyond that.
    pub fn eval(&self, z: DiscPoint) -> Complex64 {
        let z = z.value();
        if self.zeros.len() <= LOG_ACCUM_THRESHOLD {
            let mut product = Complex64::new(1.0, 0.0);
            for &zero in self.zeros.points() {
                product *= factor_value(zero.value(), z);
            }
            product
        } else {
            let mut log_mag = 0.0;
            let mut phase = 0.0;
            for &zero in self.zeros.points() {
                let value = factor_value(zero.value(), z);
                if value == Complex64::new(0.0, 0.0) {
                    return value;
                }
                log_mag += value.norm().ln();
                phase += value.arg();
            }
            Complex64::from_polar(log_mag.exp(), phase)
        }
    }

    /// `B'(z_n)` as the `n`-th factor's derivative times all other factors
    /// at `z_n`; no cancellation is possible in this form.
    pub fn derivative_at_zero(&self, n: usize) -> Result<ZeroDerivative> {
        let pts = self.zeros.points();
        let zn = pts
            .get(n)
            .ok_or_else(|| Error::InvalidParameter(format!("zero index {n} out of range")))?
            .value();
        let mut rest = Complex64::new(1.0, 0.0);
        for (k, &zk) in pts.iter().enumerate() {
            if k != n {
                rest *= factor_value(zk.value(), zn);
            }
        }
        let derivative = factor_jet(zn, zn).d1 * rest;
        let weighted = (1.0 - zn.norm_sqr()) * derivative.norm();
        Ok(ZeroDerivative {
            derivative,
            weighted_modulus: weighted,
        })
    }

    /// `B''(z_n)` via the product rule on the factorization:
    /// `(b_n'' + 2 b_n' sum_{k != n} b_k'/b_k) prod_{k != n} b_k`, all at `z_n`.
    pub fn second_derivative_at_zero(&self, n: usize) -> Result<Complex64> {
        let pts = self.zeros.points();
        let zn = pts
            .get(n)
            .ok_or_else(|| Error::InvalidParameter(format!("zero index {n} out of range")))?
            .value();
        let mut rest = Complex64::new(1.0, 0.0);
        let mut log_derivative_sum = Complex64::new(0.0, 0.0);
        for (k, &zk) in pts.iter().enumerate() {
            if k != n {
                let jet = factor_jet(zk.value(), zn);
                rest *= jet.value;
                log_derivative_sum += jet.d1 / jet.value;
            }
        }
        let own = factor_jet(zn, zn);
        Ok((own.d2 + 2.0 * own.d1 * log_derivative_sum) * rest)
    }

    /// The product as a jet-evaluable [`AnalyticFunction`] (closed-form
    /// derivatives by folding factor jets).
    pub fn as_analytic(&self) -> AnalyticFunction {
        let zeros: Vec<Complex64> = self.zeros.points().iter().map(|p| p.value()).collect();
        AnalyticFunction::from_closed_form(format!("B[{} zeros]", zeros.len()), move |z| {
            let mut jet = Jet::constant(Complex64::new(1.0, 0.0));
            for &zero in &zeros {
                jet = jet.mul(&factor_jet(zero, z));
            }
            jet
        })
    }
}

/// Value of a single Blaschke factor.
fn factor_value(zero: Complex64, z: Complex64) -> Complex64 {
    if zero == Complex64::new(0.0, 0.0) {
        return z;
    }
    let unimodular = Complex64::new(zero.norm(), 0.0) / zero;
    unimodular * (zero - z) / (Complex64::new(1.0, 0.0) - zero.conj() * z)
}

/// Jet of a single factor: derivatives of
/// `u (z_n - z) / (1 - conj(z_n) z)` with `u = |z_n|/z_n` are
/// `u (|z_n|^2 - 1) m! conj(z_n)^{m-1} / (1 - conj(z_n) z)^{m+1}`.
fn factor_jet(zero: Complex64, z: Complex64) -> Jet {
    if zero == Complex64::new(0.0, 0.0) {
        return Jet::identity(z);
    }
    let unimodular = Complex64::new(zero.norm(), 0.0) / zero;
    let zc = zero.conj();
    let d = Complex64::new(1.0, 0.0) - zc * z;
    let lead = unimodular * Complex64::new(zero.norm_sqr() - 1.0, 0.0);
    let d2 = d * d;
    Jet::new(
        unimodular * (zero - z) / d,
        lead / d2,
        2.0 * zc * lead / (d2 * d),
        6.0 * zc * zc * lead / (d2 * d2),
    )
}

/// Empirical check of the Schwarz-type bound: for `g` vanishing at `z0`,
/// scans the grid points of the pseudo-disc `Delta(z0, delta)` and returns
/// the largest value of
/// `|g(z)| (1 - |z0|^2)^alpha / (||g||_{grid, alpha} * rho(z, z0))`.
pub fn schwarz_bound_check(
    g: &AnalyticFunction,
    z0: DiscPoint,
    delta: f64,
    alpha: f64,
    grid: &DiscGrid,
) -> Result<SchwarzBoundReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let at_zero = g.eval(z0).norm();
    if at_zero >= 1e-10 {
        return Err(Error::Precondition(format!(
            "schwarz_bound_check requires |g(z0)| < 1e-10, got {at_zero:.3e}"
        )));
    }
    let grid_norm = crate::analytic::growth_norm(g, alpha, grid);
    if grid_norm == 0.0 {
        return Err(Error::Precondition(
            "schwarz_bound_check requires a nonzero grid norm".into(),
        ));
    }
    let weight = (1.0 - z0.modulus().powi(2)).powf(alpha);
    let mut max_ratio: f64 = 0.0;
    let mut samples = 0;
    for &z in grid.points() {
        let rho = pseudo_distance(z, z0);
        if rho > 0.0 && rho < delta {
            samples += 1;
            max_ratio = max_ratio.max(g.eval(z).norm() * weight / (grid_norm * rho));
        }
    }
    Ok(SchwarzBoundReport {
        max_ratio,
        samples,
        grid_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::jet;
    use crate::disc::make_grid;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn p(re: f64, im: f64) -> DiscPoint {
        DiscPoint::from_parts(re, im).unwrap()
    }

    fn product(xs: &[(f64, f64)]) -> BlaschkeProduct {
        let pts = xs
            .iter()
            .map(|&(re, im)| DiscPoint::from_parts(re, im).unwrap())
            .collect();
        BlaschkeProduct::new(PointSequence::new(pts).unwrap())
    }

    fn random_point(rng: &mut impl Rng, max_mod: f64) -> DiscPoint {
        loop {
            let re = rng.gen_range(-max_mod..max_mod);
            let im = rng.gen_range(-max_mod..max_mod);
            if (re * re + im * im).sqrt() < max_mod {
                return DiscPoint::from_parts(re, im).unwrap();
            }
        }
    }

    #[test]
    fn single_zero_at_origin_is_identity() {
        let b = product(&[(0.0, 0.0)]);
        assert_eq!(b.eval(p(0.5, 0.0)), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn two_factor_example() {
        // zeros {0, 0.5}: B(0.25) = 0.25 * (0.25 / 0.875) = 1/14
        let b = product(&[(0.0, 0.0), (0.5, 0.0)]);
        let v = b.eval(p(0.25, 0.0));
        assert!((v - Complex64::new(1.0 / 14.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn vanishes_exactly_at_zeros() {
        let b = product(&[(0.3, 0.2), (-0.1, 0.6), (0.0, -0.5)]);
        for &z in b.zeros().points() {
            assert_eq!(b.eval(z), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn modulus_below_one_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for trial in 0..20 {
            let len = 2 + (trial % 8) * 8;
            let zeros = loop {
                let pts: Vec<DiscPoint> = (0..len).map(|_| random_point(&mut rng, 0.95)).collect();
                if let Ok(s) = PointSequence::new(pts) {
                    break s;
                }
            };
            let b = BlaschkeProduct::new(zeros);
            for _ in 0..500 {
                let z = random_point(&mut rng, 0.999);
                assert!(b.eval(z).norm() < 1.0);
            }
        }
    }

    #[test]
    fn log_accumulation_matches_direct_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let pts: Vec<DiscPoint> = (0..40).map(|_| random_point(&mut rng, 0.9)).collect();
        let seq = PointSequence::new(pts.clone()).unwrap();
        let big = BlaschkeProduct::new(seq);
        for _ in 0..50 {
            let z = random_point(&mut rng, 0.9);
            let direct: Complex64 = pts
                .iter()
                .fold(Complex64::new(1.0, 0.0), |acc, zero| {
                    acc * factor_value(zero.value(), z.value())
                });
            assert!((big.eval(z) - direct).norm() < 1e-12 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn derivative_at_zero_examples() {
        let b = product(&[(0.0, 0.0)]);
        let d = b.derivative_at_zero(0).unwrap();
        assert_eq!(d.derivative, Complex64::new(1.0, 0.0));
        assert_eq!(d.weighted_modulus, 1.0);

        // zeros {0, 0.5}: (1 - 0) |B'(0)| = rho(0.5, 0) = 0.5
        let b = product(&[(0.0, 0.0), (0.5, 0.0)]);
        let d = b.derivative_at_zero(0).unwrap();
        assert!((d.weighted_modulus - 0.5).abs() < 1e-15);

        assert!(b.derivative_at_zero(2).is_err());
    }

    #[test]
    fn weighted_derivative_is_product_of_distances() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let zeros = loop {
                let pts: Vec<DiscPoint> = (0..12).map(|_| random_point(&mut rng, 0.9)).collect();
                if let Ok(s) = PointSequence::new(pts) {
                    break s;
                }
            };
            let b = BlaschkeProduct::new(zeros);
            for n in 0..b.len() {
                let d = b.derivative_at_zero(n).unwrap();
                let product: f64 = (0..b.len())
                    .filter(|&k| k != n)
                    .map(|k| pseudo_distance(b.zeros().points()[k], b.zeros().points()[n]))
                    .product();
                assert!(
                    (d.weighted_modulus - product).abs() < 1e-10,
                    "identity broke at zero {n}"
                );
            }
        }
    }

    #[test]
    fn at_zero_derivatives_match_quadrature_jets() {
        // Cross-validate the factorized closed forms against Cauchy
        // quadrature of the raw product values.
        let cases = [
            vec![(0.0, 0.0), (0.5, 0.0)],
            vec![(0.5, 0.0)],
            vec![(0.3, -0.4), (-0.2, 0.1), (0.6, 0.3)],
        ];
        for zeros in cases {
            let b = product(&zeros);
            let by_values = {
                let clone = b.clone();
                AnalyticFunction::from_values("B", move |z| {
                    clone.eval(DiscPoint::new(z).unwrap())
                })
            };
            for n in 0..b.len() {
                let zn = b.zeros().points()[n];
                let quad = jet(&by_values, zn, 3).unwrap();
                let d1 = b.derivative_at_zero(n).unwrap().derivative;
                let d2 = b.second_derivative_at_zero(n).unwrap();
                assert!((d1 - quad.d1).norm() < 1e-9 * (1.0 + quad.d1.norm()));
                assert!((d2 - quad.d2).norm() < 1e-9 * (1.0 + quad.d2.norm()));
            }
        }
    }

    #[test]
    fn second_derivative_single_zero_at_origin() {
        let b = product(&[(0.0, 0.0)]);
        assert_eq!(
            b.second_derivative_at_zero(0).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn analytic_jets_match_at_zero_closed_forms() {
        let b = product(&[(0.0, 0.0), (0.5, 0.0), (-0.3, 0.4)]);
        let f = b.as_analytic();
        for n in 0..b.len() {
            let zn = b.zeros().points()[n];
            let jet = f.jet3(zn);
            assert!(jet.value.norm() < 1e-15);
            let d1 = b.derivative_at_zero(n).unwrap().derivative;
            let d2 = b.second_derivative_at_zero(n).unwrap();
            assert!((jet.d1 - d1).norm() < 1e-12 * (1.0 + d1.norm()));
            assert!((jet.d2 - d2).norm() < 1e-12 * (1.0 + d2.norm()));
        }
    }

    #[test]
    fn uniform_separation_equals_min_weighted_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..10 {
            let zeros = loop {
                let pts: Vec<DiscPoint> = (0..9).map(|_| random_point(&mut rng, 0.85)).collect();
                if let Ok(s) = PointSequence::new(pts) {
                    break s;
                }
            };
            let usc = crate::sequences::uniform_separation_constant(&zeros).unwrap();
            let b = BlaschkeProduct::new(zeros);
            let min_weighted = (0..b.len())
                .map(|n| b.derivative_at_zero(n).unwrap().weighted_modulus)
                .fold(f64::INFINITY, f64::min);
            assert!((usc - min_weighted).abs() < 1e-10);
        }
    }

    /// Interior rings plus a near-boundary ring pinning the sup norm.
    fn scan_grid() -> crate::disc::DiscGrid {
        let mut points = Vec::new();
        for ring in 1..=9 {
            let r = 0.05 * ring as f64;
            for k in 0..16 {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / 16.0;
                points.push(DiscPoint::new(Complex64::from_polar(r, theta)).unwrap());
            }
        }
        points.push(DiscPoint::from_parts(1.0 - 1e-9, 0.0).unwrap());
        crate::disc::DiscGrid::from_points(points, crate::disc::GridScheme::PseudoUniform).unwrap()
    }

    #[test]
    fn schwarz_bound_identity_map() {
        // g(z) = z, z0 = 0, alpha = 0: the ratio is 1/grid_norm, and the grid
        // norm is within 1e-9 of 1.
        let g = AnalyticFunction::identity();
        let report = schwarz_bound_check(&g, DiscPoint::origin(), 0.5, 0.0, &scan_grid()).unwrap();
        assert!((report.max_ratio - 1.0).abs() < 1e-8, "{}", report.max_ratio);
        assert!(report.samples > 0);
    }

    #[test]
    fn schwarz_bound_square_map() {
        let g = AnalyticFunction::from_closed_form("z^2", |z| {
            Jet::new(
                z * z,
                2.0 * z,
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 0.0),
            )
        });
        let report = schwarz_bound_check(&g, DiscPoint::origin(), 0.5, 0.0, &scan_grid()).unwrap();
        assert!(report.max_ratio <= 0.5 + 1e-9, "{}", report.max_ratio);
    }

    #[test]
    fn schwarz_bound_blaschke_case() {
        let b = product(&[(0.0, 0.0), (0.5, 0.0)]);
        let report =
            schwarz_bound_check(&b.as_analytic(), DiscPoint::origin(), 0.3, 0.0, &scan_grid())
                .unwrap();
        assert!(report.max_ratio.is_finite());
        assert!(report.max_ratio > 0.0);
    }

    #[test]
    fn schwarz_bound_rejects_nonvanishing_g() {
        let grid = make_grid(0.9, 4, 8).unwrap();
        let g = AnalyticFunction::constant(Complex64::new(1.0, 0.0));
        assert!(schwarz_bound_check(&g, DiscPoint::origin(), 0.5, 0.0, &grid).is_err());
    }
}
