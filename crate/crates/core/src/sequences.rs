//! Zero sequences and their geometric statistics.
//!
//! A [`PointSequence`] is a finite truncation of a prospective zero sequence.
//! This module computes the quantities that classify such sequences:
//! separation and uniform separation constants, the Blaschke sum
//! `sum (1 - |z_n|)`, integrated counting functions and the upper/lower
//! uniform density proxies, Cayley images of the multiplicative-additive
//! lattice `a^j (b k + i)`, and the boundary log-distance integral.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::RangeInclusive;
use std::path::Path;

use crate::disc::{cayley, pseudo_distance, DiscGrid, DiscPoint};
use crate::error::{Error, Result};

/// Default boundary cutoff for lattice truncations: points with
/// `|z| >= 1 - LATTICE_CUTOFF` are dropped.
pub const LATTICE_CUTOFF: f64 = 1e-6;

/// Finite ordered list of pairwise-distinct interior points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence", into = "RawSequence")]
pub struct PointSequence {
    points: Vec<DiscPoint>,
}

/// Serialized shape: `{ "points": [ { "re": ..., "im": ... }, ... ] }`.
#[derive(Serialize, Deserialize)]
struct RawSequence {
    points: Vec<DiscPoint>,
}

impl TryFrom<RawSequence> for PointSequence {
    type Error = Error;
    fn try_from(raw: RawSequence) -> Result<Self> {
        PointSequence::new(raw.points)
    }
}

impl From<PointSequence> for RawSequence {
    fn from(seq: PointSequence) -> Self {
        RawSequence { points: seq.points }
    }
}

impl PointSequence {
    /// Validates pairwise distinctness (exact inequality of values).
    pub fn new(points: Vec<DiscPoint>) -> Result<Self> {
        // sort an index copy so the check is O(n log n); duplicates are
        // adjacent after ordering by (re, im)
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| {
            points[i]
                .re()
                .total_cmp(&points[j].re())
                .then(points[i].im().total_cmp(&points[j].im()))
        });
        for pair in order.windows(2) {
            if points[pair[0]].value() == points[pair[1]].value() {
                return Err(Error::DuplicatePoint {
                    index: pair[0].max(pair[1]),
                });
            }
        }
        Ok(Self { points })
    }

    pub fn empty() -> Self {
        Self { points: Vec::new() }
    }

    /// Builds a sequence from real abscissas.
    pub fn from_reals(xs: &[f64]) -> Result<Self> {
        let points = xs
            .iter()
            .map(|&x| DiscPoint::from_parts(x, 0.0))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    /// The dyadic test sequence `{1 - 2^{-n}}_{n = 1..=count}`.
    pub fn dyadic(count: u32) -> Self {
        let xs: Vec<f64> = (1..=count).map(|n| 1.0 - 0.5_f64.powi(n as i32)).collect();
        Self::from_reals(&xs).expect("dyadic points are interior and distinct")
    }

    pub fn points(&self) -> &[DiscPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Pseudo-hyperbolic distance from `z` to the nearest sequence point,
    /// together with that point's index. `None` for the empty sequence.
    pub fn nearest(&self, z: DiscPoint) -> Option<(usize, f64)> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, &w)| (i, pseudo_distance(z, w)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Applies `phi_a` to every point.
    pub fn map_automorphism(&self, a: DiscPoint) -> PointSequence {
        let points = self
            .points
            .iter()
            .map(|&z| crate::disc::automorphism(a, z))
            .collect();
        PointSequence::new(points).expect("automorphism preserves distinctness")
    }

    /// Reads the JSON sequence file format, validating interiority and
    /// distinctness.
    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Writes the JSON sequence file format; output is byte-stable for a
    /// given sequence.
    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}

/// Parameters of the lattice `{a^j (b k + i)}` in the upper half-plane.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeParams {
    pub a: f64,
    pub b: f64,
    pub j_range: RangeInclusive<i32>,
    pub k_range: RangeInclusive<i32>,
}

impl LatticeParams {
    pub fn new(a: f64, b: f64, j_range: RangeInclusive<i32>, k_range: RangeInclusive<i32>) -> Result<Self> {
        if !(a > 1.0) {
            return Err(Error::InvalidParameter(format!("lattice needs a > 1, got {a}")));
        }
        if !(b > 0.0) {
            return Err(Error::InvalidParameter(format!("lattice needs b > 0, got {b}")));
        }
        if j_range.is_empty() || k_range.is_empty() {
            return Err(Error::InvalidParameter("lattice index ranges must be nonempty".into()));
        }
        Ok(Self { a, b, j_range, k_range })
    }

    /// Common density `D^- = D^+ = 2 pi / (b log a)` of the full lattice.
    pub fn density(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.b * self.a.ln())
    }
}

/// Minimum pairwise pseudo-hyperbolic distance.
pub fn separation_constant(seq: &PointSequence) -> Result<f64> {
    let pts = seq.points();
    if pts.len() < 2 {
        return Err(Error::DegenerateInput(
            "separation constant needs at least two points".into(),
        ));
    }
    let mut min = 1.0_f64;
    for i in 0..pts.len() {
        for j in 0..i {
            min = min.min(pseudo_distance(pts[i], pts[j]));
        }
    }
    Ok(min)
}

/// `min_k prod_{n != k} rho(z_n, z_k)`, evaluated through a log-sum so that
/// long products do not underflow.
pub fn uniform_separation_constant(seq: &PointSequence) -> Result<f64> {
    let pts = seq.points();
    if pts.len() < 2 {
        return Err(Error::DegenerateInput(
            "uniform separation constant needs at least two points".into(),
        ));
    }
    let mut min_log = f64::INFINITY;
    for k in 0..pts.len() {
        let mut log_sum = 0.0;
        for n in 0..pts.len() {
            if n != k {
                log_sum += pseudo_distance(pts[n], pts[k]).ln();
            }
        }
        min_log = min_log.min(log_sum);
    }
    Ok(min_log.exp())
}

/// `sum (1 - |z_n|)` over the truncation.
pub fn blaschke_sum(seq: &PointSequence) -> f64 {
    seq.points().iter().map(|z| 1.0 - z.modulus()).sum()
}

/// `∫_0^r n(Lambda, zeta, s) ds`, evaluated in closed form as
/// `sum_{rho(z_n, zeta) < r} (r - rho(z_n, zeta))`; the counting function is
/// a step function, so the closed form is exact and leaves no quadrature
/// error in the density proxies.
pub fn counting_integral(seq: &PointSequence, zeta: DiscPoint, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "counting integral radius must lie in (0, 1), got {r}"
        )));
    }
    Ok(seq
        .points()
        .iter()
        .map(|&z| {
            let d = pseudo_distance(z, zeta);
            if d < r {
                r - d
            } else {
                0.0
            }
        })
        .sum())
}

/// A density proxy together with the truncation data that produced it.
///
/// The paper's densities involve a limit in `r` and an extremum over all of
/// the disc; only this bracketed finite form is computable, so the report
/// keeps `r_max` and the number of centers explicit.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub value: f64,
    pub r_max: f64,
    pub centers_used: usize,
}

fn density_extremum(
    seq: &PointSequence,
    r_max: f64,
    centers: &DiscGrid,
    upper: bool,
) -> Result<DensityEstimate> {
    if !(r_max > 0.0 && r_max < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "r_max must lie in (0, 1), got {r_max}"
        )));
    }
    let normalizer = (1.0 / (1.0 - r_max)).ln();
    let mut extremum = if upper { f64::NEG_INFINITY } else { f64::INFINITY };
    for &zeta in centers.points() {
        let value = counting_integral(seq, zeta, r_max)? / normalizer;
        extremum = if upper {
            extremum.max(value)
        } else {
            extremum.min(value)
        };
    }
    Ok(DensityEstimate {
        value: extremum,
        r_max,
        centers_used: centers.len(),
    })
}

/// Finite-truncation proxy for the upper uniform density `D^+`: maximum over
/// the center grid of the normalized integrated counting function.
pub fn density_upper(seq: &PointSequence, r_max: f64, centers: &DiscGrid) -> Result<DensityEstimate> {
    density_extremum(seq, r_max, centers, true)
}

/// Proxy for the lower uniform density `D^-` (minimum over centers).
pub fn density_lower(seq: &PointSequence, r_max: f64, centers: &DiscGrid) -> Result<DensityEstimate> {
    density_extremum(seq, r_max, centers, false)
}

/// Default center grid for density proxies: the sequence itself plus the
/// origin. The suprema live near points of high local concentration.
pub fn default_density_centers(seq: &PointSequence) -> DiscGrid {
    let mut points = vec![DiscPoint::origin()];
    points.extend_from_slice(seq.points());
    DiscGrid::from_points(points, crate::disc::GridScheme::PseudoUniform)
        .expect("center list is nonempty")
}

/// Cayley image of `{a^j (b k + i)}` over the given index ranges, with the
/// default boundary cutoff.
pub fn seip_lattice(params: &LatticeParams) -> PointSequence {
    seip_lattice_with_cutoff(params, LATTICE_CUTOFF)
}

/// Cayley image of the lattice keeping only points with
/// `|z| < 1 - eps_trunc`; collisions are deduplicated.
pub fn seip_lattice_with_cutoff(params: &LatticeParams, eps_trunc: f64) -> PointSequence {
    let mut points: Vec<DiscPoint> = Vec::new();
    for j in params.j_range.clone() {
        let scale = params.a.powi(j);
        if !scale.is_finite() || scale == 0.0 {
            continue;
        }
        for k in params.k_range.clone() {
            let zeta = Complex64::new(scale * params.b * (k as f64), scale);
            let Ok(w) = cayley(zeta) else { continue };
            if w.modulus() < 1.0 - eps_trunc {
                points.push(w);
            }
        }
    }
    // Lattice images can collide only through floating-point coincidence;
    // dedup by exact value to honor the distinctness invariant.
    points.sort_by(|p, q| p.re().total_cmp(&q.re()).then(p.im().total_cmp(&q.im())));
    points.dedup_by(|p, q| p.value() == q.value());
    PointSequence::new(points).expect("deduplicated lattice points are distinct")
}

/// Trapezoidal estimate of `∫_0^{2pi} log dist(e^{i theta}, Lambda) d theta`
/// with `dist` the Euclidean distance to the nearest sequence point.
pub fn boundary_log_distance(seq: &PointSequence, quad_nodes: usize) -> Result<f64> {
    if seq.is_empty() {
        return Err(Error::DegenerateInput(
            "boundary log-distance needs a nonempty sequence".into(),
        ));
    }
    if quad_nodes < 16 {
        return Err(Error::InvalidParameter(format!(
            "boundary log-distance needs at least 16 nodes, got {quad_nodes}"
        )));
    }
    let mut sum = 0.0;
    for k in 0..quad_nodes {
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (quad_nodes as f64);
        let boundary = Complex64::from_polar(1.0, theta);
        let dist = seq
            .points()
            .iter()
            .map(|z| (boundary - z.value()).norm())
            .fold(f64::INFINITY, f64::min);
        sum += dist.ln();
    }
    Ok(sum * 2.0 * std::f64::consts::PI / (quad_nodes as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disc::{automorphism, make_grid, GridScheme};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn seq(xs: &[f64]) -> PointSequence {
        PointSequence::from_reals(xs).unwrap()
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

    fn random_sequence(rng: &mut impl Rng, len: usize) -> PointSequence {
        loop {
            let pts: Vec<DiscPoint> = (0..len).map(|_| random_point(rng, 0.9)).collect();
            if let Ok(s) = PointSequence::new(pts) {
                return s;
            }
        }
    }

    #[test]
    fn distinctness_is_enforced() {
        let p = DiscPoint::from_parts(0.3, 0.1).unwrap();
        assert!(matches!(
            PointSequence::new(vec![p, p]),
            Err(Error::DuplicatePoint { index: 1 })
        ));
    }

    #[test]
    fn separation_examples() {
        assert_eq!(separation_constant(&seq(&[0.0, 0.5])).unwrap(), 0.5);
        // pairs (0, ±0.5) give 0.5; the cross pair gives 0.8
        let s = separation_constant(&seq(&[0.0, 0.5, -0.5])).unwrap();
        assert!((s - 0.5).abs() < 1e-15);
        assert!(separation_constant(&seq(&[0.1])).is_err());
        // dyadic sequences are separated by at least 1/3
        let s = separation_constant(&PointSequence::dyadic(8)).unwrap();
        assert!(s >= 1.0 / 3.0, "dyadic separation {s}");
    }

    #[test]
    fn uniform_separation_examples() {
        assert_eq!(uniform_separation_constant(&seq(&[0.0, 0.5])).unwrap(), 0.5);

        // For {0, 0.5, -0.5} the minimizing center is the origin:
        // rho(0.5, 0) * rho(-0.5, 0) = 0.25, smaller than the products at
        // ±0.5 (0.5 * 0.8 = 0.4). Brute-force product scan confirms.
        let s = seq(&[0.0, 0.5, -0.5]);
        let brute = {
            let pts = s.points();
            (0..pts.len())
                .map(|k| {
                    (0..pts.len())
                        .filter(|&n| n != k)
                        .map(|n| pseudo_distance(pts[n], pts[k]))
                        .product::<f64>()
                })
                .fold(f64::INFINITY, f64::min)
        };
        let fast = uniform_separation_constant(&s).unwrap();
        assert!((fast - brute).abs() < 1e-15);
        assert!((fast - 0.25).abs() < 1e-15);
    }

    #[test]
    fn two_point_uniform_separation_equals_separation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let s = random_sequence(&mut rng, 2);
            let a = separation_constant(&s).unwrap();
            let b = uniform_separation_constant(&s).unwrap();
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn uniform_separation_below_separation() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let s = random_sequence(&mut rng, 6);
            let sep = separation_constant(&s).unwrap();
            let usc = uniform_separation_constant(&s).unwrap();
            assert!(usc <= sep + 1e-15, "usc {usc} > sep {sep}");
        }
    }

    #[test]
    fn separation_is_conformally_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..30 {
            let s = random_sequence(&mut rng, 5);
            let a = random_point(&mut rng, 0.8);
            let mapped = s.map_automorphism(a);
            let d0 = separation_constant(&s).unwrap();
            let d1 = separation_constant(&mapped).unwrap();
            assert!((d0 - d1).abs() < 1e-12);
        }
    }

    #[test]
    fn blaschke_sum_examples() {
        assert_eq!(blaschke_sum(&PointSequence::empty()), 0.0);
        assert!((blaschke_sum(&seq(&[0.0, 0.5, 0.75])) - 1.75).abs() < 1e-15);
        let dyadic = PointSequence::dyadic(8);
        assert!((blaschke_sum(&dyadic) - 0.99609375).abs() < 1e-12);
    }

    #[test]
    fn counting_integral_examples() {
        let origin = DiscPoint::origin();
        assert!((counting_integral(&seq(&[0.0]), origin, 0.9).unwrap() - 0.9).abs() < 1e-15);
        assert_eq!(counting_integral(&seq(&[0.5]), origin, 0.4).unwrap(), 0.0);
        assert!((counting_integral(&seq(&[0.0, 0.5]), origin, 0.9).unwrap() - 1.3).abs() < 1e-15);
        assert!(counting_integral(&seq(&[0.0]), origin, 1.0).is_err());
    }

    #[test]
    fn counting_integral_matches_step_function_sum() {
        // Independent oracle: integrate the step function exactly by sorting
        // the jump locations and accumulating n(s) * (interval length).
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let s = random_sequence(&mut rng, 7);
            let zeta = random_point(&mut rng, 0.8);
            let r = rng.gen_range(0.2..0.95);
            let mut jumps: Vec<f64> = s
                .points()
                .iter()
                .map(|&z| pseudo_distance(z, zeta))
                .filter(|&d| d < r)
                .collect();
            jumps.sort_by(f64::total_cmp);
            let mut oracle = 0.0;
            let mut prev = 0.0;
            for (count, &d) in jumps.iter().enumerate() {
                oracle += (count as f64) * (d - prev);
                prev = d;
            }
            oracle += (jumps.len() as f64) * (r - prev);
            let closed = counting_integral(&s, zeta, r).unwrap();
            assert!((closed - oracle).abs() < 1e-10, "{closed} vs {oracle}");
        }
    }

    #[test]
    fn density_single_point() {
        let s = seq(&[0.0]);
        let centers = default_density_centers(&s);
        let r_max = 1.0 - 1e-6;
        let est = density_upper(&s, r_max, &centers).unwrap();
        let expected = r_max / (1e6_f64).ln();
        assert!((est.value - expected).abs() < 1e-12);
        assert!((est.value - 0.0724).abs() < 1e-3);
        assert_eq!(est.centers_used, 2);
    }

    #[test]
    fn density_of_empty_sequence_is_zero() {
        let grid = make_grid(0.5, 2, 4).unwrap();
        let est = density_upper(&PointSequence::empty(), 0.9, &grid).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn density_of_finite_sequence_decays() {
        let s = PointSequence::dyadic(6);
        let centers = default_density_centers(&s);
        let coarse = density_upper(&s, 1.0 - 1e-2, &centers).unwrap();
        let fine = density_upper(&s, 1.0 - 1e-8, &centers).unwrap();
        assert!(fine.value < coarse.value);
    }

    #[test]
    fn lattice_examples() {
        // j = k = 0 maps i to the origin.
        let params = LatticeParams::new(2.0, 1.0, 0..=0, 0..=1).unwrap();
        let lat = seip_lattice(&params);
        assert!(lat.points().iter().any(|p| p.modulus() < 1e-15));
        // k = 1: cayley(1 + i) = 0.2 - 0.4i
        assert!(lat
            .points()
            .iter()
            .any(|p| (p.value() - Complex64::new(0.2, -0.4)).norm() < 1e-15));

        // cardinality contract without collisions or cutoff losses
        let params = LatticeParams::new(2.0, 1.0, -1..=1, -3..=3).unwrap();
        let lat = seip_lattice(&params);
        assert_eq!(lat.len(), 3 * 7);
    }

    #[test]
    fn lattice_density_formula() {
        let params = LatticeParams::new((2.0 * std::f64::consts::PI).exp(), 2.0, 0..=0, 0..=0).unwrap();
        assert!((params.density() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn lattice_blaschke_sum_grows_per_ring() {
        // Rings j in [-J, J] of Lambda(2, 5): each widening adds a roughly
        // constant Blaschke mass (the divergence behind the non-Blaschke
        // property), so partial sums grow at least linearly.
        let mut sums = Vec::new();
        for j_max in 0..=5 {
            let params = LatticeParams::new(2.0, 5.0, -j_max..=j_max, -4000..=4000).unwrap();
            sums.push(blaschke_sum(&seip_lattice(&params)));
        }
        let increments: Vec<f64> = sums.windows(2).map(|w| w[1] - w[0]).collect();
        let c = increments.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        assert!(c > 0.05, "smallest ring increment {c}");
        for (rings, sum) in sums.iter().enumerate().skip(1) {
            assert!(*sum >= sums[0] + c * (rings as f64) - 1e-9);
        }
    }

    #[test]
    fn boundary_log_distance_examples() {
        // {0}: dist is identically 1, integral 0.
        assert_eq!(boundary_log_distance(&seq(&[0.0]), 64).unwrap(), 0.0);

        // {0.5}: mean-value property gives 0.
        let v = boundary_log_distance(&seq(&[0.5]), 256).unwrap();
        assert!(v.abs() < 1e-8, "got {v}");

        // {0.5, -0.5}: min of two distances is below each factor, so the
        // integral is strictly negative. Oracle: refined quadrature agrees.
        let two = seq(&[0.5, -0.5]);
        let v = boundary_log_distance(&two, 4096).unwrap();
        assert!(v < -1e-3);
        let refined = boundary_log_distance(&two, 8192).unwrap();
        assert!((v - refined).abs() < 1e-4);

        assert!(boundary_log_distance(&PointSequence::empty(), 64).is_err());
        assert!(boundary_log_distance(&seq(&[0.5]), 8).is_err());
    }

    #[test]
    fn sequence_file_round_trip() {
        let dir = std::env::temp_dir().join("oscdisc-seq-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("points.json");
        let s = PointSequence::new(vec![
            DiscPoint::from_parts(0.0, 0.0).unwrap(),
            DiscPoint::from_parts(0.5, -0.25).unwrap(),
        ])
        .unwrap();
        s.write_file(&path).unwrap();
        let back = PointSequence::read_file(&path).unwrap();
        assert_eq!(s, back);

        // writer is byte-stable
        let first = std::fs::read(&path).unwrap();
        s.write_file(&path).unwrap();
        assert_eq!(first, std::fs::read(&path).unwrap());

        // malformed and invalid files are rejected
        std::fs::write(&path, "{\"points\": [{\"re\": 2.0, \"im\": 0.0}]}").unwrap();
        assert!(PointSequence::read_file(&path).is_err());
        std::fs::write(&path, "not json").unwrap();
        assert!(PointSequence::read_file(&path).is_err());
    }

    #[test]
    fn automorphism_map_round_trip() {
        let s = seq(&[0.0, 0.5, -0.3]);
        let a = DiscPoint::from_parts(0.2, 0.4).unwrap();
        let back = s.map_automorphism(a).map_automorphism(a);
        for (p, q) in s.points().iter().zip(back.points()) {
            assert!((p.value() - q.value()).norm() < 1e-13);
        }
        let mapped = s.map_automorphism(a);
        assert!(mapped
            .points()
            .iter()
            .zip(s.points())
            .all(|(m, orig)| (m.value() - automorphism(a, *orig).value()).norm() < 1e-15));
    }

    #[test]
    fn grid_scheme_of_density_centers() {
        let s = seq(&[0.1, 0.2]);
        assert_eq!(default_density_centers(&s).scheme(), GridScheme::PseudoUniform);
    }
}
