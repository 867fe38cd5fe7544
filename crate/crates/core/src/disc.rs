//! Pseudo-hyperbolic geometry of the unit disc.
//!
//! Points are kept strictly interior, distances are measured in the
//! Möbius-invariant pseudo-hyperbolic metric
//! `rho(z, w) = |z - w| / |1 - conj(z) w|`, and finite polar grids stand in
//! for suprema over the disc. Radii of the grids cluster geometrically
//! toward the boundary because every supremum downstream carries a weight
//! that is a power of `1 - |z|^2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strict interiority margin: constructors reject `|z| >= 1 - BOUNDARY_EPS`
/// so that every downstream formula with a `1 - conj(z) w` denominator stays
/// finite.
pub const BOUNDARY_EPS: f64 = 1e-12;

/// A point of the open unit disc.
///
/// The invariant `|z| < 1 - 1e-12` is enforced at construction; all other
/// modules rely on it instead of re-checking denominators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    /// Wraps a complex number, rejecting boundary and exterior points.
    pub fn new(value: Complex64) -> Result<Self> {
        let modulus = value.norm();
        if !modulus.is_finite() || modulus >= 1.0 - BOUNDARY_EPS {
            return Err(Error::PointOutsideDisc { modulus });
        }
        Ok(Self(value))
    }

    /// Builds a point from Cartesian parts.
    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    /// The origin.
    pub fn origin() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn modulus(&self) -> f64 {
        self.0.norm()
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }
}

impl From<DiscPoint> for Complex64 {
    fn from(p: DiscPoint) -> Self {
        p.0
    }
}

impl Serialize for DiscPoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawPoint {
            re: self.0.re,
            im: self.0.im,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiscPoint {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPoint::deserialize(deserializer)?;
        DiscPoint::from_parts(raw.re, raw.im).map_err(serde::de::Error::custom)
    }
}

/// On-disk shape of a point: `{ "re": ..., "im": ... }`.
#[derive(Serialize, Deserialize)]
struct RawPoint {
    re: f64,
    im: f64,
}

/// Open pseudo-hyperbolic disc `{ z : rho(z, center) < radius }`.
#[derive(Debug, Clone, Copy)]
pub struct PseudoDisc {
    pub center: DiscPoint,
    pub radius: f64,
}

impl PseudoDisc {
    pub fn new(center: DiscPoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "pseudo-hyperbolic radius must lie in (0, 1), got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    /// Membership test for the open disc.
    pub fn contains(&self, z: DiscPoint) -> bool {
        pseudo_distance(z, self.center) < self.radius
    }

    /// Pseudo-hyperbolic discs are Euclidean discs; returns the Euclidean
    /// center and radius.
    pub fn euclidean_center_radius(&self) -> (Complex64, f64) {
        let c = self.center.value();
        let s = self.radius;
        let denom = 1.0 - s * s * c.norm_sqr();
        let center = c * ((1.0 - s * s) / denom);
        let radius = s * (1.0 - c.norm_sqr()) / denom;
        (center, radius)
    }
}

/// How a [`DiscGrid`]'s points were generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridScheme {
    /// Polar product grid with radii clustered geometrically toward the boundary.
    Polar,
    /// Möbius image of a polar grid (uniform with respect to the
    /// pseudo-hyperbolic geometry rather than the Euclidean one).
    PseudoUniform,
}

/// A finite set of interior points used as a proxy for suprema over the disc.
#[derive(Debug, Clone)]
pub struct DiscGrid {
    points: Vec<DiscPoint>,
    max_modulus: f64,
    scheme: GridScheme,
}

impl DiscGrid {
    /// Wraps an explicit point list. The grid must be nonempty.
    pub fn from_points(points: Vec<DiscPoint>, scheme: GridScheme) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("grid must be nonempty".into()));
        }
        let max_modulus = points.iter().map(DiscPoint::modulus).fold(0.0, f64::max);
        Ok(Self {
            points,
            max_modulus,
            scheme,
        })
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

    pub fn max_modulus(&self) -> f64 {
        self.max_modulus
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    /// Applies `phi_a` to every grid point. The image is tagged
    /// [`GridScheme::PseudoUniform`]; its points sample the disc uniformly in
    /// the invariant geometry seen from `a`.
    pub fn map_automorphism(&self, a: DiscPoint) -> DiscGrid {
        let points = self.points.iter().map(|&z| automorphism(a, z)).collect();
        // Möbius maps preserve interiority, so from_points cannot fail here.
        DiscGrid::from_points(points, GridScheme::PseudoUniform).expect("nonempty image grid")
    }
}

/// Pseudo-hyperbolic distance `|z - w| / |1 - conj(z) w|`.
///
/// Both arguments are strictly interior, so the denominator is bounded away
/// from zero and needs no special-casing.
pub fn pseudo_distance(z: DiscPoint, w: DiscPoint) -> f64 {
    let (z, w) = (z.value(), w.value());
    let denom = (Complex64::new(1.0, 0.0) - z.conj() * w).norm();
    (z - w).norm() / denom
}

/// Disc automorphism `phi_a(z) = (a - z) / (1 - conj(a) z)`.
///
/// `phi_a` is an involution exchanging `a` and the origin.
pub fn automorphism(a: DiscPoint, z: DiscPoint) -> DiscPoint {
    let (a, z) = (a.value(), z.value());
    let image = (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z);
    // |phi_a(z)| < 1 whenever |z| < 1; clamp-free construction is safe up to
    // rounding, which stays far below BOUNDARY_EPS for interior inputs.
    DiscPoint::new(image).expect("automorphism image is interior")
}

/// Derivative of the automorphism: `phi_a'(z) = (|a|^2 - 1) / (1 - conj(a) z)^2`.
pub fn automorphism_derivative(a: DiscPoint, z: DiscPoint) -> Complex64 {
    let (a, z) = (a.value(), z.value());
    let denom = Complex64::new(1.0, 0.0) - a.conj() * z;
    Complex64::new(a.norm_sqr() - 1.0, 0.0) / (denom * denom)
}

/// Cayley transform `(zeta - i) / (zeta + i)` from the upper half-plane onto
/// the disc.
pub fn cayley(zeta: Complex64) -> Result<DiscPoint> {
    if !(zeta.im > 0.0) {
        return Err(Error::NotInUpperHalfPlane { imag: zeta.im });
    }
    let i = Complex64::new(0.0, 1.0);
    DiscPoint::new((zeta - i) / (zeta + i))
}

/// Deterministic polar grid with geometric refinement toward the boundary.
///
/// Radii satisfy `1 - r_j = (1 - max_modulus) * 2^j` for
/// `j = 0, ..., radial_count - 1` (clamped at the origin once the doubling
/// passes `r = 0`), and angles are the `angular_count`-th roots of unity.
/// The point count is exactly `radial_count * angular_count`.
pub fn make_grid(max_modulus: f64, radial_count: usize, angular_count: usize) -> Result<DiscGrid> {
    if !(max_modulus > 0.0 && max_modulus < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "max_modulus must lie in (0, 1), got {max_modulus}"
        )));
    }
    if radial_count == 0 || angular_count == 0 {
        return Err(Error::InvalidParameter(
            "radial_count and angular_count must be at least 1".into(),
        ));
    }
    let mut points = Vec::with_capacity(radial_count * angular_count);
    let mut gap = 1.0 - max_modulus;
    for _ in 0..radial_count {
        let r = (1.0 - gap).max(0.0);
        for k in 0..angular_count {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (angular_count as f64);
            let z = Complex64::from_polar(r, theta);
            points.push(DiscPoint::new(z).expect("grid radius below max_modulus"));
        }
        gap *= 2.0;
    }
    DiscGrid::from_points(points, GridScheme::Polar)
}
