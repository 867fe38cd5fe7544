//! Construction of coefficients with prescribed zero sequences.
//!
//! The pipeline builds, for a uniformly separated sequence `Lambda`, the
//! Blaschke product `B` with zeros `Lambda`, an auxiliary `h` whose
//! derivative interpolates `h'(z_n) = -B''(z_n) / (2 B'(z_n))`, and then
//! `f = B e^h`, `A = -(B'' + 2 B' h') / B - (h')^2 - h''`. The interpolation
//! condition makes the numerator of the quotient vanish at every `z_n`, so
//! `A` extends analytically across the zeros; evaluation inside a small
//! pseudo-disc around each zero goes through a Cauchy integral on a circle
//! around the zero instead of the raw quotient.
//!
//! Interpolants live in Blaschke-damped kernel bases
//! `l_n(z) = (B_n(z) / B_n(z_n)) ((1 - |z_n|^2) / (1 - conj(z_n) z))^gamma`,
//! where `B_n` is the Blaschke product over the other nodes. Each `l_n`
//! vanishes at every node but `z_n`, so the interpolation matrix is exactly
//! the identity and the coefficients are the targets themselves. The
//! derivative data is interpolated with `gamma = 3` (integrable localized
//! bumps, so `h` stays uniformly bounded); the bounded interpolant `k` with
//! `k(z_n) = -B''(z_n) / (2 B'(z_n)^2)` is solved with `gamma = 2` and kept
//! as a certified diagnostic. Building `h` as `B k` is not viable in double
//! precision for boundary-clustered sequences: the minimal sup norm any
//! such `k` can have (the Pick bound) already overflows `exp(B k)` for the
//! dyadic test sequence. Every solve is certified a posteriori: residuals,
//! condition estimate, and grid norms are part of the bundle diagnostics.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

use crate::analytic::{growth_norm, AnalyticFunction, Jet, PathSpec};
use crate::blaschke::BlaschkeProduct;
use crate::disc::{make_grid, pseudo_distance, DiscPoint};
use crate::error::{Error, Result};
use crate::sequences::{uniform_separation_constant, PointSequence};

/// Patch radius factor: the singular patch around `z_n` is the pseudo-disc
/// of radius `SINGULAR_FACTOR * (local separation at z_n)`.
pub const SINGULAR_FACTOR: f64 = 0.05;

/// Below this uniform separation the construction is numerically suspect;
/// callers surface a warning (the CLI refuses without `--force`).
pub const UNIFORM_SEPARATION_WARN: f64 = 0.05;

/// Residual ceiling for the interpolation solve.
const INTERP_RESIDUAL_LIMIT: f64 = 1e-8;

/// Condition-estimate threshold beyond which the solve is repeated in
/// ridge-regularized least-squares form.
const CONDITION_LIMIT: f64 = 1e10;

/// Ridge parameter for the regularized re-solve.
const RIDGE: f64 = 1e-10;

/// Relative ODE-identity residual ceiling checked at random points.
const ODE_RESIDUAL_LIMIT: f64 = 1e-7;

/// Nodes of the Cauchy circle used for patched evaluation of `A`.
const PATCH_NODES: usize = 128;

/// Interpolation data: nodes and the complex targets the interpolant must hit.
#[derive(Debug, Clone)]
pub struct InterpolationProblem {
    pub nodes: PointSequence,
    pub targets: Vec<Complex64>,
}

/// Solver certificate for one interpolation solve.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct InterpSolveDiagnostics {
    /// `max_m |k(z_m) - target_m|` recomputed from the returned function.
    pub residual: f64,
    /// Singular-value condition estimate of the kernel matrix.
    pub condition: f64,
    /// Whether the ridge-regularized path was taken.
    pub regularized: bool,
}

/// Everything `build_coefficient` produces.
#[derive(Debug, Clone)]
pub struct CoefficientBundle {
    /// The coefficient `A`.
    pub coefficient: AnalyticFunction,
    /// The solution `f = B e^h` vanishing exactly on the prescribed zeros.
    pub solution: AnalyticFunction,
    /// The auxiliary `h`: primitive of the derivative interpolant, `h(0) = 0`.
    pub auxiliary: AnalyticFunction,
    /// The certified bounded interpolant `k` with `k(z_n) = -B''/(2 B'^2)`;
    /// kept as a diagnostic companion of `h` (the two satisfy
    /// `(B k)'(z_n) = h'(z_n)` at every node).
    pub interpolant: AnalyticFunction,
    pub zeros: PointSequence,
    pub blaschke: BlaschkeProduct,
    pub diagnostics: BundleDiagnostics,
}

/// Numeric certificates attached to a bundle.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BundleDiagnostics {
    pub interp: InterpSolveDiagnostics,
    /// `max_n |h'(z_n) + B''(z_n)/(2 B'(z_n))|` for the derivative interpolant.
    pub hprime_residual: f64,
    pub uniform_separation: f64,
    /// Grid estimate of `sup (1 - |z|^2)^2 |A|`.
    pub h2_norm_grid: f64,
    /// Grid estimate of `sup (1 - |z|^2) |h'|`.
    pub h1_norm_hprime_grid: f64,
    /// Max modulus of the diagnostic grid behind the norm estimates.
    pub grid_max_modulus: f64,
    /// Smallest pseudo-hyperbolic patch radius among the zeros.
    pub singular_radius: f64,
    /// Max relative residual of `f'' + A f` over the random probe points.
    pub ode_residual: f64,
}

/// Serializable bundle manifest (zeros plus diagnostics).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleManifest {
    pub zeros: PointSequence,
    pub diagnostics: BundleDiagnostics,
}

impl CoefficientBundle {
    pub fn manifest(&self) -> BundleManifest {
        BundleManifest {
            zeros: self.zeros.clone(),
            diagnostics: self.diagnostics,
        }
    }

    pub fn write_manifest(&self, path: impl AsRef<Path>) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.manifest())?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}

pub fn read_manifest(path: impl AsRef<Path>) -> Result<BundleManifest> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Interpolation targets `-B''(z_n) / (2 B'(z_n)^2)` from the at-zero
/// closed forms of the Blaschke product.
pub fn interpolation_targets(zeros: &PointSequence) -> Result<InterpolationProblem> {
    let b = BlaschkeProduct::new(zeros.clone());
    let mut targets = Vec::with_capacity(zeros.len());
    for n in 0..zeros.len() {
        let d1 = b.derivative_at_zero(n)?.derivative;
        if d1.norm() < 1e-12 {
            return Err(Error::DegenerateInput(format!(
                "|B'(z_{n})| = {:.3e} is numerically zero",
                d1.norm()
            )));
        }
        let d2 = b.second_derivative_at_zero(n)?;
        targets.push(-d2 / (2.0 * d1 * d1));
    }
    Ok(InterpolationProblem {
        nodes: zeros.clone(),
        targets,
    })
}

/// Kernel value `((1 - |z_n|^2) / (1 - conj(z_n) z))^gamma` and derivatives,
/// for `gamma` 2 or 3.
fn kernel_jet(node: Complex64, z: Complex64, gamma: u32) -> Jet {
    let s = 1.0 - node.norm_sqr();
    let nc = node.conj();
    let d = Complex64::new(1.0, 0.0) - nc * z;
    let d2 = d * d;
    match gamma {
        2 => {
            let s2 = Complex64::new(s * s, 0.0);
            Jet::new(
                s2 / d2,
                2.0 * nc * s2 / (d2 * d),
                6.0 * nc * nc * s2 / (d2 * d2),
                24.0 * nc * nc * nc * s2 / (d2 * d2 * d),
            )
        }
        3 => {
            let s3 = Complex64::new(s * s * s, 0.0);
            let d3 = d2 * d;
            Jet::new(
                s3 / d3,
                3.0 * nc * s3 / (d3 * d),
                12.0 * nc * nc * s3 / (d3 * d2),
                60.0 * nc * nc * nc * s3 / (d3 * d3),
            )
        }
        other => unreachable!("unsupported kernel power {other}"),
    }
}

/// Jet of a single Blaschke factor `(|z_n|/z_n)(z_n - z)/(1 - conj(z_n) z)`
/// (the identity map for `z_n = 0`).
fn blaschke_factor_jet(zero: Complex64, z: Complex64) -> Jet {
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

/// Blaschke-damped kernel basis over a node set.
///
/// `l_n(z) = (B_n(z) / B_n(z_n)) * ((1 - |z_n|^2)/(1 - conj(z_n) z))^gamma`
/// with `B_n` the Blaschke product over the other nodes, so
/// `l_n(z_m) = delta_nm`.
#[derive(Debug, Clone)]
struct DampedKernelBasis {
    nodes: Vec<Complex64>,
    /// `B_n(z_n) = prod_{m != n} b_m(z_n)`.
    node_products: Vec<Complex64>,
    gamma: u32,
}

impl DampedKernelBasis {
    fn new(nodes: &PointSequence, gamma: u32) -> Self {
        let nodes: Vec<Complex64> = nodes.points().iter().map(|p| p.value()).collect();
        let node_products = (0..nodes.len())
            .map(|n| {
                nodes
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != n)
                    .fold(Complex64::new(1.0, 0.0), |acc, (_, &zm)| {
                        acc * blaschke_factor_jet(zm, nodes[n]).value
                    })
            })
            .collect();
        Self {
            nodes,
            node_products,
            gamma,
        }
    }

    /// `l_n(z_m)` used to assemble the interpolation matrix: exactly
    /// `delta_nm` because `B_n` carries the factor vanishing at `z_m`.
    fn entry(&self, n: usize, m: usize) -> Complex64 {
        if n == m {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Jet of `sum_n coeffs[n] l_n` at `z`.
    ///
    /// Division by the factor vanishing nearest to `z` is avoided by folding
    /// the product without that factor; all the other factors are bounded
    /// away from zero at `z` by the separation of the nodes.
    fn jet(&self, coeffs: &[Complex64], z: Complex64) -> Jet {
        let rho = |node: Complex64| {
            (z - node).norm() / (Complex64::new(1.0, 0.0) - node.conj() * z).norm()
        };
        let nearest = self
            .nodes
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| rho(**a).total_cmp(&rho(**b)))
            .map(|(n, _)| n)
            .expect("basis has at least one node");
        let mut excluded = Jet::constant(Complex64::new(1.0, 0.0));
        for (m, &zm) in self.nodes.iter().enumerate() {
            if m != nearest {
                excluded = excluded.mul(&blaschke_factor_jet(zm, z));
            }
        }
        let nearest_factor = blaschke_factor_jet(self.nodes[nearest], z);
        let full = excluded.mul(&nearest_factor);

        let mut total = Jet::constant(Complex64::new(0.0, 0.0));
        for (n, (&zn, &coeff)) in self.nodes.iter().zip(coeffs.iter()).enumerate() {
            if coeff == Complex64::new(0.0, 0.0) {
                continue;
            }
            let damping = if n == nearest {
                excluded
            } else {
                full.mul(&blaschke_factor_jet(zn, z).recip())
            };
            let term = damping.mul(&kernel_jet(zn, z, self.gamma));
            total = total.add(&term.scale(coeff / self.node_products[n]));
        }
        total
    }
}

/// Solves the interpolation problem in the damped kernel basis by a dense LU
/// solve with partial pivoting; falls back to ridge-regularized least squares
/// when the condition estimate exceeds `1e10`. (In this basis the system is
/// the identity, so the machinery is exact; it stays in place to certify the
/// solve when the basis or targets are perturbed.)
pub fn solve_interpolation(
    problem: &InterpolationProblem,
) -> Result<(AnalyticFunction, InterpSolveDiagnostics)> {
    let n = problem.nodes.len();
    if n == 0 {
        return Err(Error::DegenerateInput("interpolation needs at least one node".into()));
    }
    if problem.targets.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{} targets for {} nodes",
            problem.targets.len(),
            n
        )));
    }
    let basis = DampedKernelBasis::new(&problem.nodes, 2);

    let matrix = DMatrix::from_fn(n, n, |m, j| basis.entry(j, m));
    let rhs = DVector::from_iterator(n, problem.targets.iter().copied());

    let condition = {
        let svd = nalgebra::SVD::try_new(matrix.clone(), false, false, 1e-13, 10_000);
        match svd {
            Some(svd) => {
                let sv = svd.singular_values;
                let max = sv.iter().fold(0.0_f64, |a, &b| a.max(b));
                let min = sv.iter().fold(f64::INFINITY, |a, &b| a.min(b));
                if min > 0.0 {
                    max / min
                } else {
                    f64::INFINITY
                }
            }
            None => f64::INFINITY,
        }
    };

    let direct = if condition <= CONDITION_LIMIT {
        matrix.clone().lu().solve(&rhs)
    } else {
        None
    };
    let (coeffs, regularized) = match direct {
        Some(c) => (c, false),
        None => {
            // ridge-regularized normal equations: (M^H M + lambda I) c = M^H t
            let mh = matrix.adjoint();
            let mut normal = &mh * &matrix;
            for i in 0..n {
                normal[(i, i)] += Complex64::new(RIDGE, 0.0);
            }
            let c = normal
                .lu()
                .solve(&(&mh * &rhs))
                .ok_or(Error::InterpolationFailure {
                    residual: f64::INFINITY,
                    condition,
                    regularized: true,
                })?;
            (c, true)
        }
    };

    let coeffs: Vec<Complex64> = coeffs.iter().copied().collect();
    let eval_basis = basis.clone();
    let eval_coeffs = coeffs.clone();
    let interpolant = AnalyticFunction::from_closed_form(format!("k[{n} nodes]"), move |z| {
        eval_basis.jet(&eval_coeffs, z)
    });

    let residual = problem
        .nodes
        .points()
        .iter()
        .zip(problem.targets.iter())
        .map(|(&zm, &t)| (interpolant.eval(zm) - t).norm())
        .fold(0.0, f64::max);
    if residual > INTERP_RESIDUAL_LIMIT {
        return Err(Error::InterpolationFailure {
            residual,
            condition,
            regularized,
        });
    }
    Ok((
        interpolant,
        InterpSolveDiagnostics {
            residual,
            condition,
            regularized,
        },
    ))
}

/// Per-zero patch data for evaluating `A` across its removable singularities.
struct SingularPatches {
    zeros: Vec<Complex64>,
    /// Pseudo-hyperbolic patch radii `0.05 * local separation`.
    rho_radius: Vec<f64>,
    /// Euclidean radii of the Cauchy evaluation circles.
    circle_radius: Vec<f64>,
}

impl SingularPatches {
    fn new(seq: &PointSequence) -> Self {
        let pts = seq.points();
        let mut rho_radius = Vec::with_capacity(pts.len());
        let mut circle_radius = Vec::with_capacity(pts.len());
        for (n, &zn) in pts.iter().enumerate() {
            let local_sep = pts
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != n)
                .map(|(_, &zk)| pseudo_distance(zn, zk))
                .fold(1.0_f64, f64::min);
            let eps = SINGULAR_FACTOR * local_sep;
            rho_radius.push(eps);
            // Euclidean radius 2 eps (1 - |z_n|^2): the circle sits near
            // pseudo-hyperbolic distance 2 eps, twice the patch radius, so the
            // Cauchy kernel is sampled well away from the evaluation point.
            circle_radius.push(2.0 * eps * (1.0 - zn.modulus().powi(2)));
        }
        Self {
            zeros: pts.iter().map(|p| p.value()).collect(),
            rho_radius,
            circle_radius,
        }
    }

    /// Index of the patch containing `z`, if any.
    fn containing(&self, z: Complex64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (n, &zn) in self.zeros.iter().enumerate() {
            let rho = (z - zn).norm() / (Complex64::new(1.0, 0.0) - zn.conj() * z).norm();
            if best.map_or(true, |(_, d)| rho < d) {
                best = Some((n, rho));
            }
        }
        best.and_then(|(n, rho)| (rho <= self.rho_radius[n]).then_some(n))
    }

    fn min_rho_radius(&self) -> f64 {
        self.rho_radius.iter().copied().fold(1.0, f64::min)
    }
}

/// Builds the full bundle for a prescribed zero sequence.
pub fn build_coefficient(zeros: &PointSequence) -> Result<CoefficientBundle> {
    if zeros.is_empty() {
        return Err(Error::DegenerateInput(
            "build_coefficient needs at least one zero".into(),
        ));
    }
    let usc = if zeros.len() >= 2 {
        uniform_separation_constant(zeros)?
    } else {
        1.0
    };
    if usc <= 0.0 {
        return Err(Error::Precondition(format!(
            "sequence is not uniformly separated (constant {usc:.3e})"
        )));
    }

    let blaschke = BlaschkeProduct::new(zeros.clone());
    let b_fn = blaschke.as_analytic();
    let problem = interpolation_targets(zeros)?;
    let (interpolant, interp) = solve_interpolation(&problem)?;

    // Derivative data h'(z_n) = -B''(z_n) / (2 B'(z_n)) = t_n B'(z_n),
    // interpolated with the integrable gamma = 3 kernels so the primitive h
    // stays uniformly bounded.
    let derivative_targets: Vec<Complex64> = (0..zeros.len())
        .map(|n| {
            let d1 = blaschke.derivative_at_zero(n)?.derivative;
            Ok(problem.targets[n] * d1)
        })
        .collect::<Result<_>>()?;
    let hprime_basis = DampedKernelBasis::new(zeros, 3);
    let hprime = {
        let basis = hprime_basis.clone();
        let coeffs = derivative_targets.clone();
        AnalyticFunction::from_closed_form("h'", move |z| basis.jet(&coeffs, z))
    };
    let hprime_residual = zeros
        .points()
        .iter()
        .zip(derivative_targets.iter())
        .map(|(&zn, &s)| (hprime.eval(zn) - s).norm())
        .fold(0.0, f64::max);
    if hprime_residual > INTERP_RESIDUAL_LIMIT {
        return Err(Error::InterpolationFailure {
            residual: hprime_residual,
            condition: 1.0,
            regularized: false,
        });
    }

    // h is the primitive of h' from the origin; its value needs a path
    // integral but its derivatives are the closed-form jets of h'. The
    // integrand has bumps on the scale of each node's boundary distance, so
    // the path is refined toward the boundary.
    let auxiliary = {
        let u = hprime.clone();
        AnalyticFunction::from_closed_form("h", move |z| {
            let uj = u.jet3_raw(z);
            let value = if z == Complex64::new(0.0, 0.0) {
                Complex64::new(0.0, 0.0)
            } else {
                let path = PathSpec::refined_segment(
                    DiscPoint::origin(),
                    DiscPoint::new(z).expect("interior evaluation point"),
                )
                .expect("distinct endpoints");
                let inner = u.clone();
                crate::analytic::path_integral_values(|w| inner.eval_raw(w), &path)
            };
            Jet::new(value, uj.value, uj.d1, uj.d2)
        })
    };
    let solution = b_fn.mul(&auxiliary.exp()).with_label("f = B exp(h)");

    let patches = Arc::new(SingularPatches::new(zeros));
    let coefficient = {
        let b = b_fn.clone();
        let u = hprime.clone();
        let patches = Arc::clone(&patches);
        // A from the jets of B and h' alone; no path integral enters.
        let direct = move |z: Complex64| -> Complex64 {
            let bj = b.jet3_raw(z);
            let uj = u.jet3_raw(z);
            -(bj.d2 + 2.0 * bj.d1 * uj.value) / bj.value - uj.value * uj.value - uj.d1
        };
        AnalyticFunction::from_values("A", move |z| match patches.containing(z) {
            None => direct(z),
            Some(n) => {
                // Cauchy integral of the direct values on the circle around
                // z_n; the numerator vanishes at z_n, so the integrand is the
                // analytic continuation of A across the patch.
                let center = patches.zeros[n];
                let radius = patches.circle_radius[n];
                let mut sum = Complex64::new(0.0, 0.0);
                for k in 0..PATCH_NODES {
                    let theta = 2.0 * std::f64::consts::PI * (k as f64) / (PATCH_NODES as f64);
                    let offset = Complex64::from_polar(radius, theta);
                    let zeta = center + offset;
                    sum += direct(zeta) * offset / (zeta - z);
                }
                sum / PATCH_NODES as f64
            }
        })
    };

    let grid = make_grid(0.999, 16, 32).expect("static grid parameters");
    let h2_norm_grid = growth_norm(&coefficient, 2.0, &grid);
    let h1_norm_hprime_grid = growth_norm(&hprime, 1.0, &grid);

    let ode_residual = ode_identity_residual(&coefficient, &solution, &patches)?;
    if ode_residual > ODE_RESIDUAL_LIMIT {
        return Err(Error::ConstructionInconsistent {
            residual: ode_residual,
            limit: ODE_RESIDUAL_LIMIT,
        });
    }

    Ok(CoefficientBundle {
        coefficient,
        solution,
        auxiliary,
        interpolant,
        zeros: zeros.clone(),
        blaschke,
        diagnostics: BundleDiagnostics {
            interp,
            hprime_residual,
            uniform_separation: usc,
            h2_norm_grid,
            h1_norm_hprime_grid,
            grid_max_modulus: grid.max_modulus(),
            singular_radius: patches.min_rho_radius(),
            ode_residual,
        },
    })
}

/// Max relative residual of `f'' + A f` at 100 seeded random points kept
/// away from the singular patches.
fn ode_identity_residual(
    coefficient: &AnalyticFunction,
    solution: &AnalyticFunction,
    patches: &SingularPatches,
) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0DE_1DE);
    let mut checked = 0;
    let mut max_resid: f64 = 0.0;
    let mut attempts = 0;
    while checked < 100 && attempts < 10_000 {
        attempts += 1;
        let re = rng.gen_range(-0.9..0.9);
        let im = rng.gen_range(-0.9..0.9);
        let z = Complex64::new(re, im);
        if z.norm() >= 0.9 {
            continue;
        }
        let clear = patches.zeros.iter().zip(patches.rho_radius.iter()).all(|(&zn, &eps)| {
            let rho = (z - zn).norm() / (Complex64::new(1.0, 0.0) - zn.conj() * z).norm();
            rho > 2.0 * eps
        });
        if !clear {
            continue;
        }
        let fj = solution.jet3_raw(z);
        let av = coefficient.eval_raw(z);
        let numerator = (fj.d2 + av * fj.value).norm();
        let scale = fj.d2.norm().max((av * fj.value).norm());
        let resid = if scale < 1e-14 { numerator } else { numerator / scale };
        max_resid = max_resid.max(resid);
        checked += 1;
    }
    if checked == 0 {
        return Err(Error::DegenerateInput(
            "no probe points clear of the singular patches".into(),
        ));
    }
    Ok(max_resid)
}

/// Zero-free pair of solutions built from an auxiliary function `g`:
/// `h' = e^{-2g}`, `f1 = e^{g+h}`, `f2 = e^{g-h}`,
/// `A = -g'' - (g')^2 - (h')^2`.
#[derive(Debug, Clone)]
pub struct ZeroFreeExample {
    pub coefficient: AnalyticFunction,
    pub solution_plus: AnalyticFunction,
    pub solution_minus: AnalyticFunction,
    pub primitive: AnalyticFunction,
    /// `min (|f1| + |f2|)` over the diagnostic grid (the corona lower bound).
    pub min_modulus_sum: f64,
    /// Max relative residual of `f'' + A f` for both solutions at probe points.
    pub ode_residual: f64,
}

/// Builds the zero-free example for an auxiliary `g`.
pub fn zero_free_example(g: &AnalyticFunction) -> Result<ZeroFreeExample> {
    // h has h' = e^{-2g}; its value at z is the path integral from 0, and its
    // derivatives are closed forms in the jet of g.
    let g_for_h = g.clone();
    let primitive = AnalyticFunction::from_closed_form("h (h' = exp(-2g))", move |z| {
        let gj = g_for_h.jet3_raw(z);
        let hp = (-2.0 * gj.value).exp();
        let value = if z == Complex64::new(0.0, 0.0) {
            Complex64::new(0.0, 0.0)
        } else {
            let path = PathSpec::new(
                vec![
                    DiscPoint::origin(),
                    DiscPoint::new(z).expect("interior evaluation point"),
                ],
                24,
            )
            .expect("distinct endpoints");
            let inner = g_for_h.clone();
            crate::analytic::path_integral_values(|w| (-2.0 * inner.eval_raw(w)).exp(), &path)
        };
        Jet::new(
            value,
            hp,
            -2.0 * gj.d1 * hp,
            (4.0 * gj.d1 * gj.d1 - 2.0 * gj.d2) * hp,
        )
    });

    let solution_plus = g.add(&primitive).exp().with_label("f1 = exp(g + h)");
    let solution_minus = g.add(&primitive.scale(Complex64::new(-1.0, 0.0))).exp()
        .with_label("f2 = exp(g - h)");

    let g_for_a = g.clone();
    let coefficient = AnalyticFunction::from_values("A = -g'' - (g')^2 - (h')^2", move |z| {
        let gj = g_for_a.jet3_raw(z);
        let hp = (-2.0 * gj.value).exp();
        -gj.d2 - gj.d1 * gj.d1 - hp * hp
    });

    let grid = make_grid(0.98, 10, 24).expect("static grid parameters");
    let min_modulus_sum = grid
        .points()
        .iter()
        .map(|&z| solution_plus.eval(z).norm() + solution_minus.eval(z).norm())
        .fold(f64::INFINITY, f64::min);

    let mut rng = ChaCha8Rng::seed_from_u64(0x2E80);
    let mut ode_residual: f64 = 0.0;
    for _ in 0..50 {
        let z = loop {
            let re = rng.gen_range(-0.85..0.85);
            let im = rng.gen_range(-0.85..0.85);
            if (re * re + im * im) < 0.85 * 0.85 {
                break Complex64::new(re, im);
            }
        };
        let av = coefficient.eval_raw(z);
        for f in [&solution_plus, &solution_minus] {
            let fj = f.jet3_raw(z);
            let numerator = (fj.d2 + av * fj.value).norm();
            let scale = fj.d2.norm().max((av * fj.value).norm()).max(1e-14);
            ode_residual = ode_residual.max(numerator / scale);
        }
    }
    if ode_residual > 1e-8 {
        return Err(Error::ConstructionInconsistent {
            residual: ode_residual,
            limit: 1e-8,
        });
    }

    Ok(ZeroFreeExample {
        coefficient,
        solution_plus,
        solution_minus,
        primitive,
        min_modulus_sum,
        ode_residual,
    })
}

/// Coefficient recovered from a corona partition `f1 g1 + f2 g2 = 1` of two
/// solutions: `A = f1 g1'' + f2 g2'' + 2 (f1' g1' + f2' g2')`.
pub fn corona_coefficient(
    f1: &AnalyticFunction,
    f2: &AnalyticFunction,
    g1: &AnalyticFunction,
    g2: &AnalyticFunction,
) -> Result<AnalyticFunction> {
    let grid = make_grid(0.98, 10, 24).expect("static grid parameters");
    let worst = grid
        .points()
        .iter()
        .map(|&z| {
            (f1.eval(z) * g1.eval(z) + f2.eval(z) * g2.eval(z) - Complex64::new(1.0, 0.0)).norm()
        })
        .fold(0.0, f64::max);
    if worst >= 1e-10 {
        return Err(Error::Precondition(format!(
            "f1 g1 + f2 g2 deviates from 1 by {worst:.3e} on the check grid"
        )));
    }
    let (f1, f2, g1, g2) = (f1.clone(), f2.clone(), g1.clone(), g2.clone());
    Ok(AnalyticFunction::from_values(
        "A = f1 g1'' + f2 g2'' + 2 (f1' g1' + f2' g2')",
        move |z| {
            let (a, b) = (f1.jet3_raw(z), f2.jet3_raw(z));
            let (c, d) = (g1.jet3_raw(z), g2.jet3_raw(z));
            a.value * c.d2 + b.value * d.d2 + 2.0 * (a.d1 * c.d1 + b.d1 * d.d1)
        },
    ))
}
