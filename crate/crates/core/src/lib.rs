//! Zero sequences of solutions of `f'' + A f = 0` on the unit disc.
//!
//! The crate constructs coefficients `A` in the growth space
//! `H^∞_2 = { A analytic : sup (1 - |z|^2)^2 |A(z)| < ∞ }` whose equations
//! admit non-trivial solutions vanishing on a prescribed sequence, verifies
//! the constructions by direct ODE integration and the argument principle,
//! and computes the separation, density, and Carleson-measure statistics
//! that classify admissible zero sequences.
//!
//! Modules:
//!
//! - [`disc`]: pseudo-hyperbolic metric, disc automorphisms, Cayley
//!   transform, polar grids for supremum searches.
//! - [`analytic`]: jet-evaluable analytic functions with closed-form or
//!   Cauchy-quadrature derivatives, growth norms, Schwarzian and spherical
//!   derivatives, path integrals.
//! - [`sequences`]: zero-sequence statistics (separation, densities,
//!   Blaschke sums, lattice generation, boundary log-distance).
//! - [`blaschke`]: numerically stable Blaschke products and their
//!   derivatives at their own zeros.
//! - [`carleson`]: p-Carleson constants of point and area measures in box
//!   and conformally invariant form.
//! - [`builder`]: the prescribed-zero construction `f = B e^{B k}` and the
//!   zero-free / corona companion examples.
//! - [`oscillation`]: adaptive Runge-Kutta integration of the equation,
//!   argument-principle zero counting, second solutions, conformal
//!   transport, the density bound, and normality diagnostics.

pub mod analytic;
pub mod blaschke;
pub mod builder;
pub mod carleson;
pub mod disc;
pub mod error;
pub mod oscillation;
pub mod sequences;

pub use analytic::{AnalyticFunction, DerivativeMode, Jet, PathSpec};
pub use blaschke::BlaschkeProduct;
pub use builder::{build_coefficient, CoefficientBundle};
pub use disc::{DiscGrid, DiscPoint, PseudoDisc};
pub use error::{Error, Result};
pub use sequences::{LatticeParams, PointSequence};
