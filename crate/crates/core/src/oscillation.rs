//! Direct integration of `f'' + A f = 0` and the derived diagnostics.
//!
//! The integrator is an adaptive Dormand-Prince 4/5 pair applied to the
//! first-order system `(f, f')' = (f', -A f)` along a complexified path
//! parameter. Zero counting augments the state with the logarithmic
//! derivative integral and reads off the winding number; second solutions
//! come from reduction of order (`g = f ∫ dz/f^2`) or from re-integrating
//! the same equation with Wronskian-normalized initial data.

use num_complex::Complex64;

use crate::analytic::{mobius_jet, AnalyticFunction, Jet, PathSpec};
use crate::builder::CoefficientBundle;
use crate::disc::{automorphism_derivative, DiscGrid, DiscPoint, BOUNDARY_EPS};
use crate::error::{Error, Result};
use crate::sequences::PointSequence;

/// Minimum step size, as a fraction of a path segment's parameter length.
const MIN_STEP_FRACTION: f64 = 1e-14;

/// Solution state `(z, f(z), f'(z))` at a point along a path.
#[derive(Debug, Clone, Copy)]
pub struct OdeState {
    pub position: DiscPoint,
    pub f: Complex64,
    pub fprime: Complex64,
}

impl OdeState {
    pub fn new(position: DiscPoint, f: Complex64, fprime: Complex64) -> Self {
        Self { position, f, fprime }
    }

    /// Initial data read off a jet-evaluable function.
    pub fn from_function(f: &AnalyticFunction, at: DiscPoint) -> Self {
        let jet = f.jet3(at);
        Self::new(at, jet.value, jet.d1)
    }
}

/// States accepted by the adaptive integrator, with their path parameters
/// (segment index plus local parameter, scaled to [0, 1] overall).
#[derive(Debug, Clone)]
pub struct SolutionTrace {
    pub states: Vec<OdeState>,
    pub parameters: Vec<f64>,
    /// Largest accepted per-step local error estimate.
    pub tolerance_achieved: f64,
}

impl SolutionTrace {
    pub fn final_state(&self) -> &OdeState {
        self.states.last().expect("trace holds at least the initial state")
    }

    /// CSV export: `parameter, re_z, im_z, re_f, im_f, re_fprime, im_fprime`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("parameter,re_z,im_z,re_f,im_f,re_fprime,im_fprime\n");
        for (t, s) in self.parameters.iter().zip(&self.states) {
            out.push_str(&format!(
                "{:?},{:?},{:?},{:?},{:?},{:?},{:?}\n",
                t,
                s.position.re(),
                s.position.im(),
                s.f.re,
                s.f.im,
                s.fprime.re,
                s.fprime.im
            ));
        }
        out
    }
}

/// Circle contour strictly inside the disc.
#[derive(Debug, Clone, Copy)]
pub struct CircleContour {
    pub center: DiscPoint,
    pub radius: f64,
}

impl CircleContour {
    pub fn new(center: DiscPoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || center.modulus() + radius >= 1.0 - BOUNDARY_EPS {
            return Err(Error::InvalidParameter(format!(
                "circle of radius {radius} about {} leaves the disc",
                center.value()
            )));
        }
        Ok(Self { center, radius })
    }

    /// Circle about the origin.
    pub fn centered(radius: f64) -> Result<Self> {
        Self::new(DiscPoint::origin(), radius)
    }

    fn point(&self, theta: f64) -> Complex64 {
        self.center.value() + Complex64::from_polar(self.radius, theta)
    }
}

// Dormand-Prince 4(5) tableau.
const DP_C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_ERR: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One parameterized curve leg: `t in [0, 1] -> (z(t), dz/dt)`.
trait CurveLeg {
    fn at(&self, t: f64) -> (Complex64, Complex64);
}

struct SegmentLeg {
    from: Complex64,
    delta: Complex64,
}

impl CurveLeg for SegmentLeg {
    fn at(&self, t: f64) -> (Complex64, Complex64) {
        (self.from + self.delta * t, self.delta)
    }
}

struct ArcLeg {
    center: Complex64,
    radius: f64,
    theta0: f64,
    theta_span: f64,
}

impl CurveLeg for ArcLeg {
    fn at(&self, t: f64) -> (Complex64, Complex64) {
        let theta = self.theta0 + self.theta_span * t;
        let dir = Complex64::from_polar(self.radius, theta);
        (
            self.center + dir,
            dir * Complex64::new(0.0, self.theta_span),
        )
    }
}

/// Per-component error scales for a step from `y` to `next`.
///
/// Components `0..2*pairs` are `(f, f')` pairs of one solution each: the two
/// entries share the pair's magnitude as scale, which keeps the error
/// control relative even when the solution swings over many orders of
/// magnitude (a pair never vanishes as a whole). Trailing components (the
/// winding accumulator) are controlled against `1 + |y|`.
fn error_scales<const N: usize>(pairs: usize, y: &[Complex64; N], next: &[Complex64; N]) -> [f64; N] {
    let mut scales = [1.0_f64; N];
    for p in 0..pairs {
        let (i, j) = (2 * p, 2 * p + 1);
        let magnitude = y[i]
            .norm()
            .max(y[j].norm())
            .max(next[i].norm())
            .max(next[j].norm())
            .max(1e-290);
        scales[i] = magnitude;
        scales[j] = magnitude;
    }
    for i in (2 * pairs)..N {
        scales[i] = 1.0 + y[i].norm().max(next[i].norm());
    }
    scales
}

/// Adaptive Dormand-Prince run over one curve leg. Calls `on_accept`
/// after every accepted step and returns the final state and the largest
/// accepted error estimate. `pairs` declares how many leading `(f, f')`
/// pairs the state holds (see [`error_scales`]).
fn rk_leg<const N: usize>(
    leg: &dyn CurveLeg,
    rhs: &dyn Fn(Complex64, &[Complex64; N]) -> [Complex64; N],
    pairs: usize,
    mut y: [Complex64; N],
    tol: f64,
    on_accept: &mut dyn FnMut(f64, Complex64, &[Complex64; N], f64),
) -> Result<([Complex64; N], f64)> {
    let full_rhs = |t: f64, y: &[Complex64; N]| -> [Complex64; N] {
        let (z, dz) = leg.at(t);
        let mut out = rhs(z, y);
        for v in out.iter_mut() {
            *v *= dz;
        }
        out
    };

    let mut t = 0.0_f64;
    let mut h = 0.05_f64;
    let mut achieved: f64 = 0.0;
    while t < 1.0 {
        if h < MIN_STEP_FRACTION {
            return Err(Error::StepSizeUnderflow { at: t });
        }
        if t + h > 1.0 {
            h = 1.0 - t;
        }

        let mut stages: [[Complex64; N]; 7] = [[Complex64::new(0.0, 0.0); N]; 7];
        for stage in 0..7 {
            let mut arg = y;
            for (prev, row) in DP_A[stage].iter().enumerate().take(stage) {
                for i in 0..N {
                    arg[i] += stages[prev][i] * (*row * h);
                }
            }
            stages[stage] = full_rhs(t + DP_C[stage] * h, &arg);
        }

        let mut next = y;
        let mut err_vec = [Complex64::new(0.0, 0.0); N];
        for stage in 0..7 {
            for i in 0..N {
                next[i] += stages[stage][i] * (DP_B5[stage] * h);
                err_vec[i] += stages[stage][i] * (DP_ERR[stage] * h);
            }
        }
        let scales = error_scales(pairs, &y, &next);
        let mut err: f64 = 0.0;
        for i in 0..N {
            err = err.max(err_vec[i].norm() / scales[i]);
        }
        if !err.is_finite() {
            // a stage blew up (e.g. log-derivative near a zero): retry smaller
            h *= 0.1;
            continue;
        }

        if err <= tol {
            t += h;
            y = next;
            achieved = achieved.max(err);
            let (z, _) = leg.at(t);
            on_accept(t, z, &y, err);
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * (tol / err).powf(0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    Ok((y, achieved))
}

fn path_legs(path: &PathSpec) -> Vec<SegmentLeg> {
    path.waypoints()
        .windows(2)
        .map(|pair| SegmentLeg {
            from: pair[0].value(),
            delta: pair[1].value() - pair[0].value(),
        })
        .collect()
}

/// Integrates `f'' + A f = 0` from `initial` along `path`.
///
/// The initial state must sit at the first waypoint. Local error per
/// accepted step is kept at or below `tol`.
pub fn integrate(
    a: &AnalyticFunction,
    initial: OdeState,
    path: &PathSpec,
    tol: f64,
) -> Result<SolutionTrace> {
    check_initial(initial, path)?;
    let rhs = |z: Complex64, y: &[Complex64; 2]| -> [Complex64; 2] {
        [y[1], -a.eval_raw(z) * y[0]]
    };
    let mut states = vec![initial];
    let mut parameters = vec![0.0];
    let mut y = [initial.f, initial.fprime];
    let mut achieved: f64 = 0.0;
    let legs = path_legs(path);
    let n_legs = legs.len() as f64;
    for (idx, leg) in legs.iter().enumerate() {
        let offset = idx as f64;
        let (end, leg_achieved) = rk_leg(
            leg,
            &rhs,
            1,
            y,
            tol,
            &mut |t, z, y: &[Complex64; 2], _err| {
                states.push(OdeState::new(
                    DiscPoint::new(z).expect("path stays interior"),
                    y[0],
                    y[1],
                ));
                parameters.push((offset + t) / n_legs);
            },
        )?;
        y = end;
        achieved = achieved.max(leg_achieved);
    }
    Ok(SolutionTrace {
        states,
        parameters,
        tolerance_achieved: achieved,
    })
}

/// Integrates two solutions of the same equation jointly (shared accepted
/// steps), so invariants like the Wronskian can be checked state by state.
pub fn integrate_pair(
    a: &AnalyticFunction,
    first: OdeState,
    second: OdeState,
    path: &PathSpec,
    tol: f64,
) -> Result<(SolutionTrace, SolutionTrace)> {
    check_initial(first, path)?;
    check_initial(second, path)?;
    let rhs = |z: Complex64, y: &[Complex64; 4]| -> [Complex64; 4] {
        let av = a.eval_raw(z);
        [y[1], -av * y[0], y[3], -av * y[2]]
    };
    let mut states_f = vec![first];
    let mut states_g = vec![second];
    let mut parameters = vec![0.0];
    let mut y = [first.f, first.fprime, second.f, second.fprime];
    let mut achieved: f64 = 0.0;
    let legs = path_legs(path);
    let n_legs = legs.len() as f64;
    for (idx, leg) in legs.iter().enumerate() {
        let offset = idx as f64;
        let (end, leg_achieved) = rk_leg(
            leg,
            &rhs,
            2,
            y,
            tol,
            &mut |t, z, y: &[Complex64; 4], _err| {
                let p = DiscPoint::new(z).expect("path stays interior");
                states_f.push(OdeState::new(p, y[0], y[1]));
                states_g.push(OdeState::new(p, y[2], y[3]));
                parameters.push((offset + t) / n_legs);
            },
        )?;
        y = end;
        achieved = achieved.max(leg_achieved);
    }
    Ok((
        SolutionTrace {
            states: states_f,
            parameters: parameters.clone(),
            tolerance_achieved: achieved,
        },
        SolutionTrace {
            states: states_g,
            parameters,
            tolerance_achieved: achieved,
        },
    ))
}

fn check_initial(initial: OdeState, path: &PathSpec) -> Result<()> {
    if (initial.position.value() - path.start().value()).norm() > 1e-14 {
        return Err(Error::InvalidParameter(
            "initial state must sit at the first waypoint of the path".into(),
        ));
    }
    Ok(())
}

/// Counts zeros of the solution inside a circle by the argument principle.
///
/// The solution is carried from `initial` radially to the contour and then
/// around it while accumulating `∮ f'/f dz`; the winding must land within
/// 0.1 of an integer. If `|f|` dips below `10 * tol` on the contour, the
/// radius is nudged by one part in a thousand, twice, before giving up.
pub fn count_zeros(
    a: &AnalyticFunction,
    initial: OdeState,
    contour: CircleContour,
    tol: f64,
) -> Result<usize> {
    let f_floor = 10.0 * tol;
    let mut last_err = None;
    for (nudge, factor) in [1.0, 1.0 + 1e-3, 1.0 - 1e-3].iter().enumerate() {
        let circle = CircleContour::new(contour.center, contour.radius * factor)?;
        match count_zeros_attempt(a, initial, circle, tol, f_floor) {
            Ok(count) => return Ok(count),
            Err(err @ (Error::ContourThroughZero { .. } | Error::StepSizeUnderflow { .. })) => {
                last_err = Some(if nudge == 2 {
                    Error::ContourThroughZero { nudges: 2 }
                } else {
                    err
                });
            }
            Err(other) => return Err(other),
        }
    }
    Err(last_err.expect("three attempts recorded an error"))
}

fn count_zeros_attempt(
    a: &AnalyticFunction,
    initial: OdeState,
    circle: CircleContour,
    tol: f64,
    f_floor: f64,
) -> Result<usize> {
    // radial leg: carry (f, f') to the contour start, no log-derivative yet
    let start = circle.point(0.0);
    let mut y2 = [initial.f, initial.fprime];
    if (start - initial.position.value()).norm() > 1e-15 {
        let leg = SegmentLeg {
            from: initial.position.value(),
            delta: start - initial.position.value(),
        };
        let rhs2 = |z: Complex64, y: &[Complex64; 2]| -> [Complex64; 2] {
            [y[1], -a.eval_raw(z) * y[0]]
        };
        let (end, _) = rk_leg(&leg, &rhs2, 1, y2, tol, &mut |_, _, _, _| {})?;
        y2 = end;
    }

    if y2[0].norm() < f_floor {
        return Err(Error::ContourThroughZero { nudges: 0 });
    }

    // around the circle with the winding accumulator
    let rhs3 = |z: Complex64, y: &[Complex64; 3]| -> [Complex64; 3] {
        let av = a.eval_raw(z);
        [y[1], -av * y[0], y[1] / y[0]]
    };
    let leg = ArcLeg {
        center: circle.center.value(),
        radius: circle.radius,
        theta0: 0.0,
        theta_span: 2.0 * std::f64::consts::PI,
    };
    let mut min_f = y2[0].norm();
    let y0 = [y2[0], y2[1], Complex64::new(0.0, 0.0)];
    let (end, _) = rk_leg(&leg, &rhs3, 1, y0, tol, &mut |_, _, y: &[Complex64; 3], _| {
        min_f = min_f.min(y[0].norm());
    })?;
    if min_f < f_floor {
        return Err(Error::ContourThroughZero { nudges: 0 });
    }

    let winding = end[2] / Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    if !winding.is_finite() {
        return Err(Error::NonIntegerWinding {
            value: f64::NAN,
            deviation: f64::NAN,
        });
    }
    let nearest = winding.re.round();
    let deviation = (winding - Complex64::new(nearest, 0.0)).norm();
    if deviation > 0.1 {
        return Err(Error::NonIntegerWinding {
            value: winding.re,
            deviation,
        });
    }
    if nearest < -0.5 {
        return Err(Error::VerificationFailed(format!(
            "argument principle returned negative count {nearest}"
        )));
    }
    Ok(nearest as usize)
}

/// Verification report for a constructed bundle.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// `max_n |f(z_n)|`.
    pub max_zero_residual: f64,
    /// Argument-principle count inside the verification circle.
    pub zero_count: usize,
    /// Prescribed zeros inside that circle.
    pub expected_count: usize,
    /// Max deviation between the re-integrated and closed-form solution
    /// along the positive radius, relative to the solution's scale.
    pub reintegration_error: f64,
}

/// Checks a bundle three ways: prescribed zeros are zeros of `f`, the
/// argument-principle count inside `|z| <= radius` matches, and an
/// independent ODE re-integration from matched data at the origin tracks
/// the closed-form solution along the positive radius.
pub fn verify_prescribed_zeros(
    bundle: &CoefficientBundle,
    tol: f64,
    radius: f64,
) -> Result<VerificationReport> {
    let max_zero_residual = bundle
        .zeros
        .points()
        .iter()
        .map(|&z| bundle.solution.eval(z).norm())
        .fold(0.0, f64::max);

    let initial = OdeState::from_function(&bundle.solution, DiscPoint::origin());
    let contour = CircleContour::centered(radius)?;
    let zero_count = count_zeros(&bundle.coefficient, initial, contour, 1e-10)?;
    let expected_count = bundle
        .zeros
        .points()
        .iter()
        .filter(|z| z.modulus() <= radius)
        .count();

    // re-integrate along the positive radius and compare with closed form
    let end = DiscPoint::from_parts(radius, 0.0)?;
    let path = PathSpec::new(vec![DiscPoint::origin(), end], 16)?;
    let trace = integrate(&bundle.coefficient, initial, &path, 1e-10)?;
    let mut scale: f64 = 0.0;
    let mut worst_abs: f64 = 0.0;
    for state in &trace.states {
        let reference = bundle.solution.eval(state.position);
        scale = scale.max(reference.norm());
        worst_abs = worst_abs.max((state.f - reference).norm());
    }
    let reintegration_error = if scale > 0.0 { worst_abs / scale } else { worst_abs };

    let report = VerificationReport {
        max_zero_residual,
        zero_count,
        expected_count,
        reintegration_error,
    };
    if max_zero_residual >= tol {
        return Err(Error::VerificationFailed(format!(
            "zero residual {max_zero_residual:.3e} exceeds {tol:.3e} ({report:?})"
        )));
    }
    if zero_count != expected_count {
        return Err(Error::VerificationFailed(format!(
            "argument principle counted {zero_count} zeros, expected {expected_count} ({report:?})"
        )));
    }
    if reintegration_error > 1e-6 {
        return Err(Error::VerificationFailed(format!(
            "re-integration deviates by {reintegration_error:.3e} ({report:?})"
        )));
    }
    Ok(report)
}

/// Second solution by reduction of order: `g = f(z) ∫_path dzeta / f(zeta)^2`
/// along the given path, normalized so the Wronskian `f g' - f' g` is 1.
/// Returns `(g, g')` at the path's endpoint.
pub fn second_solution(f: &AnalyticFunction, path: &PathSpec) -> Result<(Complex64, Complex64)> {
    // reject paths that pass through (or start/end at) a zero of f
    let mut too_small = false;
    let integral = crate::analytic::path_integral_values(
        |z| {
            let v = f.eval_raw(z);
            if v.norm() < 1e-10 {
                too_small = true;
            }
            1.0 / (v * v)
        },
        path,
    );
    let end_jet = f.jet3(path.end());
    if too_small || end_jet.value.norm() < 1e-10 {
        return Err(Error::PathThroughZero);
    }
    let g = end_jet.value * integral;
    let gp = end_jet.d1 * integral + 1.0 / end_jet.value;
    Ok((g, gp))
}

/// Wraps ODE re-integration as a value evaluator: the value at `z` is the
/// first component of the solution carried from `initial` along the straight
/// segment to `z`. Evaluation failures surface as NaN.
pub fn ode_solution_evaluator(
    a: &AnalyticFunction,
    initial: OdeState,
    tol: f64,
) -> AnalyticFunction {
    let a = a.clone();
    AnalyticFunction::from_values("ode-solution", move |z| {
        if (z - initial.position.value()).norm() < 1e-15 {
            return initial.f;
        }
        let Ok(target) = DiscPoint::new(z) else {
            return Complex64::new(f64::NAN, f64::NAN);
        };
        let Ok(path) = PathSpec::new(vec![initial.position, target], 1) else {
            return Complex64::new(f64::NAN, f64::NAN);
        };
        match integrate(&a, initial, &path, tol) {
            Ok(trace) => trace.final_state().f,
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    })
}

/// Transported coefficient `z -> A(phi_a(z)) (phi_a'(z))^2`; solutions of the
/// original equation pull back to solutions of `g'' + B g = 0` for this `B`.
pub fn transport_coefficient(a_fn: &AnalyticFunction, a: DiscPoint) -> AnalyticFunction {
    let inner = a_fn.clone();
    AnalyticFunction::from_values(format!("transport({}, {})", a_fn.label(), a.value()), move |z| {
        let phi = mobius_jet(a, z);
        inner.eval_raw(phi.value) * phi.d1 * phi.d1
    })
}

/// Branch-continued `(phi_a'(z))^{-1/2}` along the segment from `base`.
///
/// The square root is continued by proximity: at each sample the candidate
/// closer to the previous value is chosen, and a jump of more than pi/2 in
/// angle between adjacent samples is reported as a branch failure.
pub fn sqrt_reciprocal_derivative(
    a: DiscPoint,
    base: DiscPoint,
    z: Complex64,
    samples: usize,
) -> Result<Complex64> {
    let value_at = |w: Complex64| -> Complex64 {
        let d = automorphism_derivative(a, DiscPoint::new(w).expect("interior sample"));
        1.0 / d.sqrt()
    };
    let mut prev = value_at(base.value());
    let delta = z - base.value();
    for i in 1..=samples {
        let w = base.value() + delta * (i as f64 / samples as f64);
        let candidate = value_at(w);
        let chosen = if (candidate - prev).norm() <= (-candidate - prev).norm() {
            candidate
        } else {
            -candidate
        };
        // |chosen - prev| > sqrt(2) |prev| means the angle moved past pi/2
        if (chosen - prev).norm() > 1.35 * prev.norm() {
            return Err(Error::BranchDiscontinuity);
        }
        prev = chosen;
    }
    Ok(prev)
}

/// Transported solution `z -> f(phi_a(z)) (phi_a'(z))^{-1/2}` with the branch
/// of the square root fixed by continuity from `base`. Branch failures
/// surface as NaN from the evaluator.
pub fn transport_solution(
    f: &AnalyticFunction,
    a: DiscPoint,
    base: DiscPoint,
) -> AnalyticFunction {
    let inner = f.clone();
    AnalyticFunction::from_values(format!("transport-sol({})", f.label()), move |z| {
        let phi = mobius_jet(a, z);
        match sqrt_reciprocal_derivative(a, base, z, 24) {
            Ok(s) => inner.eval_raw(phi.value) * s,
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    })
}

/// Theorem-style upper bound on the upper uniform density of a zero
/// sequence in terms of the coefficient's growth norm `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Theorem1Bound {
    /// `N <= 1`: any non-trivial solution vanishes at most once.
    AtMostOnePoint,
    /// `N >= 1`: the explicit density bound (0 exactly at `N = 1`).
    Bound(f64),
}

impl Theorem1Bound {
    pub fn value(&self) -> Option<f64> {
        match self {
            Theorem1Bound::AtMostOnePoint => None,
            Theorem1Bound::Bound(v) => Some(*v),
        }
    }
}

/// `(2 pi + 1) sqrt(t) (1 - sqrt(t))^{-2}` with `t = 1 - 2 sqrt(N) / (N + 1)`
/// for `N >= 1`; the one-point flag below that.
pub fn theorem1_bound(coefficient_norm: f64) -> Result<Theorem1Bound> {
    if !coefficient_norm.is_finite() || coefficient_norm < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "coefficient norm must be a finite nonnegative number, got {coefficient_norm}"
        )));
    }
    if coefficient_norm < 1.0 {
        return Ok(Theorem1Bound::AtMostOnePoint);
    }
    let n = coefficient_norm;
    let t = 1.0 - 2.0 * n.sqrt() / (n + 1.0);
    let root = t.max(0.0).sqrt();
    let bound = (2.0 * std::f64::consts::PI + 1.0) * root / ((1.0 - root) * (1.0 - root));
    Ok(Theorem1Bound::Bound(bound))
}

/// Sampled normality data for `w = g/f` with `W(f, g) = 1`.
#[derive(Debug, Clone)]
pub struct NormalityReport {
    /// `sup` of `(1 - |z|^2) w#(z) = (1 - |z|^2) / (|f|^2 + |g|^2)` over the grid.
    pub sup_sampled: f64,
    pub per_point: Vec<(DiscPoint, f64)>,
    /// At prescribed zeros of `f` the quantity reduces to `(1-|z_n|^2)/|g(z_n)|^2`.
    pub at_zeros: Vec<(DiscPoint, f64)>,
    /// `|W(f, g) - 1|` measured at the base point.
    pub wronskian_residual: f64,
}

/// Samples `(1 - |z|^2) w#(z)` for `w = g/f`; with Wronskian 1 this equals
/// `(1 - |z|^2) / (|f|^2 + |g|^2)` pointwise, so only values are needed.
pub fn normality_diagnostic(
    f: &AnalyticFunction,
    g: &AnalyticFunction,
    base: DiscPoint,
    grid: &DiscGrid,
    zeros: Option<&PointSequence>,
) -> Result<NormalityReport> {
    let fj = f.jet3(base);
    let gj = g.jet3(base);
    let wronskian = fj.value * gj.d1 - fj.d1 * gj.value;
    let wronskian_residual = (wronskian - Complex64::new(1.0, 0.0)).norm();
    if wronskian_residual > 1e-6 {
        return Err(Error::Precondition(format!(
            "Wronskian at base differs from 1 by {wronskian_residual:.3e}"
        )));
    }

    let mut per_point = Vec::with_capacity(grid.len());
    let mut sup_sampled: f64 = 0.0;
    for &z in grid.points() {
        let denom = f.eval(z).norm_sqr() + g.eval(z).norm_sqr();
        let value = (1.0 - z.modulus().powi(2)) / denom;
        sup_sampled = sup_sampled.max(value);
        per_point.push((z, value));
    }

    let mut at_zeros = Vec::new();
    if let Some(zeros) = zeros {
        for &zn in zeros.points() {
            let gv = g.eval(zn).norm_sqr();
            at_zeros.push((zn, (1.0 - zn.modulus().powi(2)) / gv));
        }
    }

    Ok(NormalityReport {
        sup_sampled,
        per_point,
        at_zeros,
        wronskian_residual,
    })
}

/// The nearest pseudo-hyperbolic distance from `z` to a zero of `f` found by
/// Newton refinement of `f ∘ phi_a`-style evaluators is useful in tests;
/// this helper runs plain Newton on a jet-evaluable function.
pub fn newton_zero(
    f: &AnalyticFunction,
    start: DiscPoint,
    iterations: usize,
) -> Result<DiscPoint> {
    let mut z = start.value();
    for _ in 0..iterations {
        let jet = f.jet3_raw(z);
        if jet.d1.norm() < 1e-14 {
            return Err(Error::CriticalPoint {
                derivative_modulus: jet.d1.norm(),
            });
        }
        z -= jet.value / jet.d1;
    }
    DiscPoint::new(z)
}

/// Schwarzian of `w = g/f` computed from jets of the two solutions by jet
/// division; used to check `S_w = 2 A` without touching the quotient's poles.
pub fn schwarzian_of_ratio(f_jet: &Jet, g_jet: &Jet) -> Result<Complex64> {
    let w = g_jet.mul(&f_jet.recip());
    if w.d1.norm() < 1e-12 {
        return Err(Error::CriticalPoint {
            derivative_modulus: w.d1.norm(),
        });
    }
    let ratio = w.d2 / w.d1;
    Ok(w.d3 / w.d1 - 1.5 * ratio * ratio)
}
