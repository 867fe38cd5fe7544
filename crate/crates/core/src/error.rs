//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors raised by geometry, evaluation, construction, and integration
/// routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A point failed the strict interiority requirement `|z| < 1 - 1e-12`.
    #[error("point with modulus {modulus} is not strictly inside the unit disc")]
    PointOutsideDisc { modulus: f64 },

    /// The Cayley transform was applied to a point outside the upper half-plane.
    #[error("Cayley transform requires Im(zeta) > 0, got {imag}")]
    NotInUpperHalfPlane { imag: f64 },

    /// A numeric parameter was outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An operation needed more points than the sequence provides.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A sequence contained a repeated point.
    #[error("sequence points must be pairwise distinct (duplicate at index {index})")]
    DuplicatePoint { index: usize },

    /// Jet order outside the supported range 0..=3.
    #[error("jet order {0} not supported (maximum is 3)")]
    JetOrder(usize),

    /// The Schwarzian derivative was requested at a critical point.
    #[error("Schwarzian derivative undefined: |W'(z)| = {derivative_modulus} below 1e-12")]
    CriticalPoint { derivative_modulus: f64 },

    /// Precondition `g(z0) = 0` (or similar) failed.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The interpolation solve left a residual above the acceptance threshold.
    #[error("interpolation failed: max residual {residual:.3e} (condition estimate {condition:.3e}, regularized: {regularized})")]
    InterpolationFailure {
        residual: f64,
        condition: f64,
        regularized: bool,
    },

    /// The constructed bundle does not satisfy f'' + A f = 0 to tolerance.
    #[error("construction inconsistent: ODE residual {residual:.3e} exceeds {limit:.3e}")]
    ConstructionInconsistent { residual: f64, limit: f64 },

    /// Adaptive step-size control underflowed.
    #[error("step size underflow at path parameter {at}: coefficient too singular along path")]
    StepSizeUnderflow { at: f64 },

    /// A contour for zero counting could not be moved off a zero of f.
    #[error("contour passes within tolerance of a zero of f after {nudges} nudges")]
    ContourThroughZero { nudges: usize },

    /// The argument-principle integral did not land near an integer.
    #[error("argument principle gave {value}, which is {deviation:.3} from the nearest integer")]
    NonIntegerWinding { value: f64, deviation: f64 },

    /// Quadrature refinement disagreed beyond the stability threshold.
    #[error("quadrature unstable: coarse {coarse:.6e} vs refined {fine:.6e} differ by more than {threshold:.1}%")]
    QuadratureUnstable {
        coarse: f64,
        fine: f64,
        threshold: f64,
    },

    /// Branch continuation of a square root jumped between samples.
    #[error("branch tracking failed: discontinuity between adjacent samples")]
    BranchDiscontinuity,

    /// The path passes through (or too close to) a zero of the integrand's denominator.
    #[error("path passes within 1e-10 of a zero of f")]
    PathThroughZero,

    /// Verification of a constructed bundle failed.
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    /// Sequence file could not be parsed; carries serde_json's line/column.
    #[error("sequence file parse error: {0}")]
    SequenceFileParse(#[from] serde_json::Error),

    /// Filesystem error while reading or writing an artifact.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
