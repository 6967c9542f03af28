use thiserror::Error;

/// Errors raised by the numerical operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamoError {
    #[error("degenerate arclength domain [{min}, {max}]")]
    DegenerateDomain { min: f64, max: f64 },

    #[error("sampled profile needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("sample abscissae must be strictly increasing (index {0})")]
    NonIncreasingSamples(usize),

    #[error("sample arrays differ in length: {s} abscissae, {values} values")]
    SampleLengthMismatch { s: usize, values: usize },

    #[error("frame is not orthonormal and right-handed (deviation {deviation:e})")]
    InvalidFrame { deviation: f64 },

    #[error("non-finite curvature or torsion at s = {s}")]
    NonFiniteProfile { s: f64 },

    #[error("integration step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("empty frame trajectory")]
    EmptyTrajectory,

    #[error("space curve chord exceeds arclength spacing at index {0}")]
    ChordExceedsArclength(usize),

    #[error("evaluation on the tube axis (r = 0) is singular")]
    SingularAxis,

    #[error("finite-difference step {h} must satisfy 0 < h < r = {r}")]
    StepTooLarge { h: f64, r: f64 },

    #[error("singular parameter: {0}")]
    SingularParameter(&'static str),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("degenerate grid: {0}")]
    DegenerateGrid(&'static str),

    #[error("field length {got} does not match grid size {expected}")]
    FieldSizeMismatch { expected: usize, got: usize },

    #[error("marginal case: growth rate is zero in {0}")]
    MarginalDivision(&'static str),

    #[error("diffusionless limit (eta = 0): {0}")]
    DiffusionlessLimit(&'static str),

    #[error("solenoidal constraint violated: residual {residual:e}")]
    SolenoidalViolation { residual: f64 },

    #[error("growth curve needs at least 3 samples, got {0}")]
    TooFewGrowthSamples(usize),

    #[error("growth curve: {0}")]
    InvalidGrowthCurve(&'static str),
}

pub type Result<T, E = DynamoError> = std::result::Result<T, E>;
