use crate::solver::Scheme;

/// Everything that can go wrong inside the core crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("step size must be positive and finite (got {0})")]
    InvalidStep(f64),
    #[error("time span must be positive and finite (t0 = {t0}, t_end = {t_end})")]
    InvalidSpan { t0: f64, t_end: f64 },
    #[error("grid must contain at least one step")]
    EmptyGrid,
    #[error("grid of {requested} steps exceeds the cap of {cap}")]
    GridTooLarge { requested: usize, cap: usize },
    #[error("order clamp [{lo}, {hi}] must satisfy 0 < lo <= hi <= 1")]
    InvalidOrderClamp { lo: f64, hi: f64 },
    #[error("derivative order {0} outside (0, 1]")]
    OrderOutOfRange(f64),
    #[error("gamma argument {0} outside the supported domain (0, 171)")]
    GammaDomain(f64),
    #[error("mittag-leffler arguments out of range (alpha = {alpha}, z = {z})")]
    MittagLefflerDomain { alpha: f64, z: f64 },
    #[error("mittag-leffler series did not converge within {terms} terms (bound {bound:.3e})")]
    MittagLefflerNoConvergence { terms: usize, bound: f64 },
    #[error("tolerance must be positive and finite (got {0})")]
    InvalidTolerance(f64),
    #[error("kernel weight arguments out of range (psi = {psi}, h = {h})")]
    WeightDomain { psi: f64, h: f64 },
    #[error("normalization argument {value} outside {domain}")]
    NormalizationDomain { value: f64, domain: &'static str },
    #[error("initial state has dimension {got}, system expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scheme config selects {configured:?} but the {invoked:?} solver was invoked")]
    SchemeMismatch { configured: Scheme, invoked: Scheme },
    #[error("trajectories live on different grids or dimensions")]
    GridMismatch,
    #[error("transient fraction {0} must lie in [0, 1)")]
    InvalidTransientFraction(f64),
    #[error("window is empty after transient removal")]
    EmptyWindow,
    #[error("lyapunov horizon must be at least {min} time units (got {got})")]
    HorizonTooShort { min: f64, got: f64 },
    #[error("trajectory diverged at step {0}")]
    Diverged(usize),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("unknown system `{0}`")]
    UnknownSystem(String),
    #[error("unknown preset `{preset}` for system `{system}`")]
    UnknownPreset { system: String, preset: String },
}

pub type Result<T> = std::result::Result<T, Error>;
