//! Time-stepping schemes.
//!
//! Four solvers share one calling convention (`system`, `order`, `grid`,
//! initial state, scheme config) and one output type:
//!
//! * [`solve_lc`] — power-law kernel, full history resummation per step
//!   (O(N^2) work, O(N) memory).
//! * [`solve_cfc`] — exponential kernel, two-sample update (O(N) work, O(1)
//!   history).
//! * [`solve_abc`] — Mittag-Leffler kernel: a local term plus the same
//!   history sum as the power-law scheme.
//! * [`solve_rk4`] — classical fourth-order Runge-Kutta on the integer-order
//!   system, used as the `psi = 1` reference.
//!
//! Shared conventions: the right-hand side before the start of the run
//! (`F_{-1}`) is bootstrapped per [`HistoryBootstrap`]; the order is sampled
//! at the *target* node `t_{n+1}` when step `n` is assembled; a non-finite
//! state or a max-norm beyond [`DIVERGENCE_THRESHOLD`] halts the run and is
//! recorded in the metadata rather than raised as an error.

mod cfc;
mod history;
mod rk4;

pub use cfc::solve_cfc;
pub use rk4::solve_rk4;
pub(crate) use rk4::Rk4Stepper;

use crate::{Error, OrderFunction, Result, SystemDefinition, TimeGrid, Trajectory};

/// Max-norm beyond which a state counts as diverged.
pub const DIVERGENCE_THRESHOLD: f64 = 1e8;

/// Which derivative sense a run integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Power-law kernel (classical fractional sense).
    Lc,
    /// Exponential kernel.
    Cfc,
    /// Mittag-Leffler kernel.
    Abc,
    /// Integer-order Runge-Kutta reference.
    Rk4,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Lc => "lc",
            Scheme::Cfc => "cfc",
            Scheme::Abc => "abc",
            Scheme::Rk4 => "rk4",
        }
    }

    pub const ALL: [Scheme; 4] = [Scheme::Lc, Scheme::Cfc, Scheme::Abc, Scheme::Rk4];
}

impl std::str::FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lc" => Ok(Scheme::Lc),
            "cfc" => Ok(Scheme::Cfc),
            "abc" => Ok(Scheme::Abc),
            "rk4" => Ok(Scheme::Rk4),
            other => Err(format!("unknown scheme `{other}` (expected lc|cfc|abc|rk4)")),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How faithfully an update rule follows its printed source form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SchemeMode {
    /// Numerically conventional reconstruction (default).
    #[default]
    Reference,
    /// The update exactly as printed in the source material: the history
    /// schemes resum a single collapsed weight against sample differences
    /// from the fixed base `X_0`, and the exponential-kernel scheme keeps
    /// `X_0` as its base as well. Kept for fidelity comparisons.
    Literal,
}

impl SchemeMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeMode::Reference => "reference",
            SchemeMode::Literal => "literal",
        }
    }
}

/// Normalization used by the exponential-kernel scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CfNormalization {
    /// Divide the update by the kernel normalizer `2/(2 - psi)` (default).
    /// At `psi = 1` the integral coefficient is then 1/2.
    #[default]
    Kernel,
    /// Treat the normalizer as 1, giving coefficients `(1 - psi)` and `psi`;
    /// the only choice that recovers the classical two-step method at
    /// `psi = 1`.
    Unit,
}

impl CfNormalization {
    pub fn as_str(&self) -> &'static str {
        match self {
            CfNormalization::Kernel => "kernel",
            CfNormalization::Unit => "unit",
        }
    }
}

/// Value used for `F_{-1}`, the right-hand side sample before the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HistoryBootstrap {
    /// `F_{-1} := F_0` (flat extrapolation; default — the first step then
    /// reduces to a forward-Euler step at the classical limit).
    #[default]
    Flat,
    /// `F_{-1} := 0`.
    Zero,
}

impl HistoryBootstrap {
    pub fn as_str(&self) -> &'static str {
        match self {
            HistoryBootstrap::Flat => "flat",
            HistoryBootstrap::Zero => "zero",
        }
    }
}

/// Full scheme selection, recorded verbatim into trajectory metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub mode: SchemeMode,
    pub cf_normalization: CfNormalization,
    pub bootstrap: HistoryBootstrap,
}

impl SchemeConfig {
    pub fn new(scheme: Scheme) -> Self {
        Self {
            scheme,
            mode: SchemeMode::default(),
            cf_normalization: CfNormalization::default(),
            bootstrap: HistoryBootstrap::default(),
        }
    }

    pub fn with_mode(mut self, mode: SchemeMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_cf_normalization(mut self, norm: CfNormalization) -> Self {
        self.cf_normalization = norm;
        self
    }

    pub fn with_bootstrap(mut self, bootstrap: HistoryBootstrap) -> Self {
        self.bootstrap = bootstrap;
        self
    }
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self::new(Scheme::Lc)
    }
}

/// Power-law-kernel solver; see the module docs for conventions.
pub fn solve_lc(
    system: &SystemDefinition,
    order: &OrderFunction,
    grid: &TimeGrid,
    x0: &[f64],
    cfg: &SchemeConfig,
) -> Result<Trajectory> {
    expect_scheme(cfg, Scheme::Lc)?;
    history::run_history_solver(system, order, grid, x0, cfg)
}

/// Mittag-Leffler-kernel solver; see the module docs for conventions.
pub fn solve_abc(
    system: &SystemDefinition,
    order: &OrderFunction,
    grid: &TimeGrid,
    x0: &[f64],
    cfg: &SchemeConfig,
) -> Result<Trajectory> {
    expect_scheme(cfg, Scheme::Abc)?;
    history::run_history_solver(system, order, grid, x0, cfg)
}

/// Dispatches on `cfg.scheme`. The integer-order reference ignores `order`.
pub fn solve(
    system: &SystemDefinition,
    order: &OrderFunction,
    grid: &TimeGrid,
    x0: &[f64],
    cfg: &SchemeConfig,
) -> Result<Trajectory> {
    match cfg.scheme {
        Scheme::Lc => solve_lc(system, order, grid, x0, cfg),
        Scheme::Cfc => solve_cfc(system, order, grid, x0, cfg),
        Scheme::Abc => solve_abc(system, order, grid, x0, cfg),
        Scheme::Rk4 => solve_rk4(system, grid, x0),
    }
}

pub(crate) fn expect_scheme(cfg: &SchemeConfig, invoked: Scheme) -> Result<()> {
    if cfg.scheme != invoked {
        return Err(Error::SchemeMismatch {
            configured: cfg.scheme,
            invoked,
        });
    }
    Ok(())
}

pub(crate) fn check_dimension(system: &SystemDefinition, x0: &[f64]) -> Result<()> {
    if x0.len() != system.dimension() {
        return Err(Error::DimensionMismatch {
            expected: system.dimension(),
            got: x0.len(),
        });
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::Diverged(0));
    }
    Ok(())
}

/// True when a state is non-finite or beyond the divergence threshold.
#[inline]
pub(crate) fn state_diverged(state: &[f64]) -> bool {
    state
        .iter()
        .any(|v| !v.is_finite() || v.abs() > DIVERGENCE_THRESHOLD)
}
