//! Variable-order fractional dynamics toolkit.
//!
//! The crate simulates systems of the form `D^{psi(t)} X(t) = F(X(t))` where
//! the derivative order `psi(t)` may drift inside `(0, 1]` over the run. Three
//! derivative senses are implemented — a power-law kernel (`lc`), an
//! exponential kernel (`cfc`), and a Mittag-Leffler kernel (`abc`) — next to a
//! classical fourth-order Runge-Kutta reference for the integer-order limit.
//!
//! Everything here is deterministic: no RNG, no clock reads outside wall-time
//! bookkeeping, and identical inputs produce bit-identical trajectories.

mod error;
mod grid;
mod order;
mod trajectory;

pub mod diagnostics;
pub mod kernels;
pub mod solver;
pub mod special;
pub mod system;
pub mod systems;

pub use error::{Error, Result};
pub use grid::TimeGrid;
pub use order::{OrderFunction, OrderKind, DEFAULT_ORDER_CLAMP};
pub use solver::{
    solve, solve_abc, solve_cfc, solve_lc, solve_rk4, CfNormalization, HistoryBootstrap, Scheme,
    SchemeConfig, SchemeMode, DIVERGENCE_THRESHOLD,
};
pub use system::{ParamSet, SystemDefinition};
pub use trajectory::{RunMeta, Trajectory};

/// State vector of a system at one time node; length equals the system dimension.
pub type State = Vec<f64>;
