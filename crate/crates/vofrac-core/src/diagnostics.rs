//! Post-hoc trajectory analysis: synchronization error, bounds and moment
//! statistics over a post-transient window, and a largest-Lyapunov-exponent
//! estimate from two-trajectory perturbation rescaling.
//!
//! The Lyapunov estimator integrates at order one only: the fractional
//! schemes carry full memory, which makes perturbation rescaling
//! theoretically murky, so chaos in fractional runs is evidenced by
//! boundedness and moment reports instead.

use crate::solver::{check_dimension, state_diverged, Rk4Stepper};
use crate::{Error, Result, SystemDefinition, Trajectory};

/// Default threshold on the tail-mean separation for calling two
/// trajectories synchronized.
pub const DEFAULT_SYNC_THRESHOLD: f64 = 1e-3;

/// Default fraction of leading nodes discarded as transient by statistics.
pub const DEFAULT_TRANSIENT_FRACTION: f64 = 0.1;

/// Minimum horizon (time units) accepted by the Lyapunov estimator.
pub const LYAPUNOV_MIN_HORIZON: f64 = 200.0;

/// Initial separation between the base and companion trajectories.
const LYAPUNOV_D0: f64 = 1e-8;

/// Node-by-node separation of two trajectories on a shared grid.
#[derive(Debug, Clone)]
pub struct SyncReport {
    /// Euclidean distance between the two states at each node.
    pub errors: Vec<f64>,
    /// Mean distance over the last tenth of the nodes (at least one).
    pub tail_mean: f64,
    /// Whether `tail_mean < threshold`.
    pub synchronized: bool,
    /// The threshold the verdict used.
    pub threshold: f64,
}

/// Compares two trajectories node by node. Requires identical grids,
/// dimensions, and node counts (a run that halted early is not comparable
/// over the full grid).
pub fn sync_error(a: &Trajectory, b: &Trajectory, threshold: f64) -> Result<SyncReport> {
    if !threshold.is_finite() || threshold <= 0.0 {
        return Err(Error::InvalidTolerance(threshold));
    }
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            expected: a.dimension(),
            got: b.dimension(),
        });
    }
    if a.grid() != b.grid() || a.n_nodes() != b.n_nodes() {
        return Err(Error::GridMismatch);
    }

    let errors: Vec<f64> = a
        .states()
        .zip(b.states())
        .map(|(sa, sb)| {
            sa.iter()
                .zip(sb)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt()
        })
        .collect();

    let tail_len = (errors.len() / 10).max(1);
    let tail = &errors[errors.len() - tail_len..];
    let tail_mean = tail.iter().sum::<f64>() / tail_len as f64;

    Ok(SyncReport {
        synchronized: tail_mean < threshold,
        errors,
        tail_mean,
        threshold,
    })
}

/// Central moments of one trajectory component over the retained window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentMoments {
    pub mean: f64,
    /// Population variance (second central moment).
    pub variance: f64,
    /// `m4 / m2^2 - 3`; defined as 0 for a degenerate (zero-variance)
    /// component.
    pub excess_kurtosis: f64,
}

/// Bounds and moments of a trajectory after transient removal, plus an
/// optional perturbation-growth rate filled in by the caller from
/// [`largest_lyapunov`] (the estimate needs its own integration, not the
/// trajectory at hand).
#[derive(Debug, Clone)]
pub struct ChaosReport {
    pub lyapunov: Option<f64>,
    /// Per-component `(min, max)` over the retained window.
    pub bounds: Vec<(f64, f64)>,
    pub moments: Vec<ComponentMoments>,
    /// Fraction of leading nodes that were discarded.
    pub transient_fraction: f64,
}

/// Bounds and population moments per component, computed over the nodes
/// remaining after discarding the leading `transient_fraction` of them.
pub fn trajectory_stats(traj: &Trajectory, transient_fraction: f64) -> Result<ChaosReport> {
    if !transient_fraction.is_finite() || !(0.0..1.0).contains(&transient_fraction) {
        return Err(Error::InvalidTransientFraction(transient_fraction));
    }
    let n = traj.n_nodes();
    let start = (n as f64 * transient_fraction).floor() as usize;
    if start >= n {
        return Err(Error::EmptyWindow);
    }
    let kept = (n - start) as f64;
    let dim = traj.dimension();

    let mut bounds = vec![(f64::INFINITY, f64::NEG_INFINITY); dim];
    let mut means = vec![0.0; dim];
    for state in traj.states().skip(start) {
        for (j, &v) in state.iter().enumerate() {
            let (lo, hi) = &mut bounds[j];
            *lo = lo.min(v);
            *hi = hi.max(v);
            means[j] += v;
        }
    }
    for m in &mut means {
        *m /= kept;
    }

    let mut m2 = vec![0.0; dim];
    let mut m4 = vec![0.0; dim];
    for state in traj.states().skip(start) {
        for (j, &v) in state.iter().enumerate() {
            let d2 = (v - means[j]) * (v - means[j]);
            m2[j] += d2;
            m4[j] += d2 * d2;
        }
    }
    let moments = (0..dim)
        .map(|j| {
            let variance = m2[j] / kept;
            let excess_kurtosis = if variance == 0.0 {
                0.0
            } else {
                (m4[j] / kept) / (variance * variance) - 3.0
            };
            ComponentMoments {
                mean: means[j],
                variance,
                excess_kurtosis,
            }
        })
        .collect();

    Ok(ChaosReport {
        lyapunov: None,
        bounds,
        moments,
        transient_fraction,
    })
}

/// Largest-Lyapunov-exponent estimate by two-trajectory rescaling at order
/// one: a companion offset by [`LYAPUNOV_D0`] (spread evenly across
/// components) is integrated alongside the base, the separation is
/// renormalized back to `d0` every time unit, and the estimate is the mean
/// log growth per unit time after discarding the leading tenth of the
/// intervals.
pub fn largest_lyapunov(
    system: &SystemDefinition,
    x0: &[f64],
    horizon: f64,
    h: f64,
) -> Result<f64> {
    check_dimension(system, x0)?;
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidStep(h));
    }
    if !horizon.is_finite() || horizon < LYAPUNOV_MIN_HORIZON {
        return Err(Error::HorizonTooShort {
            min: LYAPUNOV_MIN_HORIZON,
            got: horizon,
        });
    }
    let dim = system.dimension();
    // Renormalize every ~1 time unit, on a whole number of steps.
    let steps_per_interval = ((1.0 / h).round() as usize).max(1);
    let tau = steps_per_interval as f64 * h;
    let n_intervals = (horizon / tau + 1e-9).floor() as usize;
    let discard = n_intervals / 10;

    let offset = LYAPUNOV_D0 / (dim as f64).sqrt();
    let mut xa = x0.to_vec();
    let mut xb: Vec<f64> = x0.iter().map(|v| v + offset).collect();
    let mut tmp = vec![0.0; dim];
    let mut stepper = Rk4Stepper::new(dim);

    let mut sum_log = 0.0;
    for interval in 0..n_intervals {
        for s in 0..steps_per_interval {
            let t = ((interval * steps_per_interval + s) as f64) * h;
            stepper.step(system, t, h, &xa, &mut tmp);
            std::mem::swap(&mut xa, &mut tmp);
            stepper.step(system, t, h, &xb, &mut tmp);
            std::mem::swap(&mut xb, &mut tmp);
        }
        let end_step = (interval + 1) * steps_per_interval;
        if state_diverged(&xa) {
            return Err(Error::Diverged(end_step));
        }

        let d = xa
            .iter()
            .zip(&xb)
            .map(|(a, b)| (b - a) * (b - a))
            .sum::<f64>()
            .sqrt();
        if !d.is_finite() {
            return Err(Error::Diverged(end_step));
        }

        if d > 0.0 {
            if interval >= discard {
                sum_log += (d / LYAPUNOV_D0).ln();
            }
            // Pull the companion back to separation d0 along the current
            // separation direction.
            let scale = LYAPUNOV_D0 / d;
            for (b, a) in xb.iter_mut().zip(&xa) {
                *b = a + (*b - a) * scale;
            }
        } else {
            // The companion collapsed onto the base (possible at an exact
            // equilibrium, or when the offset falls below the state's
            // floating-point resolution). Record a floor distance and
            // re-seed along the initial offset direction.
            if interval >= discard {
                sum_log += (1e-300f64 / LYAPUNOV_D0).ln();
            }
            for (b, a) in xb.iter_mut().zip(&xa) {
                *b = a + offset;
            }
        }
    }

    let kept = (n_intervals - discard) as f64;
    Ok(sum_log / (kept * tau))
}
