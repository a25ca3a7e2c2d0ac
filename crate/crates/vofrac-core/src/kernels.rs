//! Quadrature weights and normalization constants for the fractional kernels.
//!
//! The history solvers discretize the order-`psi` integral with a linear
//! reconstruction of the right-hand side on each past step. For a node lag
//! `N = n - m` that yields a weight pair
//!
//! ```text
//! E1(psi, N, h) = h^(psi+1) * [ (N+1)^psi (N+2+psi) - N^psi (N+2+2 psi) ] / (psi (psi+1))
//! E2(psi, N, h) = h^(psi+1) * [ (N+1)^(psi+1)       - N^psi (N+1+psi)   ] / (psi (psi+1))
//! ```
//!
//! multiplying the newest (`F_m`) and previous (`F_{m-1}`) samples. At the
//! classical limit `psi = 1` they collapse to the two-step Adams-Bashforth
//! coefficients `3h^2/2` and `h^2/2` for every lag. `0^psi` is `0`, so the
//! `N = 0` pair is well defined.
//!
//! Two normalization constants accompany the exponential and
//! Mittag-Leffler kernels:
//!
//! ```text
//! norm_ab(psi) = 1 - psi + psi / gamma(psi)        (Mittag-Leffler kernel)
//! norm_cf(psi) = 2 / (2 - psi)                     (exponential kernel)
//! ```

use crate::special::gamma_raw;
use crate::{Error, Result};

/// Weight pair for one lag, bundling the inputs it was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelWeight {
    pub psi: f64,
    pub lag: usize,
    pub e1: f64,
    pub e2: f64,
}

#[inline]
fn check_weight_domain(psi: f64, h: f64) -> Result<()> {
    if !(psi > 0.0 && psi <= 1.0) || !h.is_finite() || h <= 0.0 {
        return Err(Error::WeightDomain { psi, h });
    }
    Ok(())
}

/// Shared closed form for one lag; `n_pow = N^psi`, `n1_pow = (N+1)^psi`,
/// `scale = h^(psi+1)` (or `h^psi` for weights pre-divided by `h`).
#[inline]
fn weight_pair(psi: f64, scale: f64, denom: f64, lag: f64, n_pow: f64, n1_pow: f64) -> (f64, f64) {
    let e1 = scale * (n1_pow * (lag + 2.0 + psi) - n_pow * (lag + 2.0 + 2.0 * psi)) / denom;
    let e2 = scale * (n1_pow * (lag + 1.0) - n_pow * (lag + 1.0 + psi)) / denom;
    (e1, e2)
}

/// Weight multiplying the newest sample `F_m` at lag `N = n - m`.
pub fn weight_e1(psi: f64, lag: usize, h: f64) -> Result<f64> {
    Ok(kernel_weight(psi, lag, h)?.e1)
}

/// Weight multiplying the previous sample `F_{m-1}` at lag `N = n - m`.
pub fn weight_e2(psi: f64, lag: usize, h: f64) -> Result<f64> {
    Ok(kernel_weight(psi, lag, h)?.e2)
}

/// Both weights for one lag.
pub fn kernel_weight(psi: f64, lag: usize, h: f64) -> Result<KernelWeight> {
    check_weight_domain(psi, h)?;
    let n = lag as f64;
    let n_pow = if lag == 0 { 0.0 } else { n.powf(psi) };
    let n1_pow = (n + 1.0).powf(psi);
    let scale = h.powf(psi + 1.0);
    let denom = psi * (psi + 1.0);
    let (e1, e2) = weight_pair(psi, scale, denom, n, n_pow, n1_pow);
    Ok(KernelWeight { psi, lag, e1, e2 })
}

/// Normalization of the Mittag-Leffler kernel, `1 - psi + psi/gamma(psi)`,
/// for `psi` in `(0, 1]`. The `psi = 1` endpoint is pinned to exactly `1` so
/// the classical limit is exact rather than accurate to a few ulp.
pub fn norm_ab(psi: f64) -> Result<f64> {
    if !(psi > 0.0 && psi <= 1.0) {
        return Err(Error::NormalizationDomain {
            value: psi,
            domain: "(0, 1]",
        });
    }
    if psi == 1.0 {
        return Ok(1.0);
    }
    Ok(1.0 - psi + psi / gamma_raw(psi))
}

/// Normalization of the exponential kernel, `2 / (2 - psi)`, for `psi` in
/// `[0, 1]`.
pub fn norm_cf(psi: f64) -> Result<f64> {
    if !(psi >= 0.0 && psi <= 1.0) {
        return Err(Error::NormalizationDomain {
            value: psi,
            domain: "[0, 1]",
        });
    }
    Ok(2.0 / (2.0 - psi))
}

/// Per-run cache of the lag-indexed weights, pre-divided by `h`.
///
/// For a constant order the table only ever extends (one new power per added
/// lag); when the order changes between steps the whole table is rebuilt for
/// the new `psi`, which is the scheme's intrinsic O(n)-per-step cost.
#[derive(Debug, Clone)]
pub(crate) struct WeightTable {
    h: f64,
    psi: f64,
    h_pow: f64,
    denom: f64,
    next_pow: f64,
    w1: Vec<f64>,
    w2: Vec<f64>,
}

impl WeightTable {
    pub fn new(h: f64) -> Self {
        Self {
            h,
            psi: f64::NAN,
            h_pow: 0.0,
            denom: 0.0,
            next_pow: 0.0,
            w1: Vec::new(),
            w2: Vec::new(),
        }
    }

    /// Makes lags `0..=max_lag` available for the given order.
    pub fn prepare(&mut self, psi: f64, max_lag: usize) {
        if self.psi.to_bits() != psi.to_bits() {
            self.psi = psi;
            self.h_pow = self.h.powf(psi);
            self.denom = psi * (psi + 1.0);
            self.next_pow = 0.0; // 0^psi
            self.w1.clear();
            self.w2.clear();
        }
        while self.w1.len() <= max_lag {
            let lag = self.w1.len() as f64;
            let n_pow = self.next_pow;
            let n1_pow = (lag + 1.0).powf(self.psi);
            let (e1h, e2h) = weight_pair(self.psi, self.h_pow, self.denom, lag, n_pow, n1_pow);
            self.w1.push(e1h);
            self.w2.push(e2h);
            self.next_pow = n1_pow;
        }
    }

    /// Weights `E1/h` indexed by lag.
    pub fn w1(&self) -> &[f64] {
        &self.w1
    }

    /// Weights `E2/h` indexed by lag.
    pub fn w2(&self) -> &[f64] {
        &self.w2
    }
}
