//! Special functions used by the fractional kernels.
//!
//! The gamma function is a fixed-coefficient Lanczos approximation (g = 7,
//! nine coefficients) evaluated in log space so arguments up to the f64
//! overflow edge stay representable:
//!
//! ```text
//! gamma(x) = sqrt(2*pi) * t^(z + 1/2) * exp(-t) * A(z),   z = x - 1,  t = z + 7.5
//! A(z)     = c0 + c1/(z+1) + ... + c8/(z+8)
//! ```
//!
//! The one-parameter Mittag-Leffler function is evaluated by its defining
//! power series with an explicit truncation-error bound:
//!
//! ```text
//! E_alpha(z) = sum_{k>=0} z^k / gamma(alpha*k + 1)
//! ```
//!
//! For negative arguments the series eventually alternates with decreasing
//! magnitudes, so the first omitted term bounds the remainder; for positive
//! arguments a geometric ratio bound is used once the term ratio drops
//! below one.

use crate::{Error, Result};

/// Upper edge of the supported gamma domain; `gamma(171)` would still be
/// finite but the approximation is cut at the last integer argument whose
/// neighborhood stays comfortably below f64 overflow.
pub const GAMMA_MAX: f64 = 171.0;

/// Term cap for the Mittag-Leffler series.
pub const ML_MAX_TERMS: usize = 10_000;

/// Largest `|z|` accepted by [`mittag_leffler`]; beyond desk scale the plain
/// series loses too many digits to cancellation to be trustworthy.
pub const ML_MAX_ABS_Z: f64 = 50.0;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos series `A(z)` for `z = x - 1`, valid for `x > 0`.
fn lanczos_series(z: f64) -> f64 {
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

/// `ln(gamma(x))` for `x > 0`, no domain checks (internal fast path).
pub(crate) fn ln_gamma_raw(x: f64) -> f64 {
    if x < 0.5 {
        // recurrence keeps the approximation in its well-conditioned band
        return ln_gamma_raw(x + 1.0) - x.ln();
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let a = lanczos_series(z);
    (z + 0.5) * t.ln() - t + ((2.0 * std::f64::consts::PI).sqrt() * a).ln()
}

/// `gamma(x)` for `x > 0`, no domain checks (internal fast path).
pub(crate) fn gamma_raw(x: f64) -> f64 {
    if x == 1.0 || x == 2.0 {
        // Exact at the unit arguments so order-one limits of downstream
        // coefficients collapse without rounding residue.
        return 1.0;
    }
    if x < 0.5 {
        return gamma_raw(x + 1.0) / x;
    }
    ln_gamma_raw(x).exp()
}

/// Gamma function on `(0, GAMMA_MAX)`.
///
/// Relative accuracy is comfortably below `1e-12` across `(0, 30]` and stays
/// usable (≲ 1e-12 … 1e-13 growing with the log-space exponent) up to the
/// domain edge. Non-positive and overflow-range arguments are rejected.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 || x >= GAMMA_MAX {
        return Err(Error::GammaDomain(x));
    }
    Ok(gamma_raw(x))
}

/// Outcome of a Mittag-Leffler series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlSeriesReport {
    /// Value of `E_alpha(z)`.
    pub value: f64,
    /// Number of series terms accumulated (including the `k = 0` term).
    pub terms_used: usize,
    /// Bound on the truncation remainder; at most the requested tolerance.
    pub truncation_bound: f64,
}

/// One-parameter Mittag-Leffler function `E_alpha(z)` by direct summation.
///
/// Accepts `alpha` in `(0, 1]`, `|z| <= ML_MAX_ABS_Z`, and a positive
/// tolerance for the truncation remainder. Fails with
/// [`Error::MittagLefflerNoConvergence`] when the bound cannot be pushed
/// under the tolerance within [`ML_MAX_TERMS`] terms (slowly growing gamma
/// denominators at small `alpha` make that a real outcome, not a panic).
pub fn mittag_leffler(alpha: f64, z: f64, tol: f64) -> Result<MlSeriesReport> {
    if !(alpha > 0.0 && alpha <= 1.0) || !z.is_finite() || z.abs() > ML_MAX_ABS_Z {
        return Err(Error::MittagLefflerDomain { alpha, z });
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    if z == 0.0 {
        return Ok(MlSeriesReport {
            value: 1.0,
            terms_used: 1,
            truncation_bound: 0.0,
        });
    }

    let ln_abs_z = z.abs().ln();
    let negative = z < 0.0;
    let mut sum = 1.0_f64; // k = 0
    let mut terms_used = 1usize;
    let mut prev_mag = 1.0_f64;
    let mut last_bound = f64::INFINITY;

    for k in 1..=ML_MAX_TERMS {
        // |z|^k / gamma(alpha k + 1) in log space so large k cannot overflow
        let mag = (k as f64 * ln_abs_z - ln_gamma_raw(alpha * k as f64 + 1.0)).exp();
        if negative {
            // alternating tail: once magnitudes decrease, the first omitted
            // term bounds the remainder
            if mag < prev_mag {
                last_bound = mag;
                if mag <= tol {
                    return Ok(MlSeriesReport {
                        value: sum,
                        terms_used,
                        truncation_bound: mag,
                    });
                }
            }
        } else {
            let ratio = mag / prev_mag;
            if ratio < 1.0 {
                let bound = mag / (1.0 - ratio);
                last_bound = bound;
                if bound <= tol {
                    return Ok(MlSeriesReport {
                        value: sum,
                        terms_used,
                        truncation_bound: bound,
                    });
                }
            }
        }
        sum += if negative && k % 2 == 1 { -mag } else { mag };
        prev_mag = mag;
        terms_used += 1;
    }

    Err(Error::MittagLefflerNoConvergence {
        terms: ML_MAX_TERMS,
        bound: last_bound,
    })
}
