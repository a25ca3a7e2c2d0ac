use crate::{Error, Result};

/// Default clamp window for the derivative order.
///
/// The power-law and Mittag-Leffler kernels degenerate as the order
/// approaches 0 (the gamma factor blows up), so evaluations are kept away
/// from 0 by default while still allowing the full classical limit 1.
pub const DEFAULT_ORDER_CLAMP: (f64, f64) = (0.05, 1.0);

/// Shape of the order trajectory `psi(t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum OrderKind {
    /// `psi(t) = value`.
    Constant { value: f64 },
    /// Linear drift from `from` at `t_start` to `to` at `t_end`; held constant
    /// outside that span.
    Ramp {
        from: f64,
        to: f64,
        t_start: f64,
        t_end: f64,
    },
    /// `psi(t) = base + amplitude * sin(omega * t)`.
    Sinusoidal {
        base: f64,
        amplitude: f64,
        omega: f64,
    },
}

/// Derivative-order trajectory clamped into a sub-interval of `(0, 1]`.
///
/// Evaluation is pure: the same `t` always yields the bit-identical order.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderFunction {
    kind: OrderKind,
    clamp: (f64, f64),
}

impl OrderFunction {
    /// Builds an order function with the default clamp window.
    pub fn new(kind: OrderKind) -> Result<Self> {
        Self::with_clamp(kind, DEFAULT_ORDER_CLAMP)
    }

    /// Builds an order function with an explicit clamp window, which must
    /// satisfy `0 < lo <= hi <= 1`.
    pub fn with_clamp(kind: OrderKind, clamp: (f64, f64)) -> Result<Self> {
        let (lo, hi) = clamp;
        if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || hi > 1.0 || lo > hi {
            return Err(Error::InvalidOrderClamp { lo, hi });
        }
        if let OrderKind::Ramp { t_start, t_end, .. } = kind {
            if !(t_start.is_finite() && t_end.is_finite()) || t_end <= t_start {
                return Err(Error::InvalidSpan {
                    t0: t_start,
                    t_end,
                });
            }
        }
        Ok(Self { kind, clamp })
    }

    /// Constant order `psi(t) = value` with the default clamp.
    pub fn constant(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 || value > 1.0 {
            return Err(Error::OrderOutOfRange(value));
        }
        Self::new(OrderKind::Constant { value })
    }

    /// Evaluates `psi(t)`, clamped into the configured window.
    pub fn eval(&self, t: f64) -> f64 {
        let raw = match &self.kind {
            OrderKind::Constant { value } => *value,
            OrderKind::Ramp {
                from,
                to,
                t_start,
                t_end,
            } => {
                let s = ((t - t_start) / (t_end - t_start)).clamp(0.0, 1.0);
                from + s * (to - from)
            }
            OrderKind::Sinusoidal {
                base,
                amplitude,
                omega,
            } => base + amplitude * (omega * t).sin(),
        };
        raw.clamp(self.clamp.0, self.clamp.1)
    }

    /// `Some(value)` when the order never changes over the run (enables the
    /// solvers' incremental weight cache).
    pub fn constant_value(&self) -> Option<f64> {
        match &self.kind {
            OrderKind::Constant { value } => Some(value.clamp(self.clamp.0, self.clamp.1)),
            _ => None,
        }
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn clamp_window(&self) -> (f64, f64) {
        self.clamp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_order_evaluates_to_itself() {
        let f = OrderFunction::constant(0.9).unwrap();
        assert_eq!(f.eval(0.0), 0.9);
        assert_eq!(f.eval(123.4), 0.9);
        assert_eq!(f.constant_value(), Some(0.9));
    }

    #[test]
    fn ramp_interpolates_linearly() {
        let f = OrderFunction::new(OrderKind::Ramp {
            from: 0.8,
            to: 1.0,
            t_start: 0.0,
            t_end: 10.0,
        })
        .unwrap();
        assert!((f.eval(5.0) - 0.9).abs() < 1e-15);
        assert_eq!(f.eval(-1.0), 0.8);
        assert_eq!(f.eval(11.0), 1.0);
        assert_eq!(f.constant_value(), None);
    }

    #[test]
    fn sinusoidal_stays_inside_clamp() {
        let f = OrderFunction::new(OrderKind::Sinusoidal {
            base: 0.85,
            amplitude: 0.1,
            omega: 1.0,
        })
        .unwrap();
        assert!((f.eval(0.0) - 0.85).abs() < 1e-15);
        for k in 0..2000 {
            let v = f.eval(k as f64 * 0.1);
            assert!(v > 0.0 && v <= 1.0);
        }
    }

    #[test]
    fn large_amplitude_is_clamped_not_rejected() {
        let f = OrderFunction::new(OrderKind::Sinusoidal {
            base: 0.9,
            amplitude: 0.5,
            omega: 2.0,
        })
        .unwrap();
        for k in 0..1000 {
            let v = f.eval(k as f64 * 0.01);
            assert!((0.05..=1.0).contains(&v));
        }
    }

    #[test]
    fn rejects_bad_clamps() {
        let kind = OrderKind::Constant { value: 0.5 };
        assert!(OrderFunction::with_clamp(kind.clone(), (0.0, 1.0)).is_err());
        assert!(OrderFunction::with_clamp(kind.clone(), (0.2, 1.1)).is_err());
        assert!(OrderFunction::with_clamp(kind.clone(), (0.9, 0.1)).is_err());
        assert!(OrderFunction::with_clamp(kind, (0.05, 1.0)).is_ok());
    }

    #[test]
    fn rejects_out_of_range_constants() {
        assert!(OrderFunction::constant(0.0).is_err());
        assert!(OrderFunction::constant(-0.3).is_err());
        assert!(OrderFunction::constant(1.2).is_err());
        assert!(OrderFunction::constant(1.0).is_ok());
    }

    #[test]
    fn evaluation_is_pure() {
        let f = OrderFunction::new(OrderKind::Sinusoidal {
            base: 0.85,
            amplitude: 0.1,
            omega: 3.0,
        })
        .unwrap();
        for k in 0..100 {
            let t = k as f64 * 0.37;
            assert_eq!(f.eval(t).to_bits(), f.eval(t).to_bits());
        }
    }
}
