use crate::{Error, Result};

/// Default cap on the number of steps a grid may request.
pub const DEFAULT_MAX_STEPS: usize = 10_000_000;

/// Uniform time grid `t_k = t0 + k*h` for `k = 0..=n_steps`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    h: f64,
    n_steps: usize,
}

impl TimeGrid {
    /// Builds a grid covering `[t0, t_end]`, choosing `n_steps` as the nearest
    /// integer to `(t_end - t0)/h` so the last node lands within `h/2` of
    /// `t_end`. Rejects non-positive spans or steps, empty grids, and grids
    /// beyond [`DEFAULT_MAX_STEPS`].
    pub fn new(t0: f64, t_end: f64, h: f64) -> Result<Self> {
        Self::with_max_steps(t0, t_end, h, DEFAULT_MAX_STEPS)
    }

    /// Same as [`TimeGrid::new`] with an explicit step cap.
    pub fn with_max_steps(t0: f64, t_end: f64, h: f64, max_steps: usize) -> Result<Self> {
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::InvalidStep(h));
        }
        if !t0.is_finite() || !t_end.is_finite() || t_end <= t0 {
            return Err(Error::InvalidSpan { t0, t_end });
        }
        let raw = (t_end - t0) / h;
        let rounded = raw.round();
        if rounded < 1.0 {
            return Err(Error::EmptyGrid);
        }
        if rounded > max_steps as f64 {
            return Err(Error::GridTooLarge {
                requested: rounded as usize,
                cap: max_steps,
            });
        }
        Ok(Self {
            t0,
            h,
            n_steps: rounded as usize,
        })
    }

    /// Grid from an explicit step count (used by tests and sub-sampling).
    pub fn from_steps(t0: f64, h: f64, n_steps: usize) -> Result<Self> {
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::InvalidStep(h));
        }
        if n_steps == 0 {
            return Err(Error::EmptyGrid);
        }
        Ok(Self { t0, h, n_steps })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of steps `N`; the grid has `N + 1` nodes.
    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn n_nodes(&self) -> usize {
        self.n_steps + 1
    }

    /// The `k`-th node, `t0 + k*h`.
    pub fn node(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.h
    }

    pub fn t_end(&self) -> f64 {
        self.node(self.n_steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_counts_match_requested_spans() {
        let g = TimeGrid::new(0.0, 300.0, 0.01).unwrap();
        assert_eq!(g.n_steps(), 30_000);
        let g = TimeGrid::new(0.0, 500.0, 0.01).unwrap();
        assert_eq!(g.n_steps(), 50_000);
        assert_eq!(g.n_nodes(), 50_001);
        let g = TimeGrid::new(0.0, 1.0, 0.5).unwrap();
        assert_eq!(g.n_steps(), 2);
    }

    #[test]
    fn binary_steps_give_exact_node_count() {
        // h representable exactly in binary: N must be exact, not off by one.
        let h = 0.0078125; // 2^-7
        let g = TimeGrid::new(0.0, 4.0, h).unwrap();
        assert_eq!(g.n_steps(), 512);
        assert_eq!(g.t_end(), 4.0);
    }

    #[test]
    fn last_node_lands_near_t_end() {
        let g = TimeGrid::new(0.0, 1.0, 0.3).unwrap();
        // 1.0/0.3 = 3.33 -> 3 steps, last node 0.9, within h/2 of 1.0
        assert_eq!(g.n_steps(), 3);
        assert!((g.t_end() - 1.0).abs() <= 0.15 + 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            TimeGrid::new(0.0, 1.0, -0.01),
            Err(Error::InvalidStep(_))
        ));
        assert!(matches!(
            TimeGrid::new(0.0, 1.0, 0.0),
            Err(Error::InvalidStep(_))
        ));
        assert!(matches!(
            TimeGrid::new(1.0, 1.0, 0.01),
            Err(Error::InvalidSpan { .. })
        ));
        assert!(matches!(
            TimeGrid::new(0.0, 0.001, 0.01),
            Err(Error::EmptyGrid)
        ));
        assert!(matches!(
            TimeGrid::new(0.0, 1e9, 0.01),
            Err(Error::GridTooLarge { .. })
        ));
    }

    #[test]
    fn cap_is_configurable() {
        assert!(TimeGrid::with_max_steps(0.0, 1.0, 0.001, 500).is_err());
        assert!(TimeGrid::with_max_steps(0.0, 1.0, 0.001, 1000).is_ok());
    }
}
