//! Trajectory storage and run metadata.

use crate::solver::SchemeConfig;
use crate::{Error, OrderFunction, Result, TimeGrid};

/// Metadata attached to a solved trajectory.
#[derive(Debug, Clone)]
pub struct RunMeta {
    /// Id of the system that was integrated.
    pub system: String,
    /// Scheme configuration, recorded verbatim.
    pub scheme: SchemeConfig,
    /// Order trajectory used by the fractional schemes (`None` for the
    /// integer-order reference solver).
    pub order: Option<OrderFunction>,
    /// Preset provenance note, round-tripped unchanged from the system.
    pub provenance: Option<String>,
    /// First step index at which the state went non-finite or beyond the
    /// divergence threshold; the run halts there. `None` for a clean run.
    pub diverged_at: Option<usize>,
    /// Wall-clock time of the stepping loop, in seconds. Reported only; no
    /// numerical output depends on it.
    pub wall_time_s: f64,
}

/// A solved trajectory: the grid, the per-node states (row-major, one row per
/// node), and run metadata. `states[0]` is always the initial condition,
/// bit-for-bit.
#[derive(Debug, Clone)]
pub struct Trajectory {
    grid: TimeGrid,
    dimension: usize,
    states: Vec<f64>,
    pub meta: RunMeta,
}

impl Trajectory {
    pub(crate) fn from_parts(
        grid: TimeGrid,
        dimension: usize,
        states: Vec<f64>,
        meta: RunMeta,
    ) -> Self {
        debug_assert!(dimension > 0);
        debug_assert_eq!(states.len() % dimension, 0);
        Self {
            grid,
            dimension,
            states,
            meta,
        }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of stored nodes. Equals `grid.n_nodes()` for a clean run and is
    /// smaller when the run halted on divergence.
    pub fn n_nodes(&self) -> usize {
        self.states.len() / self.dimension
    }

    /// State at node `k`.
    pub fn state(&self, k: usize) -> &[f64] {
        &self.states[k * self.dimension..(k + 1) * self.dimension]
    }

    pub fn last_state(&self) -> &[f64] {
        self.state(self.n_nodes() - 1)
    }

    /// Time of node `k`.
    pub fn time(&self, k: usize) -> f64 {
        self.grid.node(k)
    }

    /// Iterator over the stored states, one slice per node.
    pub fn states(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.states.chunks_exact(self.dimension)
    }

    /// Step index at which the run diverged, if it did.
    pub fn diverged_at(&self) -> Option<usize> {
        self.meta.diverged_at
    }

    /// New trajectory holding only the selected components (same grid and
    /// metadata). Used e.g. to split a coupled pair into its halves.
    pub fn select_components(&self, indices: &[usize]) -> Result<Trajectory> {
        if indices.is_empty() || indices.iter().any(|&j| j >= self.dimension) {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: indices.len(),
            });
        }
        let mut states = Vec::with_capacity(self.n_nodes() * indices.len());
        for row in self.states() {
            for &j in indices {
                states.push(row[j]);
            }
        }
        Ok(Trajectory {
            grid: self.grid.clone(),
            dimension: indices.len(),
            states,
            meta: self.meta.clone(),
        })
    }
}
