//! Classical fourth-order Runge-Kutta on the integer-order system.
//!
//! The stepper is kept separate from the trajectory driver so the
//! perturbation-growth diagnostic can advance states with the same
//! arithmetic the reference solver uses.

use std::time::Instant;

use crate::solver::{check_dimension, state_diverged, Scheme, SchemeConfig};
use crate::trajectory::{RunMeta, Trajectory};
use crate::{Result, SystemDefinition, TimeGrid};

/// One-step classical Runge-Kutta kernel with reusable stage buffers.
pub(crate) struct Rk4Stepper {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    xt: Vec<f64>,
}

impl Rk4Stepper {
    pub fn new(dimension: usize) -> Self {
        Self {
            k1: vec![0.0; dimension],
            k2: vec![0.0; dimension],
            k3: vec![0.0; dimension],
            k4: vec![0.0; dimension],
            xt: vec![0.0; dimension],
        }
    }

    /// Advances `x` at time `t` by one step of size `h` into `out`.
    /// `out` must not alias `x`.
    pub fn step(&mut self, system: &SystemDefinition, t: f64, h: f64, x: &[f64], out: &mut [f64]) {
        let half = 0.5 * h;
        system.eval_into(t, x, &mut self.k1);
        for (xt, (x, k)) in self.xt.iter_mut().zip(x.iter().zip(&self.k1)) {
            *xt = x + half * k;
        }
        system.eval_into(t + half, &self.xt, &mut self.k2);
        for (xt, (x, k)) in self.xt.iter_mut().zip(x.iter().zip(&self.k2)) {
            *xt = x + half * k;
        }
        system.eval_into(t + half, &self.xt, &mut self.k3);
        for (xt, (x, k)) in self.xt.iter_mut().zip(x.iter().zip(&self.k3)) {
            *xt = x + h * k;
        }
        system.eval_into(t + h, &self.xt, &mut self.k4);
        for (j, out_j) in out.iter_mut().enumerate() {
            *out_j = x[j]
                + h / 6.0 * (self.k1[j] + 2.0 * self.k2[j] + 2.0 * self.k3[j] + self.k4[j]);
        }
    }
}

/// Integer-order reference solver. No order function enters: the system is
/// integrated at order one regardless of any fractional configuration.
pub fn solve_rk4(system: &SystemDefinition, grid: &TimeGrid, x0: &[f64]) -> Result<Trajectory> {
    check_dimension(system, x0)?;
    let dim = system.dimension();
    let n_steps = grid.n_steps();
    let h = grid.h();

    let start = Instant::now();

    let mut states = Vec::with_capacity((n_steps + 1) * dim);
    states.extend_from_slice(x0);

    let mut stepper = Rk4Stepper::new(dim);
    let mut x_next = vec![0.0; dim];
    let mut diverged_at = None;

    for n in 0..n_steps {
        let x_curr = &states[n * dim..(n + 1) * dim];
        stepper.step(system, grid.node(n), h, x_curr, &mut x_next);
        if state_diverged(&x_next) {
            diverged_at = Some(n + 1);
            break;
        }
        states.extend_from_slice(&x_next);
    }

    let meta = RunMeta {
        system: system.id().to_string(),
        scheme: SchemeConfig::new(Scheme::Rk4),
        order: None,
        provenance: system.provenance().map(str::to_string),
        diverged_at,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    Ok(Trajectory::from_parts(grid.clone(), dim, states, meta))
}
