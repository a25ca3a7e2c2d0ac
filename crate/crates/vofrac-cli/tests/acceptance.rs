//! Acceptance suite: ten numbered criteria covering the whole stack, from
//! kernel-weight closed forms to binary-level determinism. Each test prints
//! one `[acceptance] C<n> <name>: PASS|FAIL (<measurements>)` line and pins
//! the agreed tolerance and wall-time budget in its assertions.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use vofrac_core::diagnostics::{largest_lyapunov, sync_error, trajectory_stats};
use vofrac_core::special::mittag_leffler;
use vofrac_core::{
    kernels, solve_abc, solve_cfc, solve_lc, solve_rk4, systems, OrderFunction, Scheme,
    SchemeConfig, SchemeMode, SystemDefinition, TimeGrid, Trajectory,
};

/// Prints the one-line verdict for a criterion, then enforces it.
fn report(name: &str, ok: bool, detail: &str) {
    println!(
        "[acceptance] {name}: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{name}: {detail}");
}

fn order_one() -> OrderFunction {
    OrderFunction::constant(1.0).unwrap()
}

fn lorenz_with_start() -> (SystemDefinition, Vec<f64>) {
    // Catalog defaults: sigma = 10, r = 30, b = 8/3.
    (systems::lorenz(), vec![0.1, 0.1, 0.1])
}

/// Directly coded classical two-step integrator (flat first-step seed), the
/// independent oracle for the order-one limit of the history schemes.
fn two_step_classic(system: &SystemDefinition, grid: &TimeGrid, x0: &[f64]) -> Vec<Vec<f64>> {
    let dim = x0.len();
    let h = grid.h();
    let mut states = vec![x0.to_vec()];
    let mut f_prev = system.eval(grid.node(0), x0);
    for n in 0..grid.n_steps() {
        let x = &states[n];
        let f = system.eval(grid.node(n), x);
        let next: Vec<f64> = (0..dim)
            .map(|j| x[j] + h * (3.0 * f[j] - f_prev[j]) / 2.0)
            .collect();
        states.push(next);
        f_prev = f;
    }
    states
}

/// Largest per-node deviation, each node normalized by the oracle's max-norm.
fn max_norm_rel_dev(traj: &Trajectory, oracle: &[Vec<f64>]) -> f64 {
    assert_eq!(traj.n_nodes(), oracle.len());
    let mut worst = 0.0_f64;
    for (row, want) in traj.states().zip(oracle) {
        let scale = want.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1e-12);
        for (a, b) in row.iter().zip(want) {
            worst = worst.max((a - b).abs() / scale);
        }
    }
    worst
}

#[test]
fn c01_weight_closed_forms_at_order_one() {
    let started = Instant::now();
    let mut max_rel = 0.0_f64;
    for &h in &[0.01_f64, 0.5] {
        for &lag in &[0_usize, 1, 10, 1_000, 100_000] {
            let e1 = kernels::weight_e1(1.0, lag, h).unwrap();
            let e2 = kernels::weight_e2(1.0, lag, h).unwrap();
            max_rel = max_rel.max((e1 - 1.5 * h * h).abs() / (1.5 * h * h));
            max_rel = max_rel.max((e2 - 0.5 * h * h).abs() / (0.5 * h * h));
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "C1 weight closed forms",
        max_rel < 1e-12 && elapsed < 1.0,
        &format!("max rel err {max_rel:.2e} over lags 0..1e5, {elapsed:.3} s"),
    );
}

#[test]
fn c02_history_schemes_reduce_to_the_classical_two_step_method() {
    let started = Instant::now();
    let (system, x0) = lorenz_with_start();
    let grid = TimeGrid::new(0.0, 5.0, 0.01).unwrap();
    let order = order_one();
    let oracle = two_step_classic(&system, &grid, &x0);

    let lc = solve_lc(&system, &order, &grid, &x0, &SchemeConfig::new(Scheme::Lc)).unwrap();
    let abc = solve_abc(&system, &order, &grid, &x0, &SchemeConfig::new(Scheme::Abc)).unwrap();
    let dev_lc = max_norm_rel_dev(&lc, &oracle);
    let dev_abc = max_norm_rel_dev(&abc, &oracle);

    let elapsed = started.elapsed().as_secs_f64();
    report(
        "C2 order-one reduction",
        dev_lc < 1e-9 && dev_abc < 1e-9 && elapsed < 1.0,
        &format!("max rel dev lc {dev_lc:.2e}, abc {dev_abc:.2e}, {elapsed:.3} s"),
    );
}

/// `erfc(1)` from the alternating Maclaurin series of `erf`, an oracle
/// independent of the library's series evaluator.
fn erfc_one() -> f64 {
    let mut sum = 0.0_f64;
    let mut factorial = 1.0_f64;
    for n in 0..30_u32 {
        if n > 0 {
            factorial *= n as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / (factorial * (2 * n + 1) as f64);
    }
    1.0 - 2.0 / std::f64::consts::PI.sqrt() * sum
}

#[test]
fn c03_relaxation_toward_the_kernel_function_oracle() {
    let started = Instant::now();

    // First leg: the series evaluator against two independent closed forms.
    let mut max_exp_rel = 0.0_f64;
    for &z in &[-3.0_f64, -1.0, -0.5, 0.5, 1.0, 2.5] {
        let got = mittag_leffler(1.0, z, 1e-14).unwrap().value;
        max_exp_rel = max_exp_rel.max((got - z.exp()).abs() / z.exp().abs());
    }
    let half = mittag_leffler(0.5, -1.0, 1e-14).unwrap().value;
    let half_oracle = std::f64::consts::E * erfc_one();
    let half_err = (half - half_oracle).abs();

    // Second leg: the power-law solver against the validated evaluator.
    let system = systems::linear_probe(-1.0);
    let order = OrderFunction::constant(0.8).unwrap();
    let grid = TimeGrid::new(0.0, 1.0, 1e-3).unwrap();
    let traj = solve_lc(&system, &order, &grid, &[1.0], &SchemeConfig::new(Scheme::Lc)).unwrap();
    let expected = mittag_leffler(0.8, -1.0, 1e-14).unwrap().value;
    let endpoint_err = (traj.last_state()[0] - expected).abs();

    let elapsed = started.elapsed().as_secs_f64();
    report(
        "C3 relaxation oracle",
        max_exp_rel < 1e-9 && half_err < 1e-6 && endpoint_err < 5e-3 && elapsed < 5.0,
        &format!(
            "series vs exp {max_exp_rel:.2e}, vs e*erfc(1) {half_err:.2e}, \
             endpoint err {endpoint_err:.2e}, {elapsed:.3} s"
        ),
    );
}

#[test]
fn c04_constant_forcing_closed_form() {
    let started = Instant::now();
    let system = systems::constant_forcing(1, 1.0);
    let order = OrderFunction::constant(0.5).unwrap();
    let grid = TimeGrid::new(0.0, 1.0, 1e-3).unwrap();
    let traj = solve_abc(&system, &order, &grid, &[0.0], &SchemeConfig::new(Scheme::Abc)).unwrap();
    let err = (traj.last_state()[0] - 1.360703).abs();
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "C4 constant-forcing closed form",
        err < 1e-2 && elapsed < 5.0,
        &format!("|X(1) - 1.360703| = {err:.2e}, {elapsed:.3} s"),
    );
}

#[test]
fn c05_halving_the_step_tightens_the_endpoint() {
    let started = Instant::now();
    let system = systems::linear_probe(-1.0);
    let order = OrderFunction::constant(0.8).unwrap();
    let expected = mittag_leffler(0.8, -1.0, 1e-14).unwrap().value;
    let errors: Vec<f64> = [4e-3, 2e-3, 1e-3]
        .iter()
        .map(|&h| {
            let grid = TimeGrid::new(0.0, 1.0, h).unwrap();
            let traj =
                solve_lc(&system, &order, &grid, &[1.0], &SchemeConfig::new(Scheme::Lc)).unwrap();
            (traj.last_state()[0] - expected).abs()
        })
        .collect();
    let factor_a = errors[0] / errors[1];
    let factor_b = errors[1] / errors[2];
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "C5 convergence under step halving",
        factor_a >= 1.8 && factor_b >= 1.8 && elapsed < 5.0,
        &format!(
            "errors {:.2e} -> {:.2e} -> {:.2e}, factors {factor_a:.2} and {factor_b:.2}, {elapsed:.3} s",
            errors[0], errors[1], errors[2]
        ),
    );
}

#[test]
fn c06_chaos_signatures_at_order_one() {
    let started = Instant::now();

    let mut classical = systems::lorenz();
    classical.set_param("r", 28.0).unwrap();
    let lambda = largest_lyapunov(&classical, &[0.1, 0.1, 0.1], 500.0, 0.01).unwrap();

    let (system, x0) = lorenz_with_start();
    let grid = TimeGrid::new(0.0, 100.0, 0.01).unwrap();
    let traj = solve_rk4(&system, &grid, &x0).unwrap();
    let report_r30 = trajectory_stats(&traj, 0.1).unwrap();
    let (z_min, z_max) = report_r30.bounds[2];

    let mut rossler = systems::rossler();
    let ic = rossler.apply_preset("classical").unwrap().unwrap();
    let grid = TimeGrid::new(0.0, 500.0, 0.01).unwrap();
    let traj = solve_rk4(&rossler, &grid, &ic).unwrap();
    let kurtosis = trajectory_stats(&traj, 0.1).unwrap().moments[2].excess_kurtosis;

    let elapsed = started.elapsed().as_secs_f64();
    let ok = (lambda - 0.9).abs() <= 0.15
        && z_min > 0.0
        && z_max < 60.0
        && kurtosis > 0.0
        && elapsed < 120.0;
    report(
        "C6 chaos signatures",
        ok,
        &format!(
            "largest exponent {lambda:.3}, z bounds ({z_min:.2}, {z_max:.2}), \
             z excess kurtosis {kurtosis:.2}, {elapsed:.1} s"
        ),
    );
}

#[test]
fn c07_coupling_drives_synchronization() {
    let started = Instant::now();
    let grid = TimeGrid::new(0.0, 50.0, 0.01).unwrap();

    let tail_mean = |preset: &str| -> f64 {
        let mut system = systems::coupled_lorenz();
        let ic = system.apply_preset(preset).unwrap().unwrap();
        let traj = solve_rk4(&system, &grid, &ic).unwrap();
        let a = traj.select_components(&[0, 1, 2]).unwrap();
        let b = traj.select_components(&[3, 4, 5]).unwrap();
        sync_error(&a, &b, 1e-3).unwrap().tail_mean
    };

    let coupled = tail_mean("sync");
    let uncoupled = tail_mean("uncoupled");
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "C7 synchronization through coupling",
        coupled < 1e-3 && uncoupled > 1.0 && elapsed < 30.0,
        &format!(
            "tail mean {coupled:.2e} with coupling, {uncoupled:.2} without, {elapsed:.1} s"
        ),
    );
}

#[test]
fn c08_binary_runs_are_byte_deterministic() {
    let started = Instant::now();
    let config = r#"
[system]
id = "lorenz"
preset = "fig2"

[scheme]
kind = "lc"

[order]
kind = "constant"
value = 1.0

[grid]
t0 = 0.0
t_end = 500.0
h = 0.01

[output]
csv = "traj.csv"
"#;
    let run = |dir: &Path| -> Vec<u8> {
        fs::write(dir.join("config.toml"), config).unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_vofrac"))
            .args(["run", "config.toml"])
            .current_dir(dir)
            .output()
            .expect("binary is runnable");
        assert!(
            out.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        fs::read(dir.join("traj.csv")).unwrap()
    };
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let csv_a = run(dir_a.path());
    let csv_b = run(dir_b.path());

    let rows = csv_a.iter().filter(|&&b| b == b'\n').count() - 1;
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "C8 determinism through the binary",
        csv_a == csv_b && rows == 50_001,
        &format!("two invocations byte-identical, {rows} rows, {elapsed:.1} s"),
    );
}

#[test]
fn c09_performance_budget() {
    // A three-dimensional system on which both schemes run to completion at
    // this order (the exponential-kernel scheme's difference term is explicit
    // feedback, so stiffer right-hand sides can trip the divergence guard).
    let system = systems::financial();
    let x0 = vec![2.0, -1.0, 1.0];
    let order = OrderFunction::constant(0.9).unwrap();
    let grid = TimeGrid::from_steps(0.0, 1e-3, 30_000).unwrap();

    let started = Instant::now();
    let lc = solve_lc(&system, &order, &grid, &x0, &SchemeConfig::new(Scheme::Lc)).unwrap();
    let lc_seconds = started.elapsed().as_secs_f64();

    let started = Instant::now();
    let cfc = solve_cfc(&system, &order, &grid, &x0, &SchemeConfig::new(Scheme::Cfc)).unwrap();
    let cfc_seconds = started.elapsed().as_secs_f64();

    let clean = lc.diverged_at().is_none() && cfc.diverged_at().is_none();
    report(
        "C9 performance budget",
        clean && lc_seconds < 10.0 && cfc_seconds < 0.1,
        &format!(
            "30000 steps: history scheme {lc_seconds:.2} s (< 10 s), \
             exponential-kernel scheme {cfc_seconds:.4} s (< 0.1 s)"
        ),
    );
}

#[test]
fn c10_literal_mode_is_a_distinct_documented_behavior() {
    // Binary step size, so node times and reference increments are exact.
    let h = 0.0078125; // 2^-7
    let system = systems::constant_forcing(1, 1.0);
    let order = order_one();
    let grid = TimeGrid::from_steps(0.0, h, 256).unwrap();

    let literal_cfg = SchemeConfig::new(Scheme::Lc).with_mode(SchemeMode::Literal);
    let literal = solve_lc(&system, &order, &grid, &[0.0], &literal_cfg).unwrap();
    let literal_frozen = literal.states().all(|s| s[0] == 0.0 && s[0].is_sign_positive());

    let reference = solve_lc(
        &system,
        &order,
        &grid,
        &[0.0],
        &SchemeConfig::new(Scheme::Lc),
    )
    .unwrap();
    let reference_advances = reference
        .states()
        .enumerate()
        .all(|(k, s)| s[0].to_bits() == (k as f64 * h).to_bits());

    report(
        "C10 literal-mode fidelity",
        literal_frozen && reference_advances,
        "literal increments exactly zero on constant forcing; reference advances exactly h per step",
    );
}
