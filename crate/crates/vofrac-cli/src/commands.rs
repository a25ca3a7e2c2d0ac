//! Verb implementations: `run`, `compare`, and `list-systems`.

use std::path::Path;

use rayon::prelude::*;
use vofrac_core::{solve, systems, SchemeConfig, SystemDefinition, Trajectory};

use crate::config::{self, OutputPlan, ResolvedConfig, SchemeArity};
use crate::output;
use crate::CliError;

/// Integrates one configured run (or its sweep) and writes the artifacts.
/// Divergence is reported in the summary and on stdout, never as a failure.
pub fn run(config_path: &Path) -> Result<(), CliError> {
    let cfg = config::load(config_path)?;
    let resolved = config::resolve(&cfg, SchemeArity::One)?;
    let scheme = resolved.schemes[0];

    match &resolved.sweep {
        None => {
            let lines =
                integrate_and_export(&resolved, &resolved.system, &scheme, &resolved.output, None)?;
            for line in lines {
                println!("{line}");
            }
        }
        Some(sweep) => {
            // Sweep points are independent runs over distinct output paths, so
            // they may execute concurrently; messages are printed afterwards in
            // input order to keep stdout deterministic.
            let results: Vec<Result<Vec<String>, CliError>> = sweep
                .values
                .par_iter()
                .enumerate()
                .map(|(index, &value)| {
                    let mut system = resolved.system.clone();
                    system
                        .set_param(&sweep.parameter, value)
                        .map_err(|e| CliError::for_field("sweep.parameter", e.to_string()))?;
                    let tag = format!("{}-{index}", sweep.parameter);
                    let out = suffixed_plan(&resolved.output, &tag);
                    integrate_and_export(
                        &resolved,
                        &system,
                        &scheme,
                        &out,
                        Some((&sweep.parameter, value)),
                    )
                })
                .collect();
            for result in results {
                for line in result? {
                    println!("{line}");
                }
            }
        }
    }
    Ok(())
}

/// Integrates the configuration once per requested scheme, writes per-scheme
/// artifacts, and prints a wall-time/endpoint table (one row per scheme).
pub fn compare(config_path: &Path) -> Result<(), CliError> {
    let cfg = config::load(config_path)?;
    let resolved = config::resolve(&cfg, SchemeArity::AtLeastTwo)?;

    let runs: Vec<Result<Trajectory, CliError>> = resolved
        .schemes
        .par_iter()
        .map(|scheme| {
            solve(
                &resolved.system,
                &resolved.order,
                &resolved.grid,
                &resolved.x0,
                scheme,
            )
            .map_err(CliError::from)
        })
        .collect();

    let mut table = Vec::with_capacity(runs.len());
    for (scheme, run) in resolved.schemes.iter().zip(runs) {
        let traj = run?;
        let tag = scheme.scheme.as_str();
        let out = suffixed_plan(&resolved.output, tag);
        output::write_csv(&traj, &out.csv)?;
        if let Some(svg) = &out.svg {
            output::write_svg(&traj, out.portrait, svg)?;
        }
        if let Some(summary) = &out.summary {
            output::write_summary(&traj, &resolved.system, None, summary)?;
        }
        table.push((tag, traj));
    }

    println!("{:<8}{:>12}{:>9}  endpoint", "scheme", "wall_s", "nodes");
    for (tag, traj) in &table {
        let endpoint: Vec<String> = traj.last_state().iter().map(|v| format!("{v}")).collect();
        println!(
            "{:<8}{:>12.6}{:>9}  [{}]",
            tag,
            traj.meta.wall_time_s,
            traj.n_nodes(),
            endpoint.join(", ")
        );
    }
    Ok(())
}

/// Prints the built-in catalog: id, dimension, parameters, presets with
/// provenance, and notes.
pub fn list_systems() -> Result<(), CliError> {
    for entry in systems::catalog() {
        println!("{} (dimension {})", entry.id, entry.dimension);
        println!("  parameters: {}", format_pairs(entry.defaults));
        for preset in entry.presets {
            let initial = match preset.initial {
                Some(ic) => format!(
                    "; initial=({})",
                    ic.iter()
                        .map(|v| format!("{v}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                None => String::new(),
            };
            println!(
                "  preset {}: {}{initial}",
                preset.name,
                format_pairs(preset.params)
            );
            println!("    provenance: {}", preset.provenance);
        }
        if !entry.note.is_empty() {
            println!("  note: {}", entry.note);
        }
    }
    Ok(())
}

fn format_pairs(pairs: &[(&str, f64)]) -> String {
    pairs
        .iter()
        .map(|(name, value)| format!("{name}={value}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn suffixed_plan(out: &OutputPlan, tag: &str) -> OutputPlan {
    OutputPlan {
        csv: output::suffixed(&out.csv, tag),
        svg: out.svg.as_deref().map(|p| output::suffixed(p, tag)),
        summary: out.summary.as_deref().map(|p| output::suffixed(p, tag)),
        portrait: out.portrait,
    }
}

fn integrate_and_export(
    resolved: &ResolvedConfig,
    system: &SystemDefinition,
    scheme: &SchemeConfig,
    out: &OutputPlan,
    swept: Option<(&str, f64)>,
) -> Result<Vec<String>, CliError> {
    let traj = solve(system, &resolved.order, &resolved.grid, &resolved.x0, scheme)?;
    let mut lines = Vec::new();
    output::write_csv(&traj, &out.csv)?;
    lines.push(format!(
        "wrote {} ({} nodes, {:.3} s)",
        out.csv.display(),
        traj.n_nodes(),
        traj.meta.wall_time_s
    ));
    if let Some(svg) = &out.svg {
        output::write_svg(&traj, out.portrait, svg)?;
        lines.push(format!("wrote {}", svg.display()));
    }
    if let Some(summary) = &out.summary {
        output::write_summary(&traj, system, swept, summary)?;
        lines.push(format!("wrote {}", summary.display()));
    }
    if let Some(node) = traj.diverged_at() {
        lines.push(format!(
            "run diverged at node {node}; the trajectory is truncated there (see summary)"
        ));
    }
    Ok(lines)
}
