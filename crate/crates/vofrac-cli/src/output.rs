//! Artifact writers: trajectory CSV, phase-portrait SVG, and the TOML run
//! summary.
//!
//! Numbers in the CSV use the shortest decimal representation that parses
//! back to the identical bits, so re-emitting a parsed file reproduces it
//! byte for byte and identical runs diff clean. The SVG is a single polyline
//! over a fixed canvas whose viewport is computed from the data bounds.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use vofrac_core::diagnostics::{self, ChaosReport};
use vofrac_core::{OrderFunction, OrderKind, SystemDefinition, Trajectory};

use crate::CliError;

const SVG_WIDTH: f64 = 800.0;
const SVG_HEIGHT: f64 = 600.0;
const SVG_MARGIN: f64 = 20.0;

/// `dir/name.ext` -> `dir/name.tag.ext`; used to fan one configured path out
/// into per-scheme or per-sweep-point files.
pub fn suffixed(path: &Path, tag: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{tag}"),
    };
    match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent.join(name),
        _ => PathBuf::from(name),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::new(format!("cannot write `{}`: {e}", path.display())))
}

/// Writes `t,x1..xd` rows, one per stored node, full round-trip precision.
pub fn write_csv(traj: &Trajectory, path: &Path) -> Result<(), CliError> {
    let dim = traj.dimension();
    let mut out = String::with_capacity((traj.n_nodes() + 1) * (dim + 1) * 20);
    out.push('t');
    for j in 1..=dim {
        write!(out, ",x{j}").expect("string write");
    }
    out.push('\n');
    for (k, row) in traj.states().enumerate() {
        write!(out, "{}", traj.time(k)).expect("string write");
        for v in row {
            write!(out, ",{v}").expect("string write");
        }
        out.push('\n');
    }
    write_file(path, &out)
}

/// Writes a phase portrait of components `(i, j)` as one polyline on a fixed
/// 800x600 canvas; the mapping is computed from the data bounds.
pub fn write_svg(traj: &Trajectory, portrait: (usize, usize), path: &Path) -> Result<(), CliError> {
    let (ci, cj) = portrait;
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for row in traj.states() {
        min_x = min_x.min(row[ci]);
        max_x = max_x.max(row[ci]);
        min_y = min_y.min(row[cj]);
        max_y = max_y.max(row[cj]);
    }
    // Degenerate spans (single node, or a frozen component) map to the canvas
    // center instead of dividing by zero.
    let span_x = if max_x > min_x { max_x - min_x } else { 1.0 };
    let span_y = if max_y > min_y { max_y - min_y } else { 1.0 };
    if max_x <= min_x {
        min_x -= 0.5;
    }
    if max_y <= min_y {
        min_y -= 0.5;
    }

    let inner_w = SVG_WIDTH - 2.0 * SVG_MARGIN;
    let inner_h = SVG_HEIGHT - 2.0 * SVG_MARGIN;
    let mut points = String::with_capacity(traj.n_nodes() * 14);
    for (k, row) in traj.states().enumerate() {
        if k > 0 {
            points.push(' ');
        }
        let px = SVG_MARGIN + (row[ci] - min_x) / span_x * inner_w;
        let py = SVG_HEIGHT - SVG_MARGIN - (row[cj] - min_y) / span_y * inner_h;
        write!(points, "{px:.3},{py:.3}").expect("string write");
    }

    let mut svg = String::with_capacity(points.len() + 512);
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" \
         viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">\n"
    )
    .expect("string write");
    write!(
        svg,
        "  <title>{} component {} vs component {}</title>\n",
        traj.meta.system,
        ci + 1,
        cj + 1
    )
    .expect("string write");
    write!(
        svg,
        "  <rect width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" fill=\"white\"/>\n"
    )
    .expect("string write");
    write!(
        svg,
        "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"0.8\" points=\"{points}\"/>\n"
    )
    .expect("string write");
    svg.push_str("</svg>\n");
    write_file(path, &svg)
}

/// Human-readable description of an order trajectory for summaries and logs.
pub fn describe_order(order: &OrderFunction) -> String {
    let core = match order.kind() {
        OrderKind::Constant { value } => format!("constant({value})"),
        OrderKind::Ramp {
            from,
            to,
            t_start,
            t_end,
        } => format!("ramp({from} -> {to} over t in [{t_start}, {t_end}])"),
        OrderKind::Sinusoidal {
            base,
            amplitude,
            omega,
        } => format!("sinusoidal(base {base}, amplitude {amplitude}, omega {omega})"),
    };
    let (lo, hi) = order.clamp_window();
    format!("{core} clamped to [{lo}, {hi}]")
}

#[derive(Serialize)]
struct SummaryDoc {
    run: RunInfo,
    params: BTreeMap<String, f64>,
    stats: StatsInfo,
}

#[derive(Serialize)]
struct RunInfo {
    system: String,
    scheme: String,
    mode: String,
    cf_normalization: String,
    history_bootstrap: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<String>,
    t0: f64,
    t_end: f64,
    h: f64,
    n_nodes: usize,
    wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    diverged_at: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    swept_parameter: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    swept_value: Option<f64>,
}

#[derive(Serialize)]
struct StatsInfo {
    transient_fraction: f64,
    components: Vec<ComponentStats>,
}

#[derive(Serialize)]
struct ComponentStats {
    name: String,
    min: f64,
    max: f64,
    mean: f64,
    variance: f64,
    excess_kurtosis: f64,
}

fn stats_section(traj: &Trajectory, report: &ChaosReport) -> StatsInfo {
    let components = (0..traj.dimension())
        .map(|j| ComponentStats {
            name: format!("x{}", j + 1),
            min: report.bounds[j].0,
            max: report.bounds[j].1,
            mean: report.moments[j].mean,
            variance: report.moments[j].variance,
            excess_kurtosis: report.moments[j].excess_kurtosis,
        })
        .collect();
    StatsInfo {
        transient_fraction: report.transient_fraction,
        components,
    }
}

/// Writes the TOML run summary: configuration echo, wall time, divergence
/// flag, and post-transient bounds/moments per component.
pub fn write_summary(
    traj: &Trajectory,
    system: &SystemDefinition,
    swept: Option<(&str, f64)>,
    path: &Path,
) -> Result<(), CliError> {
    let report = diagnostics::trajectory_stats(traj, diagnostics::DEFAULT_TRANSIENT_FRACTION)?;
    let meta = &traj.meta;
    let doc = SummaryDoc {
        run: RunInfo {
            system: meta.system.clone(),
            scheme: meta.scheme.scheme.as_str().to_string(),
            mode: meta.scheme.mode.as_str().to_string(),
            cf_normalization: meta.scheme.cf_normalization.as_str().to_string(),
            history_bootstrap: meta.scheme.bootstrap.as_str().to_string(),
            order: meta.order.as_ref().map(describe_order),
            t0: traj.grid().t0(),
            t_end: traj.grid().t_end(),
            h: traj.grid().h(),
            n_nodes: traj.n_nodes(),
            wall_time_s: meta.wall_time_s,
            diverged_at: meta.diverged_at,
            provenance: meta.provenance.clone(),
            swept_parameter: swept.map(|(name, _)| name.to_string()),
            swept_value: swept.map(|(_, value)| value),
        },
        params: system.params().iter().map(|(n, v)| (n.to_string(), v)).collect(),
        stats: stats_section(traj, &report),
    };
    let text = toml::to_string_pretty(&doc)
        .map_err(|e| CliError::new(format!("cannot serialize summary: {e}")))?;
    write_file(path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use vofrac_core::{solve_rk4, systems, TimeGrid};

    fn toy_run() -> (Trajectory, SystemDefinition) {
        let sys = systems::linear_probe(-1.0);
        let grid = TimeGrid::new(0.0, 1.0, 0.25).unwrap();
        let traj = solve_rk4(&sys, &grid, &[1.0]).unwrap();
        (traj, sys)
    }

    #[test]
    fn suffix_insertion_keeps_directory_and_extension() {
        assert_eq!(
            suffixed(Path::new("out/traj.csv"), "lc"),
            PathBuf::from("out/traj.lc.csv")
        );
        assert_eq!(suffixed(Path::new("traj.csv"), "r-0"), PathBuf::from("traj.r-0.csv"));
        assert_eq!(suffixed(Path::new("traj"), "abc"), PathBuf::from("traj.abc"));
    }

    #[test]
    fn csv_has_header_and_one_row_per_node() {
        let (traj, _) = toy_run();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_csv(&traj, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,x1");
        assert_eq!(lines.len(), traj.n_nodes() + 1);
        assert_eq!(lines[1], "0,1");
    }

    #[test]
    fn csv_values_reparse_to_identical_bits() {
        let (traj, _) = toy_run();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_csv(&traj, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        for (k, line) in text.lines().skip(1).enumerate() {
            let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            assert_eq!(cells[0].to_bits(), traj.time(k).to_bits());
            assert_eq!(cells[1].to_bits(), traj.state(k)[0].to_bits());
        }
    }

    #[test]
    fn svg_draws_one_polyline_inside_the_canvas() {
        let (traj, _) = toy_run();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.svg");
        write_svg(&traj, (0, 0), &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("<?xml"));
        assert_eq!(text.matches("<polyline").count(), 1);
        assert!(text.contains("points=\""));
    }

    #[test]
    fn summary_round_trips_through_a_toml_parser() {
        let (traj, sys) = toy_run();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.toml");
        write_summary(&traj, &sys, Some(("lambda", -1.0)), &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let doc: toml::Value = text.parse().unwrap();
        assert_eq!(doc["run"]["system"].as_str(), Some("linear-probe"));
        assert_eq!(doc["run"]["scheme"].as_str(), Some("rk4"));
        assert_eq!(doc["run"]["n_nodes"].as_integer(), Some(5));
        assert_eq!(doc["run"]["swept_parameter"].as_str(), Some("lambda"));
        assert_eq!(doc["params"]["lambda"].as_float(), Some(-1.0));
        assert_eq!(
            doc["stats"]["components"].as_array().map(|a| a.len()),
            Some(1)
        );
        assert!(doc["run"].get("diverged_at").is_none());
    }

    #[test]
    fn order_descriptions_name_every_shape() {
        let c = OrderFunction::constant(0.9).unwrap();
        assert_eq!(describe_order(&c), "constant(0.9) clamped to [0.05, 1]");
        let r = OrderFunction::new(OrderKind::Ramp {
            from: 0.8,
            to: 1.0,
            t_start: 0.0,
            t_end: 10.0,
        })
        .unwrap();
        assert!(describe_order(&r).starts_with("ramp(0.8 -> 1"));
        let s = OrderFunction::new(OrderKind::Sinusoidal {
            base: 0.9,
            amplitude: 0.05,
            omega: 2.0,
        })
        .unwrap();
        assert!(describe_order(&s).contains("omega 2"));
    }
}
