//! Run configuration: strict TOML schema and its resolution against the
//! system catalog.
//!
//! The schema is deliberately flat — every section is a plain struct with
//! `deny_unknown_fields`, and polymorphic sections (`order`, `scheme`) carry a
//! `kind` string plus optional per-kind fields. Fields that a chosen kind does
//! not use are rejected, not ignored, so a typo never silently changes a run.
//!
//! ```toml
//! initial_condition = [0.1, 0.1, 0.1]   # optional when the preset has one
//!
//! [system]
//! id = "lorenz"
//! preset = "fig2"          # optional
//! # corrected = true       # langford only
//! [system.params]          # optional overrides, applied after the preset
//! r = 28.0
//!
//! [scheme]
//! kind = "lc"              # run: exactly one; compare uses `kinds = [...]`
//! mode = "reference"       # or "literal"
//! cf_normalization = "kernel"  # or "unit"
//! history_bootstrap = "flat"   # or "zero"
//!
//! [order]
//! kind = "constant"        # or "ramp" / "sinusoidal"; defaults to constant 1
//! value = 0.9
//! # clamp = [0.05, 1.0]
//!
//! [grid]
//! t0 = 0.0
//! t_end = 50.0
//! h = 0.01
//!
//! [output]
//! csv = "trajectory.csv"
//! svg = "portrait.svg"     # optional
//! summary = "summary.toml" # optional
//! # portrait = [0, 2]      # component pair for the SVG
//!
//! # [sweep]                # optional, `run` only
//! # parameter = "r"
//! # values = [26.0, 28.0, 30.0]
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use vofrac_core::{
    systems, CfNormalization, Error, HistoryBootstrap, OrderFunction, OrderKind, Scheme,
    SchemeConfig, SchemeMode, SystemDefinition, TimeGrid,
};

use crate::CliError;

/// Top-level configuration file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemSection,
    /// Starting state. Optional when the chosen preset carries one; an
    /// explicit value always wins.
    pub initial_condition: Option<Vec<f64>>,
    pub scheme: SchemeSection,
    /// Derivative-order trajectory; omitted means constant order 1.
    pub order: Option<OrderSection>,
    pub grid: GridSection,
    pub output: OutputSection,
    /// Optional one-parameter sweep (honored by `run` only).
    pub sweep: Option<SweepSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub id: String,
    pub preset: Option<String>,
    /// Langford only: switch the y-equation damping from the as-printed
    /// `(z - omega)` to the literature-standard `(z - b)`.
    pub corrected: Option<bool>,
    /// Parameter overrides, applied after the preset (if any).
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSection {
    /// Single scheme for `run`: lc | cfc | abc | rk4.
    pub kind: Option<String>,
    /// Scheme list for `compare` (two or more).
    pub kinds: Option<Vec<String>>,
    /// reference (default) | literal.
    pub mode: Option<String>,
    /// kernel (default) | unit.
    pub cf_normalization: Option<String>,
    /// flat (default) | zero.
    pub history_bootstrap: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSection {
    /// constant | ramp | sinusoidal.
    pub kind: String,
    // constant:
    pub value: Option<f64>,
    // ramp:
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
    // sinusoidal:
    pub base: Option<f64>,
    pub amplitude: Option<f64>,
    pub omega: Option<f64>,
    /// Evaluation window `[lo, hi]` inside `(0, 1]`.
    pub clamp: Option<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub t0: f64,
    pub t_end: f64,
    pub h: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub csv: PathBuf,
    pub svg: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    /// Component pair `[i, j]` drawn in the SVG. Defaults to the first and
    /// third components when the system has them (the usual attractor view),
    /// else to the widest pair available.
    pub portrait: Option<[usize; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: String,
    pub values: Vec<f64>,
}

/// How many schemes the invoking verb expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeArity {
    /// `run`: exactly one, via `scheme.kind`.
    One,
    /// `compare`: two or more, via `scheme.kinds`.
    AtLeastTwo,
}

/// A configuration validated against the catalog and ready to integrate.
#[derive(Debug, Clone)]
pub struct ResolvedConfig {
    pub system: SystemDefinition,
    pub x0: Vec<f64>,
    pub order: OrderFunction,
    pub grid: TimeGrid,
    pub schemes: Vec<SchemeConfig>,
    pub output: OutputPlan,
    pub sweep: Option<SweepPlan>,
}

#[derive(Debug, Clone)]
pub struct OutputPlan {
    pub csv: PathBuf,
    pub svg: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub portrait: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub parameter: String,
    pub values: Vec<f64>,
}

/// Reads and parses a configuration file. Unknown keys anywhere in the file
/// are parse errors.
pub fn load(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(format!("cannot read config `{}`: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::new(format!("config parse error: {e}")))
}

/// Validates a parsed configuration against the catalog and the invoking
/// verb's scheme arity.
pub fn resolve(cfg: &RunConfig, arity: SchemeArity) -> Result<ResolvedConfig, CliError> {
    let (system, preset_ic) = resolve_system(&cfg.system)?;
    let x0 = resolve_initial_condition(cfg.initial_condition.as_deref(), preset_ic, &system)?;
    let order = resolve_order(cfg.order.as_ref())?;
    let grid = resolve_grid(&cfg.grid)?;
    let schemes = resolve_schemes(&cfg.scheme, arity)?;
    let output = resolve_output(&cfg.output, system.dimension())?;
    let sweep = resolve_sweep(cfg.sweep.as_ref(), &system, arity)?;
    Ok(ResolvedConfig {
        system,
        x0,
        order,
        grid,
        schemes,
        output,
        sweep,
    })
}

fn resolve_system(section: &SystemSection) -> Result<(SystemDefinition, Option<Vec<f64>>), CliError> {
    if section.corrected.is_some() && section.id != "langford" {
        return Err(CliError::for_field(
            "system.corrected",
            format!("`corrected` only applies to langford, not `{}`", section.id),
        ));
    }
    let mut system = if section.id == "langford" {
        systems::langford(section.corrected.unwrap_or(false))
    } else {
        systems::instantiate(&section.id)
            .map_err(|e| CliError::for_field("system.id", e.to_string()))?
    };

    let preset_ic = match &section.preset {
        Some(name) => system
            .apply_preset(name)
            .map_err(|e| CliError::for_field("system.preset", e.to_string()))?,
        None => None,
    };

    for (name, value) in &section.params {
        if !value.is_finite() {
            return Err(CliError::for_field(
                &format!("system.params.{name}"),
                format!("parameter value must be finite, got {value}"),
            ));
        }
        system
            .set_param(name, *value)
            .map_err(|e| CliError::for_field(&format!("system.params.{name}"), e.to_string()))?;
    }
    Ok((system, preset_ic))
}

fn resolve_initial_condition(
    explicit: Option<&[f64]>,
    preset_ic: Option<Vec<f64>>,
    system: &SystemDefinition,
) -> Result<Vec<f64>, CliError> {
    let x0 = match explicit {
        Some(ic) => ic.to_vec(),
        None => preset_ic.ok_or_else(|| {
            CliError::for_field(
                "initial_condition",
                "no initial condition: give one explicitly or pick a preset that carries one",
            )
        })?,
    };
    if x0.len() != system.dimension() {
        return Err(CliError::for_field(
            "initial_condition",
            format!(
                "system `{}` has dimension {}, got {} components",
                system.id(),
                system.dimension(),
                x0.len()
            ),
        ));
    }
    if let Some(bad) = x0.iter().find(|v| !v.is_finite()) {
        return Err(CliError::for_field(
            "initial_condition",
            format!("components must be finite, got {bad}"),
        ));
    }
    Ok(x0)
}

fn require(value: Option<f64>, field: &str, kind: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::for_field(field, format!("required by order kind `{kind}`")))
}

fn forbid(value: Option<f64>, field: &str, kind: &str) -> Result<(), CliError> {
    if value.is_some() {
        return Err(CliError::for_field(
            field,
            format!("not used by order kind `{kind}`"),
        ));
    }
    Ok(())
}

fn resolve_order(section: Option<&OrderSection>) -> Result<OrderFunction, CliError> {
    let Some(s) = section else {
        return Ok(OrderFunction::constant(1.0).expect("constant 1 is always valid"));
    };

    let kind = match s.kind.as_str() {
        "constant" => {
            let value = require(s.value, "order.value", "constant")?;
            if !(value.is_finite() && value > 0.0 && value <= 1.0) {
                return Err(CliError::for_field(
                    "order.value",
                    format!("constant order must lie in (0, 1], got {value}"),
                ));
            }
            for (v, f) in [
                (s.from, "order.from"),
                (s.to, "order.to"),
                (s.t_start, "order.t_start"),
                (s.t_end, "order.t_end"),
                (s.base, "order.base"),
                (s.amplitude, "order.amplitude"),
                (s.omega, "order.omega"),
            ] {
                forbid(v, f, "constant")?;
            }
            OrderKind::Constant { value }
        }
        "ramp" => {
            let from = require(s.from, "order.from", "ramp")?;
            let to = require(s.to, "order.to", "ramp")?;
            let t_start = require(s.t_start, "order.t_start", "ramp")?;
            let t_end = require(s.t_end, "order.t_end", "ramp")?;
            for (v, f) in [
                (s.value, "order.value"),
                (s.base, "order.base"),
                (s.amplitude, "order.amplitude"),
                (s.omega, "order.omega"),
            ] {
                forbid(v, f, "ramp")?;
            }
            OrderKind::Ramp {
                from,
                to,
                t_start,
                t_end,
            }
        }
        "sinusoidal" => {
            let base = require(s.base, "order.base", "sinusoidal")?;
            let amplitude = require(s.amplitude, "order.amplitude", "sinusoidal")?;
            let omega = require(s.omega, "order.omega", "sinusoidal")?;
            for (v, f) in [
                (s.value, "order.value"),
                (s.from, "order.from"),
                (s.to, "order.to"),
                (s.t_start, "order.t_start"),
                (s.t_end, "order.t_end"),
            ] {
                forbid(v, f, "sinusoidal")?;
            }
            OrderKind::Sinusoidal {
                base,
                amplitude,
                omega,
            }
        }
        other => {
            return Err(CliError::for_field(
                "order.kind",
                format!("unknown order kind `{other}` (expected constant|ramp|sinusoidal)"),
            ))
        }
    };

    let built = match s.clamp {
        Some([lo, hi]) => OrderFunction::with_clamp(kind, (lo, hi)),
        None => OrderFunction::new(kind),
    };
    built.map_err(|e| match e {
        Error::InvalidOrderClamp { .. } => CliError::for_field("order.clamp", e.to_string()),
        Error::InvalidSpan { .. } => CliError::for_field("order.t_end", e.to_string()),
        other => CliError::for_field("order", other.to_string()),
    })
}

fn resolve_grid(section: &GridSection) -> Result<TimeGrid, CliError> {
    TimeGrid::new(section.t0, section.t_end, section.h).map_err(|e| match e {
        Error::InvalidStep(_) | Error::GridTooLarge { .. } => {
            CliError::for_field("grid.h", e.to_string())
        }
        Error::InvalidSpan { .. } | Error::EmptyGrid => {
            CliError::for_field("grid.t_end", e.to_string())
        }
        other => CliError::for_field("grid", other.to_string()),
    })
}

fn parse_scheme(raw: &str, field: &str) -> Result<Scheme, CliError> {
    raw.parse::<Scheme>()
        .map_err(|e| CliError::for_field(field, e))
}

fn resolve_schemes(section: &SchemeSection, arity: SchemeArity) -> Result<Vec<SchemeConfig>, CliError> {
    let kinds: Vec<Scheme> = match arity {
        SchemeArity::One => {
            if section.kinds.is_some() {
                return Err(CliError::for_field(
                    "scheme.kinds",
                    "`run` takes a single `kind`; `kinds` belongs to `compare`",
                ));
            }
            let raw = section.kind.as_deref().ok_or_else(|| {
                CliError::for_field("scheme.kind", "`run` needs a scheme kind")
            })?;
            vec![parse_scheme(raw, "scheme.kind")?]
        }
        SchemeArity::AtLeastTwo => {
            if section.kind.is_some() {
                return Err(CliError::for_field(
                    "scheme.kind",
                    "`compare` takes a `kinds` list; `kind` belongs to `run`",
                ));
            }
            let raw = section.kinds.as_deref().ok_or_else(|| {
                CliError::for_field("scheme.kinds", "`compare` needs a list of schemes")
            })?;
            if raw.len() < 2 {
                return Err(CliError::for_field(
                    "scheme.kinds",
                    format!("`compare` needs at least two schemes, got {}", raw.len()),
                ));
            }
            let mut parsed = Vec::with_capacity(raw.len());
            for r in raw {
                let s = parse_scheme(r, "scheme.kinds")?;
                if parsed.contains(&s) {
                    return Err(CliError::for_field(
                        "scheme.kinds",
                        format!("duplicate scheme `{s}`"),
                    ));
                }
                parsed.push(s);
            }
            parsed
        }
    };

    let mode = match section.mode.as_deref() {
        None | Some("reference") => SchemeMode::Reference,
        Some("literal") => SchemeMode::Literal,
        Some(other) => {
            return Err(CliError::for_field(
                "scheme.mode",
                format!("unknown mode `{other}` (expected reference|literal)"),
            ))
        }
    };
    let cf_normalization = match section.cf_normalization.as_deref() {
        None | Some("kernel") => CfNormalization::Kernel,
        Some("unit") => CfNormalization::Unit,
        Some(other) => {
            return Err(CliError::for_field(
                "scheme.cf_normalization",
                format!("unknown normalization `{other}` (expected kernel|unit)"),
            ))
        }
    };
    let bootstrap = match section.history_bootstrap.as_deref() {
        None | Some("flat") => HistoryBootstrap::Flat,
        Some("zero") => HistoryBootstrap::Zero,
        Some(other) => {
            return Err(CliError::for_field(
                "scheme.history_bootstrap",
                format!("unknown bootstrap `{other}` (expected flat|zero)"),
            ))
        }
    };

    Ok(kinds
        .into_iter()
        .map(|scheme| {
            SchemeConfig::new(scheme)
                .with_mode(mode)
                .with_cf_normalization(cf_normalization)
                .with_bootstrap(bootstrap)
        })
        .collect())
}

fn resolve_output(section: &OutputSection, dimension: usize) -> Result<OutputPlan, CliError> {
    let portrait = match section.portrait {
        Some([i, j]) => {
            if i >= dimension || j >= dimension {
                return Err(CliError::for_field(
                    "output.portrait",
                    format!("component indices must be < {dimension}, got [{i}, {j}]"),
                ));
            }
            (i, j)
        }
        None => match dimension {
            1 => (0, 0),
            2 => (0, 1),
            _ => (0, 2),
        },
    };
    Ok(OutputPlan {
        csv: section.csv.clone(),
        svg: section.svg.clone(),
        summary: section.summary.clone(),
        portrait,
    })
}

fn resolve_sweep(
    section: Option<&SweepSection>,
    system: &SystemDefinition,
    arity: SchemeArity,
) -> Result<Option<SweepPlan>, CliError> {
    let Some(s) = section else { return Ok(None) };
    if arity == SchemeArity::AtLeastTwo {
        return Err(CliError::for_field(
            "sweep",
            "sweeps are only supported by `run`",
        ));
    }
    if system.params().get(&s.parameter).is_none() {
        return Err(CliError::for_field(
            "sweep.parameter",
            format!(
                "system `{}` has no parameter `{}`",
                system.id(),
                s.parameter
            ),
        ));
    }
    if s.values.is_empty() {
        return Err(CliError::for_field("sweep.values", "sweep needs at least one value"));
    }
    if let Some(bad) = s.values.iter().find(|v| !v.is_finite()) {
        return Err(CliError::for_field(
            "sweep.values",
            format!("sweep values must be finite, got {bad}"),
        ));
    }
    Ok(Some(SweepPlan {
        parameter: s.parameter.clone(),
        values: s.values.clone(),
    }))
}
