//! Catalog of the bundled dynamical systems.
//!
//! Seven entries: five study systems (financial, lorenz, coupled-lorenz,
//! langford, rossler, shilnikov — the coupled pair counts as its own entry)
//! plus a one-dimensional linear probe used for validation. Every system is
//! autonomous and every right-hand side is a pure function of state and
//! parameters.
//!
//! Presets record where their numbers come from. Several source-study figure
//! captions are verbatim duplicates of each other; the provenance strings
//! keep that visible so no caption is mistaken for independent confirmation
//! of another.

use crate::system::{ParamSet, SystemDefinition, SystemKind};
use crate::{Error, Result};

/// `x' = z + (y - L)x`, `y' = 1 - M y - x^2`, `z' = -x - N z`.
#[inline]
pub fn financial_rhs(s: &[f64], p: &ParamSet, out: &mut [f64]) {
    let (l, m, n) = (p.value(0), p.value(1), p.value(2));
    let (x, y, z) = (s[0], s[1], s[2]);
    out[0] = z + (y - l) * x;
    out[1] = 1.0 - m * y - x * x;
    out[2] = -x - n * z;
}

/// `x' = -sigma x + sigma y`, `y' = r x - y - x z`, `z' = x y - b z`.
#[inline]
pub fn lorenz_rhs(s: &[f64], p: &ParamSet, out: &mut [f64]) {
    let (sigma, r, b) = (p.value(0), p.value(1), p.value(2));
    let (x, y, z) = (s[0], s[1], s[2]);
    out[0] = -sigma * x + sigma * y;
    out[1] = r * x - y - x * z;
    out[2] = x * y - b * z;
}

/// Two identical three-dimensional subsystems, diffusively coupled through
/// their first components only: `x1' += k (x2 - x1)` and `x2' += k (x1 - x2)`.
#[inline]
pub fn coupled_lorenz_rhs(s: &[f64], p: &ParamSet, out: &mut [f64]) {
    let (sigma, r, b, k) = (p.value(0), p.value(1), p.value(2), p.value(3));
    let (x1, y1, z1) = (s[0], s[1], s[2]);
    let (x2, y2, z2) = (s[3], s[4], s[5]);
    out[0] = -sigma * x1 + sigma * y1 + k * (x2 - x1);
    out[1] = r * x1 - y1 - x1 * z1;
    out[2] = x1 * y1 - b * z1;
    out[3] = -sigma * x2 + sigma * y2 + k * (x1 - x2);
    out[4] = r * x2 - y2 - x2 * z2;
    out[5] = x2 * y2 - b * z2;
}

/// `x' = (z - b)x - Omega y`,
/// `y' = Omega x + (z - Omega) y` as printed in the source material
/// (`corrected` substitutes the literature-standard `(z - b) y`),
/// `z' = L + a z - z^3/3 - (x^2 + y^2)(1 + p z) + E z x^3`.
#[inline]
pub fn langford_rhs(s: &[f64], p: &ParamSet, corrected: bool, out: &mut [f64]) {
    let (a, b, omega, l, pp, e) = (
        p.value(0),
        p.value(1),
        p.value(2),
        p.value(3),
        p.value(4),
        p.value(5),
    );
    let (x, y, z) = (s[0], s[1], s[2]);
    out[0] = (z - b) * x - omega * y;
    out[1] = omega * x + (z - if corrected { b } else { omega }) * y;
    out[2] = l + a * z - z * z * z / 3.0 - (x * x + y * y) * (1.0 + pp * z) + e * z * x * x * x;
}

/// `x' = -y - z`, `y' = x + a y`, `z' = b + x z - c z`.
#[inline]
pub fn rossler_rhs(s: &[f64], p: &ParamSet, out: &mut [f64]) {
    let (a, b, c) = (p.value(0), p.value(1), p.value(2));
    let (x, y, z) = (s[0], s[1], s[2]);
    out[0] = -y - z;
    out[1] = x + a * y;
    out[2] = b + x * z - c * z;
}

/// `x' = y`, `y' = z`, `z' = -a z - y + b x (1 - c x - d x^2)`.
#[inline]
pub fn shilnikov_rhs(s: &[f64], p: &ParamSet, out: &mut [f64]) {
    let (a, b, c, d) = (p.value(0), p.value(1), p.value(2), p.value(3));
    let (x, y, z) = (s[0], s[1], s[2]);
    out[0] = y;
    out[1] = z;
    out[2] = -a * z - y + b * x * (1.0 - c * x - d * x * x);
}

/// A preset: named parameter values, optionally an initial condition, and a
/// provenance note carried verbatim into trajectory metadata.
#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub params: &'static [(&'static str, f64)],
    pub initial: Option<&'static [f64]>,
    pub provenance: &'static str,
}

/// One catalog row.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub dimension: usize,
    pub defaults: &'static [(&'static str, f64)],
    pub presets: &'static [Preset],
    pub note: &'static str,
}

const LORENZ_B: f64 = 8.0 / 3.0;

static CATALOG: [CatalogEntry; 7] = [
    CatalogEntry {
        id: "financial",
        dimension: 3,
        defaults: &[("L", 1.0), ("M", 0.1), ("N", 1.0)],
        presets: &[
            Preset {
                name: "fig1",
                params: &[("L", 1.0), ("M", 0.1), ("N", 1.0)],
                initial: Some(&[2.0, -1.0, 1.0]),
                provenance: "source-study figure-1 caption: (a, b, c) = (1, 0.1, 1) mapped positionally to (L, M, N), start (2, -1, 1); the same caption text is printed verbatim for figures 4 and 5",
            },
            Preset {
                name: "chaotic",
                params: &[("L", 3.0), ("M", 0.1), ("N", 1.0)],
                initial: Some(&[2.0, -1.0, 1.0]),
                provenance: "widely studied chaotic regime (L, M, N) = (3, 0.1, 1); chaos is verified in-repo by the largest-exponent diagnostic, not taken from any caption",
            },
        ],
        note: "savings/investment/price model with one quadratic and one bilinear term",
    },
    CatalogEntry {
        id: "lorenz",
        dimension: 3,
        defaults: &[("sigma", 10.0), ("r", 30.0), ("b", LORENZ_B)],
        presets: &[
            Preset {
                name: "fig2",
                params: &[("sigma", 10.0), ("r", 30.0), ("b", LORENZ_B)],
                initial: Some(&[0.1, 0.1, 0.1]),
                provenance: "source-study figure-2 caption: sigma = 10, b = 8/3, r = 30, start (0.1, 0.1, 0.1)",
            },
            Preset {
                name: "classical",
                params: &[("sigma", 10.0), ("r", 28.0), ("b", LORENZ_B)],
                initial: Some(&[0.1, 0.1, 0.1]),
                provenance: "textbook chaotic parameters sigma = 10, r = 28, b = 8/3; largest exponent near 0.9 per standard references",
            },
        ],
        note: "the classic convection-roll system",
    },
    CatalogEntry {
        id: "coupled-lorenz",
        dimension: 6,
        defaults: &[("sigma", 10.0), ("r", 30.0), ("b", LORENZ_B), ("k", 10.0)],
        presets: &[
            Preset {
                name: "sync",
                params: &[("sigma", 10.0), ("r", 30.0), ("b", LORENZ_B), ("k", 10.0)],
                initial: Some(&[0.1, 0.1, 0.1, 5.0, 5.0, 5.0]),
                provenance: "figure-2 parameters on both halves with first-component diffusive coupling k = 10, strong enough for complete synchronization",
            },
            Preset {
                name: "uncoupled",
                params: &[("sigma", 10.0), ("r", 30.0), ("b", LORENZ_B), ("k", 0.0)],
                initial: Some(&[0.1, 0.1, 0.1, 5.0, 5.0, 5.0]),
                provenance: "k = 0 control: the halves evolve independently and stay decorrelated",
            },
        ],
        note: "two identical copies coupled through the first components only",
    },
    CatalogEntry {
        id: "langford",
        dimension: 3,
        defaults: &[
            ("a", 1.0),
            ("b", 0.6),
            ("omega", 3.6),
            ("L", 0.6),
            ("p", 0.2),
            ("E", 0.0),
        ],
        presets: &[Preset {
            name: "fig3",
            params: &[
                ("a", 1.0),
                ("b", 0.6),
                ("omega", 3.6),
                ("L", 0.6),
                ("p", 0.2),
                ("E", 0.0),
            ],
            initial: Some(&[0.0, 0.3, 0.0]),
            provenance: "source-study figure-3 caption: (alpha, beta, omega, lambda, rho, epsilon) = (1, 0.6, 3.6, 0.6, 0.2, 0) mapped to (a, b, omega, L, p, E), start (0, 0.3, 0)",
        }],
        note: "torus-forming oscillator; the printed y-equation damps with (z - omega), enable `corrected` for the literature-standard (z - b)",
    },
    CatalogEntry {
        id: "rossler",
        dimension: 3,
        defaults: &[("a", 1.0), ("b", 0.1), ("c", 1.0)],
        presets: &[
            Preset {
                name: "fig4",
                params: &[("a", 1.0), ("b", 0.1), ("c", 1.0)],
                initial: Some(&[2.0, -1.0, 1.0]),
                provenance: "source-study figure-4 caption: (a, b, c) = (1, 0.1, 1), start (2, -1, 1); caption text identical to figures 1 and 5",
            },
            Preset {
                name: "classical",
                params: &[("a", 0.2), ("b", 0.2), ("c", 5.7)],
                initial: Some(&[1.0, 1.0, 1.0]),
                provenance: "textbook chaotic parameters a = b = 0.2, c = 5.7; the z-component spikes intermittently (heavy-tailed, positive excess kurtosis)",
            },
        ],
        note: "spiral-type chaos with a single nonlinearity in the z-equation",
    },
    CatalogEntry {
        id: "shilnikov",
        dimension: 3,
        defaults: &[("a", 1.0), ("b", 0.1), ("c", 1.0), ("d", 0.0)],
        presets: &[Preset {
            name: "fig5",
            params: &[("a", 1.0), ("b", 0.1), ("c", 1.0), ("d", 0.0)],
            initial: Some(&[2.0, -1.0, 1.0]),
            provenance: "source-study figure-5 caption: (a, b, c) = (1, 0.1, 1), start (2, -1, 1); caption text identical to figures 1 and 4, and it omits d — the minimal reading d = 0 is used",
        }],
        note: "jerk-form system; the cubic coefficient d defaults to 0 (quadratic saturation only)",
    },
    CatalogEntry {
        id: "linear-probe",
        dimension: 1,
        defaults: &[("lambda", -1.0)],
        presets: &[Preset {
            name: "relaxation",
            params: &[("lambda", -1.0)],
            initial: Some(&[1.0]),
            provenance: "validation probe: for constant order psi the exact solution is the one-parameter Mittag-Leffler relaxation E_psi(lambda t^psi)",
        }],
        note: "dX/dt = lambda X; every solver is cross-checked against closed forms on this probe",
    },
];

/// The full public catalog (exactly the seven entries above).
pub fn catalog() -> &'static [CatalogEntry] {
    &CATALOG
}

/// Catalog row for `id`, if present.
pub fn catalog_entry(id: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.id == id)
}

fn kind_for(id: &str) -> Option<SystemKind> {
    Some(match id {
        "financial" => SystemKind::Financial,
        "lorenz" => SystemKind::Lorenz,
        "coupled-lorenz" => SystemKind::CoupledLorenz,
        "langford" => SystemKind::Langford { corrected: false },
        "rossler" => SystemKind::Rossler,
        "shilnikov" => SystemKind::Shilnikov,
        "linear-probe" => SystemKind::LinearProbe,
        _ => return None,
    })
}

/// Builds a catalog system with its default parameters.
pub fn instantiate(id: &str) -> Result<SystemDefinition> {
    let entry = catalog_entry(id).ok_or_else(|| Error::UnknownSystem(id.to_string()))?;
    let kind = kind_for(id).ok_or_else(|| Error::UnknownSystem(id.to_string()))?;
    Ok(SystemDefinition::from_parts(
        entry.id,
        entry.dimension,
        ParamSet::new(entry.defaults),
        kind,
    ))
}

pub fn financial() -> SystemDefinition {
    instantiate("financial").expect("catalog entry exists")
}

pub fn lorenz() -> SystemDefinition {
    instantiate("lorenz").expect("catalog entry exists")
}

pub fn coupled_lorenz() -> SystemDefinition {
    instantiate("coupled-lorenz").expect("catalog entry exists")
}

/// `corrected` switches the y-equation damping from the as-printed
/// `(z - omega)` to the literature-standard `(z - b)`.
pub fn langford(corrected: bool) -> SystemDefinition {
    let entry = catalog_entry("langford").expect("catalog entry exists");
    SystemDefinition::from_parts(
        entry.id,
        entry.dimension,
        ParamSet::new(entry.defaults),
        SystemKind::Langford { corrected },
    )
}

pub fn rossler() -> SystemDefinition {
    instantiate("rossler").expect("catalog entry exists")
}

pub fn shilnikov() -> SystemDefinition {
    instantiate("shilnikov").expect("catalog entry exists")
}

pub fn linear_probe(lambda: f64) -> SystemDefinition {
    let mut s = instantiate("linear-probe").expect("catalog entry exists");
    s.set_param("lambda", lambda).expect("parameter exists");
    s
}

/// Test probe `dX_i/dt = c` in `dimension` components; not listed in the
/// catalog.
pub fn constant_forcing(dimension: usize, c: f64) -> SystemDefinition {
    SystemDefinition::from_parts(
        "constant-forcing",
        dimension,
        ParamSet::new(&[("c", c)]),
        SystemKind::ConstantForcing,
    )
}
