//! System definitions: a named right-hand side plus its parameter set.

use crate::systems;
use crate::{Error, Result};

/// Ordered, named parameter set. Order is part of the public contract: the
/// right-hand sides read parameters by index, and listings print them in
/// catalog order.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet {
    entries: Vec<(String, f64)>,
}

impl ParamSet {
    pub fn new(pairs: &[(&str, f64)]) -> Self {
        Self {
            entries: pairs
                .iter()
                .map(|(name, value)| (name.to_string(), *value))
                .collect(),
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    /// Overwrites an existing parameter; unknown names are an error, never a
    /// silent insert.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        match self.entries.iter_mut().find(|(n, _)| n == name) {
            Some((_, v)) => {
                *v = value;
                Ok(())
            }
            None => Err(Error::UnknownParameter(name.to_string())),
        }
    }

    /// Parameter at a fixed catalog position (hot-path access for the
    /// right-hand sides).
    #[inline]
    pub fn value(&self, index: usize) -> f64 {
        self.entries[index].1
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(n, v)| (n.as_str(), *v))
    }
}

/// Which right-hand side a [`SystemDefinition`] dispatches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SystemKind {
    Financial,
    Lorenz,
    CoupledLorenz,
    Langford { corrected: bool },
    Rossler,
    Shilnikov,
    LinearProbe,
    /// Test probe `dX_i/dt = c`; not part of the public catalog.
    ConstantForcing,
}

/// A concrete dynamical system: identity, dimension, parameters, and the
/// right-hand side. Evaluation is pure — no state, no randomness, no clock.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemDefinition {
    id: String,
    dimension: usize,
    params: ParamSet,
    kind: SystemKind,
    provenance: Option<String>,
}

impl SystemDefinition {
    pub(crate) fn from_parts(
        id: &str,
        dimension: usize,
        params: ParamSet,
        kind: SystemKind,
    ) -> Self {
        Self {
            id: id.to_string(),
            dimension,
            params,
            kind,
            provenance: None,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    /// Overrides one named parameter.
    pub fn set_param(&mut self, name: &str, value: f64) -> Result<()> {
        self.params.set(name, value)
    }

    /// Applies a named preset of this system: parameters are overwritten, the
    /// preset's provenance string is recorded verbatim, and the preset's
    /// initial condition (when it carries one) is returned.
    pub fn apply_preset(&mut self, preset: &str) -> Result<Option<Vec<f64>>> {
        let entry = systems::catalog_entry(&self.id)
            .ok_or_else(|| Error::UnknownSystem(self.id.clone()))?;
        let p = entry
            .presets
            .iter()
            .find(|p| p.name == preset)
            .ok_or_else(|| Error::UnknownPreset {
                system: self.id.clone(),
                preset: preset.to_string(),
            })?;
        for (name, value) in p.params {
            self.params.set(name, *value)?;
        }
        self.provenance = Some(p.provenance.to_string());
        Ok(p.initial.map(|ic| ic.to_vec()))
    }

    /// Provenance note attached by a preset, if any; round-tripped unchanged
    /// into trajectory metadata.
    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn set_provenance(&mut self, note: &str) {
        self.provenance = Some(note.to_string());
    }

    /// Evaluates the right-hand side into `out`. All catalog systems are
    /// autonomous; `_t` is kept for interface uniformity.
    #[inline]
    pub fn eval_into(&self, _t: f64, state: &[f64], out: &mut [f64]) {
        debug_assert_eq!(state.len(), self.dimension);
        debug_assert_eq!(out.len(), self.dimension);
        let p = &self.params;
        match self.kind {
            SystemKind::Financial => systems::financial_rhs(state, p, out),
            SystemKind::Lorenz => systems::lorenz_rhs(state, p, out),
            SystemKind::CoupledLorenz => systems::coupled_lorenz_rhs(state, p, out),
            SystemKind::Langford { corrected } => systems::langford_rhs(state, p, corrected, out),
            SystemKind::Rossler => systems::rossler_rhs(state, p, out),
            SystemKind::Shilnikov => systems::shilnikov_rhs(state, p, out),
            SystemKind::LinearProbe => out[0] = p.value(0) * state[0],
            SystemKind::ConstantForcing => out.fill(p.value(0)),
        }
    }

    /// Allocating convenience wrapper around [`SystemDefinition::eval_into`].
    pub fn eval(&self, t: f64, state: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dimension];
        self.eval_into(t, state, &mut out);
        out
    }
}
