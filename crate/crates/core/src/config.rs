//! Run configuration. Defaults are compiled in; a JSON file may override any
//! field, including individual tolerances by name.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mass_shell::{AngularSpec, RadialSpec};
use crate::spacetime::SpacetimeGrid;
use crate::tolerances as tol;

/// Upper bound on momentum-grid nodes accepted from a config file.
pub const MAX_SHELL_NODES: usize = 1_000_000;

/// Tolerance names accepted in config files, with their defaults.
pub fn default_tolerances() -> BTreeMap<String, f64> {
    [
        ("group_identity", tol::GROUP_IDENTITY),
        ("wigner", tol::WIGNER),
        ("isometry", tol::ISOMETRY),
        ("norm_preservation", tol::NORM_PRESERVATION),
        ("perception_norm", tol::PERCEPTION_NORM),
        ("projector", tol::PROJECTOR),
        ("momentum_constraint", tol::MOMENTUM_CONSTRAINT),
        ("parity", tol::PARITY),
        ("doubled_action", tol::DOUBLED_ACTION),
        ("structure_constants", 1e-12),
        ("chern_integer", 1e-3),
        ("chern_stability", tol::CHERN_STABILITY),
        ("zeta_total", tol::ZETA_TOTAL),
        ("chern_form_pointwise", tol::CHERN_FORM_POINTWISE),
        ("min_convergence_order", tol::MIN_CONVERGENCE_ORDER),
        ("min_halving_ratio", tol::MIN_HALVING_RATIO),
        ("field_residual", 0.05),
        ("density", tol::DENSITY),
        ("log_negativity", 1e-10),
        ("frame_dependence", tol::FRAME_DEPENDENCE),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Random samples per identity.
    pub samples: usize,
    /// Overrides merged over `default_tolerances`.
    pub tolerances: BTreeMap<String, f64>,
    pub radial: RadialSpec,
    pub angular: AngularSpec,
    /// Grid for the full-size field residual check.
    pub spacetime: SpacetimeGrid,
    /// Mesh levels 0..chern_levels for the Chern integrals.
    pub chern_levels: usize,
    pub chern_cap: f64,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 20240601,
            samples: 1000,
            tolerances: default_tolerances(),
            radial: RadialSpec::default(),
            angular: AngularSpec::default(),
            spacetime: SpacetimeGrid::default(),
            chern_levels: 2,
            chern_cap: 0.4,
            out_dir: PathBuf::from("reports"),
        }
    }
}

impl RunConfig {
    pub fn tolerance(&self, name: &str) -> f64 {
        match self.tolerances.get(name) {
            Some(v) => *v,
            None => default_tolerances().get(name).copied().unwrap_or_else(|| panic!("no tolerance named {name}")),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let known = default_tolerances();
        for (k, v) in &self.tolerances {
            if !known.contains_key(k) {
                return Err(Error::Config(format!("unknown tolerance `{}`", k.escape_debug())));
            }
            if !(v.is_finite() && *v > 0.0) {
                return Err(Error::Config(format!("tolerance `{k}` must be positive and finite, got {v}")));
            }
        }
        if self.samples == 0 || self.samples > 1_000_000 {
            return Err(Error::Config(format!("samples must be in 1..=1000000, got {}", self.samples)));
        }
        if self.chern_levels == 0 || self.chern_levels > 6 {
            return Err(Error::Config(format!("chern_levels must be in 1..=6, got {}", self.chern_levels)));
        }
        if !(self.chern_cap > 0.0 && self.chern_cap < std::f64::consts::FRAC_PI_2) {
            return Err(Error::Config(format!("chern_cap must lie in (0, pi/2), got {}", self.chern_cap)));
        }
        if self.spacetime.n > 256 {
            return Err(Error::Config(format!("spacetime grid of {} points per axis is too large", self.spacetime.n)));
        }
        self.spacetime.check().map_err(|e| Error::Config(e.to_string()))?;
        let sphere = match self.angular {
            AngularSpec::Spiral { points } => points,
            AngularSpec::Product { polar, azimuthal } => polar.saturating_mul(azimuthal),
        };
        if self.radial.nodes > 256 || sphere > 100_000 || self.radial.nodes.saturating_mul(sphere) > MAX_SHELL_NODES {
            return Err(Error::Config(format!("momentum grid of {} x {sphere} nodes is too large", self.radial.nodes)));
        }
        crate::mass_shell::build_grid(&self.radial, &self.angular).map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }
}

/// Parses and validates a JSON config. Tolerances given in the file are
/// merged over the defaults.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    // serde would otherwise accept a bare array as a positional struct
    if !value.is_object() {
        return Err(Error::Config("config must be a JSON object".into()));
    }
    let mut cfg: RunConfig = serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
    let mut merged = default_tolerances();
    merged.extend(std::mem::take(&mut cfg.tolerances));
    cfg.tolerances = merged;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_gives_defaults() {
        assert_eq!(parse_config("{}").unwrap(), RunConfig::default());
    }

    #[test]
    fn overrides_merge() {
        let c = parse_config(r#"{"seed": 7, "tolerances": {"isometry": 1e-8}, "angular": {"kind": "product", "polar": 4, "azimuthal": 8}}"#).unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.tolerance("isometry"), 1e-8);
        assert_eq!(c.tolerance("wigner"), tol::WIGNER);
    }

    #[test]
    fn rejects_bad_values() {
        for bad in [
            r#"{"tolerances": {"isometry": 0}}"#,
            r#"{"tolerances": {"isometry": -1e-3}}"#,
            r#"{"tolerances": {"nonsense": 1.0}}"#,
            r#"{"samples": 0}"#,
            r#"{"chern_cap": 2.0}"#,
            r#"{"spacetime": {"n": 2, "h": 0.1}}"#,
            r#"{"radial": {"nodes": 3, "r_min": 2.0, "r_max": 1.0}}"#,
            r#"{"colour": "blue"}"#,
            r#"{"angular": {"kind": "spiral", "points": 4000000000}}"#,
            "[1, 2]",
            "",
        ] {
            assert!(parse_config(bad).is_err(), "{bad}");
        }
    }
}
