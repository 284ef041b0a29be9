//! Run configuration: one JSON document, overridden field by field from the
//! command line. Defaults are the case study (E1 = 1, E2 = 2, T_c = 1,
//! T_r = 1.1, T_h = 20, all collision rates 1).

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thermoq_core::bosonic::{equivalence_map, BosonicCoupling};
use thermoq_core::collision::CouplingRates;
use thermoq_core::model::{BathTriple, FridgeSpec};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Collision,
    Bosonic,
    Qutrit,
    Compare,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Collision => "collision",
            Model::Bosonic => "bosonic",
            Model::Qutrit => "qutrit",
            Model::Compare => "compare",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum InitialState {
    Ground,
    MaximallyMixed,
    Steady,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvolveOptions {
    /// Defaults to `100 / min(p)`.
    pub t_final: Option<f64>,
    /// Defaults to the integrator's own choice.
    pub dt: Option<f64>,
    pub initial: InitialState,
    /// Number of rows written, evenly spaced in time.
    pub rows: usize,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self { t_final: None, dt: None, initial: InitialState::Ground, rows: 200 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub model: Model,
    pub e1: f64,
    pub e2: f64,
    pub t_c: f64,
    pub t_r: f64,
    pub t_h: f64,
    pub p_c: f64,
    pub p_r: f64,
    pub p_h: f64,
    /// Bosonic coupling constants; when absent they follow from the
    /// collision rates through the equivalence map.
    pub gamma_c: Option<f64>,
    pub gamma_r: Option<f64>,
    pub gamma_h: Option<f64>,
    /// Multiplies the qutrit's cold collision rate.
    pub qutrit_cold_scale: f64,
    pub evolve: EvolveOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: Model::Collision,
            e1: 1.0,
            e2: 2.0,
            t_c: 1.0,
            t_r: 1.1,
            t_h: 20.0,
            p_c: 1.0,
            p_r: 1.0,
            p_h: 1.0,
            gamma_c: None,
            gamma_r: None,
            gamma_h: None,
            qutrit_cold_scale: 1.0,
            evolve: EvolveOptions::default(),
        }
    }
}

/// Validated physical parameters.
#[derive(Clone, Copy, Debug)]
pub struct Resolved {
    pub spec: FridgeSpec,
    pub baths: BathTriple,
    pub rates: CouplingRates,
    pub bosonic: BosonicCoupling,
}

impl RunConfig {
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            CliError::Validation(format!("{origin}: line {}, column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text, &path.display().to_string())
    }

    /// Sets a numeric parameter by its config name.
    pub fn set(&mut self, field: &str, value: f64) -> Result<()> {
        match field {
            "e1" => self.e1 = value,
            "e2" => self.e2 = value,
            "t_c" | "tc" => self.t_c = value,
            "t_r" | "tr" => self.t_r = value,
            "t_h" | "th" => self.t_h = value,
            "p_c" | "pc" => self.p_c = value,
            "p_r" | "pr" => self.p_r = value,
            "p_h" | "ph" => self.p_h = value,
            "gamma_c" => self.gamma_c = Some(value),
            "gamma_r" => self.gamma_r = Some(value),
            "gamma_h" => self.gamma_h = Some(value),
            "qutrit_cold_scale" => self.qutrit_cold_scale = value,
            _ => return Err(CliError::Validation(format!("unknown parameter `{field}`"))),
        }
        Ok(())
    }

    pub fn resolve(&self) -> Result<Resolved> {
        let spec = FridgeSpec::new(self.e1, self.e2)?;
        let baths = BathTriple::new(self.t_c, self.t_r, self.t_h)?;
        let rates = CouplingRates::new(self.p_c, self.p_r, self.p_h)?;
        if !(self.qutrit_cold_scale.is_finite() && self.qutrit_cold_scale > 0.0) {
            return Err(CliError::Validation(format!(
                "invalid config field `qutrit_cold_scale`: must be positive, got {}",
                self.qutrit_cold_scale
            )));
        }
        let bosonic = match (self.gamma_c, self.gamma_r, self.gamma_h) {
            (None, None, None) => equivalence_map(&rates, &baths, &spec),
            (Some(c), Some(r), Some(h)) => BosonicCoupling::new(c, r, h)?,
            _ => {
                return Err(CliError::Validation(
                    "invalid config field `gamma_c`/`gamma_r`/`gamma_h`: give all three or none".into(),
                ))
            }
        };
        if let Some(t) = self.evolve.t_final {
            if !(t.is_finite() && t >= 0.0) {
                return Err(CliError::Validation(format!("invalid config field `evolve.t_final`: {t}")));
            }
        }
        if let Some(dt) = self.evolve.dt {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(CliError::Validation(format!("invalid config field `evolve.dt`: {dt}")));
            }
        }
        if self.evolve.rows < 1 {
            return Err(CliError::Validation("invalid config field `evolve.rows`: must be at least 1".into()));
        }
        Ok(Resolved { spec, baths, rates, bosonic })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_the_case_study() {
        let r = RunConfig::default().resolve().unwrap();
        assert_eq!((r.spec.e1(), r.spec.e2()), (1.0, 2.0));
        assert_eq!((r.baths.t_c(), r.baths.t_r(), r.baths.t_h()), (1.0, 1.1, 20.0));
    }

    #[test]
    fn partial_json_keeps_defaults() {
        let c = RunConfig::from_json(r#"{"e2": 3.5, "model": "bosonic"}"#, "inline").unwrap();
        assert_eq!(c.e2, 3.5);
        assert_eq!(c.t_h, 20.0);
        assert_eq!(c.model, Model::Bosonic);
    }

    #[test]
    fn unknown_field_reports_position() {
        let err = RunConfig::from_json("{\n  \"e1\": 1.0,\n  \"e3\": 2.0\n}", "cfg.json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3") && msg.contains("e3"), "{msg}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn invalid_gap_names_the_field() {
        let c = RunConfig { e2: 0.5, ..RunConfig::default() };
        let msg = c.resolve().unwrap_err().to_string();
        assert!(msg.contains("`e2`") && msg.contains("E2 must exceed E1"), "{msg}");
    }

    #[test]
    fn partial_gammas_rejected() {
        let c = RunConfig { gamma_c: Some(1.0), ..RunConfig::default() };
        assert!(c.resolve().is_err());
    }

    #[test]
    fn round_trip() {
        let c = RunConfig { e2: 4.25, gamma_c: Some(0.1), gamma_r: Some(0.2), gamma_h: Some(0.3), ..RunConfig::default() };
        let back = RunConfig::from_json(&c.to_json().to_string(), "echo").unwrap();
        assert_eq!(back, c);
    }
}
