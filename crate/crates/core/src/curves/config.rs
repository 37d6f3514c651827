use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::BigRat;
use crate::error::{Error, Result};

use super::map::{Model, ModelMap};
use super::model::{LongModel, ShortModel};
use super::twist::{minimal_twist_model, twist};

/// Minimal model of a twist supplied by hand, for families without a case table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalModelOverride {
    pub long: LongModel,
    /// `(u, r, s, t)` of the map from the minimal model to `E_Δ`.
    pub map: [BigRat; 4],
}

/// Curve configuration file.
///
/// ```json
/// {"label": "37a", "N": 37, "long": [0,0,1,-1,0], "short": {"g2": "4", "g3": "-1"},
///  "fricke": 1, "manin": 1}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveConfig {
    pub label: String,
    #[serde(rename = "N")]
    pub level: u64,
    pub long: LongModel,
    pub short: ShortModel,
    pub fricke: i8,
    pub manin: i64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub minimal_models: BTreeMap<i64, MinimalModelOverride>,
}

impl CurveConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: CurveConfig =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("curve config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.fricke != 1 && self.fricke != -1 {
            return Err(Error::InvalidInput(format!("fricke must be ±1, got {}", self.fricke)));
        }
        if self.manin == 0 {
            return Err(Error::InvalidInput("Manin constant must be nonzero".into()));
        }
        if self.long.short_model() != self.short {
            return Err(Error::ModelInconsistency(format!(
                "short model {} does not match long model {}",
                self.short, self.long
            )));
        }
        Ok(())
    }

    /// Minimal model of `E_Δ` and its map to `E_Δ`: a configured override if present,
    /// otherwise the built-in case table.
    pub fn minimal_twist_model(&self, delta: i64) -> Result<(LongModel, ModelMap)> {
        match self.minimal_models.get(&delta) {
            Some(o) => {
                let (e_delta, _) = twist(&self.short, delta)?;
                let [u, r, s, t] = o.map.clone();
                let map = ModelMap::new(Model::Long(o.long.clone()), Model::Short(e_delta), u, r, s, t)?;
                Ok((o.long.clone(), map))
            }
            None => minimal_twist_model(&self.short, delta),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const E37: &str = r#"{"label":"37a","N":37,"long":[0,0,1,-1,0],
        "short":{"g2":"4","g3":"-1"},"fricke":1,"manin":1}"#;

    #[test]
    fn parses_37a() {
        let cfg = CurveConfig::from_json(E37).unwrap();
        assert_eq!(cfg.level, 37);
        assert_eq!(cfg.fricke, 1);
        assert!(cfg.minimal_twist_model(12).is_ok());
    }

    #[test]
    fn rejects_mismatched_short_model() {
        let bad = E37.replace(r#""g3":"-1""#, r#""g3":"1""#);
        assert!(CurveConfig::from_json(&bad).is_err());
        let bad = E37.replace(r#""manin":1"#, r#""manin":0"#);
        assert!(CurveConfig::from_json(&bad).is_err());
    }

    #[test]
    fn manual_override_is_checked() {
        let with = E37.replace(
            r#""manin":1}"#,
            r#""manin":1,"minimal_models":{"12":{"long":[0,0,0,-144,432],"map":["1","0","0","0"]}}}"#,
        );
        let cfg = CurveConfig::from_json(&with).unwrap();
        assert!(cfg.minimal_twist_model(12).is_ok());
        let wrong = with.replace("432", "431");
        let cfg = CurveConfig::from_json(&wrong).unwrap();
        assert!(cfg.minimal_twist_model(12).is_err());
    }
}
