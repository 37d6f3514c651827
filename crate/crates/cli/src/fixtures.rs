use heegner_periods::curves::CurvePoint;
use heegner_periods::BigRat;
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixtureModel {
    #[serde(rename = "E_delta")]
    EDelta,
    #[serde(rename = "W_delta")]
    WDelta,
}

/// A published Heegner point `{delta, model, x, y, t}` with optional expected difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointFixture {
    pub delta: i64,
    pub model: FixtureModel,
    pub x: BigRat,
    pub y: BigRat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<BigRat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difference: Option<BigRat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PointFixture {
    pub fn point(&self) -> CurvePoint {
        CurvePoint::affine(self.x.clone(), self.y.clone())
    }
}

#[derive(Debug, Clone, Default)]
pub struct PointFixtures(Vec<PointFixture>);

impl PointFixtures {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let v: Vec<PointFixture> = serde_json::from_str(text)?;
        let mut seen = std::collections::BTreeSet::new();
        for f in &v {
            if !seen.insert((f.delta, f.model as u8)) {
                return Err(CliError::Data(format!("duplicate fixture for Δ = {} on {:?}", f.delta, f.model)));
            }
        }
        Ok(PointFixtures(v))
    }

    pub fn get(&self, delta: i64, model: FixtureModel) -> Option<&PointFixture> {
        self.0.iter().find(|f| f.delta == delta && f.model == model)
    }

    pub fn iter(&self) -> impl Iterator<Item = &PointFixture> {
        self.0.iter()
    }
}
