use serde::Serialize;

/// A rational point as exact strings, tagged with its model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub model: String,
    pub x: String,
    pub y: String,
}

/// One `Δ` of a `table2` or `table3` verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRow {
    pub delta: i64,
    pub r: i64,
    pub c_plus: String,
    pub c_plus_digits: u32,
    pub precision: u32,
    pub point_source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointRecord>,
    /// `-1` when the pipeline point had to be negated to give a rational difference.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference_decimal: Option<String>,
    /// Exact rational, or `"unrecognized"`.
    pub difference: String,
    /// `|difference_decimal − difference|` and the tolerance it was accepted under.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    pub quarter_integer: bool,
    pub half_integer: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_difference: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_expected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationRow {
    pub fn failed(delta: i64, r: i64, precision: u32, source: &str, error: String) -> Self {
        VerificationRow {
            delta,
            r,
            c_plus: String::new(),
            c_plus_digits: 0,
            precision,
            point_source: source.into(),
            point: None,
            sign: None,
            t: None,
            omega: None,
            period: None,
            difference_decimal: None,
            difference: "unrecognized".into(),
            residual: None,
            tolerance: None,
            quarter_integer: false,
            half_integer: false,
            expected_difference: None,
            expected_t: None,
            matches_expected: None,
            wall_time_ms: None,
            error: Some(error),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub table: String,
    pub curve: String,
    pub coefficients: String,
    pub rows: Vec<VerificationRow>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn row(&self, delta: i64) -> Option<&VerificationRow> {
        self.rows.iter().find(|r| r.delta == delta)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodRow {
    pub delta: i64,
    pub model: String,
    pub mu: String,
    pub nu_imag: String,
    pub omega: String,
    pub components: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodsReport {
    pub curve: String,
    pub precision: u32,
    pub rows: Vec<PeriodRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeegnerRow {
    pub delta: i64,
    pub r: i64,
    pub precision: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_minimal: Option<PointRecord>,
    /// `(i, j, den)` of the branch `(z + iμ + jν)/den`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<(u32, u32, u32)>,
    /// Agreement with the published point up to sign, when one is known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_published: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeegnerReport {
    pub curve: String,
    pub rows: Vec<HeegnerRow>,
}
