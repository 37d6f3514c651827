//! Data ingestion, verification pipelines and JSON reports for the
//! `heegner-periods` command-line tool.

pub mod coeffs;
pub mod fixtures;
pub mod pipeline;
pub mod report;
pub mod selftest;

pub use coeffs::{sqrt_mod_4n, CoeffRow, CoeffTable};
pub use fixtures::{FixtureModel, PointFixture, PointFixtures};
pub use pipeline::{Context, PointSource, PrecisionPolicy, TableKind};
pub use report::{HeegnerReport, PeriodsReport, VerificationReport, VerificationRow};

use std::path::PathBuf;

/// Built-in curve configuration for `37a`.
pub const CURVE_37A: &str = include_str!("../data/curve_37a.json");
/// Built-in coefficient table of `f3` on level 37.
pub const C_PLUS_F3: &str = include_str!("../data/c_plus_f3.csv");
/// Built-in published Heegner points.
pub const PUBLISHED_POINTS: &str = include_str!("../data/published_points.json");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] heegner_periods::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("coefficient table: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Data(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn read_file(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
