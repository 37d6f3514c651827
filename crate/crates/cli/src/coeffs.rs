use std::collections::BTreeMap;

use heegner_periods::quadforms::is_fundamental_discriminant;
use heegner_periods::thirdkind::PlusCoefficient;
use heegner_periods::{arith::parse_decimal, Precision};
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

/// One row `delta,c_plus,digits`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub delta: i64,
    pub c_plus: String,
    pub digits: u32,
}

/// Published `c⁺(Δ)` values, keyed by `Δ`.
#[derive(Debug, Clone, Default)]
pub struct CoeffTable {
    rows: BTreeMap<i64, CoeffRow>,
    /// Leading `#` lines of the file.
    pub provenance: String,
}

/// Smallest `r ≥ 0` with `r² ≡ Δ (mod 4N)`.
pub fn sqrt_mod_4n(delta: i64, level: i64) -> Option<i64> {
    let m = 4 * level;
    (0..2 * level).find(|r| (r * r - delta).rem_euclid(m) == 0)
}

fn fraction_digits(s: &str) -> usize {
    s.split_once('.').map_or(0, |(_, f)| f.len())
}

impl CoeffTable {
    pub fn from_csv(text: &str) -> CliResult<Self> {
        let provenance = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .map(|l| l.trim_start_matches('#').trim())
            .collect::<Vec<_>>()
            .join(" ");
        let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut rows = BTreeMap::new();
        for rec in rdr.deserialize() {
            let row: CoeffRow = rec?;
            if row.digits < 20 {
                return Err(CliError::Data(format!("Δ = {}: only {} digits (need at least 20)", row.delta, row.digits)));
            }
            if fraction_digits(&row.c_plus) < row.digits as usize {
                return Err(CliError::Data(format!("Δ = {}: c_plus has fewer than {} digits", row.delta, row.digits)));
            }
            if rows.insert(row.delta, row.clone()).is_some() {
                return Err(CliError::Data(format!("Δ = {} listed twice", row.delta)));
            }
        }
        Ok(CoeffTable { rows, provenance })
    }

    /// Checks that each `Δ` is a fundamental discriminant and a square modulo `4N`.
    pub fn validate(&self, level: i64) -> CliResult<()> {
        for &d in self.rows.keys() {
            if d != 1 && !is_fundamental_discriminant(d) {
                return Err(CliError::Data(format!("Δ = {d} is not a fundamental discriminant")));
            }
            if sqrt_mod_4n(d, level).is_none() {
                return Err(CliError::Data(format!("Δ = {d} is not a square modulo {}", 4 * level)));
            }
        }
        Ok(())
    }

    pub fn row(&self, delta: i64) -> Option<&CoeffRow> {
        self.rows.get(&delta)
    }

    pub fn deltas(&self) -> Vec<i64> {
        self.rows.keys().copied().collect()
    }

    pub fn plus(&self, delta: i64, level: i64, prec: Precision) -> CliResult<PlusCoefficient> {
        let row = self.row(delta).ok_or_else(|| CliError::Data(format!("no coefficient for Δ = {delta}")))?;
        let r = sqrt_mod_4n(delta, level)
            .ok_or_else(|| CliError::Data(format!("Δ = {delta} is not a square modulo {}", 4 * level)))?;
        Ok(PlusCoefficient { delta, r, value: parse_decimal(&row.c_plus, prec)?, digits: row.digits })
    }

    /// `c⁺(m, h)` when `m` is tabulated and `h² ≡ m (mod 4N)`.
    pub fn lookup(&self, m: i64, h: i64, level: i64, prec: Precision) -> Option<heegner_periods::BigReal> {
        let row = self.row(m)?;
        if (h * h - m).rem_euclid(4 * level) != 0 {
            return None;
        }
        parse_decimal(&row.c_plus, prec).ok()
    }
}
