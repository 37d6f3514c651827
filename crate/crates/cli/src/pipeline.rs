use std::time::Instant;

use heegner_periods::arith::format_decimal;
use heegner_periods::curves::{twist, Curve, CurveConfig, CurvePoint, ShortModel};
use heegner_periods::heegner::{heegner_point, ModularParam, PrincipalTerm};
use heegner_periods::periods::period_lattice;
use heegner_periods::thirdkind::{difference_raw, difference_wm_on, eta_qexp, find_t, Difference};
use heegner_periods::{BigRat, Precision};
use rayon::prelude::*;
use rug::Float;

use crate::coeffs::{sqrt_mod_4n, CoeffTable};
use crate::fixtures::{FixtureModel, PointFixtures};
use crate::report::{
    HeegnerReport, HeegnerRow, PeriodRow, PeriodsReport, PointRecord, VerificationReport, VerificationRow,
};
use crate::{CliError, CliResult, CURVE_37A, C_PLUS_F3, PUBLISHED_POINTS};

/// Decimals printed for periods and differences.
const REPORT_DIGITS: u32 = 40;
pub const DEFAULT_PRECISION: u32 = 160;
pub const HIGH_HEIGHT_PRECISION: u32 = 250;
/// Discriminants whose points have very large heights.
pub const HIGH_HEIGHT: [i64; 3] = [53, 77, 101];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// Differences on the short twist `E_Δ`.
    Table2,
    /// Differences on the minimal model `W_Δ`.
    Table3,
}

impl TableKind {
    fn name(self) -> &'static str {
        match self {
            TableKind::Table2 => "table2",
            TableKind::Table3 => "table3",
        }
    }

    fn model(self) -> FixtureModel {
        match self {
            TableKind::Table2 => FixtureModel::EDelta,
            TableKind::Table3 => FixtureModel::WDelta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointSource {
    Published,
    Pipeline,
}

impl PointSource {
    fn name(self) -> &'static str {
        match self {
            PointSource::Published => "published",
            PointSource::Pipeline => "pipeline",
        }
    }
}

/// Working precision per `Δ`: a fixed value, or 160 digits raised to 250 for high-height `Δ`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub fixed: Option<u32>,
}

impl PrecisionPolicy {
    pub fn fixed(digits: u32) -> Self {
        PrecisionPolicy { fixed: Some(digits) }
    }

    pub fn for_delta(&self, delta: i64) -> Precision {
        Precision::digits(self.fixed.unwrap_or(if HIGH_HEIGHT.contains(&delta) {
            HIGH_HEIGHT_PRECISION
        } else {
            DEFAULT_PRECISION
        }))
    }
}

/// Everything a verification run reads.
#[derive(Debug)]
pub struct Context {
    pub cfg: CurveConfig,
    pub param: ModularParam,
    pub coeffs: CoeffTable,
    pub fixtures: PointFixtures,
    pub principal: Vec<PrincipalTerm>,
    pub timings: bool,
}

impl Context {
    pub fn new(
        cfg: CurveConfig,
        coeffs: CoeffTable,
        fixtures: PointFixtures,
        principal: Vec<PrincipalTerm>,
    ) -> CliResult<Self> {
        let param = ModularParam::from_config(&cfg)?;
        coeffs.validate(param.level())?;
        Ok(Context { cfg, param, coeffs, fixtures, principal, timings: false })
    }

    /// Curve `37a`, the `f3` coefficients and the published points.
    pub fn builtin() -> CliResult<Self> {
        Context::new(
            CurveConfig::from_json(CURVE_37A)?,
            CoeffTable::from_csv(C_PLUS_F3)?,
            PointFixtures::from_json(PUBLISHED_POINTS)?,
            default_principal_part(),
        )
    }

    fn level(&self) -> i64 {
        self.param.level()
    }

    fn base(&self) -> &ShortModel {
        &self.cfg.short
    }
}

/// Principal part `q^{-3}` on level 37: `n = −3`, `h = 21` (`21² ≡ −3 mod 148`).
pub fn default_principal_part() -> Vec<PrincipalTerm> {
    vec![PrincipalTerm { n: -3, h: 21, coeff: 1 }]
}

/// Parses `n:h:coeff`.
pub fn parse_principal_term(s: &str) -> CliResult<PrincipalTerm> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Data(format!("principal term {s:?} is not n:h:coeff"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    Ok(PrincipalTerm { n: num(parts[0])?, h: num(parts[1])?, coeff: num(parts[2])? })
}

fn record(model: &str, p: &CurvePoint) -> Option<PointRecord> {
    p.coords().map(|(x, y)| PointRecord { model: model.into(), x: x.to_string(), y: y.to_string() })
}

fn model_tag(kind: TableKind) -> &'static str {
    match kind {
        TableKind::Table2 => "E_delta",
        TableKind::Table3 => "W_delta",
    }
}

fn pool(threads: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| CliError::Data(format!("thread pool: {e}")))
}

fn sci(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    format!("{x:.3e}")
}

fn difference_for(ctx: &Context, kind: TableKind, delta: i64, p: &CurvePoint, prec: Precision) -> CliResult<Difference> {
    let coeff = ctx.coeffs.plus(delta, ctx.level(), prec)?;
    let (eps, manin) = (ctx.cfg.fricke, ctx.cfg.manin);
    Ok(match kind {
        TableKind::Table2 => difference_raw(ctx.base(), &coeff, p, eps, manin, prec)?,
        TableKind::Table3 => {
            let (w, map) = ctx.cfg.minimal_twist_model(delta)?;
            difference_wm_on(&w, &map, &coeff, p, eps, manin, prec)?
        }
    })
}

/// Pipeline point on the table's model, trying `P` then `−P`.
fn pipeline_difference(
    ctx: &Context,
    kind: TableKind,
    delta: i64,
    r: i64,
    prec: Precision,
) -> CliResult<(CurvePoint, i8, Difference)> {
    let hp = heegner_point(&ctx.param, &ctx.principal, delta, r, prec)?;
    let e_delta = hp.model.clone();
    let mut first = None;
    for (sign, p) in [(1i8, hp.point.clone()), (-1, e_delta.neg(&hp.point))] {
        let on_model = match kind {
            TableKind::Table2 => p,
            TableKind::Table3 => ctx.cfg.minimal_twist_model(delta)?.1.apply_inverse(&p),
        };
        let d = difference_for(ctx, kind, delta, &on_model, prec)?;
        if d.recognized.is_some() {
            return Ok((on_model, sign, d));
        }
        first.get_or_insert((on_model, sign, d));
    }
    Ok(first.expect("two candidates"))
}

fn verify_row(ctx: &Context, kind: TableKind, delta: i64, prec: Precision, source: PointSource) -> VerificationRow {
    let start = Instant::now();
    let r = sqrt_mod_4n(delta, ctx.level()).unwrap_or(-1);
    let mut row = match verify_row_inner(ctx, kind, delta, r, prec, source) {
        Ok(row) => row,
        Err(e) => VerificationRow::failed(delta, r, prec.decimal_digits(), source.name(), e.to_string()),
    };
    if ctx.timings {
        row.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    row
}

fn verify_row_inner(
    ctx: &Context,
    kind: TableKind,
    delta: i64,
    r: i64,
    prec: Precision,
    source: PointSource,
) -> CliResult<VerificationRow> {
    let coeff_row = ctx.coeffs.row(delta).ok_or_else(|| CliError::Data(format!("no coefficient for Δ = {delta}")))?;
    let fixture = ctx.fixtures.get(delta, kind.model());
    let (point, sign, d) = match source {
        PointSource::Published => {
            let f = fixture.ok_or_else(|| CliError::Data(format!("no published point for Δ = {delta}")))?;
            let p = f.point();
            let d = difference_for(ctx, kind, delta, &p, prec)?;
            (p, None, d)
        }
        PointSource::Pipeline => {
            let (p, s, d) = pipeline_difference(ctx, kind, delta, r, prec)?;
            (p, Some(s), d)
        }
    };
    let bits = prec.bits();
    let residual = d.recognized.as_ref().map(|q| sci(&Float::with_val(bits, &d.value - q.as_rational()).abs()));
    let quarter = d.quarter_integer.is_some();
    let half = d.quarter_integer.as_ref().is_some_and(|q| *q.denom() <= 2);
    let t = match kind {
        TableKind::Table3 => Some(find_t(&ctx.cfg.minimal_twist_model(delta)?.0, &point)?.t),
        TableKind::Table2 => None,
    };
    let expected_difference = fixture.and_then(|f| f.difference.clone());
    let expected_t = match kind {
        TableKind::Table3 => fixture.and_then(|f| f.t.clone()),
        TableKind::Table2 => None,
    };
    let matches_expected = expected_difference.as_ref().map(|want| {
        d.recognized.as_ref() == Some(want) && expected_t.as_ref().map_or(true, |et| t.as_ref() == Some(et))
    });
    Ok(VerificationRow {
        delta,
        r,
        c_plus: coeff_row.c_plus.clone(),
        c_plus_digits: coeff_row.digits,
        precision: prec.decimal_digits(),
        point_source: source.name().into(),
        point: record(model_tag(kind), &point),
        sign,
        t: t.map(|t| t.to_string()),
        omega: Some(format_decimal(&d.omega, REPORT_DIGITS)),
        period: Some(format_decimal(&d.period, REPORT_DIGITS)),
        difference_decimal: Some(format_decimal(&d.value, REPORT_DIGITS)),
        difference: d.recognized.as_ref().map_or_else(|| "unrecognized".into(), BigRat::to_string),
        residual,
        tolerance: Some(sci(&d.tolerance)),
        quarter_integer: quarter,
        half_integer: half,
        expected_difference: expected_difference.map(|q| q.to_string()),
        expected_t: expected_t.map(|q| q.to_string()),
        matches_expected,
        wall_time_ms: None,
        error: None,
    })
}

/// Default discriminants: every tabulated `Δ`, restricted to those with a published
/// point on the table's model when published points are used.
pub fn default_deltas(ctx: &Context, kind: TableKind, source: PointSource) -> Vec<i64> {
    ctx.coeffs
        .deltas()
        .into_iter()
        .filter(|&d| source == PointSource::Pipeline || ctx.fixtures.get(d, kind.model()).is_some())
        .collect()
}

/// Differences for each `Δ`, computed concurrently and reported in input order.
pub fn verify_table(
    ctx: &Context,
    kind: TableKind,
    deltas: &[i64],
    policy: PrecisionPolicy,
    source: PointSource,
    threads: usize,
) -> CliResult<VerificationReport> {
    let rows = pool(threads)?
        .install(|| deltas.par_iter().map(|&d| verify_row(ctx, kind, d, policy.for_delta(d), source)).collect());
    Ok(VerificationReport {
        table: kind.name().into(),
        curve: ctx.cfg.label.clone(),
        coefficients: ctx.coeffs.provenance.clone(),
        rows,
    })
}

/// `μ`, `Im ν` and `Ω` of the twists `E_Δ` (`Δ = 1` is the curve itself).
pub fn periods(cfg: &CurveConfig, deltas: &[i64], prec: Precision) -> CliResult<PeriodsReport> {
    let digits = prec.decimal_digits();
    let rows = deltas
        .iter()
        .map(|&delta| {
            let (e, _) = twist(&cfg.short, delta)?;
            let l = period_lattice(&e, prec)?;
            Ok(PeriodRow {
                delta,
                model: e.to_string(),
                mu: format_decimal(l.mu(), digits),
                nu_imag: format_decimal(l.nu_im(), digits),
                omega: format_decimal(&l.real_period(), digits),
                components: l.components(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(PeriodsReport { curve: cfg.label.clone(), precision: digits, rows })
}

fn heegner_row(ctx: &Context, delta: i64, prec: Precision) -> HeegnerRow {
    let start = Instant::now();
    let r = sqrt_mod_4n(delta, ctx.level()).unwrap_or(-1);
    let mut row = HeegnerRow {
        delta,
        r,
        precision: prec.decimal_digits(),
        point: None,
        point_minimal: None,
        branch: None,
        matches_published: None,
        wall_time_ms: None,
        error: None,
    };
    let result = (|| -> CliResult<()> {
        if r < 0 {
            return Err(CliError::Data(format!("Δ = {delta} is not a square modulo {}", 4 * ctx.level())));
        }
        let hp = heegner_point(&ctx.param, &ctx.principal, delta, r, prec)?;
        if !hp.model.on_curve(&hp.point) {
            return Err(CliError::Data(format!("Δ = {delta}: point is not on E_Δ")));
        }
        row.point = record("E_delta", &hp.point);
        row.branch = Some(hp.branch);
        if delta > 0 {
            if let Ok((w, map)) = ctx.cfg.minimal_twist_model(delta) {
                let pw = map.apply_inverse(&hp.point);
                if w.on_curve(&pw) {
                    row.point_minimal = record("W_delta", &pw);
                }
            }
        }
        let published = match ctx.fixtures.get(delta, FixtureModel::EDelta) {
            Some(f) => Some(f.point()),
            None => match ctx.fixtures.get(delta, FixtureModel::WDelta) {
                Some(f) => Some(ctx.cfg.minimal_twist_model(delta)?.1.apply(&f.point())),
                None => None,
            },
        };
        row.matches_published = published.map(|p| p == hp.point || p == hp.model.neg(&hp.point));
        Ok(())
    })();
    if let Err(e) = result {
        row.error = Some(e.to_string());
    }
    if ctx.timings {
        row.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    row
}

/// Heegner points `P_{Δ,r}(f)` from the modular parameterization.
pub fn heegner_points(
    ctx: &Context,
    deltas: &[i64],
    policy: PrecisionPolicy,
    threads: usize,
) -> CliResult<HeegnerReport> {
    let rows =
        pool(threads)?.install(|| deltas.par_iter().map(|&d| heegner_row(ctx, d, policy.for_delta(d))).collect());
    Ok(HeegnerReport { curve: ctx.cfg.label.clone(), rows })
}

/// First `n_max` coefficients of the canonical differential from tabulated `c⁺`.
pub fn eta_coefficients(ctx: &Context, delta: i64, n_max: usize, prec: Precision) -> CliResult<Vec<String>> {
    let level = ctx.level();
    let r = sqrt_mod_4n(delta, level)
        .ok_or_else(|| CliError::Data(format!("Δ = {delta} is not a square modulo {}", 4 * level)))?;
    let coeffs = eta_qexp(delta, r, |m, h| ctx.coeffs.lookup(m, h, level, prec), n_max, prec)?;
    Ok(coeffs.iter().map(|c| format_decimal(c, REPORT_DIGITS)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_policy() {
        let p = PrecisionPolicy::default();
        assert_eq!(p.for_delta(12).decimal_digits(), 160);
        assert_eq!(p.for_delta(53).decimal_digits(), 250);
        assert_eq!(PrecisionPolicy::fixed(60).for_delta(101).decimal_digits(), 60);
    }

    #[test]
    fn principal_terms_parse() {
        assert_eq!(parse_principal_term("-3:21:1").unwrap(), default_principal_part()[0]);
        assert!(parse_principal_term("-3:21").is_err());
    }

    #[test]
    fn small_table_rows() {
        let ctx = Context::builtin().unwrap();
        let rep = verify_table(&ctx, TableKind::Table3, &[12, 21], PrecisionPolicy::fixed(60), PointSource::Published, 2)
            .unwrap();
        assert_eq!(rep.rows.len(), 2);
        for row in &rep.rows {
            assert_eq!(row.matches_expected, Some(true), "{row:?}");
            assert!(row.quarter_integer && row.half_integer);
        }
        assert_eq!(rep.row(21).unwrap().t.as_deref(), Some("2/3"));
    }

    #[test]
    fn missing_rows_are_recorded() {
        let ctx = Context::builtin().unwrap();
        let rep = verify_table(&ctx, TableKind::Table2, &[77, 5], PrecisionPolicy::fixed(40), PointSource::Published, 1)
            .unwrap();
        assert!(rep.rows.iter().all(|r| r.error.is_some()));
    }

    #[test]
    fn eta_first_coefficient() {
        let ctx = Context::builtin().unwrap();
        let c = eta_coefficients(&ctx, 12, 1, Precision::digits(40)).unwrap();
        // −√12 · c⁺(12)
        assert!(c[0].starts_with("1.6923079951"), "{c:?}");
        assert!(eta_coefficients(&ctx, 12, 2, Precision::digits(40)).is_err());
    }
}
