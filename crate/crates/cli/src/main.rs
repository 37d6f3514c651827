use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heegner_periods::curves::CurveConfig;
use heegner_periods::Precision;
use heegner_periods_cli::pipeline::{
    default_deltas, default_principal_part, eta_coefficients, heegner_points, parse_principal_term, periods, verify_table,
    DEFAULT_PRECISION,
};
use heegner_periods_cli::{
    read_file, selftest, CliResult, CoeffTable, Context, PointFixtures, PointSource, PrecisionPolicy, TableKind,
    VerificationReport, CURVE_37A, C_PLUS_F3, PUBLISHED_POINTS,
};

#[derive(Parser)]
#[command(name = "heegner-periods", version, about = "Twisted Heegner points and third-kind periods")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Curve configuration JSON (default: built-in 37a).
    #[arg(long, global = true)]
    curve: Option<PathBuf>,
    /// Coefficient CSV `delta,c_plus,digits` (default: built-in f3 table).
    #[arg(long, global = true)]
    coeffs: Option<PathBuf>,
    /// Published points JSON (default: built-in).
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// Comma-separated discriminants (default: every tabulated one).
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    delta: Vec<i64>,
    /// Working precision in decimal digits (default: 160, 250 for Δ ∈ {53, 77, 101}).
    #[arg(long, global = true)]
    prec: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Points::Paper)]
    points: Points,
    /// Principal part terms `n:h:coeff` (default: -3:21:1).
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    principal: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Include per-row wall times (makes reports run-dependent).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Points {
    Paper,
    Pipeline,
}

#[derive(Subcommand)]
enum Command {
    /// Period lattices of E and its twists.
    Periods,
    /// Heegner points from the modular parameterization.
    Heegner,
    /// Coefficient/period differences on the short twists.
    Table2,
    /// Differences for the pole-free differentials on the minimal models.
    Table3,
    /// Fourier coefficients of the canonical differential.
    EtaQexp {
        #[arg(long, default_value_t = 1)]
        n_max: usize,
    },
    /// Property suites against independent oracles.
    Selftest,
}

fn load_context(c: &Common) -> CliResult<Context> {
    let text = |p: &Option<PathBuf>, builtin: &str| -> CliResult<String> {
        p.as_deref().map_or_else(|| Ok(builtin.to_string()), read_file)
    };
    let cfg = CurveConfig::from_json(&text(&c.curve, CURVE_37A)?)?;
    let coeffs = CoeffTable::from_csv(&text(&c.coeffs, C_PLUS_F3)?)?;
    let fixtures = PointFixtures::from_json(&text(&c.fixtures, PUBLISHED_POINTS)?)?;
    let principal = if c.principal.is_empty() {
        default_principal_part()
    } else {
        c.principal.iter().map(|s| parse_principal_term(s)).collect::<CliResult<_>>()?
    };
    let mut ctx = Context::new(cfg, coeffs, fixtures, principal)?;
    ctx.timings = c.timings;
    Ok(ctx)
}

fn emit(c: &Common, body: &str) -> CliResult<()> {
    match &c.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|source| heegner_periods_cli::CliError::Io { path: path.clone(), source }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn summarize(rep: &VerificationReport) -> bool {
    let mut ok = true;
    for row in &rep.rows {
        let status = match (&row.error, row.matches_expected) {
            (Some(e), _) => {
                ok = false;
                format!("error: {e}")
            }
            (None, Some(false)) => {
                ok = false;
                format!("MISMATCH (expected {})", row.expected_difference.as_deref().unwrap_or("?"))
            }
            (None, Some(true)) => "matches".into(),
            (None, None) => "no reference".into(),
        };
        eprintln!("Δ = {:>4}  difference {:>24}  quarter {:>5}  {status}", row.delta, row.difference, row.quarter_integer);
    }
    ok
}

fn run(cli: Cli) -> CliResult<bool> {
    let c = &cli.common;
    let policy = PrecisionPolicy { fixed: c.prec };
    let source = match c.points {
        Points::Paper => PointSource::Published,
        Points::Pipeline => PointSource::Pipeline,
    };
    match cli.command {
        Command::Periods => {
            let ctx = load_context(c)?;
            let deltas = if c.delta.is_empty() { vec![1] } else { c.delta.clone() };
            let rep = periods(&ctx.cfg, &deltas, Precision::digits(c.prec.unwrap_or(DEFAULT_PRECISION)))?;
            emit(c, &json(&rep))?;
            Ok(true)
        }
        Command::Heegner => {
            let ctx = load_context(c)?;
            let deltas = if c.delta.is_empty() { ctx.coeffs.deltas() } else { c.delta.clone() };
            let rep = heegner_points(&ctx, &deltas, policy, c.threads)?;
            emit(c, &json(&rep))?;
            Ok(rep.rows.iter().all(|r| r.error.is_none() && r.matches_published != Some(false)))
        }
        Command::Table2 | Command::Table3 => {
            let kind = if matches!(cli.command, Command::Table2) { TableKind::Table2 } else { TableKind::Table3 };
            let ctx = load_context(c)?;
            let deltas = if c.delta.is_empty() { default_deltas(&ctx, kind, source) } else { c.delta.clone() };
            let rep = verify_table(&ctx, kind, &deltas, policy, source, c.threads)?;
            emit(c, &rep.to_json())?;
            Ok(summarize(&rep))
        }
        Command::EtaQexp { n_max } => {
            let ctx = load_context(c)?;
            let prec = Precision::digits(c.prec.unwrap_or(DEFAULT_PRECISION));
            let deltas: Vec<i64> = if c.delta.is_empty() {
                ctx.coeffs.deltas().into_iter().filter(|&d| d != 1).collect()
            } else {
                c.delta.clone()
            };
            let mut out = Vec::new();
            for &d in &deltas {
                let coefficients = eta_coefficients(&ctx, d, n_max, prec)?;
                out.push(serde_json::json!({ "delta": d, "coefficients": coefficients }));
            }
            emit(c, &json(&out))?;
            Ok(true)
        }
        Command::Selftest => {
            let checks = selftest::run_all(Precision::digits(c.prec.unwrap_or(80)));
            for ch in &checks {
                eprintln!("[{}] {}: {}", if ch.passed { "PASS" } else { "FAIL" }, ch.name, ch.detail);
            }
            emit(c, &json(&checks))?;
            Ok(checks.iter().all(|ch| ch.passed))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
