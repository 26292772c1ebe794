use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use cigenera::oracles::chi_y_polynomial;
use cigenera::query::{self, GenusKind, Oracle};
use cigenera::verify::{self, CheckId, SweepConfig, SweepReport, TableRow};
use cigenera::{CompleteIntersection, Rational};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

const SUBCOMMANDS: [&str; 3] = ["genus", "sweep", "table"];
const MAX_LISTED_VIOLATIONS: usize = 20;

#[derive(Parser)]
#[command(name = "cigenera", version, about = "Exact Hirzebruch genera of complete intersections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one genus on one complete intersection.
    #[command(args_override_self = true)]
    Genus(GenusCmd),
    /// Run the verification checks over a parameter range.
    #[command(args_override_self = true)]
    Sweep(SweepCmd),
    /// Emit a table of genus values over a parameter range.
    #[command(args_override_self = true)]
    Table(TableCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenusArg {
    Todd,
    Euler,
    Signature,
    ChiY,
    Ahat,
    Ak,
    ChiK,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Closed,
    Recurrence,
    Genfun,
    ChernRoot,
    All,
}

impl OracleArg {
    fn single(self) -> Option<Oracle> {
        match self {
            OracleArg::Closed => Some(Oracle::Closed),
            OracleArg::Recurrence => Some(Oracle::Recurrence),
            OracleArg::Genfun => Some(Oracle::Genfun),
            OracleArg::ChernRoot => Some(Oracle::ChernRoot),
            OracleArg::All => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Flat key=value file of flag defaults; explicit flags take precedence.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GenusSelect {
    #[arg(long, value_enum)]
    genus: GenusArg,
    /// Numerator of the twist K^{k/N} (chi-k).
    #[arg(long)]
    k: Option<u32>,
    /// Level N of the twist K^{k/N} (chi-k).
    #[arg(long)]
    level: Option<u32>,
    /// Index k of the A_k genus (ak).
    #[arg(long)]
    ak_k: Option<u32>,
}

#[derive(Args)]
struct GenusCmd {
    /// Complete intersection, e.g. "X3(5,2,2)", "n=3 d=5,2,2" or "CP4".
    #[arg(long, value_parser = parse_ci, conflicts_with_all = ["dim", "degrees"])]
    ci: Option<CompleteIntersection>,
    /// Complex dimension n (with --degrees).
    #[arg(long, allow_negative_numbers = true)]
    dim: Option<i64>,
    /// Comma-separated degrees d1,...,dr; omitted means projective space.
    #[arg(long, value_delimiter = ',', requires = "dim", allow_negative_numbers = true)]
    degrees: Option<Vec<i64>>,
    #[command(flatten)]
    select: GenusSelect,
    /// Computation route; the default depends on the genus.
    #[arg(long, value_enum)]
    oracle: Option<OracleArg>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Bounds {
    #[arg(long)]
    n_min: Option<u32>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    r_max: Option<usize>,
    #[arg(long)]
    d_max: Option<u32>,
    /// Comma-separated levels N.
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<u32>>,
}

impl Bounds {
    fn config(&self) -> SweepConfig {
        let mut cfg = SweepConfig::default();
        if let Some(v) = self.n_min {
            cfg.n_min = v;
        }
        if let Some(v) = self.n_max {
            cfg.n_max = v;
        }
        if let Some(v) = self.r_max {
            cfg.r_max = v;
        }
        if let Some(v) = self.d_max {
            cfg.d_max = v;
        }
        if let Some(v) = &self.levels {
            cfg.levels = v.clone();
        }
        cfg
    }
}

#[derive(Args)]
struct SweepCmd {
    #[command(flatten)]
    bounds: Bounds,
    /// Comma-separated check ids: todd, chi-k, ak, ahat, chi-y, four-term, binomial, oracles.
    #[arg(long, value_delimiter = ',', value_parser = parse_check)]
    checks: Option<Vec<CheckId>>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TableCmd {
    #[command(flatten)]
    select: GenusSelect,
    /// Computation route; `all` is not available for tables.
    #[arg(long, value_enum)]
    oracle: Option<OracleArg>,
    #[command(flatten)]
    bounds: Bounds,
    #[command(flatten)]
    common: Common,
}

fn parse_ci(s: &str) -> Result<CompleteIntersection, String> {
    s.parse().map_err(|e: cigenera::Error| e.to_string())
}

fn parse_check(s: &str) -> Result<CheckId, String> {
    s.parse().map_err(|e: cigenera::Error| e.to_string())
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

/// Inserts the `key=value` lines of a `--config` file right after the
/// subcommand, so that flags given on the command line come later and win.
fn expand_config(mut args: Vec<String>) -> Result<Vec<String>, String> {
    let Some(i) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let path = match args[i].strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None => args.get(i + 1).cloned().ok_or("--config requires a file path")?,
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config file {path}: {e}"))?;
    let mut injected = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| format!("{path}:{}: expected key=value, got `{line}`", lineno + 1))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key == "config" {
            return Err(format!("{path}:{}: nested config files are not supported", lineno + 1));
        }
        injected.push(format!("--{key}={}", value.trim()));
    }
    let at =
        args.iter().position(|a| SUBCOMMANDS.contains(&a.as_str())).ok_or("--config must be used with a subcommand")?;
    args.splice(at + 1..at + 1, injected);
    Ok(args)
}

fn genus_kind(s: &GenusSelect) -> GenusKind {
    match s.genus {
        GenusArg::Todd => GenusKind::Todd,
        GenusArg::Euler => GenusKind::Euler,
        GenusArg::Signature => GenusKind::Signature,
        GenusArg::ChiY => GenusKind::ChiY,
        GenusArg::Ahat => GenusKind::Ahat,
        GenusArg::Ak => match s.ak_k {
            Some(k) if k >= 1 => GenusKind::Ak { k },
            Some(_) => usage_error("--ak-k must be at least 1"),
            None => usage_error("--genus ak requires --ak-k"),
        },
        GenusArg::ChiK => match (s.k, s.level) {
            (Some(k), Some(level)) if level >= 1 && k <= level => GenusKind::ChiK { k, level },
            (Some(_), Some(_)) => usage_error("--k and --level must satisfy 0 <= k <= N with N >= 1"),
            _ => usage_error("--genus chi-k requires --k and --level"),
        },
    }
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn opt(v: Option<u32>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn emit(common: &Common, text: String) {
    match &common.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                std::process::exit(2);
            }
        }
        None => print!("{text}"),
    }
}

/// Returns whether every requested route agreed.
fn run_genus(cmd: GenusCmd) -> bool {
    let ci = match (&cmd.ci, cmd.dim) {
        (Some(ci), _) => ci.clone(),
        (None, Some(n)) => {
            CompleteIntersection::normalize(n, cmd.degrees.as_deref().unwrap_or(&[])).unwrap_or_else(|e| usage_error(e))
        }
        (None, None) => usage_error("give --ci or --dim [--degrees]"),
    };
    let kind = genus_kind(&cmd.select);
    let oracle_arg = cmd.oracle.unwrap_or_else(|| match query::default_oracle(kind) {
        Oracle::Genfun => OracleArg::Genfun,
        _ => OracleArg::Closed,
    });

    let values: Vec<(Oracle, String)> = if kind == GenusKind::ChiY {
        if !matches!(oracle_arg, OracleArg::Genfun | OracleArg::All) {
            usage_error("chi-y is only available through --oracle genfun");
        }
        let poly = chi_y_polynomial(&ci, 0).unwrap_or_else(|e| usage_error(e));
        let value = match cmd.common.format {
            Format::Text => poly.to_string(),
            _ => poly.coeffs().iter().map(Rational::to_string).collect::<Vec<_>>().join(";"),
        };
        vec![(Oracle::Genfun, value)]
    } else {
        let evaluated: Vec<(Oracle, Rational)> = match oracle_arg.single() {
            Some(oracle) => match query::evaluate(&ci, kind, oracle).unwrap_or_else(|e| usage_error(e)) {
                Some(v) => vec![(oracle, v)],
                None => usage_error(format!("route `{oracle}` does not apply to {kind} on {ci}")),
            },
            None => query::evaluate_all(&ci, kind).unwrap_or_else(|e| usage_error(e)),
        };
        evaluated.into_iter().map(|(o, v)| (o, v.to_string())).collect()
    };
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let (k, level) = kind.params();

    let text = match cmd.common.format {
        Format::Text if oracle_arg == OracleArg::All => {
            let rows: Vec<Vec<String>> = values.iter().map(|(o, v)| vec![o.to_string(), v.clone()]).collect();
            let mut out = String::new();
            for row in rows {
                out.push_str(&format!("{:<10}  {}\n", row[0], row[1]));
            }
            if !agree {
                out.push_str("routes disagree\n");
            }
            out
        }
        Format::Text => format!("{}\n", values[0].1),
        Format::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .map(|(o, v)| {
                    vec![
                        ci.dim().to_string(),
                        ci.codim().to_string(),
                        ci.degrees_joined(";"),
                        ci.first_chern_coefficient().to_string(),
                        kind.name().to_string(),
                        opt(k),
                        opt(level),
                        o.to_string(),
                        v.clone(),
                    ]
                })
                .collect();
            csv_string(&["n", "r", "degrees", "c1", "genus_label", "k", "N", "oracle", "value"], &rows)
        }
        Format::Json => {
            let rows: Vec<_> = values
                .iter()
                .map(|(o, v)| {
                    json!({
                        "n": ci.dim(),
                        "r": ci.codim(),
                        "degrees": ci.degrees_joined(";"),
                        "c1": ci.first_chern_coefficient(),
                        "genus_label": kind.name(),
                        "k": k,
                        "N": level,
                        "oracle": o.name(),
                        "value": v,
                    })
                })
                .collect();
            let doc = json!({
                "metadata": {
                    "tool": "cigenera",
                    "version": env!("CARGO_PKG_VERSION"),
                    "query": { "ci": ci.to_string(), "genus": kind.name(), "k": k, "N": level, "oracle": oracle_arg.to_possible_value().expect("named").get_name() },
                    "agree": agree,
                },
                "values": rows,
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
    };
    emit(&cmd.common, text);
    agree
}

fn run_table(cmd: TableCmd) {
    let kind = match cmd.select.genus {
        // the table spans every configured twist; `k`, `level` and `ak-k` narrow it
        GenusArg::ChiK => GenusKind::ChiK { k: 0, level: 1 },
        GenusArg::Ak => GenusKind::Ak { k: 2 },
        _ => genus_kind(&cmd.select),
    };
    let oracle = match cmd.oracle {
        Some(OracleArg::All) => usage_error("--oracle all is not available for tables"),
        Some(o) => o.single().expect("single route"),
        None => query::default_oracle(kind),
    };
    let mut cfg = cmd.bounds.config();
    if kind == (GenusKind::ChiK { k: 0, level: 1 }) {
        if let Some(level) = cmd.select.level {
            cfg.levels = vec![level];
        }
    }
    if let (GenusArg::Ak, Some(k)) = (cmd.select.genus, cmd.select.ak_k) {
        cfg.ak_ks = vec![k];
    }
    let mut rows: Vec<TableRow> = verify::table_rows(&cfg, kind, oracle).unwrap_or_else(|e| usage_error(e));
    if let (GenusArg::ChiK, Some(k)) = (cmd.select.genus, cmd.select.k) {
        rows.retain(|r| r.k == Some(k));
    }

    let header = ["n", "r", "degrees", "c1", "genus_label", "k", "N", "value"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.r.to_string(),
                r.degrees.clone(),
                r.c1.to_string(),
                r.genus_label.to_string(),
                opt(r.k),
                opt(r.level),
                r.value.clone(),
            ]
        })
        .collect();
    let text = match cmd.common.format {
        Format::Text => aligned(&header, &cells),
        Format::Csv => csv_string(&header, &cells),
        Format::Json => {
            let doc = json!({
                "metadata": {
                    "tool": "cigenera",
                    "version": env!("CARGO_PKG_VERSION"),
                    "genus": kind.name(),
                    "oracle": oracle.name(),
                    "config": cfg,
                },
                "rows": rows,
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
    };
    emit(&cmd.common, text);
}

fn sweep_text(reports: &[SweepReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("{r}\n"));
        for v in r.violations.iter().take(MAX_LISTED_VIOLATIONS) {
            out.push_str(&format!("  {v}\n"));
        }
        if r.violations.len() > MAX_LISTED_VIOLATIONS {
            out.push_str(&format!("  ... and {} more\n", r.violations.len() - MAX_LISTED_VIOLATIONS));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    out.push_str(&format!("{} of {} checks passed\n", reports.len() - failed, reports.len()));
    out
}

/// Returns whether every check passed.
fn run_sweep(cmd: SweepCmd) -> bool {
    let mut cfg = cmd.bounds.config();
    if let Some(checks) = &cmd.checks {
        cfg.checks = checks.clone();
    }
    let reports = verify::run_sweep(&cfg).unwrap_or_else(|e| usage_error(e));
    let text = match cmd.common.format {
        Format::Text => sweep_text(&reports),
        Format::Json => verify::sweep_json(&cfg, &reports) + "\n",
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.check.name().to_string(),
                        r.instances.to_string(),
                        r.comparisons.to_string(),
                        r.violations.len().to_string(),
                        if r.passed() { "pass" } else { "fail" }.to_string(),
                    ]
                })
                .collect();
            csv_string(&["check", "instances", "comparisons", "violations", "status"], &rows)
        }
    };
    emit(&cmd.common, text);
    reports.iter().all(SweepReport::passed)
}

fn main() -> ExitCode {
    let args = match expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(args);
    let clean = match cli.command {
        Command::Genus(cmd) => run_genus(cmd),
        Command::Sweep(cmd) => run_sweep(cmd),
        Command::Table(cmd) => {
            run_table(cmd);
            true
        }
    };
    if clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
