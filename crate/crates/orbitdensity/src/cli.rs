//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 a spec or
//! argument could not be parsed, 3 a precondition was violated.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbitdensity_core::attraction::{coa_cover_with, cover_in_orbit, cover_shift_consistent, CoverConfig};
use orbitdensity_core::chaos::{f_chaotic_witness, li_yorke_verdict, LiYorkeParams};
use orbitdensity_core::density::{density_report_with, sojourn_with};
use orbitdensity_core::folner::{radius, FolnerSequence};
use orbitdensity_core::scan::RangeScan;
use orbitdensity_core::setclass::{
    example52_sets, mask_with, max_gap_in, max_run_in, pw_syndetic_witness_in, IntegerSet,
};
use orbitdensity_core::shift::Dyadic;
use orbitdensity_core::Rational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::par::scanner;
use crate::report;
use crate::reproduce;
use crate::spec::{self, SpecError};

#[derive(Debug, Parser)]
#[command(
    name = "orbitdensity",
    version,
    about = "Følner densities, center-of-attraction covers and chaos witnesses on the two-sided shift"
)]
pub struct Cli {
    /// Worker threads for range scans; output does not depend on it.
    #[arg(long, global = true, env = "ORBITDENSITY_THREADS", default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact density report of a set, or sojourn of a point in a union of cylinders.
    Density(DensityArgs),
    /// Cylinder cover of the minimal center of attraction with its structural checks.
    Coa(CoaArgs),
    /// Gap, run and piecewise-syndetic tables over a ladder of horizons.
    Setclass(SetclassArgs),
    /// Li-Yorke verdict and optional F-chaotic witness lists for a pair of points.
    Chaos(ChaosArgs),
    /// Scripted verification of one of the three constructions (5.1, 5.2, 5.3).
    Example(ExampleArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long, conflicts_with = "point", required_unless_present = "point")]
    pub set: Option<String>,
    #[arg(long, requires = "cylinder")]
    pub point: Option<String>,
    /// `word@position`; repeat for a union of cylinders.
    #[arg(long)]
    pub cylinder: Vec<String>,
    #[arg(long, default_value = "standard")]
    pub folner: String,
    #[arg(long)]
    pub horizon: u64,
    #[arg(long, default_value = "1/2")]
    pub headline_fraction: String,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct CoaArgs {
    #[arg(long)]
    pub point: String,
    #[arg(long, default_value = "standard")]
    pub folner: String,
    #[arg(short = 'k', long = "resolution")]
    pub k: u32,
    #[arg(long)]
    pub horizon: u64,
    #[arg(long, default_value = "1/20")]
    pub tol: String,
    #[arg(long, default_value = "1/2")]
    pub headline_fraction: String,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct SetclassArgs {
    #[arg(long, conflicts_with = "triple", required_unless_present = "triple")]
    pub set: Option<String>,
    /// Only `example52` is built in.
    #[arg(long)]
    pub triple: Option<String>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub lo: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: i64,
    /// Gap bound for the piecewise-syndetic witness search.
    #[arg(long, requires = "pw_len")]
    pub pw_gap: Option<u64>,
    /// Window length for the piecewise-syndetic witness search.
    #[arg(long, requires = "pw_gap")]
    pub pw_len: Option<u64>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct ChaosArgs {
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    #[arg(long, default_value_t = 10_000)]
    pub horizon: u64,
    #[arg(short = 'R', long = "resolution", default_value_t = 6)]
    pub r: u32,
    /// Proximal threshold exponent `e`, meaning `2^-e`.
    #[arg(long, default_value_t = 5)]
    pub threshold: u32,
    #[arg(long, value_delimiter = ',', default_values_t = [10u64, 100, 1000])]
    pub tail_indices: Vec<u64>,
    /// Tail floor exponent `e`: each tail must certify a distance of at least `2^-e`.
    #[arg(long, default_value_t = 1)]
    pub tail_floor: u32,
    /// Also emit the four F-chaotic witness lists.
    #[arg(long)]
    pub fchaotic: bool,
    /// Number of `|g|` shells for the separation witnesses.
    #[arg(long, default_value_t = 8)]
    pub counts: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    /// 5.1, 5.2 or 5.3.
    pub which: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Precondition(#[from] orbitdensity_core::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) | CliError::Argument(_) => 2,
            CliError::Precondition(_) | CliError::Io { .. } => 3,
        }
    }
}

/// A finished command: its report text and whether every verification passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn rational_arg(name: &str, text: &str) -> Result<Rational, CliError> {
    spec::parse_rational(text).map_err(|m| CliError::Argument(format!("--{name}: {m}")))
}

fn folner_arg(text: &str) -> Result<FolnerSequence, CliError> {
    Ok(spec::parse_folner(&spec::load(text)?)?)
}

fn render(format: Format, json: Value, tsv: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => report::to_text(&json),
        Format::Tsv => tsv(),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let scan = scanner(cli.threads);
    let scan: &dyn RangeScan = scan.as_ref();
    let (text, passed, output) = match &cli.command {
        Command::Density(a) => (density(scan, a)?, true, &a.out.output),
        Command::Coa(a) => (coa(scan, a)?, true, &a.out.output),
        Command::Setclass(a) => (setclass(scan, a)?, true, &a.out.output),
        Command::Chaos(a) => (chaos(a)?, true, &a.out.output),
        Command::Example(a) => {
            let (text, passed) = match a.which.as_str() {
                "5.1" => reproduce::example51(scan),
                "5.2" => reproduce::example52(scan),
                "5.3" => reproduce::example53(scan),
                other => {
                    return Err(CliError::Argument(format!("unknown example {other:?}; expected 5.1, 5.2 or 5.3")))
                }
            };
            (text, passed, &a.output)
        }
    };
    if let Some(path) = output {
        std::fs::write(path, &text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        return Ok(Outcome { text: String::new(), passed });
    }
    Ok(Outcome { text, passed })
}

fn density(scan: &dyn RangeScan, a: &DensityArgs) -> Result<String, CliError> {
    let folner = folner_arg(&a.folner)?;
    let fraction = rational_arg("headline-fraction", &a.headline_fraction)?;
    let rep = match (&a.set, &a.point) {
        (Some(set), _) => {
            let set = spec::parse_set(&spec::load(set)?)?;
            density_report_with(scan, &set, &folner, a.horizon, &fraction)?
        }
        (None, Some(point)) => {
            let x = spec::parse_point(&spec::load(point)?)?;
            let region = a.cylinder.iter().map(|c| spec::parse_cylinder(c)).collect::<Result<Vec<_>, _>>()?;
            sojourn_with(scan, &x, &region, &folner, a.horizon, &fraction)?
        }
        (None, None) => return Err(CliError::Argument("one of --set or --point is required".into())),
    };
    Ok(render(a.out.format, report::density_json(&rep), || report::density_tsv(&rep)))
}

fn coa(scan: &dyn RangeScan, a: &CoaArgs) -> Result<String, CliError> {
    let x = spec::parse_point(&spec::load(&a.point)?)?;
    let folner = folner_arg(&a.folner)?;
    let mut config = CoverConfig::new(a.k, a.horizon, rational_arg("tol", &a.tol)?);
    config.headline_fraction = rational_arg("headline-fraction", &a.headline_fraction)?;
    let cover = coa_cover_with(scan, &x, &folner, &config)?;
    let reach = radius(&folner, a.horizon).max(a.horizon);
    let violations = cover_shift_consistent(&cover, &x, reach);
    let in_orbit = cover_in_orbit(&cover, &x, reach);
    let s_generic = cover.keeps(&x.central_word(a.k));
    let mut json = report::cover_json(&cover);
    json["checks"] = json!({
        "shift_violations": violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "in_orbit": in_orbit,
        "s_generic": s_generic,
        "scan_radius": reach,
    });
    Ok(render(a.out.format, json, || {
        let mut t = report::cover_tsv(&cover);
        t += &format!("# shift_violations\t{}\n# in_orbit\t{in_orbit}\n# s_generic\t{s_generic}\n", violations.len());
        t
    }))
}

/// Powers of ten strictly inside `(lo, hi)`, then `hi`.
fn ladder(lo: i64, hi: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (1..19u32).map(|e| 10i64.pow(e)).filter(|&p| p > lo && p < hi).collect();
    out.push(hi);
    out
}

struct Row {
    hi: i64,
    gap: Option<u64>,
    run: u64,
    pw: Option<(i64, i64)>,
}

fn table(scan: &dyn RangeScan, set: &IntegerSet, a: &SetclassArgs) -> Result<Vec<Row>, CliError> {
    let full = mask_with(scan, set, a.lo, a.hi)?;
    let mut rows = Vec::new();
    for hi in ladder(a.lo, a.hi) {
        let len = (hi - a.lo + 1) as usize;
        let prefix = orbitdensity_core::scan::RangeMask::from_parts(a.lo, full.bits()[..len].to_vec());
        let pw = match (a.pw_gap, a.pw_len) {
            (Some(b), Some(l)) => pw_syndetic_witness_in(&prefix, b, l).map(|s| (s.start, s.end)),
            _ => None,
        };
        rows.push(Row { hi, gap: max_gap_in(&prefix), run: max_run_in(&prefix), pw });
    }
    Ok(rows)
}

fn rows_json(rows: &[Row], with_pw: bool) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                let mut v = json!({"hi": r.hi, "max_gap": r.gap, "max_run": r.run});
                if with_pw {
                    v["pw_witness"] = r.pw.map_or(Value::Null, |(s, e)| json!([s, e]));
                }
                v
            })
            .collect(),
    )
}

fn rows_tsv(name: &str, rows: &[Row]) -> String {
    let mut t = format!("# {name}\nhi\tmax_gap\tmax_run\tpw_witness\n");
    for r in rows {
        let gap = r.gap.map_or("-".to_string(), |g| g.to_string());
        let pw = r.pw.map_or("-".to_string(), |(s, e)| format!("[{s}, {e}]"));
        t += &format!("{}\t{gap}\t{}\t{pw}\n", r.hi, r.run);
    }
    t
}

fn setclass(scan: &dyn RangeScan, a: &SetclassArgs) -> Result<String, CliError> {
    if a.hi < a.lo {
        return Err(orbitdensity_core::Error::InvalidRange { lo: a.lo, hi: a.hi }.into());
    }
    let with_pw = a.pw_gap.is_some();
    if let Some(set) = &a.set {
        let set = spec::parse_set(&spec::load(set)?)?;
        let rows = table(scan, &set, a)?;
        let json = json!({"set": set.to_string(), "lo": a.lo, "rows": rows_json(&rows, with_pw)});
        return Ok(render(a.out.format, json, || rows_tsv(&set.to_string(), &rows)));
    }
    match a.triple.as_deref() {
        Some("example52") => {}
        other => return Err(CliError::Argument(format!("--triple: unknown triple {other:?}; expected example52"))),
    }
    let (sa, sb, sc) = example52_sets();
    let named = [("A", &sa), ("B", &sb), ("C", &sc)];
    let mut tables = Vec::new();
    for (name, set) in named {
        tables.push((name, table(scan, set, a)?));
    }
    let first = |s: IntegerSet, lo: i64, hi: i64| -> Result<Option<i64>, CliError> {
        Ok(mask_with(scan, &s, lo, hi)?.members().next())
    };
    let triple = sa.clone().intersect(sb.clone()).intersect(sc.clone());
    let triple_first = first(triple, a.lo, a.hi)?;
    let span = a.lo.unsigned_abs().max(a.hi.unsigned_abs()) as i64;
    let sym = sa.clone().symmetrize().intersect(sb.clone().symmetrize()).intersect(sc.clone().symmetrize());
    let sym_first = first(sym, -span, span)?;
    let pairs = [
        ("A∩B", first(sa.clone().intersect(sb.clone()), a.lo, a.hi)?),
        ("B∩C", first(sb.clone().intersect(sc.clone()), a.lo, a.hi)?),
        ("A∩C", first(sa.clone().intersect(sc.clone()), a.lo, a.hi)?),
    ];
    let json = json!({
        "lo": a.lo,
        "hi": a.hi,
        "sets": tables.iter().map(|(n, rows)| (n.to_string(), rows_json(rows, with_pw))).collect::<serde_json::Map<_, _>>(),
        "triple_empty": triple_first.is_none(),
        "symmetrized_triple_empty": sym_first.is_none(),
        "symmetrized_range": [-span, span],
        "pairwise_min": pairs.iter().map(|(n, m)| (n.to_string(), json!(m))).collect::<serde_json::Map<_, _>>(),
    });
    Ok(render(a.out.format, json, || {
        let mut t = String::new();
        for (n, rows) in &tables {
            t += &rows_tsv(n, rows);
        }
        t += &format!("A∩B∩C empty: {}\n", triple_first.is_none());
        t += &format!("A*∩B*∩C* empty on [{}, {span}]: {}\n", -span, sym_first.is_none());
        for (n, m) in pairs {
            t += &format!("min({n})\t{}\n", m.map_or("-".to_string(), |v| v.to_string()));
        }
        t
    }))
}

fn chaos(a: &ChaosArgs) -> Result<String, CliError> {
    let x = spec::parse_point(&spec::load(&a.x)?)?;
    let y = spec::parse_point(&spec::load(&a.y)?)?;
    let mut params = LiYorkeParams::new(a.horizon, a.r, Dyadic(a.threshold), a.tail_indices.clone());
    params.tail_floor = Dyadic(a.tail_floor);
    let verdict = li_yorke_verdict(&x, &y, &params)?;
    let mut json = json!({"verdict": report::verdict_json(&verdict)});
    let mut tsv = format!("liyorke\t{}\nproximal_min\t{}\n", verdict.liyorke, verdict.proximal_min);
    for (g, d) in &verdict.proximal_evidence {
        tsv += &format!("proximal\t{g}\t{d}\n");
    }
    for t in &verdict.tail_sup {
        tsv += &format!("tail\t{}\t{}\t{}\n", t.index, t.witness, t.value);
    }
    if a.fchaotic {
        let w = f_chaotic_witness(&x, &y, a.horizon, a.r, a.counts)?;
        json["fchaotic"] = report::fchaotic_json(&w);
        for (name, list) in [("l", &w.l_seq), ("r", &w.r_seq), ("s", &w.s_seq), ("t", &w.t_seq)] {
            for (g, d) in list {
                tsv += &format!("{name}\t{g}\t{d}\n");
            }
        }
    }
    Ok(render(a.out.format, json, || tsv))
}
