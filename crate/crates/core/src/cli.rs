//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 enumeration limit exceeded,
//! 3 a verification, regression or oracle check failed.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::diagram::parse_diagram;
use crate::engine::{enumerate, EnumerationLimits, EnumerationResult};
use crate::error::{Error, Result};
use crate::export::{export_dot, export_json, export_table, DotOptions};
use crate::families::{family_presentation, oracle_check, Family, FamilyParams};
use crate::graph::VerifyOptions;
use crate::presentation::{parse_presentation, EdgeLabeling, Presentation};
use crate::regress::{parse_manifest, run_manifest, KNOWN_SIZES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "nquandle",
    version,
    about = "Fundamental N-quandles of spatial graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate a quandle and print its stats, table, JSON or DOT.
    Enumerate(RunArgs),
    /// Enumerate, then check the axioms, relations and label orders.
    Verify(RunArgs),
    /// Enumerate and write the Cayley graph (DOT by default).
    Export(RunArgs),
    /// Run a regression manifest (the built-in known sizes by default).
    Regress(RegressArgs),
    /// Compare G(k,m,n) against the closed-form component models.
    OracleCheck(OracleArgs),
}

#[derive(Args, Debug, Clone)]
struct InputArgs {
    /// theta3 | KT | H1 | H2 | DH | K4planar | K4knot | Gkmn | Gkm
    #[arg(long, conflicts_with = "input")]
    family: Option<String>,
    /// Signed number of half-twists.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Label of strut c.
    #[arg(long)]
    m: Option<u32>,
    /// Label of strut d (Gkmn only).
    #[arg(long)]
    n: Option<u32>,
    /// Edge labels, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    labels: Option<Vec<i64>>,
    /// Presentation or diagram file.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct LimitArgs {
    #[arg(long, env = "QF_MAX_VERTICES", default_value_t = 1_000_000)]
    max_vertices: usize,
    #[arg(long, default_value_t = 1_000_000_000)]
    max_steps: u64,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    /// Leave out self-loops in DOT output.
    #[arg(long)]
    no_loops: bool,
    /// Color DOT edges by generator.
    #[arg(long)]
    color: bool,
}

#[derive(Args, Debug, Clone)]
struct RegressArgs {
    /// Manifest file; the built-in known-sizes manifest when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Skip rows tagged `slow`.
    #[arg(long)]
    skip_slow: bool,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args, Debug, Clone)]
struct OracleArgs {
    /// Check only this k (default: 1..=4).
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Table,
    Stats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Enumerate,
    Verify,
    Export,
}

/// Where a presentation comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSource {
    Family(FamilyParams),
    File(PathBuf),
}

/// A resolved `enumerate` / `verify` / `export` invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub subcommand: Action,
    pub source: InputSource,
    pub labels: Option<EdgeLabeling>,
    pub limits: EnumerationLimits,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub dot: DotOptions,
}

impl RunConfig {
    fn from_args(subcommand: Action, a: RunArgs) -> Result<RunConfig> {
        let i = a.input;
        let labels = i.labels.clone().map(EdgeLabeling::new).transpose()?;
        let source = match (&i.family, &i.input) {
            (Some(f), None) => {
                let family: Family = f.parse()?;
                InputSource::Family(FamilyParams::new(family, i.k, i.m, i.n, i.labels)?)
            }
            (None, Some(p)) => {
                if i.k.is_some() || i.m.is_some() || i.n.is_some() {
                    return Err(Error::BadParameter("--k/--m/--n need --family".into()));
                }
                InputSource::File(p.clone())
            }
            _ => {
                return Err(Error::BadParameter(
                    "give exactly one of --family or --input".into(),
                ))
            }
        };
        let default_format = match subcommand {
            Action::Export => Format::Dot,
            _ => Format::Stats,
        };
        Ok(RunConfig {
            subcommand,
            source,
            labels,
            limits: limits_of(&a.limits)?,
            format: a.format.unwrap_or(default_format),
            output: a.output,
            dot: DotOptions {
                no_loops: a.no_loops,
                color: a.color,
            },
        })
    }

    /// The presentation to enumerate (before expansion).
    pub fn presentation(&self) -> Result<Presentation> {
        match &self.source {
            InputSource::Family(fp) => family_presentation(fp),
            InputSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                let is_diagram = text.lines().any(|l| l.trim_start().starts_with("arcs:"));
                if is_diagram {
                    let mut d = parse_diagram(&text)?;
                    if let Some(l) = &self.labels {
                        d = d.with_labeling(l.clone())?;
                    }
                    Ok(d.wirtinger())
                } else {
                    let p = parse_presentation(&text)?;
                    match &self.labels {
                        Some(l) => p.with_labeling(l.clone()),
                        None => Ok(p),
                    }
                }
            }
        }
    }
}

fn limits_of(l: &LimitArgs) -> Result<EnumerationLimits> {
    if l.max_vertices == 0 || l.max_steps == 0 {
        return Err(Error::BadParameter("limits must be positive".into()));
    }
    Ok(EnumerationLimits::new(l.max_vertices, l.max_steps))
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Enumerate(a) => {
            RunConfig::from_args(Action::Enumerate, a).and_then(|c| run_config(&c))
        }
        Command::Verify(a) => RunConfig::from_args(Action::Verify, a).and_then(|c| run_config(&c)),
        Command::Export(a) => RunConfig::from_args(Action::Export, a).and_then(|c| run_config(&c)),
        Command::Regress(a) => regress(&a),
        Command::OracleCheck(a) => oracle(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::Invalid(format!("stdout: {e}")))
        }
    }
}

fn stats_text(r: &EnumerationResult) -> String {
    r.stats_lines()
        .into_iter()
        .map(|(k, v)| format!("{k}={v}\n"))
        .collect()
}

/// Executes an `enumerate`, `verify` or `export` configuration.
pub fn run_config(c: &RunConfig) -> Result<i32> {
    let p = c.presentation()?.expand_relations();
    let r = enumerate(&p, c.limits);
    let Some(g) = r.graph() else {
        if c.format == Format::Stats {
            emit(&c.output, &stats_text(&r))?;
        } else {
            eprint!("{}", stats_text(&r));
        }
        return Ok(EXIT_LIMIT);
    };
    let report = g.verify(&p, VerifyOptions::default());
    for v in &report.violations {
        eprintln!("violation: {v}");
    }
    if c.subcommand == Action::Verify {
        let mut text = String::new();
        text.push_str(&format!("final_size={}\n", g.size()));
        for s in &report.skipped {
            text.push_str(&format!("note: {s}\n"));
        }
        for v in &report.violations {
            text.push_str(&format!("violation: {v}\n"));
        }
        text.push_str(if report.is_clean() {
            "verified=true\n"
        } else {
            "verified=false\n"
        });
        emit(&c.output, &text)?;
    } else {
        let text = match c.format {
            Format::Stats => {
                let mut s = stats_text(&r);
                s.push_str(&format!("verified={}\n", report.is_clean()));
                s
            }
            Format::Json => export_json(g, Some(&r.stats)),
            Format::Dot => export_dot(g, c.dot),
            Format::Table => export_table(g)?,
        };
        emit(&c.output, &text)?;
    }
    Ok(if report.is_clean() {
        EXIT_OK
    } else {
        EXIT_CHECK
    })
}

fn regress(a: &RegressArgs) -> Result<i32> {
    let text = match &a.input {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?,
        None => KNOWN_SIZES.to_string(),
    };
    let mut m = parse_manifest(&text)?;
    if a.skip_slow {
        m.row.retain(|r| !r.slow);
    }
    let reports = run_manifest(&m, limits_of(&a.limits)?);
    let mut failed = 0;
    for r in &reports {
        println!("{}", r.line());
        failed += usize::from(!r.passed());
    }
    println!("{} rows, {failed} failed", reports.len());
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK })
}

fn oracle(a: &OracleArgs) -> Result<i32> {
    let range = |v: Option<u32>| match v {
        Some(0) => Err(Error::BadParameter("parameters must be positive".into())),
        Some(v) => Ok(v..=v),
        None => Ok(1..=4),
    };
    let limits = limits_of(&a.limits)?;
    let mut failed = 0;
    let mut total = 0;
    for k in range(a.k)? {
        for m in range(a.m)? {
            for n in range(a.n)? {
                let r = oracle_check(k, m, n, limits)?;
                total += 1;
                failed += usize::from(!r.passed());
                println!(
                    "{} k={k} m={m} n={n} size={} size_ok={} components_ok={} qa_ok={} qd_ok={}",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.size.map_or_else(|| "limit".into(), |s| s.to_string()),
                    r.size_matches,
                    r.components_match,
                    r.qa_matches,
                    r.qd_matches
                );
            }
        }
    }
    println!("{total} cases, {failed} failed");
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK })
}
