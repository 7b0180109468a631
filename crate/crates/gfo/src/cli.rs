//! `gfo check | query | dump`. Every entry point returns an [`Outcome`]
//! instead of printing, so the binary and the tests share one path.
//!
//! Exit codes: 0 clean, 1 error-severity violations, 2 usage, load or parse
//! failure (including malformed queries).

use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use gfo_core::checker::{
    detect_continuant_changes, detect_process_changes, process_properties, run_checks, summarize_changes, ChangeRecord,
    CheckOptions, IntegrationMode, Severity, Violation,
};
use gfo_core::functions::{realizations, realizers};
use gfo_core::truthmakers::{classify_property_support, find_truthmakers};
use gfo_core::value::parse_rational;
use gfo_core::{Kind, Model, Rational};
use serde_json::{json, Value as Json};

use crate::dsl::{self, ParseDiagnostic};
use crate::json;

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum DumpFormat {
    #[default]
    Json,
    Gfo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Mode {
    #[default]
    Identity,
    Valuation,
}

impl From<Mode> for IntegrationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Identity => IntegrationMode::Identity,
            Mode::Valuation => IntegrationMode::Valuation,
        }
    }
}

fn tolerance(s: &str) -> Result<Rational, String> {
    let r = parse_rational(s).map_err(|e| e.to_string())?;
    if r < Rational::from_integer(0.into()) {
        return Err(format!("tolerance must be non-negative, got {r}"));
    }
    Ok(r)
}

#[derive(Debug, Parser)]
#[command(name = "gfo", version, about = "Check and query process-object models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the axiom checks on one or more model files.
    Check(CheckArgs),
    /// Answer one query against a model.
    Query(QueryArgs),
    /// Print the canonical store.
    Dump(DumpArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Derive missing processes for continuants before checking.
    #[arg(long)]
    complete: bool,
    #[arg(long, value_enum, default_value_t)]
    integration: Mode,
    /// Tolerance for numeric change detection.
    #[arg(long, value_parser = tolerance, default_value = "0")]
    tol: Rational,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("query").required(true).args(["truthmakers", "realizers", "realizations", "changes", "classify"])))]
struct QueryArgs {
    input: PathBuf,
    /// Truth-makers of a proposition, e.g. "fact drinks(John, beer)".
    #[arg(long, value_name = "PROP")]
    truthmakers: Option<String>,
    /// Entities that execute a realization of the function.
    #[arg(long, value_name = "FUNCTION")]
    realizers: Option<String>,
    /// Processes that realize the function.
    #[arg(long, value_name = "FUNCTION")]
    realizations: Option<String>,
    /// Changes of a continuant or process.
    #[arg(long, value_name = "ENTITY")]
    changes: Option<String>,
    /// Support class of a property along a process.
    #[arg(long, num_args = 2, value_names = ["PROPERTY", "PROCESS"])]
    classify: Option<Vec<String>>,
    #[arg(long, value_parser = tolerance, default_value = "0")]
    tol: Rational,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct DumpArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: DumpFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Check,
    Query,
    Dump,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub inputs: Vec<PathBuf>,
    pub complete: bool,
    pub mode: IntegrationMode,
    pub tolerance: Rational,
    pub format: Format,
    /// ANSI colors in human output.
    pub color: bool,
}

impl RunConfig {
    pub fn new(command: CommandKind, inputs: Vec<PathBuf>) -> Self {
        RunConfig {
            command,
            inputs,
            complete: false,
            mode: IntegrationMode::Identity,
            tolerance: Rational::from_integer(0.into()),
            format: Format::Human,
            color: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Truthmakers(String),
    Realizers(String),
    Realizations(String),
    Changes(String),
    Classify { property: String, process: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { stdout: String::new(), stderr, code: EXIT_USAGE }
    }
}

enum Loaded {
    Model(Model),
    Diagnostics(Vec<ParseDiagnostic>),
    Unreadable(String),
}

fn load(path: &PathBuf) -> Loaded {
    let name = path.display().to_string();
    match std::fs::read_to_string(path) {
        Ok(src) => match dsl::parse_named(&name, &src) {
            Ok(m) => Loaded::Model(m),
            Err(d) => Loaded::Diagnostics(d),
        },
        Err(e) => Loaded::Unreadable(format!("{name}: cannot read: {e}")),
    }
}

fn load_one(path: &PathBuf, format: Format) -> Result<Model, Outcome> {
    match load(path) {
        Loaded::Model(m) => Ok(m),
        Loaded::Unreadable(msg) => Err(Outcome::usage(msg)),
        Loaded::Diagnostics(d) => Err(diagnostics_outcome(&d, format)),
    }
}

fn diagnostics_outcome(d: &[ParseDiagnostic], format: Format) -> Outcome {
    match format {
        Format::Human => Outcome::usage(d.iter().map(|x| format!("{x}\n")).collect::<String>()),
        Format::Json => Outcome {
            stdout: json::render(&json!({ "diagnostics": d.iter().map(json::diagnostic).collect::<Vec<_>>() })),
            stderr: String::new(),
            code: EXIT_USAGE,
        },
    }
}

struct Paint(bool);

impl Paint {
    fn severity(&self, s: Severity) -> String {
        match (self.0, s) {
            (false, _) => s.as_str().to_string(),
            (true, Severity::Error) => format!("\x1b[31m{}\x1b[0m", s.as_str()),
            (true, Severity::Warning) => format!("\x1b[33m{}\x1b[0m", s.as_str()),
        }
    }
}

fn human_violation(v: &Violation, paint: &Paint) -> String {
    let mut line = format!("{}: {}: {}", paint.severity(v.severity), v.axiom.as_str(), v.subjects.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", "));
    if let Some(t) = &v.at {
        write!(line, " at {t}").unwrap();
    }
    write!(line, ": {}", v.message).unwrap();
    line
}

fn human_change(c: &ChangeRecord) -> String {
    let show = |v: &Option<gfo_core::Value>| v.as_ref().map_or("undefined".to_string(), |v| v.to_string());
    match c {
        ChangeRecord::Continuant { entity, change } => format!(
            "change: {entity}.{} {} -> {} between {} and {}",
            change.property,
            show(&change.before),
            show(&change.after),
            change.from,
            change.to
        ),
        ChangeRecord::Process { entity, property, at } => format!("change: {entity}.{property} near {at}"),
    }
}

/// Checks every input. Files are independent models.
pub fn run_check(cfg: &RunConfig) -> Outcome {
    if cfg.inputs.is_empty() {
        return Outcome::usage("gfo check: at least one input file is required");
    }
    let opts = CheckOptions { complete: cfg.complete, mode: cfg.mode };
    let paint = Paint(cfg.color);
    let mut out = Outcome::default();
    let mut reports = Vec::new();
    for path in &cfg.inputs {
        let name = path.display().to_string();
        let m = match load(path) {
            Loaded::Model(m) => m,
            Loaded::Unreadable(msg) => {
                out.code = EXIT_USAGE;
                writeln!(out.stderr, "{msg}").unwrap();
                reports.push(json!({ "file": name, "error": msg }));
                continue;
            }
            Loaded::Diagnostics(d) => {
                out.code = EXIT_USAGE;
                for x in &d {
                    writeln!(out.stderr, "{x}").unwrap();
                }
                reports.push(json!({ "file": name, "diagnostics": d.iter().map(json::diagnostic).collect::<Vec<_>>() }));
                continue;
            }
        };
        let report = run_checks(&m, &opts);
        let changes = summarize_changes(&report.model, &cfg.tolerance);
        if report.error_count() > 0 && out.code == EXIT_CLEAN {
            out.code = EXIT_VIOLATIONS;
        }
        match cfg.format {
            Format::Json => reports.push(json::check_report(&name, &report, &changes)),
            Format::Human => {
                let s = &mut out.stdout;
                if cfg.inputs.len() > 1 {
                    writeln!(s, "{name}").unwrap();
                }
                writeln!(s, "{} violations, {} entities, {} samples", report.violations.len(), report.model.entity_count(), report.model.sample_count()).unwrap();
                for v in &report.violations {
                    writeln!(s, "{}", human_violation(v, &paint)).unwrap();
                }
                for d in &report.derived {
                    writeln!(s, "derived: {d}").unwrap();
                }
                for c in &changes {
                    writeln!(s, "{}", human_change(c)).unwrap();
                }
            }
        }
    }
    if cfg.format == Format::Json {
        out.stdout = json::render(&Json::Array(reports));
        out.stderr.clear();
    }
    out
}

fn query_error(msg: impl std::fmt::Display) -> Outcome {
    Outcome::usage(format!("gfo query: {msg}"))
}

fn answer(m: &Model, cfg: &RunConfig, q: &Query) -> Result<(Json, Vec<String>), Outcome> {
    Ok(match q {
        Query::Truthmakers(text) => {
            let phi = dsl::parse_proposition(text).map_err(|d| diagnostics_outcome(&d, cfg.format))?;
            phi.validate(m).map_err(query_error)?;
            let found = find_truthmakers(m, &phi);
            let lines = found
                .iter()
                .map(|t| {
                    let f = &t.fact;
                    let mut fact = format!("{}({})", f.relator, f.args.iter().map(|a| a.as_str()).collect::<Vec<_>>().join(", "));
                    if let Some(v) = &f.value {
                        write!(fact, " = {v}").unwrap();
                    }
                    format!("{} {} {fact}", t.process, t.situation)
                })
                .collect();
            (Json::Array(found.iter().map(json::triple).collect()), lines)
        }
        Query::Realizers(f) => {
            let xs = realizers(m, m.function(f).map_err(query_error)?);
            (Json::Array(xs.iter().map(|x| json!(x.as_str())).collect()), xs.iter().map(|x| x.to_string()).collect())
        }
        Query::Realizations(f) => {
            let rs = realizations(m, m.function(f).map_err(query_error)?);
            let lines = rs.iter().map(|r| format!("{} {} {}", r.process, r.requirement, r.goal)).collect();
            (Json::Array(rs.iter().map(json::realization).collect()), lines)
        }
        Query::Changes(e) => match m.classify(e).map_err(query_error)? {
            Kind::Continuant => {
                let cs = detect_continuant_changes(m, m.continuant(e).map_err(query_error)?);
                let lines = cs.iter().map(|c| human_change(&ChangeRecord::Continuant { entity: e.as_str().into(), change: c.clone() })).collect();
                (Json::Array(cs.iter().map(json::continuant_change).collect()), lines)
            }
            Kind::Process => {
                let p = m.process(e).map_err(query_error)?;
                let mut items = Vec::new();
                let mut lines = Vec::new();
                for prop in process_properties(m, p) {
                    for at in detect_process_changes(m, p, prop, &cfg.tolerance).map_err(query_error)? {
                        lines.push(format!("{prop} near {at}"));
                        items.push(json!({ "property": prop.as_str(), "at": at.to_string() }));
                    }
                }
                (Json::Array(items), lines)
            }
            k => return Err(query_error(format!("`{e}` is a {}; only continuants and processes change", k.as_str()))),
        },
        Query::Classify { property, process } => {
            let p = m.process(process).map_err(query_error)?;
            let class = classify_property_support(m, property, p).map_err(query_error)?;
            (json!(class.as_str()), vec![class.as_str().to_string()])
        }
    })
}

pub fn run_query(cfg: &RunConfig, q: &Query) -> Outcome {
    let [path] = cfg.inputs.as_slice() else {
        return Outcome::usage("gfo query: exactly one input file is required");
    };
    let m = match load_one(path, cfg.format) {
        Ok(m) => m,
        Err(o) => return o,
    };
    match answer(&m, cfg, q) {
        Ok((j, lines)) => Outcome {
            stdout: match cfg.format {
                Format::Json => json::render(&j),
                Format::Human => lines.iter().map(|l| format!("{l}\n")).collect(),
            },
            stderr: String::new(),
            code: EXIT_CLEAN,
        },
        Err(o) => o,
    }
}

pub fn run_dump(cfg: &RunConfig, format: DumpFormat) -> Outcome {
    let [path] = cfg.inputs.as_slice() else {
        return Outcome::usage("gfo dump: exactly one input file is required");
    };
    match load_one(path, Format::Human) {
        Ok(m) => Outcome {
            stdout: match format {
                DumpFormat::Json => json::render(&json::model(&m)),
                DumpFormat::Gfo => dsl::serialize(&m),
            },
            stderr: String::new(),
            code: EXIT_CLEAN,
        },
        Err(o) => o,
    }
}

/// `GFO_COLOR=1` turns colors on; anything else leaves them off.
pub fn color_from_env() -> bool {
    std::env::var("GFO_COLOR").is_ok_and(|v| v == "1")
}

/// Parses a full command line (including the program name) and runs it.
pub fn run<I, T>(args: I, color: bool) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome { stdout: text, stderr: String::new(), code: EXIT_CLEAN }
            };
        }
    };
    match cli.command {
        Command::Check(a) => run_check(&RunConfig {
            complete: a.complete,
            mode: a.integration.into(),
            tolerance: a.tol,
            format: a.format,
            color,
            ..RunConfig::new(CommandKind::Check, a.inputs)
        }),
        Command::Query(a) => {
            let q = if let Some(p) = a.truthmakers {
                Query::Truthmakers(p)
            } else if let Some(f) = a.realizers {
                Query::Realizers(f)
            } else if let Some(f) = a.realizations {
                Query::Realizations(f)
            } else if let Some(e) = a.changes {
                Query::Changes(e)
            } else {
                let mut v = a.classify.unwrap_or_default().into_iter();
                let (Some(property), Some(process)) = (v.next(), v.next()) else {
                    return Outcome::usage("gfo query: --classify needs a property and a process");
                };
                Query::Classify { property, process }
            };
            let cfg = RunConfig { tolerance: a.tol, format: a.format, color, ..RunConfig::new(CommandKind::Query, vec![a.input]) };
            run_query(&cfg, &q)
        }
        Command::Dump(a) => run_dump(&RunConfig::new(CommandKind::Dump, vec![a.input]), a.format),
    }
}
