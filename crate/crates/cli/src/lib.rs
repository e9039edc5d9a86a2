//! Command-line front end: reads structure-constant bundles, runs builders
//! and checkers, and prints reports.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails, 2 on
//! input errors.

pub mod bundle;
pub mod commands;
pub mod error;

use std::io::Write;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crossprod::exactlin::FieldSpec;
use crossprod::report::Violation;
use crossprod::CheckReport;

use crate::bundle::Loaded;
use crate::commands::{BuildKind, Demo, Outcome};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "crossprod", version, about = "Crossed products, crossed coproducts and their equivalences")]
pub struct Cli {
    /// Field for commands that create data (`Q`, `F5`, ...). For bundle
    /// inputs it must agree with the bundle if given.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized demos.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// List passing checks and notes too.
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the axiom suite of every structure in a bundle.
    Check {
        bundle: String,
        /// Only this structure.
        #[arg(long)]
        structure: Option<String>,
    },
    /// Build the algebra, coalgebra or bialgebra of a structure.
    Build {
        kind: BuildKind,
        bundle: String,
        #[arg(long)]
        structure: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Deform a crossed product or cross product bialgebra by a pair.
    Twist {
        bundle: String,
        #[arg(long)]
        base: String,
        /// `identity`, a twist_pair structure of the bundle, or `file[:name]`.
        #[arg(long)]
        pair: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Recover a pair from a witness `phi : primed -> base`.
    Extract {
        bundle: String,
        #[arg(long)]
        base: String,
        #[arg(long)]
        primed: String,
        #[arg(long)]
        witness: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run a catalog pipeline.
    Demo { which: Demo },
    /// Write a catalog object as a bundle.
    Export {
        object: String,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    name: String,
    passed: bool,
    cases: usize,
    failures: usize,
    violations: &'a [Violation],
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    field: String,
    passed: bool,
    checks: Vec<JsonCheck<'a>>,
    notes: &'a [String],
}

fn json_report(command: &str, field: FieldSpec, r: &CheckReport) -> String {
    let checks = r
        .checks
        .iter()
        .map(|c| JsonCheck {
            name: c.qualified_name(),
            passed: c.passed(),
            cases: c.cases,
            failures: c.failures,
            violations: &c.violations,
        })
        .collect();
    let out = JsonReport { command, field: field.to_string(), passed: r.passed(), checks, notes: &r.notes };
    let mut s = serde_json::to_string_pretty(&out).expect("report serializes");
    s.push('\n');
    s
}

fn text_report(command: &str, field: FieldSpec, r: &CheckReport, verbose: bool) -> String {
    let mut s = format!("{command} over {field}\n");
    if verbose {
        s.push_str(&r.to_string());
    } else {
        let mut failing = CheckReport::new();
        failing.checks = r.checks.iter().filter(|c| !c.passed()).cloned().collect();
        s.push_str(&failing.to_string());
    }
    let failed = r.failed_names().len();
    s.push_str(&format!(
        "{}: {} checks, {} failed\n",
        if r.passed() { "PASS" } else { "FAIL" },
        r.checks.len(),
        failed
    ));
    s
}

fn parse_field(s: &str) -> Result<FieldSpec, CliError> {
    s.parse().map_err(|e: crossprod::Error| CliError::Usage(e.to_string()))
}

fn load(path: &str, field: Option<&str>) -> Result<Loaded, CliError> {
    let loaded = Loaded::read(path)?;
    if let Some(f) = field {
        let f = parse_field(f)?;
        if f != loaded.field {
            return Err(CliError::Usage(format!("--field {f} but {path} is over {}", loaded.field)));
        }
    }
    Ok(loaded)
}

fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_string(), source })
}

/// Runs one invocation, writing the report to `out`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let field_flag = cli.field.as_deref();
    let (name, field, outcome, target) = match &cli.command {
        Command::Check { bundle, structure } => {
            let l = load(bundle, field_flag)?;
            ("check", l.field, commands::check(&l, structure.as_deref())?, None)
        }
        Command::Build { kind, bundle, structure, out: path } => {
            let l = load(bundle, field_flag)?;
            ("build", l.field, commands::build(&l, *kind, structure)?, path.clone())
        }
        Command::Twist { bundle, base, pair, out: path } => {
            let l = load(bundle, field_flag)?;
            ("twist", l.field, commands::twist(&l, base, pair)?, path.clone())
        }
        Command::Extract { bundle, base, primed, witness, out: path } => {
            let l = load(bundle, field_flag)?;
            ("extract", l.field, commands::extract(&l, base, primed, witness)?, path.clone())
        }
        Command::Demo { which } => {
            let f = parse_field(field_flag.unwrap_or("Q"))?;
            ("demo", f, commands::demo(*which, f, cli.seed)?, None)
        }
        Command::Export { object, out: path } => {
            let f = parse_field(field_flag.unwrap_or("Q"))?;
            let bundle = commands::export(object, f)?;
            let text = bundle.to_json();
            match path {
                Some(p) => write_file(p, &text)?,
                None => out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?,
            }
            return Ok(0);
        }
    };
    let Outcome { report, bundle } = outcome;
    if let (Some(path), Some(b)) = (target, bundle) {
        write_file(&path, &b.to_json())?;
    }
    let text = if cli.json {
        json_report(name, field, &report)
    } else {
        text_report(name, field, &report, cli.verbose)
    };
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
    Ok(if report.passed() { 0 } else { 1 })
}
