//! `lazval`: Lazard valuations, evaluation, projection and invariance checks
//! from the command line.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage error,
//! 3 input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commands::{CliError, Report};

const SCHEMA: &str = "lazval/1";

#[derive(Parser)]
#[command(
    name = "lazval",
    version,
    about = "Exact Lazard valuations of rational polynomials"
)]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolyAt {
    /// Polynomial, e.g. "x^2 + y^2 - 1".
    poly: String,
    /// Comma-separated variable names in order, e.g. "x,y".
    #[arg(long)]
    vars: String,
    /// Rational point, e.g. "(1/2, 0)".
    #[arg(long, allow_hyphen_values = true)]
    at: String,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Property {
    Valuation,
    Order,
    Delineability,
}

#[derive(Subcommand)]
enum Command {
    /// Lazard valuation and order at a point.
    Val(PolyAt),
    /// Order of vanishing at a point.
    Order(PolyAt),
    /// Lazard evaluation over a point of dimension n-1.
    Lazeval(PolyAt),
    /// Lazard projection of a basis file.
    Project {
        /// Basis file: optional `vars:` header, one polynomial per line.
        basis: PathBuf,
        #[arg(long)]
        vars: Option<String>,
        /// Projection variable (default: the last one).
        #[arg(long)]
        main_var: Option<String>,
    },
    /// Real roots of a univariate polynomial with multiplicities.
    Roots {
        poly: String,
        #[arg(long, default_value = "x")]
        vars: String,
        /// Refine isolating intervals to at most this width, e.g. 1/1000.
        #[arg(long)]
        width: Option<String>,
    },
    /// Finite-sample invariance or delineability check.
    Invariance {
        poly: String,
        #[arg(long)]
        vars: String,
        #[arg(long, value_enum, default_value = "valuation")]
        property: Property,
        /// Sample points, one per line.
        #[arg(long)]
        samples_file: Option<PathBuf>,
        /// Additional sample point; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// Stack report of a basis over sample points of dimension n-1.
    Stack {
        basis: PathBuf,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        samples_file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// Randomized property suite.
    Check {
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Built-in end-to-end scenario.
    Demo { name: String },
}

fn dispatch(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Val(a) => commands::val(&a.poly, &a.vars, &a.at),
        Command::Order(a) => commands::order(&a.poly, &a.vars, &a.at),
        Command::Lazeval(a) => commands::lazeval(&a.poly, &a.vars, &a.at),
        Command::Project {
            basis,
            vars,
            main_var,
        } => commands::project(&basis, vars.as_deref(), main_var.as_deref()),
        Command::Roots { poly, vars, width } => commands::roots(&poly, &vars, width.as_deref()),
        Command::Invariance {
            poly,
            vars,
            property,
            samples_file,
            at,
        } => commands::invariance(&poly, &vars, property, samples_file.as_deref(), &at),
        Command::Stack {
            basis,
            vars,
            samples_file,
            at,
        } => commands::stack(&basis, vars.as_deref(), samples_file.as_deref(), &at),
        Command::Check { suite, seed, count } => commands::check(&suite, seed, count),
        Command::Demo { name } => commands::demo(&name),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Val(_) => "val",
        Command::Order(_) => "order",
        Command::Lazeval(_) => "lazeval",
        Command::Project { .. } => "project",
        Command::Roots { .. } => "roots",
        Command::Invariance { .. } => "invariance",
        Command::Stack { .. } => "stack",
        Command::Check { .. } => "check",
        Command::Demo { .. } => "demo",
    }
}

fn with_header(name: &str, body: Value) -> Value {
    let mut out = json!({ "schema": SCHEMA, "command": name });
    if let (Some(out), Value::Object(body)) = (out.as_object_mut(), body) {
        out.extend(body);
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match dispatch(cli.command) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if cli.json {
                let mut body = report.json;
                if let Some(obj) = body.as_object_mut() {
                    obj.insert("ok".into(), Value::Bool(report.ok));
                }
                println!("{}", with_header(name, body));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.json {
                let body =
                    json!({ "ok": false, "error": { "kind": e.kind(), "message": e.to_string() } });
                println!("{}", with_header(name, body));
            }
            ExitCode::from(e.exit_code())
        }
    }
}
