use std::io::{IsTerminal, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superalg::json::{element_to_value, morphism_from_value, morphism_to_value, ring_from_value};
use superalg::par::ExecMode;
use superalg::parse::parse_element;
use superalg::report::Report;
use superalg::spheres::make_sphere_projector;
use superalg::suites::{certify_idempotent, run_suite, SuiteParams, SuiteReport, SUITES};
use superalg::{AlgebraError, ScalarKind, SuperRing};

#[derive(Parser)]
#[command(name = "superalg", version, about = "Exact superalgebra computations and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    Q,
    Grassmann2,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[arg(long = "L")]
        l: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run samples on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Normalise an expression in a ring given by a preset name or a JSON descriptor file.
    Eval {
        expr: String,
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check that a morphism read from a JSON file is idempotent and split it.
    Certify {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write an object as JSON to stdout.
    Export {
        #[command(subcommand)]
        what: Export,
    },
}

#[derive(Subcommand)]
enum Export {
    /// The projector g on the free module with basis s0..sn.
    SphereProjector {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Base::Q)]
        base: Base,
    },
}

enum Failure {
    Usage(String),
    Clauses,
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn color() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal()
}

fn paint(text: String) -> String {
    if !color() {
        return text;
    }
    text.lines()
        .map(|l| l.replacen("[pass]", "\x1b[32m[pass]\x1b[0m", 1).replacen("[FAIL]", "\x1b[31m[FAIL]\x1b[0m", 1))
        .collect::<Vec<_>>()
        .join("\n")
}

fn emit(format: Format, text: String, value: &Value) {
    let mut out = std::io::stdout().lock();
    let _ = match format {
        Format::Text => writeln!(out, "{}", paint(text)),
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value).expect("json")),
    };
}

fn read_json(path: &str) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn verdict(pass: bool) -> Result<(), Failure> {
    if pass {
        Ok(())
    } else {
        Err(Failure::Clauses)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { suite, l, n, max_n, samples, seed, sequential, format } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", "))));
            }
            let mode = if sequential { ExecMode::Sequential } else { ExecMode::Parallel };
            let params = SuiteParams { l, n, max_n, samples, seed, mode };
            let report: SuiteReport = run_suite(&suite, &params)?;
            emit(format, report.to_string(), &serde_json::to_value(&report).expect("json"));
            verdict(report.pass)
        }
        Command::Eval { expr, ring, format } => {
            let ring = if Path::new(&ring).is_file() { ring_from_value(&read_json(&ring)?)? } else { ring_from_value(&Value::String(ring))? };
            let x = parse_element(&ring, &expr)?;
            emit(format, x.to_string(), &json!({ "normal_form": x.to_string(), "element": element_to_value(&x) }));
            Ok(())
        }
        Command::Certify { file, format } => {
            let g = morphism_from_value(&read_json(&file)?)?;
            if !g.is_square() {
                return Err(Failure::Usage(format!("morphism {} -> {} is not square", g.source(), g.target())));
            }
            let report: Report = certify_idempotent(&g);
            emit(format, report.to_string(), &serde_json::to_value(&report).expect("json"));
            verdict(report.pass())
        }
        Command::Export { what: Export::SphereProjector { n, base } } => {
            let base = match base {
                Base::Q => SuperRing::grassmann(ScalarKind::Rational, 0)?,
                Base::Grassmann2 => SuperRing::grassmann(ScalarKind::Rational, 2)?,
            };
            let bundle = make_sphere_projector(&base, n)?;
            emit(Format::Json, String::new(), &morphism_to_value(bundle.g()));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Clauses) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
