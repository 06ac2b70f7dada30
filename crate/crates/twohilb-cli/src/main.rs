use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twohilb::dsl::{eval_str, Value};
use twohilb::json::{from_json, report_to_json, to_json, Document};
use twohilb::report::CheckReport;
use twohilb_cli::{describe, run, Suite};

#[derive(Parser)]
#[command(
    name = "twohilb",
    version,
    about = "Check 2-Hilbert space identities and evaluate cell expressions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named check suite.
    Check {
        suite: SuiteArg,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Emit one JSON report per line.
        #[arg(long)]
        json: bool,
        /// Size parameter: outcomes, basis dimension or witness size.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Evaluate an expression and print the resulting cell as JSON.
    Eval {
        /// Source file, or `-` for stdin.
        input: String,
    },
    /// Compare two serialized cells.
    Diff {
        a: String,
        b: String,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Teleportation,
    DenseCoding,
    Complementarity,
    Erasure,
    WitnessAxioms,
    Frobenius,
    Interchange,
    Decoherence,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Teleportation => vec![Suite::Teleportation],
            SuiteArg::DenseCoding => vec![Suite::DenseCoding],
            SuiteArg::Complementarity => vec![Suite::Complementarity],
            SuiteArg::Erasure => vec![Suite::Erasure],
            SuiteArg::WitnessAxioms => vec![Suite::WitnessAxioms],
            SuiteArg::Frobenius => vec![Suite::Frobenius],
            SuiteArg::Interchange => vec![Suite::Interchange],
            SuiteArg::Decoherence => vec![Suite::Decoherence],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

/// Exit status 2 with a message.
struct Usage(String);

fn read_input(path: &str) -> Result<String, Usage> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Usage(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

/// Print a line; a closed stdout is not an error worth reporting.
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn print_reports(reports: &[CheckReport], json: bool) -> ExitCode {
    for r in reports {
        emit(&if json { report_to_json(r) } else { describe(r) });
    }
    if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn check(suite: SuiteArg, tolerance: f64, json: bool, n: Option<usize>) -> Result<ExitCode, Usage> {
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Usage("--tolerance must be a non-negative number".into()));
    }
    let suites = suite.suites();
    if n.is_some() && suites.len() > 1 {
        return Err(Usage("--n applies to a single suite, not to `all`".into()));
    }
    if n.is_some() && !suites[0].takes_n() {
        return Err(Usage(format!("--n does not apply to {}", suites[0].name())));
    }
    let mut reports = Vec::new();
    for s in suites {
        reports.extend(run(s, n, tolerance).map_err(|e| Usage(format!("{}: {e}", s.name())))?);
    }
    Ok(print_reports(&reports, json))
}

/// The source line containing `start`, with a caret under the span.
fn underline(text: &str, start: usize, end: usize) -> String {
    let start = start.min(text.len());
    let line_start = text[..start].rfind('\n').map_or(0, |i| i + 1);
    let line_end = text[start..].find('\n').map_or(text.len(), |i| start + i);
    let width = end.clamp(start + 1, line_end.max(start + 1)) - start;
    format!(
        "  {}\n  {}{}",
        &text[line_start..line_end],
        " ".repeat(text[line_start..start].chars().count()),
        "^".repeat(width)
    )
}

fn eval(input: &str) -> Result<ExitCode, Usage> {
    let text = read_input(input)?;
    match eval_str(&text) {
        Ok(Value::OneCell(f)) => emit(&to_json(&Document::OneCell(f))),
        Ok(Value::TwoCell(a)) => emit(&to_json(&Document::TwoCell(a))),
        Err(e) => {
            let span = e.span();
            return Err(Usage(format!("{e}\n{}", underline(&text, span.start, span.end))));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load(path: &str) -> Result<Document, Usage> {
    from_json(&read_input(path)?).map_err(|e| Usage(format!("{path}: {e}")))
}

fn diff(a: &str, b: &str, tolerance: f64, json: bool) -> Result<ExitCode, Usage> {
    let report = match (load(a)?, load(b)?) {
        (Document::TwoCell(x), Document::TwoCell(y)) => CheckReport::exact("diff", &x, &y, tolerance),
        (Document::OneCell(x), Document::OneCell(y)) => {
            CheckReport::from_residual("diff", if x == y { 0.0 } else { f64::INFINITY }, tolerance)
        }
        (x, y) => {
            return Err(Usage(format!(
                "cannot compare a {} document with a {} document",
                x.kind(),
                y.kind()
            )))
        }
    };
    Ok(print_reports(&[report], json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            suite,
            tolerance,
            json,
            n,
        } => check(suite, tolerance, json, n),
        Command::Eval { input } => eval(&input),
        Command::Diff { a, b, tolerance, json } => diff(&a, &b, tolerance, json),
    };
    result.unwrap_or_else(|Usage(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })
}
