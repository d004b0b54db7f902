use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotproj::analysis::{self, AnalysisError, AnalyzeOptions};
use knotproj::dataset::{self, DatasetError};
use knotproj::dot::chord_diagram_dot;
use knotproj::verify::{CheckId, Verifier};
use knotproj_core::enumerate::{records, EnumerateError, DEFAULT_ARNOLD_MAX_N, DEFAULT_MAX_N};
use knotproj_core::{parse_code, Strongness};

const EXIT_VIOLATION: u8 = 1;
const EXIT_MALFORMED: u8 = 2;
const EXIT_NOT_REALIZABLE: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_IO: u8 = 5;
const EXIT_UNKNOWN_CHECK: u8 = 6;
const EXIT_GUARD: u8 = 7;

/// Spherical knot projections: analysis, reduction and exhaustive checks.
#[derive(Parser)]
#[command(name = "knotproj", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a Gauss code, e.g. "1 2 3 1 2 3".
    Analyze(AnalyzeArgs),
    /// Print a 1b/s2b reduction down to the simple closed curve.
    Reduce {
        code: String,
        #[arg(long)]
        json: bool,
    },
    /// Write every projection with 1..=N crossings as a JSONL dataset.
    Enumerate {
        n: usize,
        /// Dataset path; without it the dataset goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include the Arnold invariant for n up to this value.
        #[arg(long, default_value_t = DEFAULT_ARNOLD_MAX_N)]
        arnold_max: usize,
    },
    /// Run exhaustive checks.
    Verify(VerifyArgs),
    /// Render the chord diagram of a code as Graphviz DOT.
    Dot { code: String },
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(required_unless_present = "input")]
    code: Option<String>,
    /// Also compute J+ + 2St.
    #[arg(long)]
    arnold: bool,
    #[arg(long)]
    json: bool,
    /// Allow --arnold above 12 crossings.
    #[arg(long)]
    force: bool,
    /// Analyze every non-blank line of this file.
    #[arg(long = "in", conflicts_with = "code")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "all")]
    check: Vec<String>,
    #[arg(long, conflicts_with = "check")]
    all: bool,
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    #[arg(long, default_value_t = 5)]
    arnold_max_n: usize,
    #[arg(long)]
    json: bool,
    /// Include wall-clock times in the output.
    #[arg(long)]
    timing: bool,
    /// Strong-bigon predicate; `interleaved` is the known-wrong variant.
    #[arg(long, value_enum, default_value_t = Rule::Nested)]
    rule: Rule,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Nested,
    Interleaved,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Failure {
        Failure { code, message: message.to_string() }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Failure {
        let code = match e {
            AnalysisError::Malformed(_) => EXIT_MALFORMED,
            AnalysisError::NotRealizable(_) => EXIT_NOT_REALIZABLE,
            AnalysisError::ArnoldGuard { .. } => EXIT_GUARD,
        };
        Failure::new(code, e)
    }
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Failure {
        Failure::new(EXIT_BUDGET, e)
    }
}

impl From<DatasetError> for Failure {
    fn from(e: DatasetError) -> Failure {
        Failure::new(EXIT_IO, e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::new(EXIT_IO, e)
    }
}

fn budget() -> Result<usize, Failure> {
    match std::env::var("KNOTPROJ_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::new(EXIT_BUDGET, format!("KNOTPROJ_MAX_N is not a number: `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("outputs serialize")
}

/// Output is assembled in full before anything is written, so failure
/// paths leave stdout empty.
fn run(cli: Cli) -> Result<(String, u8), Failure> {
    match cli.command {
        Command::Analyze(a) => {
            let opts = AnalyzeOptions { arnold: a.arnold, force: a.force };
            match a.input {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
                    let outs = text
                        .lines()
                        .filter(|l| !l.trim().is_empty())
                        .map(|l| analysis::analyze_lenient(l, opts))
                        .collect::<Result<Vec<_>, _>>()?;
                    if a.json {
                        Ok((to_json(&outs), 0))
                    } else {
                        let blocks: Vec<String> = outs.iter().map(|o| o.to_string()).collect();
                        Ok((blocks.join("\n\n"), 0))
                    }
                }
                None => {
                    let out = analysis::analyze(a.code.as_deref().unwrap_or_default(), opts)?;
                    Ok((if a.json { to_json(&out) } else { out.to_string() }, 0))
                }
            }
        }
        Command::Reduce { code, json } => {
            let trace = analysis::reduce(&code)?;
            let text = match (trace, json) {
                (Some(t), true) => to_json(&analysis::trace_records(&t)),
                (None, true) => "null".to_string(),
                (None, false) => "not in S".to_string(),
                (Some(t), false) => {
                    let mut lines = vec![format!("start  [{}]", t.start)];
                    for s in &t.steps {
                        lines.push(format!("{:<12} [{}]", s.mv.to_string(), s.code));
                    }
                    lines.join("\n")
                }
            };
            Ok((text, 0))
        }
        Command::Enumerate { n, out, arnold_max } => {
            let all = records(n, arnold_max, budget()?)?;
            let rs: Vec<_> = all.into_iter().filter(|r| n == 0 || r.n >= 1).collect();
            let counts: Vec<String> = (usize::from(n > 0)..=n)
                .map(|k| format!("n={k}: {}", rs.iter().filter(|r| r.n == k).count()))
                .collect();
            let counts = counts.join("\n");
            match out {
                Some(path) => {
                    dataset::write_dataset(&rs, &path)?;
                    Ok((counts, 0))
                }
                None => {
                    let mut buf = Vec::new();
                    dataset::write_records(&rs, &mut buf)?;
                    eprintln!("{counts}");
                    Ok((String::from_utf8(buf).expect("JSON is UTF-8").trim_end().to_string(), 0))
                }
            }
        }
        Command::Verify(v) => {
            let ids: Vec<CheckId> = if v.all {
                CheckId::ALL.to_vec()
            } else {
                v.check
                    .iter()
                    .map(|s| s.parse::<CheckId>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| Failure::new(EXIT_UNKNOWN_CHECK, e))?
            };
            let rule = match v.rule {
                Rule::Nested => Strongness::Nested,
                Rule::Interleaved => Strongness::Interleaved,
            };
            let verifier = Verifier { rule, budget: budget()? };
            let reports = ids
                .iter()
                .map(|&id| verifier.check(id, v.max_n, v.arnold_max_n))
                .collect::<Result<Vec<_>, _>>()?;
            let passed = reports.iter().all(|r| r.passed());
            let text = if v.json {
                let reports: Vec<_> = reports.iter().map(|r| r.to_json(v.timing)).collect();
                to_json(&serde_json::json!({ "passed": passed, "reports": reports }))
            } else {
                let lines: Vec<String> = reports
                    .iter()
                    .map(|r| {
                        if v.timing {
                            format!("{r}\n  elapsed: {:.3}s", r.elapsed.as_secs_f64())
                        } else {
                            r.to_string()
                        }
                    })
                    .collect();
                lines.join("\n")
            };
            Ok((text, if passed { 0 } else { EXIT_VIOLATION }))
        }
        Command::Dot { code } => {
            let cd = parse_code(&code).map_err(|e| Failure::new(EXIT_MALFORMED, e))?;
            Ok((chord_diagram_dot(&cd).trim_end().to_string(), 0))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, status)) => {
            let mut stdout = io::stdout().lock();
            if writeln!(stdout, "{text}").and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_IO);
            }
            ExitCode::from(status)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
