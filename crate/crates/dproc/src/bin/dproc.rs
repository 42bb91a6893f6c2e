//! Command-line front end: trace enumeration, constraint checking,
//! stakeholder utilities and process comparison.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dproc::compare::{compare, DEFAULT_TIE_TOLERANCE};
use dproc::enumerate::{
    unique_traces, EnumerateError, EnumerationConfig, Strategy, DEFAULT_MAX_ALPHABET,
};
use dproc::logic::{parse_spec, parse_trace_literal};
use dproc::model::{StakeholderSystem, Trace};
use dproc::report::{render_text, render_tsv, Report, TraceStats};
use dproc::utility::{utility_vector, utility_vector_from_counts, UtilityVector};

// stable exit codes, documented in the README
const EXIT_PARSE: u8 = 2;
const EXIT_TOO_LARGE: u8 = 3;
const EXIT_UNKNOWN_ACTIVITY: u8 = 4;
const EXIT_DEGENERATE: u8 = 5;
const EXIT_MISMATCHED: u8 = 6;

#[derive(Parser)]
#[command(name = "dproc", version, about = "Declarative process analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the unique traces of a process
    Traces {
        spec_file: PathBuf,
        /// Print only the number of traces
        #[arg(long)]
        count_only: bool,
        /// Append a length histogram and per-activity occurrence counts
        #[arg(long)]
        stats: bool,
        #[command(flatten)]
        enumeration: EnumerationArgs,
    },
    /// Check a single trace against every constraint of a process
    Check {
        spec_file: PathBuf,
        /// Trace literal, e.g. "(1,2,4)", "()" or "ε"
        trace: String,
    },
    /// Compute stakeholder good counts and utilities
    Utilities {
        spec_file: Option<PathBuf>,
        /// Skip enumeration and use supplied counts: g1,...,gm/total
        #[arg(long, value_name = "COUNTS")]
        from_counts: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        enumeration: EnumerationArgs,
    },
    /// Compare processes by their stakeholder utility vectors
    Compare {
        /// Spec files, one system each
        spec_files: Vec<PathBuf>,
        /// Read utility vectors from a file instead: one `label: u1 u2 ...`
        /// line per system
        #[arg(long, value_name = "FILE")]
        vectors: Option<PathBuf>,
        /// Re-render a previously emitted JSON report
        #[arg(long, value_name = "FILE")]
        from_report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Allow comparing a single system
        #[arg(long)]
        allow_single: bool,
        /// Absolute tolerance for distance ties
        #[arg(long, default_value_t = DEFAULT_TIE_TOLERANCE)]
        tol: f64,
        #[command(flatten)]
        enumeration: EnumerationArgs,
    },
}

#[derive(Args)]
struct EnumerationArgs {
    /// Enumeration strategy
    #[arg(long, default_value = "auto")]
    algorithm: Strategy,
    /// Size of the thread pool for enumeration
    #[arg(long)]
    workers: Option<usize>,
    /// Brute-force alphabet limit (also via DPROC_MAX_ALPHABET)
    #[arg(long)]
    max_alphabet: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Failure {
        Failure::new(EXIT_TOO_LARGE, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("dproc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Traces {
            spec_file,
            count_only,
            stats,
            enumeration,
        } => cmd_traces(&spec_file, count_only, stats, &enumeration),
        Command::Check { spec_file, trace } => cmd_check(&spec_file, &trace),
        Command::Utilities {
            spec_file,
            from_counts,
            format,
            enumeration,
        } => cmd_utilities(spec_file.as_deref(), from_counts.as_deref(), format, &enumeration),
        Command::Compare {
            spec_files,
            vectors,
            from_report,
            format,
            allow_single,
            tol,
            enumeration,
        } => cmd_compare(
            &spec_files,
            vectors.as_deref(),
            from_report.as_deref(),
            format,
            allow_single,
            tol,
            &enumeration,
        ),
    }
}

fn load_spec(path: &Path) -> Result<StakeholderSystem, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {}", path.display(), e)))?;
    parse_spec(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {}", path.display(), e)))
}

fn enumeration_config(args: &EnumerationArgs) -> EnumerationConfig {
    let max_alphabet = args
        .max_alphabet
        .or_else(|| {
            std::env::var("DPROC_MAX_ALPHABET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_MAX_ALPHABET);
    EnumerationConfig { max_alphabet }
}

/// Runs `f` inside a rayon pool of the requested size; the default pool
/// otherwise.
fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match workers {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::new(1, e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn cmd_traces(
    spec_file: &Path,
    count_only: bool,
    stats: bool,
    args: &EnumerationArgs,
) -> Result<ExitCode, Failure> {
    let system = load_spec(spec_file)?;
    let config = enumeration_config(args);
    let result = with_workers(args.workers, || {
        unique_traces(&system.process, args.algorithm, &config)
    })??;

    let mut out = String::new();
    if count_only {
        out.push_str(&format!("{}\n", result.traces.len()));
    } else {
        for t in &result.traces {
            out.push_str(&format!("{}\n", t));
        }
    }
    if stats {
        out.push('\n');
        out.push_str(&TraceStats::of(&result.traces, &system.process.alphabet()).render_text());
    }
    print!("{}", out);
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(spec_file: &Path, trace_literal: &str) -> Result<ExitCode, Failure> {
    let system = load_spec(spec_file)?;
    let trace: Trace = parse_trace_literal(trace_literal)
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    for &a in trace.events() {
        if !system.process.has_activity(a) {
            return Err(Failure::new(
                EXIT_UNKNOWN_ACTIVITY,
                format!("trace mentions unknown activity {}", a),
            ));
        }
    }
    let mut all_pass = true;
    for c in system.process.constraints() {
        let ok = c.satisfied_by(&trace);
        all_pass &= ok;
        println!("{} {}", if ok { "pass" } else { "FAIL" }, c);
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn parse_counts(text: &str) -> Result<(Vec<u64>, u64), Failure> {
    let bad = || Failure::new(EXIT_PARSE, "expected counts of the form g1,...,gm/total");
    let (goods, total) = text.split_once('/').ok_or_else(bad)?;
    let good_counts = goods
        .split(',')
        .map(|g| g.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| bad())?;
    let total = total.trim().parse::<u64>().map_err(|_| bad())?;
    Ok((good_counts, total))
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{}", render_text(report)),
        Format::Json => print!("{}", report.to_json()),
        Format::Tsv => print!("{}", render_tsv(report)),
    }
}

fn cmd_utilities(
    spec_file: Option<&Path>,
    from_counts: Option<&str>,
    format: Format,
    args: &EnumerationArgs,
) -> Result<ExitCode, Failure> {
    let (label, vector, enumerated) = match (spec_file, from_counts) {
        (_, Some(counts)) => {
            let (good, total) = parse_counts(counts)?;
            let label = spec_file
                .map(|p| load_spec(p).map(|s| s.process.name))
                .transpose()?
                .unwrap_or_else(|| "counts".to_string());
            let vector = utility_vector_from_counts(good, total)
                .map_err(|e| Failure::new(EXIT_DEGENERATE, e.to_string()))?;
            (label, vector, false)
        }
        (Some(path), None) => {
            let system = load_spec(path)?;
            if system.stakeholders.is_empty() {
                return Err(Failure::new(
                    EXIT_PARSE,
                    "spec declares no stakeholders; nothing to score",
                ));
            }
            let (label, vector) = enumerate_and_score(&system, args)?;
            (label, vector, true)
        }
        (None, None) => {
            return Err(Failure::new(
                EXIT_PARSE,
                "need a spec file or --from-counts",
            ))
        }
    };
    emit(&Report::from_utilities(label, &vector, enumerated), format);
    Ok(ExitCode::SUCCESS)
}

fn enumerate_and_score(
    system: &StakeholderSystem,
    args: &EnumerationArgs,
) -> Result<(String, UtilityVector), Failure> {
    let config = enumeration_config(args);
    let result = with_workers(args.workers, || {
        unique_traces(&system.process, args.algorithm, &config)
    })??;
    let vector = utility_vector(system, &result.traces)
        .map_err(|e| Failure::new(EXIT_DEGENERATE, e.to_string()))?;
    Ok((system.process.name.clone(), vector))
}

fn parse_vector_file(path: &Path) -> Result<Vec<(String, UtilityVector)>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {}", path.display(), e)))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| {
            Failure::new(
                EXIT_PARSE,
                format!("{}:{}: {}", path.display(), lineno + 1, msg),
            )
        };
        let (label, rest) = line
            .split_once(':')
            .ok_or_else(|| bad("expected `label: u1 u2 ...`"))?;
        let values = rest
            .split_whitespace()
            .map(|v| v.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad("invalid utility value"))?;
        if values.is_empty() {
            return Err(bad("no utility values"));
        }
        out.push((
            label.trim().to_string(),
            UtilityVector {
                good_counts: vec![0; values.len()],
                total_count: 0,
                values,
            },
        ));
    }
    if out.is_empty() {
        return Err(Failure::new(EXIT_PARSE, "vector file declares no systems"));
    }
    Ok(out)
}

fn cmd_compare(
    spec_files: &[PathBuf],
    vectors_file: Option<&Path>,
    from_report: Option<&Path>,
    format: Format,
    allow_single: bool,
    tol: f64,
    args: &EnumerationArgs,
) -> Result<ExitCode, Failure> {
    if let Some(path) = from_report {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {}", path.display(), e)))?;
        let report = Report::from_json(&text)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {}", path.display(), e)))?;
        emit(&report, format);
        return Ok(ExitCode::SUCCESS);
    }

    let (labels, vectors, preferences, enumerated) = if let Some(path) = vectors_file {
        let systems = parse_vector_file(path)?;
        let (labels, vectors): (Vec<_>, Vec<_>) = systems.into_iter().unzip();
        let n = labels.len();
        (labels, vectors, vec![Vec::new(); n], vec![false; n])
    } else {
        let mut labels = Vec::new();
        let mut vectors = Vec::new();
        let mut preferences = Vec::new();
        for path in spec_files {
            let system = load_spec(path)?;
            let (label, vector) = enumerate_and_score(&system, args)?;
            labels.push(label);
            vectors.push(vector);
            preferences.push(
                system
                    .stakeholders
                    .iter()
                    .map(|s| s.preference.to_string())
                    .collect(),
            );
        }
        let n = labels.len();
        (labels, vectors, preferences, vec![true; n])
    };

    if vectors.is_empty() {
        return Err(Failure::new(EXIT_PARSE, "no systems to compare"));
    }
    if vectors.len() == 1 && !allow_single {
        return Err(Failure::new(
            EXIT_PARSE,
            "need at least two systems (or --allow-single)",
        ));
    }

    let cmp = compare(labels, vectors, preferences, tol)
        .map_err(|e| Failure::new(EXIT_MISMATCHED, e.to_string()))?;
    emit(&Report::from_comparison(&cmp, &enumerated), format);
    Ok(ExitCode::SUCCESS)
}
