use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use entroscope::formats::ReportFormat;
use entroscope::spectral::{DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE};
use entroscope::{MeasureKind, SolverOptions};
use entroscope_cli::{self as app, Comparison, Failure, Output, Settings};

/// Precision, recall and coverage of specifications against event logs.
///
/// Files ending in `.json` are automaton documents, `.xes` files are XES
/// logs and anything else is a plain-text log with one trace per line.
///
/// Exit codes: 0 success (also when the eigen-solver did not converge, with
/// a warning on stderr), 1 I/O error, 2 parse or usage error, 3 measure not
/// applicable.
#[derive(Debug, Parser)]
#[command(name = "entroscope", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Evaluate `precision|recall|coverage LEFT RIGHT` lines in parallel.
    #[arg(long, value_name = "FILE")]
    batch: Option<PathBuf>,

    #[command(flatten)]
    options: Options,
}

#[derive(Debug, Args)]
struct Options {
    /// Language measure.
    #[arg(long, value_enum, default_value_t = Measure::Eig, global = true)]
    measure: Measure,

    /// Relative tolerance of the eigenvalue bracket.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance, global = true)]
    tol: f64,

    /// Iteration cap of the eigen-solver.
    #[arg(long, env = "ENTROSCOPE_MAX_ITER", default_value_t = DEFAULT_MAX_ITERATIONS, global = true)]
    max_iter: u64,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Output file, or the target directory for `family`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Reserved; the pipeline is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Record wall-clock time in comparison reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Measure {
    Eig,
    Card,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Share of the specified behaviour that was recorded.
    Precision { spec: PathBuf, log: PathBuf },
    /// Share of the recorded behaviour that was specified.
    Recall { spec: PathBuf, log: PathBuf },
    /// Share of X's behaviour that Y also exhibits.
    Coverage { x: PathBuf, y: PathBuf },
    /// Short-circuit eigenvalue measure of a language.
    Eigenvalue { file: PathBuf },
    /// Topological entropy of a language in bits per symbol.
    Entropy { file: PathBuf },
    /// Number of words of a finite language.
    Cardinality { file: PathBuf },
    /// Convert between formats, chosen by the output extension
    /// (.json, .dot, .log).
    Convert { input: PathBuf, output: PathBuf },
    /// Structural statistics of an automaton or log.
    Inspect { file: PathBuf },
    /// Write a synthetic experiment family to the `--out` directory.
    Family {
        #[arg(value_parser = ["bounded-repeat", "kleene", "permutations", "parallel-block"])]
        name: String,
        /// `x` for bounded-repeat (2..=20), word count for permutations
        /// (5..=120).
        #[arg(long)]
        param: Option<usize>,
    },
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let tol: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err("tolerance must be a positive number".into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let o = &cli.options;
    let settings = Settings {
        kind: match o.measure {
            Measure::Eig => MeasureKind::ShortCircuitEigenvalue,
            Measure::Card => MeasureKind::Cardinality,
        },
        solver: SolverOptions {
            tolerance: o.tol,
            max_iterations: o.max_iter,
        },
        format: match o.format {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
            Format::Text => ReportFormat::Text,
        },
        timing: o.timing,
    };

    let result = match (&cli.command, &cli.batch) {
        (Some(_), Some(_)) => Err(Failure::Parse("--batch cannot be combined with a subcommand".into())),
        (None, Some(batch)) => app::run_batch(batch, &settings),
        (Some(cmd), None) => run(cmd, &settings, o.out.as_deref()),
        (None, None) => Err(Failure::Parse("a subcommand or --batch is required (see --help)".into())),
    };
    let result = result.and_then(|out| emit(out, cli.command.as_ref(), o.out.as_deref()));
    match result {
        Ok(()) => ExitCode::from(app::EXIT_OK as u8),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code() as u8)
        }
    }
}

fn run(cmd: &Command, settings: &Settings, out: Option<&std::path::Path>) -> Result<Output, Failure> {
    match cmd {
        Command::Precision { spec, log } => app::run_compare(Comparison::Precision, spec, log, settings),
        Command::Recall { spec, log } => app::run_compare(Comparison::Recall, spec, log, settings),
        Command::Coverage { x, y } => app::run_compare(Comparison::Coverage, x, y, settings),
        Command::Eigenvalue { file } => app::run_eigenvalue(file, settings),
        Command::Entropy { file } => app::run_entropy(file, settings),
        Command::Cardinality { file } => app::run_cardinality(file, settings),
        Command::Inspect { file } => app::run_inspect(file, settings.format),
        Command::Convert { input, output } => app::run_convert(input, output).map(|()| Output::default()),
        Command::Family { name, param } => {
            app::run_family(name, *param, out.unwrap_or_else(|| std::path::Path::new(".")))
        }
    }
}

fn emit(out: Output, cmd: Option<&Command>, target: Option<&std::path::Path>) -> Result<(), Failure> {
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    match target {
        Some(path) if !matches!(cmd, Some(Command::Family { .. })) => app::write_file(path, &out.text),
        _ => std::io::stdout()
            .write_all(out.text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}
