//! Command implementations behind the `entroscope` binary.
//!
//! Every command returns its rendered output or a [`Failure`] that maps to
//! a process exit code.

pub mod families;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use entroscope::formats::{self, FormatError, ReportFormat};
use entroscope::measures::MeasureError;
use entroscope::spectral::{adjacency_matrix, perron_frobenius};
use entroscope::{Comparator, Dfa, EventLog, MeasureKind, MeasureReport, Nfa, SolverOptions};
use rayon::prelude::*;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Io(String),
    Parse(String),
    Inapplicable(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) => EXIT_IO,
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Inapplicable(_) => EXIT_INAPPLICABLE,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Parse(m) | Failure::Inapplicable(m) => m,
        }
    }
}

impl From<MeasureError> for Failure {
    fn from(e: MeasureError) -> Self {
        Failure::Inapplicable(e.to_string())
    }
}

/// Options shared by every measuring command.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub kind: MeasureKind,
    pub solver: SolverOptions,
    pub format: ReportFormat,
    pub timing: bool,
}

impl Settings {
    fn comparator(&self) -> Comparator {
        Comparator::new(self.kind).with_solver(self.solver)
    }
}

/// Command output plus warnings destined for stderr.
#[derive(Debug, Default)]
pub struct Output {
    pub text: String,
    pub warnings: Vec<String>,
}

/// A parsed input file.
#[derive(Debug, Clone)]
pub enum Input {
    Automaton(Nfa),
    Log(EventLog),
}

impl Input {
    pub fn to_nfa(&self) -> Nfa {
        match self {
            Input::Automaton(a) => a.clone(),
            Input::Log(l) => l.prefix_tree_acceptor().into_nfa(),
        }
    }
}

/// `.json` is an automaton document, `.xes` an XES log, anything else a
/// plain-text log.
pub fn load(path: &Path) -> Result<Input, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let parse_err = |e: FormatError| Failure::Parse(format!("{}: {e}", path.display()));
    match extension(path).as_str() {
        "json" => formats::read_automaton(&text).map(Input::Automaton).map_err(parse_err),
        "xes" => formats::read_xes(&text).map(Input::Log).map_err(parse_err),
        _ => formats::read_log(&text).map(Input::Log).map_err(parse_err),
    }
}

fn extension(path: &Path) -> String {
    path.extension()
        .and_then(|e| e.to_str())
        .unwrap_or_default()
        .to_ascii_lowercase()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Precision,
    Recall,
    Coverage,
}

impl Comparison {
    pub fn parse(s: &str) -> Option<Comparison> {
        match s {
            "precision" => Some(Comparison::Precision),
            "recall" => Some(Comparison::Recall),
            "coverage" => Some(Comparison::Coverage),
            _ => None,
        }
    }
}

fn compare(what: Comparison, left: &Input, right: &Input, settings: &Settings) -> Result<MeasureReport, Failure> {
    let started = Instant::now();
    let cmp = settings.comparator();
    let mut report = match (what, right) {
        (Comparison::Precision, Input::Log(log)) => cmp.precision(&left.to_nfa(), log)?,
        (Comparison::Recall, Input::Log(log)) => cmp.recall(&left.to_nfa(), log)?,
        (Comparison::Precision, _) => cmp.precision_and_recall(&left.to_nfa(), &right.to_nfa())?.0,
        (Comparison::Recall, _) => cmp.precision_and_recall(&left.to_nfa(), &right.to_nfa())?.1,
        (Comparison::Coverage, _) => cmp.coverage(&left.to_nfa(), &right.to_nfa())?,
    };
    if settings.timing {
        report.runtime_ms = Some(started.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// precision, recall or coverage of two files.
pub fn run_compare(what: Comparison, left: &Path, right: &Path, settings: &Settings) -> Result<Output, Failure> {
    let report = compare(what, &load(left)?, &load(right)?, settings)?;
    Ok(Output {
        warnings: report.warnings.clone(),
        text: formats::write_report(&report, settings.format),
    })
}

/// Runs every line of a batch file in parallel. Lines read
/// `precision|recall|coverage LEFT RIGHT`, with paths relative to the batch
/// file; blank lines and `#` comments are skipped. Reports keep file order.
pub fn run_batch(path: &Path, settings: &Settings) -> Result<Output, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new(""));
    let mut jobs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let what = match fields.as_slice() {
            [cmd, _, _] => Comparison::parse(cmd),
            _ => None,
        }
        .ok_or_else(|| {
            Failure::Parse(format!(
                "{}: line {}: expected `precision|recall|coverage LEFT RIGHT`",
                path.display(),
                i + 1
            ))
        })?;
        jobs.push((line.to_owned(), what, base.join(fields[1]), base.join(fields[2])));
    }
    let results: Vec<Result<(String, MeasureReport), Failure>> = jobs
        .into_par_iter()
        .map(|(name, what, left, right)| {
            let report = compare(what, &load(&left)?, &load(&right)?, settings)?;
            Ok((name, report))
        })
        .collect();
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let warnings = reports
        .iter()
        .flat_map(|(name, r)| r.warnings.iter().map(move |w| format!("{name}: {w}")))
        .collect();
    Ok(Output {
        text: formats::write_reports(&reports, settings.format),
        warnings,
    })
}

/// Flat records rendered by the non-report commands.
trait Record: Serialize {
    fn text(&self) -> String;
}

fn render<R: Record>(r: &R, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(r).expect("records serialise") + "\n",
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(r).expect("in-memory CSV write");
            String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
        }
        ReportFormat::Text => r.text(),
    }
}

#[derive(Debug, Serialize)]
struct MeasureRecord {
    kind: &'static str,
    value: f64,
    /// Exact word count for the cardinality measure.
    count: Option<String>,
    states: usize,
    transitions: usize,
    converged: bool,
    iterations: u64,
    residual: Option<f64>,
}

impl Record for MeasureRecord {
    fn text(&self) -> String {
        let mut out = String::new();
        match &self.count {
            Some(c) => writeln!(out, "{}: {c}", self.kind).unwrap(),
            None => writeln!(out, "{}: {:.3}", self.kind, self.value).unwrap(),
        }
        writeln!(out, "  automaton: {} states, {} transitions", self.states, self.transitions).unwrap();
        if self.count.is_none() {
            writeln!(out, "  converged: {}, iterations: {}", self.converged, self.iterations).unwrap();
        }
        out
    }
}

/// `eig•` of one file's language.
pub fn run_eigenvalue(path: &Path, settings: &Settings) -> Result<Output, Failure> {
    let d = load(path)?.to_nfa().to_deterministic();
    let m = Comparator::new(MeasureKind::ShortCircuitEigenvalue)
        .with_solver(settings.solver)
        .measure(&d)?;
    let eig = m.eigen.expect("eigenvalue measure carries a solve");
    let mut out = Output::default();
    if !eig.converged {
        out.warnings.push(non_convergence(settings.solver));
    }
    out.text = render(
        &MeasureRecord {
            kind: "eig",
            value: m.value,
            count: None,
            states: m.states,
            transitions: m.transitions,
            converged: eig.converged,
            iterations: eig.iterations,
            residual: Some(eig.residual),
        },
        settings.format,
    );
    Ok(out)
}

/// Number of words; exit 3 for infinite languages.
pub fn run_cardinality(path: &Path, settings: &Settings) -> Result<Output, Failure> {
    let d = load(path)?.to_nfa().to_deterministic().minimize();
    let count = d.count_words().map_err(|_| MeasureError::InfiniteLanguage)?;
    let m = Comparator::new(MeasureKind::Cardinality).measure(&d)?;
    Ok(Output {
        text: render(
            &MeasureRecord {
                kind: "card",
                value: m.value,
                count: Some(count.to_string()),
                states: m.states,
                transitions: m.transitions,
                converged: true,
                iterations: 0,
                residual: None,
            },
            settings.format,
        ),
        warnings: Vec::new(),
    })
}

#[derive(Debug, Serialize)]
struct EntropyRecord {
    /// Growth rate of the language in bits per symbol.
    entropy: f64,
    eigenvalue: f64,
    states: usize,
    converged: bool,
    iterations: u64,
}

impl Record for EntropyRecord {
    fn text(&self) -> String {
        format!(
            "entropy: {:.3} bits/symbol\n  eigenvalue: {:.6} ({} states)\n  converged: {}, iterations: {}\n",
            self.entropy, self.eigenvalue, self.states, self.converged, self.iterations
        )
    }
}

/// Topological entropy `log2 λ` of the trimmed minimal DFA. Finite and
/// empty languages have no positive growth rate and exit 3.
pub fn run_entropy(path: &Path, settings: &Settings) -> Result<Output, Failure> {
    let d = load(path)?.to_nfa().to_deterministic().minimize();
    if d.is_empty_language() {
        return Err(Failure::Inapplicable("entropy of the empty language is undefined".into()));
    }
    if d.has_finite_language() {
        return Err(Failure::Inapplicable("entropy of a finite language is undefined".into()));
    }
    let eig = perron_frobenius(&adjacency_matrix(&d), settings.solver.tolerance, settings.solver.max_iterations);
    let mut out = Output::default();
    if !eig.converged {
        out.warnings.push(non_convergence(settings.solver));
    }
    out.text = render(
        &EntropyRecord {
            entropy: eig.value.log2(),
            eigenvalue: eig.value,
            states: d.states(),
            converged: eig.converged,
            iterations: eig.iterations,
        },
        settings.format,
    );
    Ok(out)
}

fn non_convergence(solver: SolverOptions) -> String {
    format!(
        "eigenvalue solve did not reach tolerance {:e} within {} iterations",
        solver.tolerance, solver.max_iterations
    )
}

#[derive(Debug, Serialize)]
struct InspectRecord {
    input: &'static str,
    states: Option<usize>,
    transitions: Option<usize>,
    alphabet: usize,
    deterministic: Option<bool>,
    trim: Option<bool>,
    ergodic: Option<bool>,
    finite_language: bool,
    distinct_traces: Option<usize>,
    total_traces: Option<u64>,
}

impl Record for InspectRecord {
    fn text(&self) -> String {
        let mut out = format!("{}\n", self.input);
        let mut line = |k: &str, v: String| writeln!(out, "  {k}: {v}").unwrap();
        if let Some(v) = self.states {
            line("states", v.to_string());
        }
        if let Some(v) = self.transitions {
            line("transitions", v.to_string());
        }
        line("alphabet", self.alphabet.to_string());
        for (k, v) in [
            ("deterministic", self.deterministic),
            ("trim", self.trim),
            ("ergodic", self.ergodic),
        ] {
            if let Some(v) = v {
                line(k, v.to_string());
            }
        }
        line("finite language", self.finite_language.to_string());
        if let (Some(d), Some(t)) = (self.distinct_traces, self.total_traces) {
            line("traces", format!("{d} distinct / {t} total"));
        }
        out
    }
}

pub fn run_inspect(path: &Path, format: ReportFormat) -> Result<Output, Failure> {
    let record = match load(path)? {
        Input::Automaton(a) => InspectRecord {
            input: "automaton",
            states: Some(a.states()),
            transitions: Some(a.transition_count()),
            alphabet: a.alphabet().len(),
            deterministic: Some(a.is_deterministic()),
            trim: Some(a.is_trim()),
            ergodic: Some(a.is_ergodic()),
            finite_language: a.to_deterministic().has_finite_language(),
            distinct_traces: None,
            total_traces: None,
        },
        Input::Log(log) => InspectRecord {
            input: "log",
            states: None,
            transitions: None,
            alphabet: log.alphabet().len(),
            deterministic: None,
            trim: None,
            ergodic: None,
            finite_language: true,
            distinct_traces: Some(log.distinct_count()),
            total_traces: Some(log.total_count()),
        },
    };
    Ok(Output {
        text: render(&record, format),
        warnings: Vec::new(),
    })
}

/// Converts by output extension: `.json` automaton document, `.dot`
/// Graphviz, `.log`/`.txt` plain-text log. Logs become their prefix tree
/// when written as an automaton.
pub fn run_convert(input: &Path, output: &Path) -> Result<(), Failure> {
    let data = load(input)?;
    let unsupported = |what: &str| Failure::Parse(format!("cannot convert {what} to {}", output.display()));
    let text = match (extension(output).as_str(), &data) {
        ("json", d) => formats::write_automaton(&d.to_nfa()).map_err(|e| Failure::Parse(e.to_string()))?,
        ("dot", d) => formats::export_dot(&d.to_nfa()),
        ("log" | "txt", Input::Log(log)) => formats::write_log(log).map_err(|e| Failure::Parse(e.to_string()))?,
        (_, Input::Automaton(_)) => return Err(unsupported("an automaton")),
        (_, Input::Log(_)) => return Err(unsupported("a log")),
    };
    write_file(output, &text)
}

pub fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Writes the automata and log of a family into `dir` and lists the files.
/// `param` selects one member; without it every member is written.
pub fn run_family(name: &str, param: Option<usize>, dir: &Path) -> Result<Output, Failure> {
    use families::*;

    let bad = |e: FamilyError| Failure::Parse(e.to_string());
    let mut files: Vec<(String, String)> = Vec::new();
    let mut automaton = |file: String, d: &Dfa| -> Result<(), Failure> {
        let text = formats::write_automaton(&d.to_nfa()).map_err(|e| Failure::Parse(e.to_string()))?;
        files.push((file, text));
        Ok(())
    };
    let log_text = |log: &EventLog| formats::write_log(log).expect("family logs use plain labels");
    match name {
        "bounded-repeat" => {
            let members = match param {
                Some(x) => vec![x],
                None => (REPEAT_RANGE.0..=REPEAT_RANGE.1).collect(),
            };
            for x in members {
                automaton(format!("bounded-repeat-{x}.json"), &bounded_repeat(x).map_err(bad)?)?;
            }
            files.push(("bounded-repeat.log".into(), log_text(&bounded_repeat_log())));
        }
        "kleene" => {
            automaton("kleene.json".into(), &kleene())?;
            files.push(("bounded-repeat.log".into(), log_text(&bounded_repeat_log())));
        }
        "permutations" => {
            let count = param.unwrap_or(PERMUTATION_RANGE.1);
            automaton(format!("permutations-{count}.json"), &permutations(count).map_err(bad)?)?;
            files.push(("permutations.log".into(), log_text(&permutation_log())));
        }
        "parallel-block" => {
            automaton("parallel-block.json".into(), &parallel_block())?;
            files.push(("permutations.log".into(), log_text(&permutation_log())));
        }
        other => return Err(bad(FamilyError::Unknown(other.to_owned()))),
    }
    fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let mut listing = String::new();
    for (file, text) in files {
        let path: PathBuf = dir.join(file);
        write_file(&path, &text)?;
        writeln!(listing, "{}", path.display()).unwrap();
    }
    Ok(Output {
        text: listing,
        warnings: Vec::new(),
    })
}
