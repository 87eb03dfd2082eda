//! Language measures and the quotients built on them.
//!
//! A language measure maps the empty language to zero and grows strictly
//! under strict inclusion. Two are provided:
//!
//! * **Cardinality**: the number of words. Only defined for finite languages.
//! * **Short-circuit eigenvalue** (`eig•`): the Perron-Frobenius eigenvalue of
//!   the adjacency matrix of a DFA for `(L∘χ)*∘L`. Defined for every regular
//!   language; `{ε}` measures 1 and `Φ*` measures `|Φ| + 1`.
//!
//! Precision, recall and coverage are quotients of these measures. The
//! pipeline determinizes and minimizes both operands, intersects the minimal
//! automata and only then short-circuits each of the three automata.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automata::{AutomatonError, Dfa, Nfa};
use crate::logs::EventLog;
use crate::spectral::{
    adjacency_matrix, perron_frobenius, EigenResult, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("cardinality is only defined for finite languages")]
    InfiniteLanguage,
    #[error("denominator language is empty but the numerator measures {numerator}")]
    DivisionByZero { numerator: f64 },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

pub type Result<T, E = MeasureError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    Cardinality,
    ShortCircuitEigenvalue,
}

impl MeasureKind {
    pub fn short_name(self) -> &'static str {
        match self {
            MeasureKind::Cardinality => "card",
            MeasureKind::ShortCircuitEigenvalue => "eig",
        }
    }
}

/// What a report compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Quotient,
    Precision,
    Recall,
    Coverage,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Quotient => "quotient",
            Quantity::Precision => "precision",
            Quantity::Recall => "recall",
            Quantity::Coverage => "coverage",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tolerance: f64,
    pub max_iterations: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tolerance: DEFAULT_TOLERANCE,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

/// The measure of one language plus the size of the automaton it was
/// computed on (the short-circuited one for `eig•`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub value: f64,
    pub states: usize,
    pub transitions: usize,
    pub eigen: Option<EigenResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub quantity: Quantity,
    pub kind: MeasureKind,
    pub numerator: f64,
    pub denominator: f64,
    pub value: f64,
    /// Both languages were empty; `value` is reported as 0.
    pub undefined: bool,
    pub converged: bool,
    pub iterations: u64,
    pub states_numerator: usize,
    pub states_denominator: usize,
    pub transitions_numerator: usize,
    pub transitions_denominator: usize,
    pub numerator_eigen: Option<EigenResult>,
    pub denominator_eigen: Option<EigenResult>,
    pub warnings: Vec<String>,
    pub runtime_ms: Option<u64>,
}

impl MeasureReport {
    fn build(quantity: Quantity, kind: MeasureKind, num: Measurement, den: Measurement) -> Result<Self> {
        let mut warnings = Vec::new();
        let (value, undefined) = if den.value > 0.0 {
            let q = num.value / den.value;
            match quantity {
                Quantity::Quotient => (q, false),
                _ => (q.min(1.0), false),
            }
        } else if num.value == 0.0 {
            warnings.push("both languages are empty; the quotient 0/0 is reported as 0".to_owned());
            (0.0, true)
        } else {
            return Err(MeasureError::DivisionByZero {
                numerator: num.value,
            });
        };
        let solves = [num.eigen, den.eigen];
        let converged = solves.iter().flatten().all(|e| e.converged);
        if !converged {
            warnings.push("eigenvalue solver did not converge; using its last estimate".to_owned());
        }
        Ok(MeasureReport {
            quantity,
            kind,
            numerator: num.value,
            denominator: den.value,
            value,
            undefined,
            converged,
            iterations: solves.iter().flatten().map(|e| e.iterations).sum(),
            states_numerator: num.states,
            states_denominator: den.states,
            transitions_numerator: num.transitions,
            transitions_denominator: den.transitions,
            numerator_eigen: num.eigen,
            denominator_eigen: den.eigen,
            warnings,
            runtime_ms: None,
        })
    }
}

/// A measure kind together with eigen-solver settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparator {
    pub kind: MeasureKind,
    pub solver: SolverOptions,
}

impl Default for Comparator {
    fn default() -> Self {
        Comparator::new(MeasureKind::ShortCircuitEigenvalue)
    }
}

/// Minimal DFAs of two operands and of their intersection.
struct Operands {
    ret: Dfa,
    rel: Dfa,
    both: Dfa,
}

impl Operands {
    fn new(ret: &Nfa, rel: &Nfa) -> Result<Operands> {
        let ret = ret.to_deterministic().minimize();
        let rel = rel.to_deterministic().minimize();
        let both = ret.intersect(&rel)?.minimize();
        Ok(Operands { ret, rel, both })
    }
}

impl Comparator {
    pub fn new(kind: MeasureKind) -> Self {
        Comparator {
            kind,
            solver: SolverOptions::default(),
        }
    }

    pub fn with_solver(mut self, solver: SolverOptions) -> Self {
        self.solver = solver;
        self
    }

    /// Measure of `L(d)`.
    pub fn measure(&self, d: &Dfa) -> Result<Measurement> {
        if d.is_short_circuited() {
            return Err(AutomatonError::AlreadyShortCircuited.into());
        }
        self.measure_minimal(&d.minimize())
    }

    fn measure_minimal(&self, d: &Dfa) -> Result<Measurement> {
        match self.kind {
            MeasureKind::Cardinality => {
                let count = d.count_words().map_err(|e| match e {
                    AutomatonError::InfiniteLanguage => MeasureError::InfiniteLanguage,
                    other => other.into(),
                })?;
                Ok(Measurement {
                    value: count.to_f64().unwrap_or(f64::INFINITY),
                    states: d.states(),
                    transitions: d.transition_count(),
                    eigen: None,
                })
            }
            MeasureKind::ShortCircuitEigenvalue => {
                let sc = d.short_circuit()?;
                let eig = perron_frobenius(
                    &adjacency_matrix(&sc),
                    self.solver.tolerance,
                    self.solver.max_iterations,
                );
                Ok(Measurement {
                    value: eig.value,
                    states: sc.states(),
                    transitions: sc.transition_count(),
                    eigen: Some(eig),
                })
            }
        }
    }

    /// `m(L(numerator)) / m(L(denominator))`.
    pub fn quotient(&self, numerator: &Dfa, denominator: &Dfa) -> Result<MeasureReport> {
        let num = self.measure(numerator)?;
        let den = self.measure(denominator)?;
        MeasureReport::build(Quantity::Quotient, self.kind, num, den)
    }

    /// `m(L(spec) ∩ L(log)) / m(L(spec))`.
    pub fn precision(&self, spec: &Nfa, log: &EventLog) -> Result<MeasureReport> {
        let ops = Operands::new(spec, &log.prefix_tree_acceptor().into_nfa())?;
        let num = self.measure_minimal(&ops.both)?;
        let den = self.measure_minimal(&ops.ret)?;
        MeasureReport::build(Quantity::Precision, self.kind, num, den)
    }

    /// `m(L(spec) ∩ L(log)) / m(L(log))`.
    pub fn recall(&self, spec: &Nfa, log: &EventLog) -> Result<MeasureReport> {
        let ops = Operands::new(spec, &log.prefix_tree_acceptor().into_nfa())?;
        let num = self.measure_minimal(&ops.both)?;
        let den = self.measure_minimal(&ops.rel)?;
        MeasureReport::build(Quantity::Recall, self.kind, num, den)
    }

    /// Precision and recall of retrieved behaviour `ret` against relevant
    /// behaviour `rel`, sharing one intersection.
    pub fn precision_and_recall(&self, ret: &Nfa, rel: &Nfa) -> Result<(MeasureReport, MeasureReport)> {
        let ops = Operands::new(ret, rel)?;
        let [both, ret, rel] = self.measure_all([&ops.both, &ops.ret, &ops.rel])?;
        Ok((
            MeasureReport::build(Quantity::Precision, self.kind, both, ret)?,
            MeasureReport::build(Quantity::Recall, self.kind, both, rel)?,
        ))
    }

    /// `m(L(x) ∩ L(y)) / m(L(x))`: the share of `x`'s behaviour that `y`
    /// also exhibits.
    pub fn coverage(&self, x: &Nfa, y: &Nfa) -> Result<MeasureReport> {
        let ops = Operands::new(x, y)?;
        let num = self.measure_minimal(&ops.both)?;
        let den = self.measure_minimal(&ops.ret)?;
        MeasureReport::build(Quantity::Coverage, self.kind, num, den)
    }

    fn measure_all(&self, automata: [&Dfa; 3]) -> Result<[Measurement; 3]> {
        const PARALLEL_THRESHOLD: usize = 4096;
        let results: Vec<Result<Measurement>> =
            if automata.iter().map(|d| d.states()).sum::<usize>() >= PARALLEL_THRESHOLD {
                std::thread::scope(|s| {
                    let handles: Vec<_> = automata
                        .iter()
                        .map(|d| s.spawn(move || self.measure_minimal(d)))
                        .collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().expect("measure thread panicked"))
                        .collect()
                })
            } else {
                automata.iter().map(|d| self.measure_minimal(d)).collect()
            };
        let mut it = results.into_iter();
        Ok([
            it.next().expect("three results")?,
            it.next().expect("three results")?,
            it.next().expect("three results")?,
        ])
    }
}

/// `eig•(L(d))` with default solver settings.
pub fn eig_short_circuit_measure(d: &Dfa) -> Result<Measurement> {
    Comparator::new(MeasureKind::ShortCircuitEigenvalue).measure(d)
}

/// `|L(d)|`; fails on infinite languages.
pub fn cardinality_measure(d: &Dfa) -> Result<Measurement> {
    Comparator::new(MeasureKind::Cardinality).measure(d)
}

pub fn quotient(kind: MeasureKind, numerator: &Dfa, denominator: &Dfa) -> Result<MeasureReport> {
    Comparator::new(kind).quotient(numerator, denominator)
}

pub fn precision(spec: &Nfa, log: &EventLog, kind: MeasureKind) -> Result<MeasureReport> {
    Comparator::new(kind).precision(spec, log)
}

pub fn recall(spec: &Nfa, log: &EventLog, kind: MeasureKind) -> Result<MeasureReport> {
    Comparator::new(kind).recall(spec, log)
}

pub fn precision_and_recall(ret: &Nfa, rel: &Nfa) -> Result<(MeasureReport, MeasureReport)> {
    Comparator::default().precision_and_recall(ret, rel)
}

pub fn coverage(x: &Nfa, y: &Nfa) -> Result<MeasureReport> {
    Comparator::default().coverage(x, y)
}
