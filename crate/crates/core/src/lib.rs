//! Entropy-based behavioural comparison of finite automata and event logs.
//!
//! The crate computes precision, recall and coverage quotients between
//! specifications (finite automata) and recorded executions (event logs).
//! Quotients are ratios of language measures; the default measure is the
//! Perron-Frobenius eigenvalue of a short-circuited minimal DFA, which is
//! well defined for infinite regular languages and strictly monotone under
//! language inclusion.

pub mod automata;
pub mod formats;
pub mod label;
pub mod logs;
pub mod measures;
pub mod spectral;

pub use formats::FormatError;
pub use automata::{AutomatonError, Dfa, Nfa, StateId, Transition};
pub use label::Label;
pub use logs::{EventLog, Trace};
pub use measures::{Comparator, MeasureKind, MeasureReport, Quantity, SolverOptions};
pub use spectral::{EigenResult, SparseMatrix};
