//! External representations of automata, logs and reports.

mod automaton;
mod dot;
mod log;
mod report;

use thiserror::Error;

use crate::automata::AutomatonError;

pub use automaton::{
    read_automaton, write_automaton, AutomatonDocument, StateRef, StatesField, TransitionEntry,
};
pub use dot::export_dot;
pub use log::{read_log, read_xes, write_log};
pub use report::{read_report_json, write_report, write_reports, ReportFormat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
    #[error("reserved label used at {location}")]
    ReservedLabel { location: String },
    #[error("invalid automaton: {0}")]
    Automaton(#[from] AutomatonError),
    #[error("XML error at byte {position}: {message}")]
    Xml { position: u64, message: String },
    #[error("event {event} of trace {trace} has no concept:name")]
    MissingConceptName { trace: usize, event: usize },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
