//! JSON automaton documents.
//!
//! ```json
//! {
//!   "name": "S2",
//!   "alphabet": ["a", "b"],
//!   "states": ["A", "B"],
//!   "start": "A",
//!   "accepts": ["A"],
//!   "transitions": [
//!     {"from": "A", "label": "a", "to": "B"},
//!     {"from": "B", "label": null, "to": "A"}
//!   ]
//! }
//! ```
//!
//! `states` is either a count or a list of names. State references are
//! indices, or names when names were given. A `null` or missing label is a
//! silent move. `alphabet` may be omitted, in which case it is the set of
//! transition labels.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::automata::{Nfa, StateId, Transition};
use crate::label::{Label, CHI_NAME};

use super::FormatError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StatesField {
    Count(usize),
    Names(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateRef {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionEntry {
    pub from: StateRef,
    #[serde(default)]
    pub label: Option<String>,
    pub to: StateRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    pub states: StatesField,
    pub start: StateRef,
    #[serde(default)]
    pub accepts: Vec<StateRef>,
    #[serde(default)]
    pub transitions: Vec<TransitionEntry>,
}

impl AutomatonDocument {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(FormatError::from)
    }

    /// Describes `a` with numeric state references.
    pub fn from_nfa(a: &Nfa, name: Option<String>) -> Result<Self, FormatError> {
        if a.is_short_circuited() {
            return Err(FormatError::ReservedLabel {
                location: "alphabet".to_owned(),
            });
        }
        Ok(AutomatonDocument {
            name,
            alphabet: Some(a.alphabet().iter().map(|l| l.name().to_owned()).collect()),
            states: StatesField::Count(a.states()),
            start: StateRef::Index(a.start()),
            accepts: a.accept_states().iter().map(|&q| StateRef::Index(q)).collect(),
            transitions: a
                .transitions()
                .map(|t| TransitionEntry {
                    from: StateRef::Index(t.from),
                    label: t.label.map(|l| l.name().to_owned()),
                    to: StateRef::Index(t.to),
                })
                .collect(),
        })
    }

    pub fn to_nfa(&self) -> Result<Nfa, FormatError> {
        let (count, names) = match &self.states {
            StatesField::Count(n) => (*n, HashMap::new()),
            StatesField::Names(list) => {
                let mut names = HashMap::new();
                for (i, n) in list.iter().enumerate() {
                    if names.insert(n.as_str(), i).is_some() {
                        return Err(invalid(format!("states[{i}]"), format!("duplicate state name `{n}`")));
                    }
                }
                (list.len(), names)
            }
        };
        if count == 0 {
            return Err(invalid("states", "an automaton needs at least one state"));
        }
        let resolve = |r: &StateRef, location: String| -> Result<StateId, FormatError> {
            let q = match r {
                StateRef::Index(i) => *i,
                StateRef::Name(n) => *names
                    .get(n.as_str())
                    .ok_or_else(|| invalid(location.clone(), format!("unknown state `{n}`")))?,
            };
            if q >= count {
                return Err(invalid(location, format!("state {q} is out of range (states = {count})")));
            }
            Ok(q)
        };
        let intern = |name: &str, location: String| -> Result<Label, FormatError> {
            if name == CHI_NAME {
                return Err(FormatError::ReservedLabel { location });
            }
            Ok(Label::intern(name))
        };

        let mut alphabet = BTreeSet::new();
        if let Some(list) = &self.alphabet {
            for (i, s) in list.iter().enumerate() {
                alphabet.insert(intern(s, format!("alphabet[{i}]"))?);
            }
        }
        let start = resolve(&self.start, "start".to_owned())?;
        let accepts = self
            .accepts
            .iter()
            .enumerate()
            .map(|(i, r)| resolve(r, format!("accepts[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut transitions = Vec::with_capacity(self.transitions.len());
        for (i, t) in self.transitions.iter().enumerate() {
            let from = resolve(&t.from, format!("transitions[{i}].from"))?;
            let to = resolve(&t.to, format!("transitions[{i}].to"))?;
            let label = match &t.label {
                None => None,
                Some(s) => {
                    let l = intern(s, format!("transitions[{i}].label"))?;
                    if self.alphabet.is_none() {
                        alphabet.insert(l);
                    } else if !alphabet.contains(&l) {
                        return Err(invalid(
                            format!("transitions[{i}].label"),
                            format!("label `{s}` is not in the alphabet"),
                        ));
                    }
                    Some(l)
                }
            };
            transitions.push(Transition { from, label, to });
        }
        Ok(Nfa::new(count, alphabet, transitions, start, accepts)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialise") + "\n"
    }
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Invalid {
        location: location.into(),
        message: message.into(),
    }
}

pub fn read_automaton(text: &str) -> Result<Nfa, FormatError> {
    AutomatonDocument::parse(text)?.to_nfa()
}

/// Fails only for short-circuited automata, whose `χ` label has no
/// external spelling.
pub fn write_automaton(a: &Nfa) -> Result<String, FormatError> {
    Ok(AutomatonDocument::from_nfa(a, None)?.to_json())
}
