//! Event logs: finite multisets of traces.
//!
//! Measures only ever look at the set of distinct traces. Multiplicities are
//! kept for diagnostics.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::automata::Dfa;
use crate::label::Label;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogError {
    #[error("reserved label `{0}` cannot appear in a trace")]
    ReservedLabel(String),
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
}

/// A recorded execution: a sequence of non-reserved labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Trace(Vec<Label>);

impl Trace {
    pub fn new(events: impl IntoIterator<Item = Label>) -> Result<Trace, LogError> {
        let events: Vec<Label> = events.into_iter().collect();
        if let Some(l) = events.iter().find(|l| l.is_reserved()) {
            return Err(LogError::ReservedLabel(l.name().to_owned()));
        }
        Ok(Trace(events))
    }

    /// The empty trace `ε`.
    pub fn empty() -> Trace {
        Trace(Vec::new())
    }

    pub fn events(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EventLog {
    entries: BTreeMap<Trace, u64>,
}

impl EventLog {
    pub fn new() -> EventLog {
        EventLog::default()
    }

    pub fn from_counts(
        counts: impl IntoIterator<Item = (Trace, u64)>,
    ) -> Result<EventLog, LogError> {
        let mut entries = BTreeMap::new();
        for (trace, n) in counts {
            if n == 0 {
                return Err(LogError::ZeroMultiplicity);
            }
            *entries.entry(trace).or_insert(0) += n;
        }
        Ok(EventLog { entries })
    }

    /// Stored count of `trace`, 0 when absent.
    pub fn multiplicity(&self, trace: &Trace) -> u64 {
        self.entries.get(trace).copied().unwrap_or(0)
    }

    /// Multiset union: multiplicities add up.
    pub fn union(&self, other: &EventLog) -> EventLog {
        let mut entries = self.entries.clone();
        for (t, &n) in &other.entries {
            *entries.entry(t.clone()).or_insert(0) += n;
        }
        EventLog { entries }
    }

    /// The language of the log: every trace recorded at least once.
    pub fn distinct_language(&self) -> BTreeSet<&Trace> {
        self.entries.keys().collect()
    }

    pub fn distinct_count(&self) -> usize {
        self.entries.len()
    }

    pub fn total_count(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Distinct traces with their multiplicities, in trace order.
    pub fn iter(&self) -> impl Iterator<Item = (&Trace, u64)> {
        self.entries.iter().map(|(t, &n)| (t, n))
    }

    /// Labels occurring in some trace.
    pub fn alphabet(&self) -> BTreeSet<Label> {
        self.entries
            .keys()
            .flat_map(|t| t.events().iter().copied())
            .collect()
    }

    /// Trie over the distinct traces. States are distinct prefixes numbered
    /// in order of first appearance; accept states are complete traces.
    pub fn prefix_tree_acceptor(&self) -> Dfa {
        let alphabet = self.alphabet();
        if self.entries.is_empty() {
            return Dfa::empty(alphabet);
        }
        let mut out: Vec<Vec<(Label, usize)>> = vec![Vec::new()];
        let mut accepts = vec![false];
        for trace in self.entries.keys() {
            let mut q = 0;
            for &l in trace.events() {
                q = match out[q].iter().find(|(x, _)| *x == l) {
                    Some(&(_, t)) => t,
                    None => {
                        let t = out.len();
                        out.push(Vec::new());
                        accepts.push(false);
                        out[q].push((l, t));
                        t
                    }
                };
            }
            accepts[q] = true;
        }
        Dfa::from_parts(alphabet, out, 0, accepts)
    }
}

impl FromIterator<Trace> for EventLog {
    fn from_iter<I: IntoIterator<Item = Trace>>(iter: I) -> Self {
        let mut entries = BTreeMap::new();
        for t in iter {
            *entries.entry(t).or_insert(0) += 1;
        }
        EventLog { entries }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::label::word;

    #[test]
    fn multiplicities() {
        assert_eq!(l2().multiplicity(&trace("afe")), 2);
        assert_eq!(l1().multiplicity(&trace("afe")), 0);
        assert_eq!(EventLog::new().multiplicity(&trace("a")), 0);
    }

    #[test]
    fn union_adds_counts() {
        let l2 = l2();
        assert_eq!(l2.total_count(), 5);
        assert_eq!(l2.distinct_count(), 4);
        assert_eq!(l1().union(&EventLog::new()), l1());
        let x = log(&["b", "a", "a"]).union(&log(&["b"]));
        assert_eq!(x.multiplicity(&trace("a")), 2);
        assert_eq!(x.multiplicity(&trace("b")), 2);
    }

    #[test]
    fn distinct_language() {
        assert_eq!(l2().distinct_language().len(), 4);
        assert!(EventLog::new().distinct_language().is_empty());
        assert_eq!(log(&["ab", "ab", "ab"]).distinct_language().len(), 1);
    }

    #[test]
    fn reserved_labels_rejected() {
        assert!(Trace::new([Label::CHI]).is_err());
        assert!(Trace::new([Label::TAU]).is_err());
        assert_eq!(
            EventLog::from_counts([(trace("a"), 0)]),
            Err(LogError::ZeroMultiplicity)
        );
    }

    #[test]
    fn prefix_tree_of_l1() {
        let d = l1().prefix_tree_acceptor();
        // ε, a, ab, abd, abde, abc, abcb, abcbc, abcbcd, abcbcde
        assert_eq!(d.states(), 10);
        assert!(d.accepts(&word("abde")));
        assert!(d.accepts(&word("abcbcde")));
        assert!(!d.accepts(&word("ab")));
        assert!(d.has_finite_language());
        assert_eq!(d.count_words().unwrap(), 2u32.into());
    }

    #[test]
    fn prefix_tree_edge_cases() {
        let e = EventLog::new().prefix_tree_acceptor();
        assert_eq!(e.states(), 1);
        assert!(e.is_empty_language());

        let eps = EventLog::from_iter([Trace::empty()]).prefix_tree_acceptor();
        assert_eq!(eps.states(), 1);
        assert!(eps.accepts(&[]));
    }
}
