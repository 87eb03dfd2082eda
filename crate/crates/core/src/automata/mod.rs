//! Finite automata over interned labels.
//!
//! States are dense indices `0..states`. Both [`Nfa`] and [`Dfa`] are
//! immutable once built; constructors validate the structural invariants and
//! every algorithm returns a fresh value. Transition functions are partial:
//! there is never an explicit dead state.

mod count;
mod determinize;
pub(crate) mod graph;
mod minimize;
mod ops;

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::label::Label;

use graph::Adjacency;

pub type StateId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("an automaton needs at least one state")]
    NoStates,
    #[error("{what} refers to state {state}, but the automaton has {states} states")]
    StateOutOfRange {
        what: &'static str,
        state: StateId,
        states: usize,
    },
    #[error("transition label `{0}` is not in the alphabet")]
    LabelNotInAlphabet(String),
    #[error("reserved label `{0}` cannot be used here")]
    ReservedLabel(String),
    #[error("state {state} has more than one `{label}` successor")]
    Nondeterministic { state: StateId, label: String },
    #[error("state {0} has a silent transition")]
    SilentTransition(StateId),
    #[error("automaton is already short-circuited")]
    AlreadyShortCircuited,
    #[error("automaton accepts infinitely many words")]
    InfiniteLanguage,
}

pub type Result<T, E = AutomatonError> = std::result::Result<T, E>;

/// A labelled edge. `label == None` is a silent move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: StateId,
    pub label: Option<Label>,
    pub to: StateId,
}

impl Transition {
    pub fn new(from: StateId, label: Label, to: StateId) -> Self {
        Transition {
            from,
            label: Some(label),
            to,
        }
    }

    pub fn silent(from: StateId, to: StateId) -> Self {
        Transition {
            from,
            label: None,
            to,
        }
    }
}

fn encode(label: Option<Label>) -> Label {
    label.unwrap_or(Label::TAU)
}

fn decode(label: Label) -> Option<Label> {
    (label != Label::TAU).then_some(label)
}

fn check_alphabet(alphabet: &BTreeSet<Label>, allow_chi: bool) -> Result<()> {
    for &l in alphabet {
        if l == Label::TAU || (l == Label::CHI && !allow_chi) {
            return Err(AutomatonError::ReservedLabel(l.name().to_owned()));
        }
    }
    Ok(())
}

fn check_state(what: &'static str, state: StateId, states: usize) -> Result<()> {
    if state < states {
        Ok(())
    } else {
        Err(AutomatonError::StateOutOfRange {
            what,
            state,
            states,
        })
    }
}

/// Nondeterministic finite automaton with optional silent transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: BTreeSet<Label>,
    // silent moves are stored under `Label::TAU`; each list is sorted and unique
    out: Adjacency,
    start: StateId,
    accepts: BTreeSet<StateId>,
}

impl Nfa {
    /// Builds and validates an NFA. The short-circuit label is rejected; use
    /// [`Dfa::short_circuit`] to obtain short-circuited automata.
    pub fn new(
        states: usize,
        alphabet: impl IntoIterator<Item = Label>,
        transitions: impl IntoIterator<Item = Transition>,
        start: StateId,
        accepts: impl IntoIterator<Item = StateId>,
    ) -> Result<Nfa> {
        Self::build(states, alphabet.into_iter().collect(), transitions, start, accepts, false)
    }

    fn build(
        states: usize,
        alphabet: BTreeSet<Label>,
        transitions: impl IntoIterator<Item = Transition>,
        start: StateId,
        accepts: impl IntoIterator<Item = StateId>,
        allow_chi: bool,
    ) -> Result<Nfa> {
        if states == 0 {
            return Err(AutomatonError::NoStates);
        }
        check_alphabet(&alphabet, allow_chi)?;
        check_state("start", start, states)?;
        let accepts: BTreeSet<StateId> = accepts.into_iter().collect();
        for &a in &accepts {
            check_state("accept", a, states)?;
        }
        let mut out: Adjacency = vec![Vec::new(); states];
        for t in transitions {
            check_state("transition source", t.from, states)?;
            check_state("transition target", t.to, states)?;
            if let Some(l) = t.label {
                if !alphabet.contains(&l) {
                    return Err(AutomatonError::LabelNotInAlphabet(l.name().to_owned()));
                }
            }
            out[t.from].push((encode(t.label), t.to));
        }
        for moves in &mut out {
            moves.sort_unstable();
            moves.dedup();
        }
        Ok(Nfa {
            alphabet,
            out,
            start,
            accepts,
        })
    }

    pub fn states(&self) -> usize {
        self.out.len()
    }

    pub fn alphabet(&self) -> &BTreeSet<Label> {
        &self.alphabet
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn accept_states(&self) -> &BTreeSet<StateId> {
        &self.accepts
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepts.contains(&q)
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.out.iter().enumerate().flat_map(|(from, moves)| {
            moves.iter().map(move |&(l, to)| Transition {
                from,
                label: decode(l),
                to,
            })
        })
    }

    pub fn transition_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn is_short_circuited(&self) -> bool {
        self.alphabet.contains(&Label::CHI)
    }

    /// True iff there is no silent move and no state has two successors on
    /// the same label.
    pub fn is_deterministic(&self) -> bool {
        self.out.iter().all(|moves| {
            moves.iter().all(|&(l, _)| l != Label::TAU)
                && moves.windows(2).all(|w| w[0].0 != w[1].0)
        })
    }

    /// Smallest superset of `states` closed under silent moves.
    pub fn silent_closure(&self, states: impl IntoIterator<Item = StateId>) -> BTreeSet<StateId> {
        let mut closure = BTreeSet::new();
        let mut stack: Vec<StateId> = Vec::new();
        for q in states {
            if closure.insert(q) {
                stack.push(q);
            }
        }
        while let Some(q) = stack.pop() {
            let silent = self.out[q].iter().take_while(|(l, _)| *l == Label::TAU);
            for &(_, t) in silent {
                if closure.insert(t) {
                    stack.push(t);
                }
            }
        }
        closure
    }

    /// Transition graph is strongly connected over all states.
    pub fn is_ergodic(&self) -> bool {
        graph::strongly_connected(&self.out)
    }

    /// Removes states that are unreachable or cannot reach an accept state.
    pub fn trim(&self) -> Nfa {
        let reach = graph::reachable(&self.out, self.start);
        let coreach = graph::coreachable(&self.out, self.accepts.iter().copied());
        if !coreach[self.start] {
            return Dfa::empty(self.alphabet.iter().copied()).into_nfa();
        }
        let keep: Vec<bool> = reach.iter().zip(&coreach).map(|(a, b)| *a && *b).collect();
        let (out, index) = graph::restrict(&self.out, &keep);
        Nfa {
            alphabet: self.alphabet.clone(),
            out,
            start: index[self.start].expect("start is kept"),
            accepts: self.accepts.iter().filter_map(|&a| index[a]).collect(),
        }
    }

    /// Every state is reachable and co-reachable. The one-state automaton
    /// without accept states or moves counts as trim.
    pub fn is_trim(&self) -> bool {
        let reach = graph::reachable(&self.out, self.start);
        let coreach = graph::coreachable(&self.out, self.accepts.iter().copied());
        if !coreach[self.start] {
            return self.states() == 1 && self.transition_count() == 0;
        }
        reach.iter().zip(&coreach).all(|(a, b)| *a && *b)
    }

    /// Reinterprets the automaton as a DFA when it already is one.
    pub fn to_dfa(&self) -> Result<Dfa> {
        for (q, moves) in self.out.iter().enumerate() {
            for w in moves.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(AutomatonError::Nondeterministic {
                        state: q,
                        label: w[0].0.name().to_owned(),
                    });
                }
            }
            if moves.iter().any(|&(l, _)| l == Label::TAU) {
                return Err(AutomatonError::SilentTransition(q));
            }
        }
        let mut accepts = vec![false; self.states()];
        for &a in &self.accepts {
            accepts[a] = true;
        }
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            out: self.out.clone(),
            start: self.start,
            accepts,
        })
    }

    /// The DFA itself if deterministic, otherwise its powerset construction.
    pub fn to_deterministic(&self) -> Dfa {
        self.to_dfa().unwrap_or_else(|_| self.determinize())
    }

    pub(crate) fn adjacency(&self) -> &Adjacency {
        &self.out
    }
}

/// Deterministic finite automaton with a partial transition function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: BTreeSet<Label>,
    // each list is sorted by label with at most one entry per label
    out: Adjacency,
    start: StateId,
    accepts: Vec<bool>,
}

impl Dfa {
    /// Builds and validates a DFA from `(from, label, to)` triples. Repeated
    /// identical triples are merged; conflicting ones are an error.
    pub fn new(
        states: usize,
        alphabet: impl IntoIterator<Item = Label>,
        transitions: impl IntoIterator<Item = (StateId, Label, StateId)>,
        start: StateId,
        accepts: impl IntoIterator<Item = StateId>,
    ) -> Result<Dfa> {
        Nfa::new(
            states,
            alphabet,
            transitions
                .into_iter()
                .map(|(from, l, to)| Transition::new(from, l, to)),
            start,
            accepts,
        )?
        .to_dfa()
    }

    /// The canonical empty-language automaton: one state, nothing else.
    pub fn empty(alphabet: impl IntoIterator<Item = Label>) -> Dfa {
        Dfa {
            alphabet: alphabet.into_iter().collect(),
            out: vec![Vec::new()],
            start: 0,
            accepts: vec![false],
        }
    }

    /// Single accepting state with a self-loop per label: the language `Φ*`.
    pub fn universal(alphabet: impl IntoIterator<Item = Label>) -> Dfa {
        let alphabet: BTreeSet<Label> = alphabet.into_iter().collect();
        let moves = alphabet.iter().map(|&l| (l, 0)).collect();
        Dfa {
            alphabet,
            out: vec![moves],
            start: 0,
            accepts: vec![true],
        }
    }

    pub(crate) fn from_parts(
        alphabet: BTreeSet<Label>,
        mut out: Adjacency,
        start: StateId,
        accepts: Vec<bool>,
    ) -> Dfa {
        for moves in &mut out {
            moves.sort_unstable();
            debug_assert!(moves.windows(2).all(|w| w[0].0 != w[1].0));
        }
        debug_assert_eq!(out.len(), accepts.len());
        Dfa {
            alphabet,
            out,
            start,
            accepts,
        }
    }

    pub fn states(&self) -> usize {
        self.out.len()
    }

    pub fn alphabet(&self) -> &BTreeSet<Label> {
        &self.alphabet
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepts[q]
    }

    pub fn accept_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.accepts
            .iter()
            .enumerate()
            .filter_map(|(q, &a)| a.then_some(q))
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Label, StateId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(from, moves)| moves.iter().map(move |&(l, to)| (from, l, to)))
    }

    pub fn transition_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Outgoing moves of `q`, sorted by label.
    pub fn moves(&self, q: StateId) -> &[(Label, StateId)] {
        &self.out[q]
    }

    pub fn next(&self, q: StateId, label: Label) -> Option<StateId> {
        let moves = &self.out[q];
        moves
            .binary_search_by_key(&label, |&(l, _)| l)
            .ok()
            .map(|i| moves[i].1)
    }

    /// True iff `word` drives the automaton from the start to an accept
    /// state. Unknown labels simply reject.
    pub fn accepts(&self, word: &[Label]) -> bool {
        let mut q = self.start;
        for &l in word {
            match self.next(q, l) {
                Some(t) => q = t,
                None => return false,
            }
        }
        self.accepts[q]
    }

    pub fn is_short_circuited(&self) -> bool {
        self.alphabet.contains(&Label::CHI)
    }

    /// No accept state is reachable.
    pub fn is_empty_language(&self) -> bool {
        let reach = graph::reachable(&self.out, self.start);
        !self.accept_states().any(|a| reach[a])
    }

    pub fn is_ergodic(&self) -> bool {
        graph::strongly_connected(&self.out)
    }

    pub fn into_nfa(self) -> Nfa {
        let accepts = self.accept_states().collect();
        Nfa {
            alphabet: self.alphabet,
            out: self.out,
            start: self.start,
            accepts,
        }
    }

    pub fn to_nfa(&self) -> Nfa {
        self.clone().into_nfa()
    }

    /// Renumbers reachable states breadth-first from the start, visiting
    /// successors in label order. Unreachable states are dropped, so two
    /// trim DFAs are isomorphic iff their canonical forms are equal.
    pub fn canonical(&self) -> Dfa {
        let mut index = vec![None; self.states()];
        let mut order = Vec::with_capacity(self.states());
        let mut queue = VecDeque::from([self.start]);
        index[self.start] = Some(0);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &(_, t) in &self.out[q] {
                if index[t].is_none() {
                    index[t] = Some(order.len() + queue.len());
                    queue.push_back(t);
                }
            }
        }
        let out = order
            .iter()
            .map(|&q| {
                self.out[q]
                    .iter()
                    .map(|&(l, t)| (l, index[t].expect("reachable")))
                    .collect()
            })
            .collect();
        let accepts = order.iter().map(|&q| self.accepts[q]).collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            out,
            start: 0,
            accepts,
        }
    }

    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        self.canonical() == other.canonical()
    }

    pub(crate) fn adjacency(&self) -> &Adjacency {
        &self.out
    }
}

impl From<Dfa> for Nfa {
    fn from(d: Dfa) -> Nfa {
        d.into_nfa()
    }
}

impl From<&Dfa> for Nfa {
    fn from(d: &Dfa) -> Nfa {
        d.to_nfa()
    }
}

impl TryFrom<&Nfa> for Dfa {
    type Error = AutomatonError;

    fn try_from(a: &Nfa) -> Result<Dfa> {
        a.to_dfa()
    }
}
