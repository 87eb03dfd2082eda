use std::collections::{HashMap, VecDeque};

use crate::label::Label;

use super::{graph, AutomatonError, Dfa, Result, StateId};

impl Dfa {
    /// Drops states that are unreachable from the start or cannot reach an
    /// accept state. Falls back to [`Dfa::empty`] when nothing is accepted.
    /// Surviving states keep their relative order.
    pub fn trim(&self) -> Dfa {
        let reach = graph::reachable(self.adjacency(), self.start());
        let coreach = graph::coreachable(self.adjacency(), self.accept_states());
        if !coreach[self.start()] {
            return Dfa::empty(self.alphabet().iter().copied());
        }
        let keep: Vec<bool> = reach.iter().zip(&coreach).map(|(a, b)| *a && *b).collect();
        let (out, index) = graph::restrict(self.adjacency(), &keep);
        let accepts = (0..self.states())
            .filter(|&q| keep[q])
            .map(|q| self.is_accepting(q))
            .collect();
        Dfa::from_parts(
            self.alphabet().clone(),
            out,
            index[self.start()].expect("start is kept"),
            accepts,
        )
    }

    pub fn is_trim(&self) -> bool {
        let reach = graph::reachable(self.adjacency(), self.start());
        let coreach = graph::coreachable(self.adjacency(), self.accept_states());
        if !coreach[self.start()] {
            return self.states() == 1 && self.transition_count() == 0;
        }
        reach.iter().zip(&coreach).all(|(a, b)| *a && *b)
    }

    /// Adds a `χ` move from every accept state back to the start, turning
    /// `L` into `(L∘χ)*∘L`. The input is trimmed first so the result is
    /// ergodic whenever the language is nonempty. The empty-language
    /// automaton is returned as is.
    pub fn short_circuit(&self) -> Result<Dfa> {
        if self.is_short_circuited() {
            return Err(AutomatonError::AlreadyShortCircuited);
        }
        let trimmed = self.trim();
        if trimmed.is_empty_language() {
            return Ok(trimmed);
        }
        let mut alphabet = trimmed.alphabet().clone();
        alphabet.insert(Label::CHI);
        let start = trimmed.start();
        let out = (0..trimmed.states())
            .map(|q| {
                let mut moves = trimmed.moves(q).to_vec();
                if trimmed.is_accepting(q) {
                    moves.push((Label::CHI, start));
                }
                moves
            })
            .collect();
        let accepts = (0..trimmed.states()).map(|q| trimmed.is_accepting(q)).collect();
        Ok(Dfa::from_parts(alphabet, out, start, accepts))
    }

    /// Product construction restricted to pairs reachable from the start
    /// pair. A move exists only where both operands move on the same label.
    /// Short-circuited operands are rejected: `χ` must only be introduced
    /// after intersecting.
    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        if self.is_short_circuited() || other.is_short_circuited() {
            return Err(AutomatonError::AlreadyShortCircuited);
        }
        let first = (self.start(), other.start());
        let mut index: HashMap<(StateId, StateId), StateId> = HashMap::from([(first, 0)]);
        let mut pairs = vec![first];
        let mut queue = VecDeque::from([first]);
        let mut out = Vec::new();
        while let Some((p, q)) = queue.pop_front() {
            let mut row = Vec::new();
            for &(l, pt) in self.moves(p) {
                let Some(qt) = other.next(q, l) else { continue };
                let target = (pt, qt);
                let id = *index.entry(target).or_insert_with(|| {
                    pairs.push(target);
                    queue.push_back(target);
                    pairs.len() - 1
                });
                row.push((l, id));
            }
            out.push(row);
        }
        let accepts = pairs
            .iter()
            .map(|&(p, q)| self.is_accepting(p) && other.is_accepting(q))
            .collect();
        let alphabet = self.alphabet().union(other.alphabet()).copied().collect();
        Ok(Dfa::from_parts(alphabet, out, 0, accepts).trim())
    }

    /// True iff the trimmed automaton is acyclic.
    pub fn has_finite_language(&self) -> bool {
        !graph::has_cycle(self.trim().adjacency())
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{Nfa, Transition};
    use super::*;
    use crate::label::word;

    #[test]
    fn trim_removes_dead_branch() {
        // 0 -a-> 1 (accept), 0 -b-> 2 (dead end)
        let d = Dfa::new(3, word("ab"), [(0, l("a"), 1), (0, l("b"), 2)], 0, [1]).unwrap();
        let t = d.trim();
        assert_eq!(t.states(), 2);
        assert!(t.accepts(&word("a")));
        assert!(t.is_trim());
        assert_eq!(t.trim(), t);
        assert!(!d.is_trim());
    }

    #[test]
    fn trim_of_unreachable_accept_is_empty() {
        let d = Dfa::new(3, word("a"), [(1, l("a"), 2)], 0, [2]).unwrap();
        let t = d.trim();
        assert_eq!(t.states(), 1);
        assert_eq!(t.transition_count(), 0);
        assert!(t.is_empty_language());

        let n = Nfa::new(3, word("a"), [Transition::new(1, l("a"), 2)], 0, [2]).unwrap();
        assert_eq!(n.trim().states(), 1);
    }

    #[test]
    fn short_circuit_of_epsilon() {
        let eps = Dfa::new(1, [], [], 0, [0]).unwrap();
        let sc = eps.short_circuit().unwrap();
        assert_eq!(sc.states(), 1);
        assert_eq!(sc.next(0, Label::CHI), Some(0));
        assert!(sc.accepts(&[Label::CHI, Label::CHI]));
    }

    #[test]
    fn short_circuit_of_s2() {
        let m = s2().determinize().minimize();
        let sc = m.short_circuit().unwrap();
        assert_eq!(sc.states(), 4);
        assert!(sc.is_ergodic());
        assert!(sc.is_short_circuited());
        let mut w = word("abde");
        w.push(Label::CHI);
        w.extend(word("abcbde"));
        assert!(sc.accepts(&w));
        assert_eq!(sc.short_circuit(), Err(AutomatonError::AlreadyShortCircuited));
    }

    #[test]
    fn short_circuit_keeps_empty_language() {
        let e = Dfa::empty(word("ab"));
        assert_eq!(e.short_circuit().unwrap(), e);
    }

    #[test]
    fn intersection_with_log() {
        let m = s2().determinize().minimize();
        let log = finite(&["abde", "abcbcde"]);
        let i = m.intersect(&log).unwrap();
        assert!(i.accepts(&word("abde")));
        assert!(!i.accepts(&word("abcbcde")));
        assert_eq!(i.count_words().unwrap(), 1u32.into());
    }

    #[test]
    fn intersection_edge_cases() {
        let m = s2().determinize().minimize();
        assert!(m.intersect(&m).unwrap().minimize().is_isomorphic(&m));

        let x = finite(&["pq"]);
        let y = finite(&["rs", "r"]);
        assert!(x.intersect(&y).unwrap().is_empty_language());

        let sc = m.short_circuit().unwrap();
        assert!(sc.intersect(&m).is_err());
    }

    #[test]
    fn finiteness() {
        assert!(finite(&["ab", "abc", ""]).has_finite_language());
        assert!(!s2().determinize().has_finite_language());
        // cycle 1 <-> 2 that cannot reach the accept state 3
        let d = Dfa::new(
            4,
            word("ab"),
            [(0, l("a"), 1), (1, l("a"), 2), (2, l("a"), 1), (0, l("b"), 3)],
            0,
            [3],
        )
        .unwrap();
        assert!(d.has_finite_language());
    }
}
