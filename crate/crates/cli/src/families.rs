//! Synthetic specification families.
//!
//! * `bounded-repeat`: `M_x` with language `a{0,x}∘b`, compared against the
//!   log `{b, ab, aab}`.
//! * `kleene`: `M_*` with language `a*∘b`.
//! * `permutations`: `M_{n||}`, a trie over the first `n` permutations of
//!   `abcde`. The five log words come first, the rest follow in
//!   lexicographic order, so `n = 120` yields all permutations.
//! * `parallel-block`: `M_{||}`, the interleaving of `a`..`e` as a subset
//!   DFA with 32 states.

use entroscope::{Dfa, EventLog, Label, Trace};
use thiserror::Error;

pub const REPEAT_RANGE: (usize, usize) = (2, 20);
pub const PERMUTATION_RANGE: (usize, usize) = (5, 120);
pub const PERMUTATION_LOG: [&str; 5] = ["abcde", "abced", "abdec", "abdce", "abecd"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{param} = {value} is outside {min}..={max}")]
    OutOfRange {
        param: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("unknown family `{0}`")]
    Unknown(String),
}

fn check(param: &'static str, value: usize, (min, max): (usize, usize)) -> Result<(), FamilyError> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(FamilyError::OutOfRange { param, value, min, max })
    }
}

fn letters(s: &str) -> Vec<Label> {
    s.chars().map(|c| Label::intern(c.encode_utf8(&mut [0; 4]))).collect()
}

/// `a{0,x}∘b`: a chain of `x + 1` states reading `a`, each with a `b` exit
/// into a shared accept state.
pub fn bounded_repeat(x: usize) -> Result<Dfa, FamilyError> {
    check("x", x, REPEAT_RANGE)?;
    let (a, b) = (Label::intern("a"), Label::intern("b"));
    let accept = x + 1;
    let mut edges = Vec::with_capacity(2 * x + 1);
    for q in 0..=x {
        if q < x {
            edges.push((q, a, q + 1));
        }
        edges.push((q, b, accept));
    }
    Ok(Dfa::new(x + 2, [a, b], edges, 0, [accept]).expect("well-formed chain"))
}

/// The log `a{0,2}∘b`, one occurrence per trace.
pub fn bounded_repeat_log() -> EventLog {
    ["b", "ab", "aab"]
        .iter()
        .map(|w| Trace::new(letters(w)).expect("plain labels"))
        .collect()
}

/// `a*∘b`.
pub fn kleene() -> Dfa {
    let (a, b) = (Label::intern("a"), Label::intern("b"));
    Dfa::new(2, [a, b], [(0, a, 0), (0, b, 1)], 0, [1]).expect("well-formed")
}

/// All permutations of `abcde`, log words first.
pub fn permutation_words() -> Vec<String> {
    let mut rest = Vec::new();
    let mut chars: Vec<char> = "abcde".chars().collect();
    permute(&mut chars, 0, &mut rest);
    rest.sort();
    let mut words: Vec<String> = PERMUTATION_LOG.iter().map(|w| w.to_string()).collect();
    rest.retain(|w| !PERMUTATION_LOG.contains(&w.as_str()));
    words.extend(rest);
    words
}

fn permute(chars: &mut [char], k: usize, out: &mut Vec<String>) {
    if k == chars.len() {
        out.push(chars.iter().collect());
        return;
    }
    for i in k..chars.len() {
        chars.swap(k, i);
        permute(chars, k + 1, out);
        chars.swap(k, i);
    }
}

pub fn permutation_log() -> EventLog {
    PERMUTATION_LOG
        .iter()
        .map(|w| Trace::new(letters(w)).expect("plain labels"))
        .collect()
}

/// Trie over the first `count` permutation words.
pub fn permutations(count: usize) -> Result<Dfa, FamilyError> {
    check("count", count, PERMUTATION_RANGE)?;
    let log: EventLog = permutation_words()
        .iter()
        .take(count)
        .map(|w| Trace::new(letters(w)).expect("plain labels"))
        .collect();
    Ok(log.prefix_tree_acceptor())
}

/// Every interleaving of `a`..`e`, each exactly once. State `s` is the set
/// of letters already seen, as a bit mask.
pub fn parallel_block() -> Dfa {
    let alphabet = letters("abcde");
    let mut edges = Vec::new();
    for s in 0usize..32 {
        for (i, &l) in alphabet.iter().enumerate() {
            if s & (1 << i) == 0 {
                edges.push((s, l, s | (1 << i)));
            }
        }
    }
    Dfa::new(32, alphabet, edges, 0, [31]).expect("well-formed subset DFA")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn bounded_repeat_language() {
        let m2 = bounded_repeat(2).unwrap();
        assert_eq!(m2.count_words().unwrap(), BigUint::from(3u32));
        for w in ["b", "ab", "aab"] {
            assert!(m2.accepts(&letters(w)));
        }
        assert!(!m2.accepts(&letters("aaab")));
        assert_eq!(bounded_repeat(20).unwrap().count_words().unwrap(), BigUint::from(21u32));
    }

    #[test]
    fn parameters_are_checked() {
        assert!(bounded_repeat(1).is_err());
        assert!(bounded_repeat(21).is_err());
        assert_eq!(
            permutations(121),
            Err(FamilyError::OutOfRange { param: "count", value: 121, min: 5, max: 120 })
        );
    }

    #[test]
    fn kleene_has_two_states() {
        let k = kleene();
        assert_eq!(k.minimize().states(), 2);
        assert!(k.accepts(&letters("aaaab")));
        assert!(!k.has_finite_language());
    }

    #[test]
    fn permutation_words_are_distinct() {
        let words = permutation_words();
        assert_eq!(words.len(), 120);
        assert_eq!(&words[..5], &PERMUTATION_LOG.map(String::from));
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 120);
    }

    #[test]
    fn permutation_trie_sizes() {
        assert_eq!(permutations(5).unwrap().count_words().unwrap(), BigUint::from(5u32));
        assert_eq!(permutations(120).unwrap().count_words().unwrap(), BigUint::from(120u32));
        assert_eq!(parallel_block().count_words().unwrap(), BigUint::from(120u32));
        assert_eq!(parallel_block().states(), 32);
    }
}
