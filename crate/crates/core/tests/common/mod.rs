//! Random instance generators and brute-force oracles shared by the
//! integration tests. Nothing here calls the algorithms under test except
//! where a helper says so.

#![allow(dead_code)]

use std::collections::BTreeSet;

use entroscope::{Dfa, EventLog, Label, Nfa, Trace, Transition};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k` single-letter labels starting at `a`.
pub fn letters(k: usize) -> Vec<Label> {
    (0..k)
        .map(|i| Label::intern(&((b'a' + i as u8) as char).to_string()))
        .collect()
}

pub fn word(s: &str) -> Vec<Label> {
    s.chars().map(|c| Label::intern(&c.to_string())).collect()
}

/// NFA with `1..=max_states` states over `alphabet`, roughly `density`
/// moves per state and optional silent moves.
pub fn random_nfa(r: &mut ChaCha8Rng, max_states: usize, alphabet: &[Label], silent: bool) -> Nfa {
    let n = r.gen_range(1..=max_states);
    let mut transitions = Vec::new();
    for q in 0..n {
        for &l in alphabet {
            let k = match r.gen_range(0..10) {
                0..=3 => 0,
                4..=8 => 1,
                _ => 2,
            };
            for _ in 0..k {
                transitions.push(Transition::new(q, l, r.gen_range(0..n)));
            }
        }
        if silent && r.gen_bool(0.2) {
            transitions.push(Transition::silent(q, r.gen_range(0..n)));
        }
    }
    let accepts: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.35)).collect();
    Nfa::new(n, alphabet.iter().copied(), transitions, 0, accepts).expect("generated NFA is valid")
}

/// DFA with `1..=max_states` states; each `(state, label)` move exists with
/// probability `p`.
pub fn random_dfa(r: &mut ChaCha8Rng, max_states: usize, alphabet: &[Label], p: f64) -> Dfa {
    let n = r.gen_range(1..=max_states);
    let mut edges = Vec::new();
    for q in 0..n {
        for &l in alphabet {
            if r.gen_bool(p) {
                edges.push((q, l, r.gen_range(0..n)));
            }
        }
    }
    let mut accepts: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.4)).collect();
    if accepts.is_empty() {
        accepts.push(r.gen_range(0..n));
    }
    Dfa::new(n, alphabet.iter().copied(), edges, 0, accepts).expect("generated DFA is valid")
}

/// Finite set of random words of length `0..=max_len`.
pub fn random_words(r: &mut ChaCha8Rng, alphabet: &[Label], count: usize, max_len: usize) -> BTreeSet<Vec<Label>> {
    (0..count)
        .map(|_| {
            let len = r.gen_range(0..=max_len);
            (0..len).map(|_| *alphabet.choose(r).unwrap()).collect()
        })
        .collect()
}

pub fn log_of(words: &BTreeSet<Vec<Label>>) -> EventLog {
    words
        .iter()
        .map(|w| Trace::new(w.iter().copied()).expect("plain labels"))
        .collect()
}

/// Log with random multiplicities.
pub fn random_log(r: &mut ChaCha8Rng, alphabet: &[Label], count: usize, max_len: usize) -> EventLog {
    EventLog::from_counts(
        random_words(r, alphabet, count, max_len)
            .into_iter()
            .map(|w| (Trace::new(w).unwrap(), r.gen_range(1..4))),
    )
    .expect("positive multiplicities")
}

/// Up to `count` accepted words found by random walks of length
/// `<= max_len`.
pub fn sample_accepted(r: &mut ChaCha8Rng, d: &Dfa, count: usize, max_len: usize) -> BTreeSet<Vec<Label>> {
    let mut found = BTreeSet::new();
    for _ in 0..count * 20 {
        if found.len() == count {
            break;
        }
        let mut q = d.start();
        let mut w = Vec::new();
        let stop = r.gen_range(0..=max_len);
        loop {
            if w.len() >= stop && d.is_accepting(q) {
                found.insert(w);
                break;
            }
            let moves = d.moves(q);
            if moves.is_empty() || w.len() >= max_len {
                break;
            }
            let &(l, t) = moves.choose(r).unwrap();
            w.push(l);
            q = t;
        }
    }
    found
}

/// Every word over `alphabet` of length `0..=max_len`.
pub fn all_words(alphabet: &[Label], max_len: usize) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * alphabet.len());
        for w in &frontier {
            for &l in alphabet {
                let mut v: Vec<Label> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn closure(moves: &[Vec<(Option<Label>, usize)>], set: &mut BTreeSet<usize>) {
    let mut stack: Vec<usize> = set.iter().copied().collect();
    while let Some(q) = stack.pop() {
        for &(l, t) in &moves[q] {
            if l.is_none() && set.insert(t) {
                stack.push(t);
            }
        }
    }
}

/// Direct set simulation of `a` on `w`, with silent moves followed
/// eagerly. Independent of the determinization code.
pub fn nfa_accepts(a: &Nfa, w: &[Label]) -> bool {
    let mut moves = vec![Vec::new(); a.states()];
    for t in a.transitions() {
        moves[t.from].push((t.label, t.to));
    }
    let mut current = BTreeSet::from([a.start()]);
    closure(&moves, &mut current);
    for &l in w {
        let mut next = BTreeSet::new();
        for &q in &current {
            for &(x, t) in &moves[q] {
                if x == Some(l) {
                    next.insert(t);
                }
            }
        }
        closure(&moves, &mut next);
        current = next;
    }
    current.iter().any(|&q| a.is_accepting(q))
}

/// Number of accepted words of length `<= max_len`, by enumeration.
pub fn brute_count(a: &Nfa, max_len: usize) -> usize {
    let alphabet: Vec<Label> = a.alphabet().iter().copied().collect();
    all_words(&alphabet, max_len)
        .iter()
        .filter(|w| nfa_accepts(a, w))
        .count()
}

/// `L(a) ∪ L(b)` through a fresh start state with silent moves.
pub fn union(a: &Nfa, b: &Nfa) -> Nfa {
    let shift_a = 1;
    let shift_b = 1 + a.states();
    let mut transitions = vec![
        Transition::silent(0, a.start() + shift_a),
        Transition::silent(0, b.start() + shift_b),
    ];
    for t in a.transitions() {
        transitions.push(Transition { from: t.from + shift_a, label: t.label, to: t.to + shift_a });
    }
    for t in b.transitions() {
        transitions.push(Transition { from: t.from + shift_b, label: t.label, to: t.to + shift_b });
    }
    let accepts = a
        .accept_states()
        .iter()
        .map(|&q| q + shift_a)
        .chain(b.accept_states().iter().map(|&q| q + shift_b));
    let alphabet: BTreeSet<Label> = a.alphabet().union(b.alphabet()).copied().collect();
    Nfa::new(1 + a.states() + b.states(), alphabet, transitions, 0, accepts).expect("union is valid")
}

/// Language equality via minimal DFAs, which are canonically numbered;
/// alphabets are ignored. Relies on `determinize` and `minimize`, which the
/// bounded-word suites check separately.
pub fn same_language(a: &Nfa, b: &Nfa) -> bool {
    let x = a.to_deterministic().minimize();
    let y = b.to_deterministic().minimize();
    x.states() == y.states()
        && x.start() == y.start()
        && x.transitions().eq(y.transitions())
        && x.accept_states().eq(y.accept_states())
}

/// `L(a) ⊆ L(b)`.
pub fn subset(a: &Nfa, b: &Nfa) -> bool {
    let x = a.to_deterministic();
    let both = x.intersect(&b.to_deterministic()).expect("plain operands");
    same_language(&both.into_nfa(), a)
}

pub fn strict_subset(a: &Nfa, b: &Nfa) -> bool {
    subset(a, b) && !same_language(a, b)
}

/// Boolean primitivity test (Wielandt bound) for the adjacency relation of
/// `d`: some power of the matrix is strictly positive.
pub fn is_primitive(d: &Dfa) -> bool {
    let n = d.states();
    let mut adj = vec![vec![false; n]; n];
    for (q, _, t) in d.transitions() {
        adj[q][t] = true;
    }
    let mut power = adj.clone();
    for _ in 0..(n - 1) * (n - 1) + 1 {
        if power.iter().all(|row| row.iter().all(|&x| x)) {
            return true;
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k] {
                    for j in 0..n {
                        next[i][j] |= adj[k][j];
                    }
                }
            }
        }
        power = next;
    }
    power.iter().all(|row| row.iter().all(|&x| x))
}
