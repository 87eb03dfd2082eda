use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{graph, AutomatonError, Dfa, Result};

impl Dfa {
    /// Number of accepted words. Since the automaton is deterministic,
    /// distinct start-to-accept paths are distinct words.
    pub fn count_words(&self) -> Result<BigUint> {
        let trimmed = self.trim();
        if graph::has_cycle(trimmed.adjacency()) {
            return Err(AutomatonError::InfiniteLanguage);
        }
        let n = trimmed.states();
        let mut indegree = vec![0usize; n];
        for (_, _, t) in trimmed.transitions() {
            indegree[t] += 1;
        }
        let mut paths = vec![BigUint::zero(); n];
        paths[trimmed.start()] = BigUint::one();
        let mut ready: Vec<usize> = (0..n).filter(|&q| indegree[q] == 0).collect();
        let mut total = BigUint::zero();
        while let Some(q) = ready.pop() {
            if trimmed.is_accepting(q) {
                total += &paths[q];
            }
            for &(_, t) in trimmed.moves(q) {
                let carried = paths[q].clone();
                paths[t] += carried;
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.push(t);
                }
            }
        }
        Ok(total)
    }

    /// `|C_n(L)|`: accepted words of length exactly `n`.
    pub fn count_words_of_length(&self, n: usize) -> BigUint {
        let mut current = vec![BigUint::zero(); self.states()];
        current[self.start()] = BigUint::one();
        for _ in 0..n {
            let mut next = vec![BigUint::zero(); self.states()];
            for (q, count) in current.iter().enumerate() {
                if count.is_zero() {
                    continue;
                }
                for &(_, t) in self.moves(q) {
                    next[t] += count;
                }
            }
            current = next;
        }
        current
            .into_iter()
            .enumerate()
            .filter(|(q, _)| self.is_accepting(*q))
            .map(|(_, c)| c)
            .sum()
    }
}
