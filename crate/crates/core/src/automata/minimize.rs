use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::label::Label;

use super::{Dfa, StateId};

impl Dfa {
    /// Hopcroft's partition refinement on the trimmed partial automaton.
    ///
    /// Missing moves are routed to an implicit sink during refinement; the
    /// sink's block is dropped afterwards, so the result is again partial.
    /// Output states are numbered canonically (see [`Dfa::canonical`]).
    pub fn minimize(&self) -> Dfa {
        let trimmed = self.trim();
        if trimmed.is_empty_language() {
            return Dfa::empty(self.alphabet().iter().copied());
        }
        let n = trimmed.states();
        let sink = n;
        let labels: Vec<Label> = trimmed.alphabet().iter().copied().collect();
        let label_index: BTreeMap<Label, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

        // inverse[c][q]: predecessors of q on label c, sink included
        let mut inverse = vec![vec![Vec::new(); n + 1]; labels.len()];
        for q in 0..n {
            let mut has = vec![false; labels.len()];
            for &(l, t) in trimmed.moves(q) {
                let c = label_index[&l];
                has[c] = true;
                inverse[c][t].push(q);
            }
            for (c, present) in has.into_iter().enumerate() {
                if !present {
                    inverse[c][sink].push(q);
                }
            }
        }
        for per_label in &mut inverse {
            per_label[sink].push(sink);
        }

        let (accepting, rejecting): (Vec<StateId>, Vec<StateId>) =
            (0..=n).partition(|&q| q < n && trimmed.is_accepting(q));
        let mut blocks = vec![accepting, rejecting];
        let mut block_of = vec![0; n + 1];
        for &q in &blocks[1] {
            block_of[q] = 1;
        }

        let mut work = VecDeque::new();
        let mut pending = HashSet::new();
        let smaller = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
        for c in 0..labels.len() {
            work.push_back((smaller, c));
            pending.insert((smaller, c));
        }

        let mut marked = vec![false; n + 1];
        while let Some((splitter, c)) = work.pop_front() {
            pending.remove(&(splitter, c));
            let mut touched: BTreeMap<usize, Vec<StateId>> = BTreeMap::new();
            let mut marked_list = Vec::new();
            for &q in &blocks[splitter] {
                for &p in &inverse[c][q] {
                    if !marked[p] {
                        marked[p] = true;
                        marked_list.push(p);
                        touched.entry(block_of[p]).or_default().push(p);
                    }
                }
            }
            for (y, inside) in touched {
                if inside.len() < blocks[y].len() {
                    let z = blocks.len();
                    blocks[y].retain(|q| !marked[*q]);
                    for &q in &inside {
                        block_of[q] = z;
                    }
                    blocks.push(inside);
                    for d in 0..labels.len() {
                        if pending.contains(&(y, d)) {
                            work.push_back((z, d));
                            pending.insert((z, d));
                        } else {
                            let pick = if blocks[y].len() <= blocks[z].len() { y } else { z };
                            work.push_back((pick, d));
                            pending.insert((pick, d));
                        }
                    }
                }
            }
            for p in marked_list {
                marked[p] = false;
            }
        }

        let sink_block = block_of[sink];
        let mut index = vec![None; blocks.len()];
        let mut next = 0;
        for (b, members) in blocks.iter().enumerate() {
            if b != sink_block && !members.is_empty() {
                index[b] = Some(next);
                next += 1;
            }
        }
        let mut out = vec![Vec::new(); next];
        let mut accepts = vec![false; next];
        for (b, members) in blocks.iter().enumerate() {
            let Some(id) = index[b] else { continue };
            let rep = members[0];
            accepts[id] = trimmed.is_accepting(rep);
            out[id] = trimmed
                .moves(rep)
                .iter()
                .filter_map(|&(l, t)| index[block_of[t]].map(|t| (l, t)))
                .collect();
        }
        let start = index[block_of[trimmed.start()]].expect("start block survives");
        Dfa::from_parts(trimmed.alphabet().clone(), out, start, accepts).canonical()
    }
}
