use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::label::Label;

use super::{Dfa, Nfa, StateId};

impl Nfa {
    /// Powerset construction extended with silent closures.
    ///
    /// Subset states are kept as sorted state lists and discovered breadth
    /// first, so the output numbering is reproducible. Only subsets reachable
    /// from the closure of the start state are built; the empty subset is
    /// never materialised.
    pub fn determinize(&self) -> Dfa {
        let initial: Vec<StateId> = self.silent_closure([self.start()]).into_iter().collect();
        let mut index: HashMap<Vec<StateId>, StateId> = HashMap::from([(initial.clone(), 0)]);
        let mut subsets = vec![initial.clone()];
        let mut queue = VecDeque::from([initial]);
        let mut out = Vec::new();

        while let Some(subset) = queue.pop_front() {
            let mut moves: BTreeMap<Label, BTreeSet<StateId>> = BTreeMap::new();
            for &q in &subset {
                for &(l, t) in &self.adjacency()[q] {
                    if l != Label::TAU {
                        moves.entry(l).or_default().insert(t);
                    }
                }
            }
            let mut row = Vec::with_capacity(moves.len());
            for (l, targets) in moves {
                let target: Vec<StateId> = self.silent_closure(targets).into_iter().collect();
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        index.insert(target.clone(), id);
                        subsets.push(target.clone());
                        queue.push_back(target);
                        id
                    }
                };
                row.push((l, id));
            }
            out.push(row);
        }

        let accepts = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.is_accepting(q)))
            .collect();
        Dfa::from_parts(self.alphabet().clone(), out, 0, accepts)
    }
}
