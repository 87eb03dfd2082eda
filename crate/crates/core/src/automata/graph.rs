//! Label-agnostic graph routines shared by [`Nfa`](super::Nfa) and [`Dfa`](super::Dfa).

use crate::label::Label;

use super::StateId;

pub(crate) type Adjacency = Vec<Vec<(Label, StateId)>>;

pub(crate) fn reachable(out: &Adjacency, from: StateId) -> Vec<bool> {
    let mut seen = vec![false; out.len()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(q) = stack.pop() {
        for &(_, t) in &out[q] {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen
}

pub(crate) fn reverse(out: &Adjacency) -> Vec<Vec<StateId>> {
    let mut rev = vec![Vec::new(); out.len()];
    for (q, moves) in out.iter().enumerate() {
        for &(_, t) in moves {
            rev[t].push(q);
        }
    }
    rev
}

/// States from which some state in `targets` can be reached.
pub(crate) fn coreachable(out: &Adjacency, targets: impl IntoIterator<Item = StateId>) -> Vec<bool> {
    let rev = reverse(out);
    let mut seen = vec![false; out.len()];
    let mut stack: Vec<StateId> = targets.into_iter().collect();
    for &q in &stack {
        seen[q] = true;
    }
    while let Some(q) = stack.pop() {
        for &p in &rev[q] {
            if !seen[p] {
                seen[p] = true;
                stack.push(p);
            }
        }
    }
    seen
}

/// Keeps only the flagged states, preserving their relative order.
/// Returns the restricted adjacency and the old-to-new index map.
pub(crate) fn restrict(out: &Adjacency, keep: &[bool]) -> (Adjacency, Vec<Option<StateId>>) {
    let mut index = vec![None; out.len()];
    let mut next = 0;
    for (q, &k) in keep.iter().enumerate() {
        if k {
            index[q] = Some(next);
            next += 1;
        }
    }
    let restricted = out
        .iter()
        .enumerate()
        .filter(|(q, _)| keep[*q])
        .map(|(_, moves)| {
            moves
                .iter()
                .filter_map(|&(l, t)| index[t].map(|t| (l, t)))
                .collect()
        })
        .collect();
    (restricted, index)
}

pub(crate) fn strongly_connected(out: &Adjacency) -> bool {
    if out.is_empty() {
        return true;
    }
    reachable(out, 0).iter().all(|&r| r) && coreachable(out, [0]).iter().all(|&r| r)
}

pub(crate) fn has_cycle(out: &Adjacency) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let mut mark = vec![Mark::New; out.len()];
    for root in 0..out.len() {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Open;
        while let Some((q, i)) = stack.last_mut() {
            let q = *q;
            if let Some(&(_, t)) = out[q].get(*i) {
                *i += 1;
                match mark[t] {
                    Mark::Open => return true,
                    Mark::New => {
                        mark[t] = Mark::Open;
                        stack.push((t, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[q] = Mark::Done;
                stack.pop();
            }
        }
    }
    false
}

/// Strongly connected components (Tarjan), in reverse topological order.
pub(crate) fn components(succ: &[Vec<StateId>]) -> Vec<Vec<StateId>> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*i) {
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}
