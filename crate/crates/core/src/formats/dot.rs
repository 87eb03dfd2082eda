use std::fmt::Write;

use crate::automata::Nfa;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering. The start state gets an entry arrow, accept states
/// are double circles, silent moves are labelled `τ` and short-circuit
/// moves `χ`.
pub fn export_dot(a: &Nfa) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
    out.push_str("  __start [shape=point];\n");
    for q in 0..a.states() {
        let shape = if a.is_accepting(q) { "doublecircle" } else { "circle" };
        writeln!(out, "  {q} [shape={shape}];").unwrap();
    }
    writeln!(out, "  __start -> {};", a.start()).unwrap();
    for t in a.transitions() {
        let label = t.label.map_or("τ", |l| l.name());
        writeln!(out, "  {} -> {} [label=\"{}\"];", t.from, t.to, escape(label)).unwrap();
    }
    out.push_str("}\n");
    out
}
