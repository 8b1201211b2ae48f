//! Graphviz DOT export. Node ids follow canonical element order so the output
//! is stable.

use std::fmt::Write;

use crate::bundle::QVBundle;
use crate::order::FinLattice;
use crate::space::FinSpace;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// Hasse diagram: one edge per covering pair, drawn bottom to top.
pub fn lattice_dot(l: &FinLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for a in l.elements() {
        writeln!(out, "  n{a} [label={}];", quote(l.label(a))).unwrap();
    }
    for a in l.elements() {
        for b in l.covers(a) {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Specialization diagram: `x -> y` when `x ⊑ y` (every open containing `x`
/// contains `y`), transitively reduced. Topologically equivalent points are
/// joined by a two-way edge.
pub fn space_dot(x: &FinSpace) -> String {
    let mut out = String::from("digraph space {\n  rankdir=BT;\n");
    for p in x.points() {
        writeln!(out, "  p{p} [label={}];", quote(x.label(p))).unwrap();
    }
    let equiv = |a: usize, b: usize| x.specializes(a, b) && x.specializes(b, a);
    for a in x.points() {
        for b in x.points() {
            if a == b || !x.specializes(a, b) {
                continue;
            }
            if equiv(a, b) {
                if a < b {
                    writeln!(out, "  p{a} -> p{b} [dir=both];").unwrap();
                }
                continue;
            }
            let between =
                x.points().any(|c| !equiv(c, a) && !equiv(c, b) && x.specializes(a, c) && x.specializes(c, b));
            if !between {
                writeln!(out, "  p{a} -> p{b};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Bipartite kernel diagram: base points on one side, the subspaces of the
/// carrier on the other, and `x -> κ(x)`.
pub fn bundle_dot(b: &QVBundle) -> String {
    let x = b.base();
    let sub = &b.carrier().sub;
    let mut out = String::from("digraph bundle {\n  rankdir=LR;\n  subgraph cluster_base {\n    label=\"X\";\n");
    for p in x.points() {
        let label = format!("{}\\nκ = {}", x.label(p), sub.key(b.kappa()[p]));
        writeln!(out, "    p{p} [label={}];", quote(&label)).unwrap();
    }
    out.push_str("  }\n  subgraph cluster_sub {\n    label=\"Sub A\";\n");
    for v in 0..sub.len() {
        writeln!(out, "    v{v} [label={}, shape=box];", quote(&sub.key(v))).unwrap();
    }
    out.push_str("  }\n");
    for p in x.points() {
        writeln!(out, "  p{p} -> v{};", b.kappa()[p]).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Number of `->` edges in DOT text produced here.
pub fn edge_count(dot: &str) -> usize {
    dot.lines().filter(|l| l.contains("->")).count()
}

/// Number of node declarations in DOT text produced here.
pub fn node_count(dot: &str) -> usize {
    dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count()
}
