//! Graphviz rendering of a chord diagram.

use std::f64::consts::TAU;
use std::fmt::Write;

use knotproj_core::ChordDiagram;

/// Positions become circle nodes pinned around a circle in traversal
/// order; each chord is an edge between its two occurrences.
pub fn chord_diagram_dot(cd: &ChordDiagram) -> String {
    let m = cd.len();
    let mut out = String::from("graph chord_diagram {\n  layout=neato;\n  node [shape=circle];\n");
    for (i, &label) in cd.word().iter().enumerate() {
        // Clockwise from the top.
        let angle = TAU * i as f64 / m as f64;
        // Snap tiny values so that `-0.000` never appears.
        let snap = |v: f64| if v.abs() < 5e-4 { 0.0 } else { v };
        let (x, y) = (snap(2.0 * angle.sin()), snap(2.0 * angle.cos()));
        writeln!(out, "  p{i} [label=\"{label}\", pos=\"{x:.3},{y:.3}!\"];").unwrap();
    }
    for [a, b] in cd.position_table() {
        writeln!(out, "  p{a} -- p{b};").unwrap();
    }
    out.push_str("}\n");
    out
}
