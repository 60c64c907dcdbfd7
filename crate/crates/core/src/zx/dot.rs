//! Graphviz export.

use std::fmt::Write;

use super::diagram::{display_phase, Param, VertexKind, ZxDiagram};

fn param_label(p: &Param) -> String {
    match p {
        Param::Adaptive { slot } => format!("a{slot}"),
        Param::Corrective { slot } => format!("c{slot}"),
        Param::Flip { target } => format!("f{target}"),
    }
}

/// Z spiders as green ellipses, X spiders red, boundaries as plain labels,
/// Hadamard edges dashed blue.
pub fn to_dot(d: &ZxDiagram) -> String {
    let mut s = String::from("graph zx {\n  rankdir=LR;\n");
    for v in d.vertices() {
        let mut label = display_phase(v.phase);
        for p in &v.params {
            if !label.is_empty() {
                label.push('+');
            }
            label.push_str(&param_label(p));
        }
        let attrs = match v.kind {
            VertexKind::Z => {
                format!("shape=ellipse, style=filled, fillcolor=green, label=\"{label}\"")
            }
            VertexKind::X => {
                format!("shape=ellipse, style=filled, fillcolor=red, label=\"{label}\"")
            }
            VertexKind::B => {
                let (side, pos) = match d.inputs().iter().position(|&i| i == v.id) {
                    Some(p) => ("in", p),
                    None => (
                        "out",
                        d.outputs().iter().position(|&o| o == v.id).unwrap_or(0),
                    ),
                };
                format!("shape=plaintext, label=\"{side}{pos}\"")
            }
        };
        writeln!(s, "  n{} [{attrs}];", v.id).expect("string write");
    }
    for e in d.edges() {
        let style = if e.h {
            " [style=dashed, color=blue]"
        } else {
            ""
        };
        writeln!(s, "  n{} -- n{}{style};", e.a, e.b).expect("string write");
    }
    s.push_str("}\n");
    s
}
