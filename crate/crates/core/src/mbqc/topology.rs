//! Cluster topologies of the n-qubit Simon pattern.
//!
//! The compact form places working and auxiliary qubits alternately on a
//! ring of `2n` nodes with one gadget edge per working/auxiliary pair. The
//! expanded form replaces each gadget edge by a measurement node and two
//! Hadamard edges.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Working,
    Auxiliary,
    Gadget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Compact,
    Expanded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopoNode {
    pub id: usize,
    pub kind: String,
    pub phase: f64,
    pub role: Role,
    /// `w<j>`, `a<k>` or `g<j><k>`.
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopoEdge {
    pub a: usize,
    pub b: usize,
    pub h: bool,
    #[serde(default)]
    pub gadget: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterTopology {
    pub n: usize,
    pub form: Form,
    pub nodes: Vec<TopoNode>,
    pub edges: Vec<TopoEdge>,
    /// Nodes carrying a protruding output leg.
    pub legs: Vec<usize>,
}

fn node(id: usize, role: Role, label: String) -> TopoNode {
    TopoNode {
        id,
        kind: "Z".into(),
        phase: 0.0,
        role,
        label,
    }
}

/// Ring position of working qubit `j` is `2(j-1)`, of auxiliary `k` is
/// `2k-1`.
pub fn topology(n: usize, form: Form) -> Result<ClusterTopology> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let working = |j: usize| 2 * (j - 1);
    let aux = |k: usize| 2 * k - 1;
    let mut nodes: Vec<TopoNode> = (0..2 * n)
        .map(|i| {
            if i % 2 == 0 {
                node(i, Role::Working, format!("w{}", i / 2 + 1))
            } else {
                node(i, Role::Auxiliary, format!("a{}", i / 2 + 1))
            }
        })
        .collect();
    let mut edges = Vec::new();
    for j in 1..=n {
        for k in 1..=n {
            match form {
                Form::Compact => edges.push(TopoEdge {
                    a: working(j),
                    b: aux(k),
                    h: false,
                    gadget: true,
                }),
                Form::Expanded => {
                    let g = nodes.len();
                    nodes.push(node(g, Role::Gadget, format!("g{j}{k}")));
                    edges.push(TopoEdge {
                        a: working(j),
                        b: g,
                        h: true,
                        gadget: false,
                    });
                    edges.push(TopoEdge {
                        a: g,
                        b: aux(k),
                        h: true,
                        gadget: false,
                    });
                }
            }
        }
    }
    let legs = (1..=n).map(working).collect();
    Ok(ClusterTopology {
        n,
        form,
        nodes,
        edges,
        legs,
    })
}

impl ClusterTopology {
    pub fn gadget_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.gadget).count()
    }

    pub fn hadamard_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.h).count()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let form = match self.form {
            Form::Compact => "compact",
            Form::Expanded => "expanded",
        };
        writeln!(s, "// n = {}, {form} form", self.n).expect("string write");
        writeln!(
            s,
            "// nodes: {}, gadget edges: {}, hadamard edges: {}, legs: {}",
            self.nodes.len(),
            self.gadget_edge_count(),
            self.hadamard_edge_count(),
            self.legs.len()
        )
        .expect("string write");
        s.push_str("graph cluster {\n  layout=circo;\n");
        for v in &self.nodes {
            let fill = match v.role {
                Role::Working => "green",
                Role::Auxiliary => "palegreen",
                Role::Gadget => "gray",
            };
            writeln!(
                s,
                "  n{} [shape=circle, style=filled, fillcolor={fill}, label=\"{}\"];",
                v.id, v.label
            )
            .expect("string write");
        }
        for e in &self.edges {
            let style = if e.gadget {
                "style=dashed, color=red"
            } else {
                "style=dashed, color=blue"
            };
            writeln!(s, "  n{} -- n{} [{style}];", e.a, e.b).expect("string write");
        }
        for (i, &v) in self.legs.iter().enumerate() {
            writeln!(
                s,
                "  out{i} [shape=plaintext, label=\"\"];\n  n{v} -- out{i};"
            )
            .expect("string write");
        }
        s.push_str("}\n");
        s
    }
}
