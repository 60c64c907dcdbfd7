use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Reduces an angle into `[0, 2pi)`.
pub fn canonical_phase(phase: f64) -> f64 {
    let r = phase.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Whether `phase` is within `1e-12` of zero modulo `2pi`.
pub fn is_zero_phase(phase: f64) -> bool {
    let p = canonical_phase(phase);
    p < 1e-12 || TAU - p < 1e-12
}

/// Renders a phase as a multiple of pi/2 when it is one (within 1e-12).
pub fn display_phase(phase: f64) -> String {
    let quarters = phase / std::f64::consts::FRAC_PI_2;
    let rounded = quarters.round();
    if (quarters - rounded).abs() < 1e-12 {
        match rounded as i64 % 4 {
            0 => String::new(),
            1 => "π/2".into(),
            2 => "π".into(),
            _ => "3π/2".into(),
        }
    } else {
        format!("{phase:.6}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    Z,
    X,
    /// Boundary leg (input or output).
    B,
}

/// A CNOT slot between working qubit `control` and auxiliary `target`
/// (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub control: usize,
    pub target: usize,
}

impl Slot {
    pub fn new(control: usize, target: usize) -> Self {
        Self { control, target }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.control, self.target)
    }
}

/// Unbound phase contributions attached to a spider. They evaluate as zero
/// until bound against a concrete oracle setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "param", rename_all = "lowercase")]
pub enum Param {
    /// Adaptive measurement switching the CNOT in this slot on (`pi/2`
    /// effect) or off (phase-0 X effect).
    Adaptive { slot: Slot },
    /// `+pi/2` when the slot's CNOT is on.
    Corrective { slot: Slot },
    /// `+pi` when auxiliary `target` carries an X gate.
    Flip { target: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub kind: VertexKind,
    #[serde(default)]
    pub phase: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<Param>,
}

impl Vertex {
    pub fn is_spider(&self) -> bool {
        self.kind != VertexKind::B
    }
}

/// Undirected edge; `h` marks a Hadamard edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
    pub h: bool,
}

impl Edge {
    pub fn touches(&self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }

    pub fn is_self_loop(&self) -> bool {
        self.a == self.b
    }

    /// The endpoint opposite `v`.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

/// Open graph of phased Z/X spiders with ordered input and output legs.
#[derive(Debug, Clone, Default)]
pub struct ZxDiagram {
    vertices: BTreeMap<VertexId, Vertex>,
    edges: Vec<Edge>,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
    next_id: VertexId,
}

impl PartialEq for ZxDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.inputs == other.inputs
            && self.outputs == other.outputs
    }
}

impl ZxDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    fn add_vertex(&mut self, kind: VertexKind, phase: f64) -> VertexId {
        let id = self.next_id;
        self.next_id += 1;
        self.vertices.insert(
            id,
            Vertex {
                id,
                kind,
                phase: canonical_phase(phase),
                params: vec![],
            },
        );
        id
    }

    pub fn add_z(&mut self, phase: f64) -> VertexId {
        self.add_vertex(VertexKind::Z, phase)
    }

    pub fn add_x(&mut self, phase: f64) -> VertexId {
        self.add_vertex(VertexKind::X, phase)
    }

    pub fn add_spider(&mut self, kind: VertexKind, phase: f64) -> VertexId {
        self.add_vertex(kind, phase)
    }

    pub fn add_input(&mut self) -> VertexId {
        let id = self.add_vertex(VertexKind::B, 0.0);
        self.inputs.push(id);
        id
    }

    pub fn add_output(&mut self) -> VertexId {
        let id = self.add_vertex(VertexKind::B, 0.0);
        self.outputs.push(id);
        id
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId, h: bool) {
        self.edges.push(Edge { a, b, h });
    }

    pub fn add_param(&mut self, v: VertexId, p: Param) -> Result<()> {
        self.vertex_mut(v)?.params.push(p);
        Ok(())
    }

    pub fn vertex(&self, v: VertexId) -> Result<&Vertex> {
        self.vertices.get(&v).ok_or(Error::MissingVertex(v))
    }

    pub fn vertex_mut(&mut self, v: VertexId) -> Result<&mut Vertex> {
        self.vertices.get_mut(&v).ok_or(Error::MissingVertex(v))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn set_phase(&mut self, v: VertexId, phase: f64) -> Result<()> {
        self.vertex_mut(v)?.phase = canonical_phase(phase);
        Ok(())
    }

    pub fn add_to_phase(&mut self, v: VertexId, delta: f64) -> Result<()> {
        let vert = self.vertex_mut(v)?;
        vert.phase = canonical_phase(vert.phase + delta);
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.values()
    }

    pub fn spiders(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.values().filter(|v| v.is_spider())
    }

    pub fn spider_count(&self) -> usize {
        self.spiders().count()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub(crate) fn edges_mut(&mut self) -> &mut Vec<Edge> {
        &mut self.edges
    }

    pub fn inputs(&self) -> &[VertexId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[VertexId] {
        &self.outputs
    }

    /// Indices into `edges()` of every edge touching `v`.
    pub fn incident(&self, v: VertexId) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.touches(v))
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of legs at `v`; a self-loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| (e.a == v) as usize + (e.b == v) as usize)
            .sum()
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.edges
            .iter()
            .filter(|e| e.touches(v))
            .map(|e| e.other(v))
            .collect()
    }

    /// Removes `v` and every edge touching it.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<Vertex> {
        let vert = self.vertices.remove(&v).ok_or(Error::MissingVertex(v))?;
        self.edges.retain(|e| !e.touches(v));
        self.inputs.retain(|&i| i != v);
        self.outputs.retain(|&o| o != v);
        Ok(vert)
    }

    pub fn remove_edge(&mut self, index: usize) -> Edge {
        self.edges.remove(index)
    }

    pub fn find_edge(&self, a: VertexId, b: VertexId, h: Option<bool>) -> Option<usize> {
        self.edges.iter().position(|e| {
            ((e.a == a && e.b == b) || (e.a == b && e.b == a)) && h.is_none_or(|h| e.h == h)
        })
    }

    pub fn has_params(&self) -> bool {
        self.vertices.values().any(|v| !v.params.is_empty())
    }

    /// Checks structural invariants: edges reference live vertices, every
    /// boundary has exactly one leg and appears in exactly one of the
    /// boundary lists, and phases are canonical.
    pub fn validate(&self) -> Result<()> {
        for e in &self.edges {
            self.vertex(e.a)?;
            self.vertex(e.b)?;
        }
        for v in self.vertices.values() {
            if !(0.0..TAU).contains(&v.phase) {
                return Err(Error::Precondition(format!(
                    "phase of {} not canonical",
                    v.id
                )));
            }
            if v.kind == VertexKind::B {
                if self.degree(v.id) != 1 {
                    return Err(Error::Precondition(format!(
                        "boundary {} has degree {}",
                        v.id,
                        self.degree(v.id)
                    )));
                }
                let listed = self
                    .inputs
                    .iter()
                    .chain(&self.outputs)
                    .filter(|&&b| b == v.id)
                    .count();
                if listed != 1 {
                    return Err(Error::Precondition(format!(
                        "boundary {} is not listed once",
                        v.id
                    )));
                }
            }
        }
        for b in self.inputs.iter().chain(&self.outputs) {
            if self.vertex(*b)?.kind != VertexKind::B {
                return Err(Error::Precondition(format!(
                    "{b} listed as boundary but is a spider"
                )));
            }
        }
        Ok(())
    }

    /// All spiders are Z, spider-spider edges are Hadamard, boundary legs are
    /// plain, and there are no self-loops or parallel edges.
    pub fn check_graph_like(&self) -> Result<()> {
        if let Some(x) = self.spiders().find(|v| v.kind != VertexKind::Z) {
            return Err(Error::NotGraphLike(format!(
                "vertex {} is an X spider",
                x.id
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.edges {
            if e.is_self_loop() {
                return Err(Error::NotGraphLike(format!("self-loop on {}", e.a)));
            }
            let boundary =
                self.vertex(e.a)?.kind == VertexKind::B || self.vertex(e.b)?.kind == VertexKind::B;
            if boundary && e.h {
                return Err(Error::NotGraphLike(format!(
                    "Hadamard boundary leg {}-{}",
                    e.a, e.b
                )));
            }
            if !boundary && !e.h {
                return Err(Error::NotGraphLike(format!(
                    "plain internal edge {}-{}",
                    e.a, e.b
                )));
            }
            if !seen.insert((e.a.min(e.b), e.a.max(e.b))) {
                return Err(Error::NotGraphLike(format!(
                    "parallel edges {}-{}",
                    e.a, e.b
                )));
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    nodes: Vec<Vertex>,
    edges: Vec<Edge>,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
}

impl Serialize for ZxDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson {
            nodes: self.vertices.values().cloned().collect(),
            edges: self.edges.clone(),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZxDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(d)?;
        let next_id = raw.nodes.iter().map(|v| v.id + 1).max().unwrap_or(0);
        let mut vertices = BTreeMap::new();
        for mut v in raw.nodes {
            v.phase = canonical_phase(v.phase);
            if vertices.insert(v.id, v).is_some() {
                return Err(serde::de::Error::custom("duplicate vertex id"));
            }
        }
        let d = ZxDiagram {
            vertices,
            edges: raw.edges,
            inputs: raw.inputs,
            outputs: raw.outputs,
            next_id,
        };
        d.validate().map_err(serde::de::Error::custom)?;
        Ok(d)
    }
}
