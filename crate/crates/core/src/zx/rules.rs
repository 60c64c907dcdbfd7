//! Rewrite rules. Each rule has an in-place form on `&mut ZxDiagram` and a
//! value form that returns a rewritten copy. All rules preserve the tensor up
//! to a nonzero scalar.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::diagram::{Edge, VertexId, VertexKind, ZxDiagram};
use crate::error::{Error, Result};

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn spider_kind(d: &ZxDiagram, v: VertexId) -> Result<VertexKind> {
    let kind = d.vertex(v)?.kind;
    if kind == VertexKind::B {
        return Err(precondition(format!("{v} is a boundary")));
    }
    Ok(kind)
}

/// Number of Hadamards an edge carries once every X spider is rewritten as a
/// Z spider with Hadamards on its legs.
fn effective_h(d: &ZxDiagram, e: &Edge) -> usize {
    let x = |v| (d.vertex(v).map(|v| v.kind) == Ok(VertexKind::X)) as usize;
    e.h as usize + x(e.a) + x(e.b)
}

/// Drops self-loops at `v` (a Hadamard loop adds `pi`) and cancels parallel
/// edge pairs that each carry an odd number of effective Hadamards.
fn normalize_at(d: &mut ZxDiagram, v: VertexId) -> Result<()> {
    let mut extra = 0.0;
    d.edges_mut().retain(|e| {
        if e.a == v && e.b == v {
            if e.h {
                extra += PI;
            }
            false
        } else {
            true
        }
    });
    if extra != 0.0 {
        d.add_to_phase(v, extra)?;
    }

    let mut odd: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for i in d.incident(v) {
        let e = d.edges()[i];
        let w = e.other(v);
        if d.vertex(w)?.is_spider() && effective_h(d, &e) % 2 == 1 {
            odd.entry(w).or_default().push(i);
        }
    }
    let mut doomed: Vec<usize> = odd
        .into_values()
        .flat_map(|idx| {
            let keep = idx.len() % 2;
            idx.into_iter().skip(keep)
        })
        .collect();
    doomed.sort_unstable_by(|a, b| b.cmp(a));
    for i in doomed {
        d.remove_edge(i);
    }
    Ok(())
}

/// Fuses spiders `a` and `b`, which must be the same colour and joined by a
/// plain edge. The smaller id survives.
pub fn fuse_in_place(d: &mut ZxDiagram, a: VertexId, b: VertexId) -> Result<VertexId> {
    if a == b {
        return Err(precondition("cannot fuse a spider with itself"));
    }
    if spider_kind(d, a)? != spider_kind(d, b)? {
        return Err(precondition(format!("{a} and {b} differ in colour")));
    }
    let idx = d
        .find_edge(a, b, Some(false))
        .ok_or_else(|| precondition(format!("no plain edge between {a} and {b}")))?;
    d.remove_edge(idx);
    let (keep, gone) = (a.min(b), a.max(b));
    let removed = d.vertex(gone)?.clone();
    {
        let k = d.vertex_mut(keep)?;
        k.params.extend(removed.params.iter().copied());
    }
    d.add_to_phase(keep, removed.phase)?;
    for e in d.edges_mut() {
        if e.a == gone {
            e.a = keep;
        }
        if e.b == gone {
            e.b = keep;
        }
    }
    d.remove_vertex(gone)?;
    normalize_at(d, keep)?;
    Ok(keep)
}

pub fn fuse_spiders(d: &ZxDiagram, a: VertexId, b: VertexId) -> Result<ZxDiagram> {
    let mut out = d.clone();
    fuse_in_place(&mut out, a, b)?;
    Ok(out)
}

/// Swaps the colour of `v` and toggles every incident non-loop edge between
/// plain and Hadamard.
pub fn color_change_in_place(d: &mut ZxDiagram, v: VertexId) -> Result<()> {
    let kind = spider_kind(d, v)?;
    d.vertex_mut(v)?.kind = if kind == VertexKind::Z {
        VertexKind::X
    } else {
        VertexKind::Z
    };
    for e in d.edges_mut() {
        if e.touches(v) && !e.is_self_loop() {
            e.h = !e.h;
        }
    }
    Ok(())
}

pub fn color_change(d: &ZxDiagram, v: VertexId) -> Result<ZxDiagram> {
    let mut out = d.clone();
    color_change_in_place(&mut out, v)?;
    Ok(out)
}

/// Deletes a phase-free, parameter-free degree-2 spider whose two legs are
/// the same type, joining its neighbours with a plain edge.
pub fn remove_identity_in_place(d: &mut ZxDiagram, v: VertexId) -> Result<()> {
    spider_kind(d, v)?;
    let vert = d.vertex(v)?;
    if !super::diagram::is_zero_phase(vert.phase) || !vert.params.is_empty() {
        return Err(precondition(format!("{v} carries a phase")));
    }
    let inc = d.incident(v);
    if inc.len() != 2 || d.degree(v) != 2 {
        return Err(precondition(format!("{v} has degree {}", d.degree(v))));
    }
    let (e1, e2) = (d.edges()[inc[0]], d.edges()[inc[1]]);
    if e1.h != e2.h {
        return Err(precondition(format!("{v} has mixed leg types")));
    }
    let (u, w) = (e1.other(v), e2.other(v));
    d.remove_vertex(v)?;
    d.add_edge(u, w, false);
    for x in [u, w] {
        if d.vertex(x)?.is_spider() {
            normalize_at(d, x)?;
        }
    }
    Ok(())
}

pub fn remove_identity(d: &ZxDiagram, v: VertexId) -> Result<ZxDiagram> {
    let mut out = d.clone();
    remove_identity_in_place(&mut out, v)?;
    Ok(out)
}

/// Copies a phase-0 X state through the phase-0 Z spider it is plugged into:
/// the Z spider disappears and each of its other legs receives its own X(0)
/// state, on an edge of the same type. Returns the new state ids.
pub fn copy_in_place(d: &mut ZxDiagram, state: VertexId) -> Result<Vec<VertexId>> {
    let s = d.vertex(state)?;
    if s.kind != VertexKind::X || !super::diagram::is_zero_phase(s.phase) || !s.params.is_empty() {
        return Err(precondition(format!("{state} is not a phase-0 X spider")));
    }
    let inc = d.incident(state);
    if inc.len() != 1 || d.degree(state) != 1 || d.edges()[inc[0]].h {
        return Err(precondition(format!("{state} is not a plain-edged state")));
    }
    let z = d.edges()[inc[0]].other(state);
    let zv = d.vertex(z)?;
    if zv.kind != VertexKind::Z || !super::diagram::is_zero_phase(zv.phase) || !zv.params.is_empty()
    {
        return Err(precondition(format!("{z} is not a phase-0 Z spider")));
    }
    let legs: Vec<Edge> = d
        .incident(z)
        .into_iter()
        .map(|i| d.edges()[i])
        .filter(|e| !e.touches(state))
        .collect();
    if legs.iter().any(|e| e.is_self_loop()) {
        return Err(precondition(format!("{z} has a self-loop")));
    }
    d.remove_vertex(state)?;
    d.remove_vertex(z)?;
    let mut fresh = Vec::with_capacity(legs.len());
    for e in legs {
        let x = d.add_x(0.0);
        d.add_edge(x, e.other(z), e.h);
        fresh.push(x);
    }
    Ok(fresh)
}

pub fn copy_rule(d: &ZxDiagram, state: VertexId) -> Result<ZxDiagram> {
    let mut out = d.clone();
    copy_in_place(&mut out, state)?;
    Ok(out)
}

/// Splits edge `index` (between `u` and `v`, in stored order) with a fresh
/// Z(0) spider: `u -[h]- new - v`. Returns the new spider.
pub fn insert_identity_in_place(d: &mut ZxDiagram, index: usize) -> Result<VertexId> {
    if index >= d.edges().len() {
        return Err(Error::IndexOutOfRange {
            index,
            max: d.edges().len(),
        });
    }
    let e = d.remove_edge(index);
    let z = d.add_z(0.0);
    d.add_edge(e.a, z, e.h);
    d.add_edge(z, e.b, false);
    Ok(z)
}
