//! The fixed simplification pipeline from the raw translation to a
//! graph-like diagram.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::zx::{
    color_change_in_place, fuse_in_place, is_zero_phase, remove_identity_in_place, VertexId,
    VertexKind, ZxDiagram,
};

pub const STAGES: [&str; 5] = [
    "plug-auxiliary",
    "color-change",
    "fuse",
    "remove-identities",
    "readout-spiders",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stage {
    pub name: String,
    pub diagram: ZxDiagram,
}

fn stuck(stage: &str, reason: impl Into<String>) -> Error {
    Error::PipelineStuck {
        stage: stage.into(),
        reason: reason.into(),
    }
}

/// Replaces the second half of the outputs (the auxiliary register) with
/// phase-0 X effects on the same edge type.
pub fn plug_auxiliary(d: &mut ZxDiagram) -> Result<()> {
    let outs = d.outputs().to_vec();
    if outs.is_empty() || !outs.len().is_multiple_of(2) || !d.inputs().is_empty() {
        return Err(stuck(
            STAGES[0],
            format!("expected a state with 2n outputs, got {}", outs.len()),
        ));
    }
    for &b in &outs[outs.len() / 2..] {
        let e = d.edges()[d.incident(b)[0]];
        let w = e.other(b);
        d.remove_vertex(b)?;
        let x = d.add_x(0.0);
        d.add_edge(w, x, e.h);
    }
    Ok(())
}

pub fn color_change_all(d: &mut ZxDiagram) -> Result<()> {
    let xs: Vec<VertexId> = d
        .spiders()
        .filter(|v| v.kind == VertexKind::X)
        .map(|v| v.id)
        .collect();
    for x in xs {
        color_change_in_place(d, x)?;
    }
    Ok(())
}

fn is_spider(d: &ZxDiagram, v: VertexId) -> bool {
    d.vertex(v).is_ok_and(|v| v.is_spider())
}

/// Fuses plain edges between distinct Z spiders until none remain. Returns
/// the number of fusions.
pub fn fuse_all(d: &mut ZxDiagram) -> Result<usize> {
    let mut count = 0;
    loop {
        let next = d.edges().iter().find(|e| {
            !e.h && !e.is_self_loop()
                && is_spider(d, e.a)
                && is_spider(d, e.b)
                && d.vertex(e.a).map(|v| v.kind) == d.vertex(e.b).map(|v| v.kind)
        });
        match next.copied() {
            Some(e) => {
                fuse_in_place(d, e.a, e.b)?;
                count += 1;
            }
            None => return Ok(count),
        }
    }
}

/// Removes parameter-free phase-0 degree-2 spiders whose legs share a type,
/// fusing any plain spider edges this exposes.
pub fn remove_identities(d: &mut ZxDiagram) -> Result<usize> {
    let mut count = 0;
    loop {
        let next = d.spiders().find(|v| {
            is_zero_phase(v.phase) && v.params.is_empty() && d.degree(v.id) == 2 && {
                let inc = d.incident(v.id);
                inc.len() == 2 && d.edges()[inc[0]].h == d.edges()[inc[1]].h
            }
        });
        match next.map(|v| v.id) {
            Some(v) => {
                remove_identity_in_place(d, v)?;
                fuse_all(d)?;
                count += 1;
            }
            None => return Ok(count),
        }
    }
}

/// Routes every Hadamard output leg through a fresh Z(0) spider:
/// `v -H- r - out`.
pub fn insert_readout_spiders(d: &mut ZxDiagram) -> Result<()> {
    for b in d.outputs().to_vec() {
        let idx = d.incident(b)[0];
        let e = d.edges()[idx];
        if e.h {
            let v = e.other(b);
            d.remove_edge(idx);
            let r = d.add_z(0.0);
            d.add_edge(v, r, true);
            d.add_edge(r, b, false);
        }
    }
    Ok(())
}

/// Runs the pipeline, returning the input followed by the diagram after each
/// stage.
pub fn simplify_stages(d: &ZxDiagram) -> Result<Vec<Stage>> {
    d.validate()?;
    let mut stages = vec![Stage {
        name: "input".into(),
        diagram: d.clone(),
    }];
    let mut cur = d.clone();
    for name in STAGES {
        match name {
            "plug-auxiliary" => plug_auxiliary(&mut cur)?,
            "color-change" => color_change_all(&mut cur)?,
            "fuse" => {
                fuse_all(&mut cur)?;
            }
            "remove-identities" => {
                remove_identities(&mut cur)?;
            }
            _ => insert_readout_spiders(&mut cur)?,
        }
        stages.push(Stage {
            name: name.into(),
            diagram: cur.clone(),
        });
    }
    cur.check_graph_like()
        .map_err(|e| stuck("graph-like", e.to_string()))?;
    Ok(stages)
}

pub fn simplify_to_mbqc(d: &ZxDiagram) -> Result<ZxDiagram> {
    Ok(simplify_stages(d)?.pop().expect("nonempty").diagram)
}
