//! Random diagram generators used by the soundness sweeps.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::Rng;

use super::diagram::{VertexId, VertexKind, ZxDiagram};

#[derive(Debug, Clone)]
pub struct RandomSpec {
    pub max_spiders: usize,
    pub max_inputs: usize,
    pub max_outputs: usize,
    pub edge_prob: f64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self {
            max_spiders: 5,
            max_inputs: 2,
            max_outputs: 3,
            edge_prob: 0.5,
        }
    }
}

fn random_phase(rng: &mut impl Rng) -> f64 {
    if rng.gen_bool(0.5) {
        rng.gen_range(0..4) as f64 * FRAC_PI_2
    } else {
        rng.gen_range(0.0..TAU)
    }
}

fn random_kind(rng: &mut impl Rng) -> VertexKind {
    if rng.gen_bool(0.5) {
        VertexKind::Z
    } else {
        VertexKind::X
    }
}

fn pick(rng: &mut impl Rng, ids: &[VertexId]) -> VertexId {
    ids[rng.gen_range(0..ids.len())]
}

/// Random diagram with at least one spider and at most
/// `max_inputs + max_outputs` legs. Parallel edges and self-loops occur.
pub fn random_diagram(rng: &mut impl Rng, spec: &RandomSpec) -> ZxDiagram {
    let mut d = ZxDiagram::new();
    let k = rng.gen_range(1..=spec.max_spiders.max(1));
    let spiders: Vec<VertexId> = (0..k)
        .map(|_| d.add_spider(random_kind(rng), random_phase(rng)))
        .collect();
    for i in 0..k {
        for j in i + 1..k {
            if rng.gen_bool(spec.edge_prob) {
                d.add_edge(spiders[i], spiders[j], rng.gen_bool(0.5));
                if rng.gen_bool(0.1) {
                    d.add_edge(spiders[i], spiders[j], rng.gen_bool(0.5));
                }
            }
        }
        if rng.gen_bool(0.05) {
            d.add_edge(spiders[i], spiders[i], rng.gen_bool(0.5));
        }
    }
    for _ in 0..rng.gen_range(0..=spec.max_inputs) {
        let b = d.add_input();
        d.add_edge(b, pick(rng, &spiders), rng.gen_bool(0.5));
    }
    for _ in 0..rng.gen_range(0..=spec.max_outputs) {
        let b = d.add_output();
        d.add_edge(pick(rng, &spiders), b, rng.gen_bool(0.5));
    }
    d
}

/// Random diagram containing two same-colour spiders joined by a plain edge.
pub fn with_fusable_pair(rng: &mut impl Rng, spec: &RandomSpec) -> (ZxDiagram, VertexId, VertexId) {
    let mut d = random_diagram(rng, spec);
    let spiders: Vec<VertexId> = d.spiders().map(|v| v.id).collect();
    let a = pick(rng, &spiders);
    let kind = d.vertex(a).expect("listed").kind;
    let b = d.add_spider(kind, random_phase(rng));
    d.add_edge(a, b, false);
    for &s in &spiders {
        if rng.gen_bool(spec.edge_prob) {
            d.add_edge(b, s, rng.gen_bool(0.5));
        }
    }
    if rng.gen_bool(0.5) {
        let o = d.add_output();
        d.add_edge(b, o, rng.gen_bool(0.5));
    }
    (d, a, b)
}

/// Random diagram with a phase-0 degree-2 spider whose legs share a type.
pub fn with_identity_spider(rng: &mut impl Rng, spec: &RandomSpec) -> (ZxDiagram, VertexId) {
    let mut d = random_diagram(rng, spec);
    let spiders: Vec<VertexId> = d.spiders().map(|v| v.id).collect();
    let h = rng.gen_bool(0.5);
    let v = d.add_spider(random_kind(rng), 0.0);
    let u = pick(rng, &spiders);
    d.add_edge(u, v, h);
    if rng.gen_bool(0.3) {
        let o = d.add_output();
        d.add_edge(v, o, h);
    } else {
        d.add_edge(v, pick(rng, &spiders), h);
    }
    (d, v)
}

/// Random diagram with a phase-0 X state plugged into a phase-0 Z spider.
pub fn with_copy_site(rng: &mut impl Rng, spec: &RandomSpec) -> (ZxDiagram, VertexId) {
    let mut d = random_diagram(rng, spec);
    let spiders: Vec<VertexId> = d.spiders().map(|v| v.id).collect();
    let z = d.add_z(0.0);
    for _ in 0..rng.gen_range(1..=3) {
        if rng.gen_bool(0.3) {
            let o = d.add_output();
            d.add_edge(z, o, rng.gen_bool(0.5));
        } else {
            d.add_edge(z, pick(rng, &spiders), rng.gen_bool(0.5));
        }
    }
    let x = d.add_x(0.0);
    d.add_edge(x, z, false);
    (d, x)
}
