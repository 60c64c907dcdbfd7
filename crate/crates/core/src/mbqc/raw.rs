//! The raw adaptive translation of the Simon circuit for every oracle at
//! once.
//!
//! Working line `j` is a `|+>` spider followed by one site per CNOT slot
//! `(j, 1..=n)`, leaving through a Hadamard edge. Auxiliary line `k` starts
//! as `|0>`, enters its Hadamard frame, passes the sites of slots
//! `(1..=n, k)` on plain edges, leaves the frame and ends in an X flip
//! spider. Each slot has a hub Z spider Hadamard-linked to its two sites and
//! a placeholder for the adaptive measurement.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::binary::Gate;
use crate::error::{Error, Result};
use crate::oracle::GateList;
use crate::zx::{Param, Slot, VertexId, VertexKind, ZxDiagram};

/// Which gates of the full oracle network are present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSettings {
    pub n: usize,
    /// `cnot_on[j-1][k-1]` for CNOT(j,k).
    pub cnot_on: Vec<Vec<bool>>,
    /// `x_flip[k-1]` for X(k).
    pub x_flip: Vec<bool>,
}

impl OracleSettings {
    pub fn off(n: usize) -> Self {
        Self {
            n,
            cnot_on: vec![vec![false; n]; n],
            x_flip: vec![false; n],
        }
    }

    /// Gates that appear more than once are rejected.
    pub fn from_gates(list: &GateList) -> Result<Self> {
        let mut s = Self::off(list.n);
        for g in &list.gates {
            let slot = match *g {
                Gate::Cnot { control, target } => &mut s.cnot_on[control - 1][target - 1],
                Gate::X { target } => &mut s.x_flip[target - 1],
            };
            if *slot {
                return Err(Error::Precondition(format!("gate {g} appears twice")));
            }
            *slot = true;
        }
        Ok(s)
    }

    /// CNOTs in slot order, then X gates.
    pub fn to_gates(&self) -> GateList {
        let mut gates = Vec::new();
        for j in 1..=self.n {
            for k in 1..=self.n {
                if self.cnot_on[j - 1][k - 1] {
                    gates.push(Gate::cnot(j, k));
                }
            }
        }
        for k in 1..=self.n {
            if self.x_flip[k - 1] {
                gates.push(Gate::x(k));
            }
        }
        GateList { n: self.n, gates }
    }

    pub fn is_on(&self, slot: Slot) -> bool {
        self.cnot_on[slot.control - 1][slot.target - 1]
    }

    pub fn flips(&self, target: usize) -> bool {
        self.x_flip[target - 1]
    }

    /// All `2^(n^2 + n)` settings; slots vary slowest, in slot order.
    pub fn all(n: usize) -> impl Iterator<Item = OracleSettings> {
        let bits = n * n + n;
        (0..1usize << bits).map(move |code| {
            let bit = |i: usize| (code >> (bits - 1 - i)) & 1 == 1;
            OracleSettings {
                n,
                cnot_on: (0..n)
                    .map(|j| (0..n).map(|k| bit(j * n + k)).collect())
                    .collect(),
                x_flip: (0..n).map(|k| bit(n * n + k)).collect(),
            }
        })
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.n != n
            || self.cnot_on.len() != n
            || self.x_flip.len() != n
            || self.cnot_on.iter().any(|row| row.len() != n)
        {
            return Err(Error::ShapeMismatch(format!(
                "settings do not describe n = {n}"
            )));
        }
        Ok(())
    }
}

/// A diagram whose parameters are still unbound, together with where they
/// sit.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveDiagram {
    pub n: usize,
    pub base: ZxDiagram,
    pub adaptive_nodes: BTreeMap<Slot, VertexId>,
    pub flip_nodes: BTreeMap<usize, VertexId>,
    pub corrective_sites: BTreeMap<Slot, Vec<VertexId>>,
}

impl AdaptiveDiagram {
    /// Rebuilds the parameter maps from the parameters carried by `base`.
    pub fn from_diagram(n: usize, base: ZxDiagram) -> Self {
        let mut a = Self {
            n,
            base,
            adaptive_nodes: BTreeMap::new(),
            flip_nodes: BTreeMap::new(),
            corrective_sites: BTreeMap::new(),
        };
        for v in a.base.vertices() {
            for p in &v.params {
                match *p {
                    Param::Adaptive { slot } => {
                        a.adaptive_nodes.insert(slot, v.id);
                    }
                    Param::Flip { target } => {
                        a.flip_nodes.insert(target, v.id);
                    }
                    Param::Corrective { slot } => {
                        a.corrective_sites.entry(slot).or_default().push(v.id);
                    }
                }
            }
        }
        a
    }
}

pub fn build_raw_translation(n: usize) -> Result<AdaptiveDiagram> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let mut d = ZxDiagram::new();
    let slot = |j, k| Slot::new(j, k);

    let working_init: Vec<VertexId> = (0..n).map(|_| d.add_z(0.0)).collect();
    let aux_init: Vec<VertexId> = (0..n).map(|_| d.add_x(0.0)).collect();
    let mut working_site = BTreeMap::new();
    let mut aux_site = BTreeMap::new();
    for j in 1..=n {
        for k in 1..=n {
            let w = d.add_z(0.0);
            let a = d.add_z(0.0);
            d.add_param(w, Param::Corrective { slot: slot(j, k) })?;
            d.add_param(a, Param::Corrective { slot: slot(j, k) })?;
            working_site.insert((j, k), w);
            aux_site.insert((j, k), a);
        }
    }
    for j in 1..=n {
        for k in 1..=n {
            let hub = d.add_z(0.0);
            let placeholder = d.add_z(0.0);
            d.add_param(placeholder, Param::Adaptive { slot: slot(j, k) })?;
            d.add_edge(working_site[&(j, k)], hub, true);
            d.add_edge(hub, aux_site[&(j, k)], true);
            d.add_edge(hub, placeholder, false);
        }
    }
    let flips: Vec<VertexId> = (1..=n)
        .map(|k| {
            let f = d.add_x(0.0);
            d.add_param(f, Param::Flip { target: k }).map(|_| f)
        })
        .collect::<Result<_>>()?;

    for j in 1..=n {
        let mut prev = working_init[j - 1];
        for k in 1..=n {
            d.add_edge(prev, working_site[&(j, k)], false);
            prev = working_site[&(j, k)];
        }
        let out = d.add_output();
        d.add_edge(prev, out, true);
    }
    for k in 1..=n {
        let mut prev = aux_init[k - 1];
        let mut h = true;
        for j in 1..=n {
            d.add_edge(prev, aux_site[&(j, k)], h);
            prev = aux_site[&(j, k)];
            h = false;
        }
        d.add_edge(prev, flips[k - 1], true);
        let out = d.add_output();
        d.add_edge(flips[k - 1], out, false);
    }
    Ok(AdaptiveDiagram::from_diagram(n, d))
}

/// Resolves every parameter of `d` under `s`: an adaptive slot that is on
/// adds `pi/2`, one that is off becomes a phase-0 X effect (a one-leg
/// placeholder changes colour, anything else gets the effect attached by a
/// plain edge); corrective sites add `pi/2` per slot that is on; flip nodes
/// add `pi` when the X gate is present.
pub fn bind_params(d: &ZxDiagram, s: &OracleSettings) -> Result<ZxDiagram> {
    let mut out = d.clone();
    let ids: Vec<VertexId> = d
        .vertices()
        .filter(|v| !v.params.is_empty())
        .map(|v| v.id)
        .collect();
    for v in ids {
        let params = std::mem::take(&mut out.vertex_mut(v)?.params);
        let mut delta = 0.0;
        let mut measured_off = false;
        for p in params {
            match p {
                Param::Adaptive { slot } if s.is_on(slot) => delta += FRAC_PI_2,
                Param::Adaptive { .. } => measured_off = true,
                Param::Corrective { slot } if s.is_on(slot) => delta += FRAC_PI_2,
                Param::Corrective { .. } => {}
                Param::Flip { target } if s.flips(target) => delta += PI,
                Param::Flip { .. } => {}
            }
        }
        out.add_to_phase(v, delta)?;
        if measured_off {
            let vert = out.vertex(v)?;
            let pendant = vert.kind == VertexKind::Z
                && crate::zx::is_zero_phase(vert.phase)
                && out.degree(v) == 1;
            if pendant {
                out.vertex_mut(v)?.kind = VertexKind::X;
            } else {
                let x = out.add_x(0.0);
                out.add_edge(v, x, false);
            }
        }
    }
    Ok(out)
}

pub fn instantiate(a: &AdaptiveDiagram, s: &OracleSettings) -> Result<ZxDiagram> {
    s.check(a.n)?;
    bind_params(&a.base, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{run_state, Circuit};
    use crate::zx::{eval_tensor, proportionality_residual, Tensor};

    fn circuit_tensor(s: &OracleSettings) -> Tensor {
        let c = Circuit::simon(&s.to_gates()).with_working_hadamards(s.n);
        Tensor::new(2 * s.n, run_state(&c).unwrap().into_amplitudes()).unwrap()
    }

    #[test]
    fn node_counts() {
        for n in 1..=3 {
            let a = build_raw_translation(n).unwrap();
            assert_eq!(a.base.spider_count(), 2 * n + 4 * n * n + n);
            assert_eq!(a.base.outputs().len(), 2 * n);
            assert_eq!(a.adaptive_nodes.len(), n * n);
            assert_eq!(a.flip_nodes.len(), n);
            assert!(a.corrective_sites.values().all(|v| v.len() == 2));
            a.base.validate().unwrap();
        }
        let a = build_raw_translation(2).unwrap();
        assert_eq!(a.base.spider_count(), 22);
        assert!(build_raw_translation(0).is_err());
    }

    #[test]
    fn settings_round_trip() {
        let all: Vec<_> = OracleSettings::all(2).collect();
        assert_eq!(all.len(), 64);
        for s in &all {
            assert_eq!(&OracleSettings::from_gates(&s.to_gates()).unwrap(), s);
        }
        let dup = GateList::new(2, vec![Gate::x(1), Gate::x(1)]).unwrap();
        assert!(OracleSettings::from_gates(&dup).is_err());
    }

    #[test]
    fn every_setting_matches_the_circuit() {
        for n in 1..=2 {
            let a = build_raw_translation(n).unwrap();
            for s in OracleSettings::all(n) {
                let d = instantiate(&a, &s).unwrap();
                assert!(!d.has_params());
                let r = proportionality_residual(&eval_tensor(&d).unwrap(), &circuit_tensor(&s));
                assert!(r.is_some_and(|r| r < 1e-9), "{s:?}: {r:?}");
            }
        }
    }

    #[test]
    fn uncorrected_gadgets_are_wrong() {
        let a = build_raw_translation(2).unwrap();
        let mut s = OracleSettings::off(2);
        s.cnot_on[0][1] = true;
        let mut d = instantiate(&a, &s).unwrap();
        for &v in &a.corrective_sites[&Slot::new(1, 2)] {
            d.add_to_phase(v, -FRAC_PI_2).unwrap();
        }
        let r = proportionality_residual(&eval_tensor(&d).unwrap(), &circuit_tensor(&s));
        assert!(!r.is_some_and(|r| r < 1e-3));
    }

    #[test]
    fn shape_mismatch() {
        let a = build_raw_translation(2).unwrap();
        assert!(matches!(
            instantiate(&a, &OracleSettings::off(3)),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
