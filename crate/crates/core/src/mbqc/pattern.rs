//! Measurement patterns on cluster states.
//!
//! Qubits are the spiders of a graph-like diagram and Hadamard edges are the
//! CZ bonds. Every qubit that is not an output is measured with outcome 0:
//! a planar measurement at angle `a` contracts the qubit with
//! `<0| + e^{ia}<1|`, a computational one with `<0|`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::raw::OracleSettings;
use crate::binary::BitString;
use crate::circuit::{distribution_from_probs, Distribution};
use crate::error::{Error, Result};
use crate::zx::{canonical_phase, is_zero_phase, Param, Tensor, VertexId, ZxDiagram, MAX_WIDTH};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "basis", rename_all = "lowercase")]
pub enum Basis {
    /// Equatorial measurement; angle 0 is the x basis, `pi/2` the y basis.
    Planar {
        angle: f64,
    },
    Computational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    #[serde(flatten)]
    pub basis: Basis,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<Param>,
}

impl Measurement {
    fn effect(&self) -> Result<[C64; 2]> {
        if !self.params.is_empty() {
            return Err(Error::Unbound);
        }
        Ok(match self.basis {
            Basis::Planar { angle } => [C64::new(1.0, 0.0), C64::from_polar(1.0, angle)],
            Basis::Computational => [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementPattern {
    pub nodes: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub measurements: BTreeMap<VertexId, Measurement>,
    pub outputs: Vec<VertexId>,
    /// Measured qubits whose outcomes are read out rather than post-selected
    /// (the auxiliary register). Both outcomes are summed over when computing
    /// output statistics.
    #[serde(default)]
    pub readouts: Vec<VertexId>,
}

/// Reads a graph-like state diagram as a pattern. Spiders attached to an
/// output boundary are the outputs and must carry no phase; every other
/// spider is measured at its phase, keeping its unbound parameters. Spiders
/// carrying a flip parameter become readouts.
pub fn extract_pattern(d: &ZxDiagram) -> Result<MeasurementPattern> {
    d.check_graph_like()?;
    if !d.inputs().is_empty() {
        return Err(Error::NotGraphLike(
            "pattern diagrams have no inputs".into(),
        ));
    }
    let mut outputs = Vec::new();
    for &b in d.outputs() {
        let v = d.neighbors(b)[0];
        let vert = d.vertex(v)?;
        if !vert.is_spider() {
            return Err(Error::NotGraphLike(format!("output {b} is a bare wire")));
        }
        if !is_zero_phase(vert.phase) || !vert.params.is_empty() {
            return Err(Error::NotGraphLike(format!(
                "output spider {v} carries a phase"
            )));
        }
        if outputs.contains(&v) {
            return Err(Error::NotGraphLike(format!(
                "spider {v} has two output legs"
            )));
        }
        outputs.push(v);
    }
    let nodes: Vec<VertexId> = d.spiders().map(|v| v.id).collect();
    let edges = d
        .edges()
        .iter()
        .filter(|e| e.h)
        .map(|e| (e.a.min(e.b), e.a.max(e.b)))
        .collect();
    let mut measurements = BTreeMap::new();
    let mut readouts = Vec::new();
    for v in d.spiders().filter(|v| !outputs.contains(&v.id)) {
        if v.params.iter().any(|p| matches!(p, Param::Flip { .. })) {
            readouts.push(v.id);
        }
        measurements.insert(
            v.id,
            Measurement {
                basis: Basis::Planar { angle: v.phase },
                params: v.params.clone(),
            },
        );
    }
    Ok(MeasurementPattern {
        nodes,
        edges,
        measurements,
        outputs,
        readouts,
    })
}

impl MeasurementPattern {
    pub fn measured_count(&self) -> usize {
        self.measurements.len()
    }

    pub fn is_bound(&self) -> bool {
        self.measurements.values().all(|m| m.params.is_empty())
    }

    /// Resolves adaptive, corrective and flip parameters under `s`. An
    /// adaptive qubit is measured in the y basis when its slot is on and in
    /// the computational basis when it is off.
    pub fn bind(&self, s: &OracleSettings) -> MeasurementPattern {
        let mut out = self.clone();
        for m in out.measurements.values_mut() {
            let mut delta = 0.0;
            let mut off = false;
            for p in std::mem::take(&mut m.params) {
                match p {
                    Param::Adaptive { slot } if s.is_on(slot) => delta += FRAC_PI_2,
                    Param::Adaptive { .. } => off = true,
                    Param::Corrective { slot } if s.is_on(slot) => delta += FRAC_PI_2,
                    Param::Flip { target } if s.flips(target) => delta += PI,
                    _ => {}
                }
            }
            m.basis = match m.basis {
                _ if off => Basis::Computational,
                Basis::Planar { angle } => Basis::Planar {
                    angle: canonical_phase(angle + delta),
                },
                Basis::Computational => Basis::Computational,
            };
        }
        out
    }

    /// The pattern as a diagram: a Z spider per qubit at its planar angle,
    /// computational measurements as attached X(0) effects.
    pub fn to_diagram(&self) -> ZxDiagram {
        let mut d = ZxDiagram::new();
        let mut id = BTreeMap::new();
        for &v in &self.nodes {
            let (phase, params, computational) = match self.measurements.get(&v) {
                Some(Measurement {
                    basis: Basis::Planar { angle },
                    params,
                }) => (*angle, params.clone(), false),
                Some(Measurement {
                    basis: Basis::Computational,
                    params,
                }) => (0.0, params.clone(), true),
                None => (0.0, vec![], false),
            };
            let z = d.add_z(phase);
            for p in params {
                d.add_param(z, p).expect("just added");
            }
            if computational {
                let x = d.add_x(0.0);
                d.add_edge(z, x, false);
            }
            id.insert(v, z);
        }
        for &(a, b) in &self.edges {
            d.add_edge(id[&a], id[&b], true);
        }
        for v in &self.outputs {
            let o = d.add_output();
            d.add_edge(id[v], o, false);
        }
        d
    }

    fn neighbors(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
            self.nodes.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        adj
    }
}

/// Simulates the pattern with every measurement post-selected on outcome 0,
/// returning the unnormalized tensor over the outputs in order. Qubits are
/// prepared lazily and measured as soon as all their neighbours exist, so
/// only the live frontier is ever stored.
pub fn simulate_pattern(p: &MeasurementPattern) -> Result<Tensor> {
    let adj = p.neighbors();
    let effects: BTreeMap<VertexId, [C64; 2]> = p
        .measurements
        .iter()
        .map(|(&v, m)| m.effect().map(|e| (v, e)))
        .collect::<Result<_>>()?;

    let mut added: BTreeSet<VertexId> = BTreeSet::new();
    let mut live: Vec<VertexId> = Vec::new();
    let mut amps = vec![C64::new(1.0, 0.0)];
    let mut remaining: BTreeSet<VertexId> = p.nodes.iter().copied().collect();

    while let Some(next) = remaining
        .iter()
        .max_by_key(|&&v| {
            (
                adj[&v].iter().filter(|w| added.contains(w)).count(),
                std::cmp::Reverse(v),
            )
        })
        .copied()
    {
        remaining.remove(&next);
        if live.len() + 1 > MAX_WIDTH {
            return Err(Error::ContractionTooLarge {
                width: live.len() + 1,
                cap: MAX_WIDTH,
            });
        }
        // |+> on a new least significant qubit, then CZ with live neighbours
        let mut grown = Vec::with_capacity(amps.len() * 2);
        for a in &amps {
            grown.push(*a);
            grown.push(*a);
        }
        amps = grown;
        live.push(next);
        let q = live.len();
        for (pos, w) in live.iter().enumerate() {
            if adj[&next].contains(w) {
                let m = (1usize << (q - 1 - pos)) | 1;
                let hits = adj[&next].iter().filter(|x| *x == w).count();
                if hits % 2 == 1 {
                    for (i, a) in amps.iter_mut().enumerate() {
                        if i & m == m {
                            *a = -*a;
                        }
                    }
                }
            }
        }
        added.insert(next);

        // measure every live qubit whose neighbourhood is complete
        let mut i = 0;
        while i < live.len() {
            let v = live[i];
            if let Some(effect) = effects.get(&v) {
                if adj[&v].iter().all(|w| added.contains(w)) {
                    let t = Tensor::new(live.len(), std::mem::take(&mut amps))?
                        .contract_leg(i, *effect)?;
                    amps = t.data().to_vec();
                    live.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    // reorder the surviving qubits into output order
    let q = live.len();
    let mut data = vec![C64::new(0.0, 0.0); amps.len()];
    for (idx, a) in amps.iter().enumerate() {
        let mut out = 0;
        for (k, o) in p.outputs.iter().enumerate() {
            let pos = live.iter().position(|v| v == o).expect("outputs stay live");
            let bit = (idx >> (q - 1 - pos)) & 1;
            out |= bit << (p.outputs.len() - 1 - k);
        }
        data[out] = *a;
    }
    Tensor::new(p.outputs.len(), data)
}

/// Output statistics of a bound pattern read in the computational basis of
/// the output qubits. Readout qubits are summed over both outcomes; every
/// other measurement is post-selected on 0.
pub fn pattern_outcome_distribution(p: &MeasurementPattern) -> Result<Distribution> {
    let n = p.outputs.len();
    let r = p.readouts.len();
    let mut probs = vec![0.0; 1 << n];
    for b in 0..1usize << r {
        let mut branch = p.clone();
        branch.readouts.clear();
        for (k, v) in p.readouts.iter().enumerate() {
            if (b >> (r - 1 - k)) & 1 == 1 {
                let m = branch
                    .measurements
                    .get_mut(v)
                    .expect("readouts are measured");
                if let Basis::Planar { angle } = m.basis {
                    m.basis = Basis::Planar {
                        angle: canonical_phase(angle + PI),
                    };
                }
            }
        }
        let t = simulate_pattern(&branch)?;
        for (m, a) in t.data().iter().enumerate() {
            probs[m] += a.norm_sqr();
        }
    }
    let total: f64 = probs.iter().sum();
    if total == 0.0 {
        return Err(Error::Precondition(
            "post-selected branch has zero weight".into(),
        ));
    }
    probs.iter_mut().for_each(|x| *x /= total);
    Ok(distribution_from_probs(n, &probs))
}

/// Outcome bit strings with nonzero probability (above `tol`).
pub fn support(dist: &Distribution, tol: f64) -> Vec<BitString> {
    dist.iter()
        .filter(|(_, &p)| p > tol)
        .map(|(m, _)| m.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::FunctionTable;
    use crate::circuit::{working_outcome_distribution, Circuit};
    use crate::mbqc::{build_raw_translation, instantiate, simplify_to_mbqc};
    use crate::oracle::synthesize_oracle;
    use crate::zx::{eval_tensor, proportional, proportionality_residual};

    fn adaptive_pattern(n: usize) -> MeasurementPattern {
        extract_pattern(&simplify_to_mbqc(&build_raw_translation(n).unwrap().base).unwrap())
            .unwrap()
    }

    #[test]
    fn n2_pattern_shape() {
        let p = adaptive_pattern(2);
        assert_eq!(p.nodes.len(), 10);
        assert_eq!(p.measured_count(), 8);
        assert_eq!(p.outputs.len(), 2);
        assert_eq!(p.readouts.len(), 2);
        let adaptive = p
            .measurements
            .values()
            .filter(|m| m.params.iter().any(|q| matches!(q, Param::Adaptive { .. })))
            .count();
        assert_eq!(adaptive, 4);
        assert!(!p.is_bound());
        assert!(matches!(simulate_pattern(&p), Err(Error::Unbound)));
    }

    #[test]
    fn single_output_node() {
        let mut d = ZxDiagram::new();
        let z = d.add_z(0.0);
        let o = d.add_output();
        d.add_edge(z, o, false);
        let p = extract_pattern(&d).unwrap();
        assert_eq!(p.measured_count(), 0);
        let t = simulate_pattern(&p).unwrap();
        assert_eq!(t.data(), &[C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
    }

    #[test]
    fn two_node_cluster() {
        // measure qubit 1 at angle 0: output is H|+> up to scale
        let mut d = ZxDiagram::new();
        let m = d.add_z(0.0);
        let out = d.add_z(0.0);
        let o = d.add_output();
        d.add_edge(m, out, true);
        d.add_edge(out, o, false);
        let p = extract_pattern(&d).unwrap();
        let t = simulate_pattern(&p).unwrap();
        assert!(proportional(&t, &eval_tensor(&d).unwrap(), 1e-12));
        assert!(proportional(
            &t,
            &Tensor::new(1, vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap(),
            1e-12
        ));
    }

    #[test]
    fn rejects_non_graph_like() {
        let mut d = ZxDiagram::new();
        let a = d.add_z(0.0);
        let b = d.add_z(0.0);
        d.add_edge(a, b, false);
        assert!(matches!(extract_pattern(&d), Err(Error::NotGraphLike(_))));
    }

    #[test]
    fn round_trip_and_simulation_agree() {
        let a = build_raw_translation(2).unwrap();
        let p = adaptive_pattern(2);
        for s in OracleSettings::all(2) {
            let bound = p.bind(&s);
            let sim = simulate_pattern(&bound).unwrap();
            let diagram = eval_tensor(&bound.to_diagram()).unwrap();
            assert!(proportionality_residual(&sim, &diagram).is_some_and(|r| r < 1e-9));
            // binding before or after simplification gives the same tensor
            let direct =
                eval_tensor(&simplify_to_mbqc(&instantiate(&a, &s).unwrap()).unwrap()).unwrap();
            assert!(proportionality_residual(&sim, &direct).is_some_and(|r| r < 1e-9));
        }
    }

    #[test]
    fn sampling_law_example() {
        let f = FunctionTable::from_strs(2, &["10", "11", "11", "10"]).unwrap();
        let gates = synthesize_oracle(&f).unwrap();
        let s = OracleSettings::from_gates(&gates).unwrap();
        let dist = pattern_outcome_distribution(&adaptive_pattern(2).bind(&s)).unwrap();
        let names: Vec<String> = support(&dist, 1e-9).iter().map(|b| b.to_string()).collect();
        assert_eq!(names, ["00", "11"]);
        let circuit = working_outcome_distribution(&Circuit::simon(&gates)).unwrap();
        for (m, p) in &dist {
            assert!((p - circuit[m]).abs() < 1e-9);
        }
    }
}
