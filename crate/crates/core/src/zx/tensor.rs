//! Brute-force semantics of ZX-diagrams as dense tensors.
//!
//! Conventions are unnormalized throughout: the Hadamard edge is
//! `[[1, 1], [1, -1]]`, `|+> = |0> + |1>`. An X spider equals the Z spider of
//! the same phase with a Hadamard on every leg, so after rewriting each X
//! spider that way every spider is one binary variable and every edge is a
//! power of `H`. Even powers collapse into shared variables, odd powers become
//! `(-1)^(uv)` pair factors, and the network is contracted by greedy variable
//! elimination.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64 as C64;

use super::diagram::{VertexId, VertexKind, ZxDiagram};
use crate::error::{Error, Result};

/// Largest number of simultaneously open indices during contraction.
pub const MAX_WIDTH: usize = 24;

/// Dense complex tensor with one binary axis per leg. Leg 0 is the most
/// significant bit of the flat index.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    legs: usize,
    data: Vec<C64>,
}

impl Tensor {
    pub fn new(legs: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != 1 << legs {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for {legs} legs",
                data.len()
            )));
        }
        Ok(Self { legs, data })
    }

    pub fn scalar(value: C64) -> Self {
        Self {
            legs: 0,
            data: vec![value],
        }
    }

    /// Operator tensor with inputs first: entry `(in, out)` is
    /// `matrix(out, in)`.
    pub fn from_operator(n_in: usize, n_out: usize, matrix: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(1 << (n_in + n_out));
        for i in 0..1usize << n_in {
            for o in 0..1usize << n_out {
                data.push(matrix(o, i));
            }
        }
        Self {
            legs: n_in + n_out,
            data,
        }
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, index: usize) -> C64 {
        self.data[index]
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs() < ZERO_TOL
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: C64) -> Tensor {
        Tensor {
            legs: self.legs,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Contracts leg `leg` against the covector `effect` (a bra), removing it.
    pub fn contract_leg(&self, leg: usize, effect: [C64; 2]) -> Result<Tensor> {
        if leg >= self.legs {
            return Err(Error::ShapeMismatch(format!("leg {leg} of {}", self.legs)));
        }
        let shift = self.legs - 1 - leg;
        let low = (1usize << shift) - 1;
        let mut data = vec![C64::new(0.0, 0.0); 1 << (self.legs - 1)];
        for (i, &z) in self.data.iter().enumerate() {
            let bit = (i >> shift) & 1;
            let j = ((i >> (shift + 1)) << shift) | (i & low);
            data[j] += effect[bit] * z;
        }
        Ok(Tensor {
            legs: self.legs - 1,
            data,
        })
    }
}

/// Largest entry magnitude below which a tensor counts as zero. Entries of
/// the unnormalized tensors built here are sums of unit-modulus terms, so
/// anything this small is cancellation noise.
pub const ZERO_TOL: f64 = 1e-10;

/// Relative residual of the best fit `a ~ lambda * b`, with `lambda` taken
/// from the largest-magnitude entry of `b`. `None` when no nonzero `lambda`
/// exists (exactly one side is zero, or shapes differ). Both zero gives 0.
pub fn proportionality_residual(a: &Tensor, b: &Tensor) -> Option<f64> {
    proportionality_residual_above(a, b, ZERO_TOL)
}

/// As [`proportionality_residual`], with tensors whose largest entry is below
/// `floor` treated as zero. Use a floor scaled to the magnitudes that were
/// summed to produce the tensors when those are large.
pub fn proportionality_residual_above(a: &Tensor, b: &Tensor, floor: f64) -> Option<f64> {
    if a.legs != b.legs {
        return None;
    }
    let (a_max, b_max) = (a.max_abs(), b.max_abs());
    match (a_max < floor, b_max < floor) {
        (true, true) => return Some(0.0),
        (true, false) | (false, true) => return None,
        _ => {}
    }
    let k = b
        .data
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .map(|(k, _)| k)
        .expect("nonempty");
    let lambda = a.data[k] / b.data[k];
    if lambda.norm() == 0.0 {
        return None;
    }
    let worst = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - lambda * y).norm())
        .fold(0.0, f64::max);
    Some(worst / a_max)
}

/// Whether `a = lambda * b` for some nonzero `lambda`, entrywise within `tol`
/// relative to the largest entry of `a`.
pub fn proportional(a: &Tensor, b: &Tensor, tol: f64) -> bool {
    proportionality_residual(a, b).is_some_and(|r| r <= tol)
}

#[derive(Debug, Clone)]
struct Factor {
    // sorted variable ids; vars[0] is the most significant index bit
    vars: Vec<usize>,
    table: Vec<C64>,
}

impl Factor {
    fn value(&self, assignment: &BTreeMap<usize, usize>) -> C64 {
        let idx = self
            .vars
            .iter()
            .fold(0, |acc, v| (acc << 1) | assignment[v]);
        self.table[idx]
    }

    fn pair(u: usize, v: usize, entries: [[C64; 2]; 2]) -> Factor {
        if u == v {
            return Factor {
                vars: vec![u],
                table: vec![entries[0][0], entries[1][1]],
            };
        }
        let (lo, hi, e) = if u < v {
            (u, v, entries)
        } else {
            (
                v,
                u,
                [
                    [entries[0][0], entries[1][0]],
                    [entries[0][1], entries[1][1]],
                ],
            )
        };
        Factor {
            vars: vec![lo, hi],
            table: vec![e[0][0], e[0][1], e[1][0], e[1][1]],
        }
    }
}

/// Product of `factors`, with `sum_out` (if any) summed away.
fn combine(factors: &[Factor], sum_out: Option<usize>) -> Result<Factor> {
    let all: BTreeSet<usize> = factors
        .iter()
        .flat_map(|f| f.vars.iter().copied())
        .collect();
    if all.len() > MAX_WIDTH {
        return Err(Error::ContractionTooLarge {
            width: all.len(),
            cap: MAX_WIDTH,
        });
    }
    let vars: Vec<usize> = all
        .iter()
        .copied()
        .filter(|v| Some(*v) != sum_out)
        .collect();
    let mut table = vec![C64::new(0.0, 0.0); 1 << vars.len()];
    let full: Vec<usize> = all.into_iter().collect();
    let mut assignment: BTreeMap<usize, usize> = full.iter().map(|&v| (v, 0)).collect();
    for bits in 0..1usize << full.len() {
        for (i, v) in full.iter().enumerate() {
            assignment.insert(*v, (bits >> (full.len() - 1 - i)) & 1);
        }
        let mut prod = C64::new(1.0, 0.0);
        for f in factors {
            prod *= f.value(&assignment);
            if prod == C64::new(0.0, 0.0) {
                break;
            }
        }
        let idx = vars.iter().fold(0, |acc, v| (acc << 1) | assignment[v]);
        table[idx] += prod;
    }
    Ok(Factor { vars, table })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Contracts `d` into a tensor over its legs, inputs first then outputs.
/// Unbound parameters contribute nothing.
pub fn eval_tensor(d: &ZxDiagram) -> Result<Tensor> {
    d.validate()?;
    let ids: Vec<VertexId> = d.vertices().map(|v| v.id).collect();
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let kind = |v: VertexId| d.vertex(v).expect("validated").kind;

    let mut uf = UnionFind((0..ids.len()).collect());
    let mut scale = C64::new(1.0, 0.0);
    let mut odd_edges = Vec::new();
    for e in d.edges() {
        let h =
            e.h as u32 + (kind(e.a) == VertexKind::X) as u32 + (kind(e.b) == VertexKind::X) as u32;
        scale *= 2f64.powi((h / 2) as i32);
        let (u, v) = (index[&e.a], index[&e.b]);
        if h.is_multiple_of(2) {
            uf.union(u, v);
        } else {
            odd_edges.push((u, v));
        }
    }

    let one = C64::new(1.0, 0.0);
    let mut factors = Vec::new();
    for (i, v) in d.vertices().enumerate() {
        if v.is_spider() {
            let r = uf.find(i);
            factors.push(Factor {
                vars: vec![r],
                table: vec![one, C64::from_polar(1.0, v.phase)],
            });
        }
    }
    for (u, v) in odd_edges {
        let (ru, rv) = (uf.find(u), uf.find(v));
        factors.push(Factor::pair(ru, rv, [[one, one], [one, -one]]));
    }

    let legs: Vec<usize> = d
        .inputs()
        .iter()
        .chain(d.outputs())
        .map(|b| uf.find(index[b]))
        .collect();
    let open: BTreeSet<usize> = legs.iter().copied().collect();
    let mut internal: BTreeSet<usize> = factors
        .iter()
        .flat_map(|f| f.vars.iter().copied())
        .filter(|v| !open.contains(v))
        .collect();

    // merged variables that carry no factor at all still range over {0,1}
    for i in 0..ids.len() {
        let r = uf.find(i);
        if !open.contains(&r) && !internal.contains(&r) {
            internal.insert(r);
            factors.push(Factor {
                vars: vec![r],
                table: vec![one, one],
            });
        }
    }

    while !internal.is_empty() {
        // greedy: eliminate the variable with the smallest resulting factor
        let var = *internal
            .iter()
            .min_by_key(|&&v| {
                factors
                    .iter()
                    .filter(|f| f.vars.contains(&v))
                    .flat_map(|f| f.vars.iter())
                    .collect::<BTreeSet<_>>()
                    .len()
            })
            .expect("nonempty");
        internal.remove(&var);
        let (touching, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.vars.contains(&var));
        factors = rest;
        factors.push(combine(&touching, Some(var))?);
    }

    let result = combine(&factors, None)?;
    let mut data = Vec::with_capacity(1 << legs.len());
    for leg_bits in 0..1usize << legs.len() {
        let mut assignment = BTreeMap::new();
        let mut consistent = true;
        for (i, &v) in legs.iter().enumerate() {
            let bit = (leg_bits >> (legs.len() - 1 - i)) & 1;
            if let Some(prev) = assignment.insert(v, bit) {
                consistent &= prev == bit;
            }
        }
        data.push(if consistent {
            scale * result.value(&assignment)
        } else {
            C64::new(0.0, 0.0)
        });
    }
    Tensor::new(legs.len(), data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn wire(h: bool) -> ZxDiagram {
        let mut d = ZxDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        d.add_edge(i, o, h);
        d
    }

    #[test]
    fn z_identity() {
        let mut d = ZxDiagram::new();
        let i = d.add_input();
        let z = d.add_z(0.0);
        let o = d.add_output();
        d.add_edge(i, z, false);
        d.add_edge(z, o, false);
        let t = eval_tensor(&d).unwrap();
        assert_eq!(t.data(), &[c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]);
    }

    #[test]
    fn bare_hadamard_edge() {
        let t = eval_tensor(&wire(true)).unwrap();
        assert_eq!(t.data(), &[c(1., 0.), c(1., 0.), c(1., 0.), c(-1., 0.)]);
        let t = eval_tensor(&wire(false)).unwrap();
        assert_eq!(t.data(), &[c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]);
    }

    #[test]
    fn y_effect() {
        let mut d = ZxDiagram::new();
        let i = d.add_input();
        let z = d.add_z(PI / 2.0);
        d.add_edge(i, z, false);
        let t = eval_tensor(&d).unwrap();
        assert!((t.get(0) - c(1., 0.)).norm() < 1e-15);
        assert!((t.get(1) - c(0., 1.)).norm() < 1e-15);
    }

    #[test]
    fn x_spider_is_hadamard_conjugated_z() {
        // X(a) on a wire: |+><+| + e^{ia}|-><-|
        let a = 0.7;
        let mut d = ZxDiagram::new();
        let i = d.add_input();
        let x = d.add_x(a);
        let o = d.add_output();
        d.add_edge(i, x, false);
        d.add_edge(x, o, false);
        let t = eval_tensor(&d).unwrap();
        let e = C64::from_polar(1.0, a);
        let expected = [one() + e, one() - e, one() - e, one() + e];
        for (got, want) in t.data().iter().zip(expected) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    fn one() -> C64 {
        c(1., 0.)
    }

    #[test]
    fn translation_x_is_pauli_x() {
        let mut d = ZxDiagram::new();
        let i = d.add_input();
        let x = d.add_x(PI);
        let o = d.add_output();
        d.add_edge(i, x, false);
        d.add_edge(x, o, false);
        let pauli = Tensor::from_operator(1, 1, |o, i| if o != i { one() } else { c(0., 0.) });
        assert!(proportional(&eval_tensor(&d).unwrap(), &pauli, 1e-12));
    }

    #[test]
    fn translation_cnot() {
        let mut d = ZxDiagram::new();
        let (i1, i2) = (d.add_input(), d.add_input());
        let (o1, o2) = (d.add_output(), d.add_output());
        let z = d.add_z(0.0);
        let x = d.add_x(0.0);
        d.add_edge(i1, z, false);
        d.add_edge(z, o1, false);
        d.add_edge(i2, x, false);
        d.add_edge(x, o2, false);
        d.add_edge(z, x, false);
        let cnot = Tensor::from_operator(2, 2, |o, i| {
            let target = if i & 2 != 0 { i ^ 1 } else { i };
            if o == target {
                one()
            } else {
                c(0., 0.)
            }
        });
        let t = eval_tensor(&d).unwrap();
        assert!(proportional(&t, &cnot, 1e-12));
        // legs are inputs first: (i1, i2, o1, o2)
        assert_eq!(t.legs(), 4);
    }

    #[test]
    fn proportionality() {
        let id = Tensor::from_operator(1, 1, |o, i| if o == i { one() } else { c(0., 0.) });
        let flip = Tensor::from_operator(1, 1, |o, i| if o != i { one() } else { c(0., 0.) });
        assert!(proportional(&id, &id.scale(c(0., 2.)), 1e-12));
        assert!(!proportional(&id, &flip, 1e-9));
        let zero = Tensor::new(2, vec![c(0., 0.); 4]).unwrap();
        assert!(proportional(&zero, &zero, 1e-12));
        assert!(!proportional(&zero, &id, 1e-12));
        assert!(!proportional(&id, &zero, 1e-12));
    }

    #[test]
    fn contract_leg_matches_manual_sum() {
        let t = Tensor::new(2, vec![c(1., 0.), c(2., 0.), c(3., 0.), c(4., 0.)]).unwrap();
        let r = t.contract_leg(0, [one(), c(0., 0.)]).unwrap();
        assert_eq!(r.data(), &[c(1., 0.), c(2., 0.)]);
        let r = t.contract_leg(1, [one(), one()]).unwrap();
        assert_eq!(r.data(), &[c(3., 0.), c(7., 0.)]);
    }

    #[test]
    fn disconnected_scalar_diagram() {
        // Z(0) state plugged into X(0) effect: <0|+> scaled
        let mut d = ZxDiagram::new();
        let z = d.add_z(0.0);
        let x = d.add_x(0.0);
        d.add_edge(z, x, false);
        let t = eval_tensor(&d).unwrap();
        assert_eq!(t.legs(), 0);
        assert!(t.get(0).norm() > 0.0);
    }
}
