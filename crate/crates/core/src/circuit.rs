//! Dense statevector simulation of the Simon circuit.
//!
//! Amplitudes are unnormalized; probabilities are always taken relative to
//! the total weight.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::binary::{BitString, Gate};
use crate::error::{Error, Result};
use crate::oracle::GateList;

pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Init {
    Zero,
    Plus,
}

/// Circuit operation on 1-based qubit indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Op {
    H { qubit: usize },
    X { qubit: usize },
    Cnot { control: usize, target: usize },
}

impl Op {
    fn qubits(&self) -> Vec<usize> {
        match *self {
            Op::H { qubit } | Op::X { qubit } => vec![qubit],
            Op::Cnot { control, target } => vec![control, target],
        }
    }
}

/// `q` qubits, initial product state and an ordered op list. For Simon
/// circuits `q = 2n` with working qubits `1..=n` and auxiliaries after.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub q: usize,
    pub initial: Vec<Init>,
    pub ops: Vec<Op>,
}

impl Circuit {
    pub fn new(initial: Vec<Init>) -> Self {
        Self {
            q: initial.len(),
            initial,
            ops: Vec::new(),
        }
    }

    pub fn push(&mut self, op: Op) -> &mut Self {
        self.ops.push(op);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial.len() != self.q {
            return Err(Error::ShapeMismatch(format!(
                "{} initial states for {} qubits",
                self.initial.len(),
                self.q
            )));
        }
        for op in &self.ops {
            for index in op.qubits() {
                if index == 0 || index > self.q {
                    return Err(Error::IndexOutOfRange { index, max: self.q });
                }
            }
            if let Op::Cnot { control, target } = *op {
                if control == target {
                    return Err(Error::Precondition("CNOT control equals target".into()));
                }
            }
        }
        Ok(())
    }

    /// Working register in `|+>`, auxiliaries in `|0>`, followed by the
    /// oracle network.
    pub fn simon(oracle: &GateList) -> Self {
        let n = oracle.n;
        let mut initial = vec![Init::Plus; n];
        initial.extend(std::iter::repeat_n(Init::Zero, n));
        let mut c = Self::new(initial);
        for g in &oracle.gates {
            c.push(match *g {
                Gate::Cnot { control, target } => Op::Cnot {
                    control,
                    target: n + target,
                },
                Gate::X { target } => Op::X { qubit: n + target },
            });
        }
        c
    }

    /// Appends `H` on the first `n` qubits: the x-basis readout expressed as
    /// a basis change before a computational measurement.
    pub fn with_working_hadamards(mut self, n: usize) -> Self {
        for qubit in 1..=n {
            self.ops.push(Op::H { qubit });
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    q: usize,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn zero(q: usize) -> Result<Self> {
        if q > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                qubits: q,
                cap: MAX_QUBITS,
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << q];
        amps[0] = C64::new(1.0, 0.0);
        Ok(Self { q, amps })
    }

    pub fn qubits(&self) -> usize {
        self.q
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.q - qubit)
    }

    /// Unnormalized `H = [[1,1],[1,-1]]`.
    pub fn apply_h(&mut self, qubit: usize) {
        let m = self.mask(qubit);
        for i in 0..self.amps.len() {
            if i & m == 0 {
                let (a, b) = (self.amps[i], self.amps[i | m]);
                self.amps[i] = a + b;
                self.amps[i | m] = a - b;
            }
        }
    }

    pub fn apply_x(&mut self, qubit: usize) {
        let m = self.mask(qubit);
        for i in 0..self.amps.len() {
            if i & m == 0 {
                self.amps.swap(i, i | m);
            }
        }
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let (c, t) = (self.mask(control), self.mask(target));
        for i in 0..self.amps.len() {
            if i & c != 0 && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Marginal distribution of the first `k` qubits in the computational
    /// basis, indexed by their big-endian value.
    pub fn marginal(&self, k: usize) -> Vec<f64> {
        let rest = self.q - k;
        let mut probs = vec![0.0; 1 << k];
        for (i, a) in self.amps.iter().enumerate() {
            probs[i >> rest] += a.norm_sqr();
        }
        let total: f64 = probs.iter().sum();
        if total > 0.0 {
            probs.iter_mut().for_each(|p| *p /= total);
        }
        probs
    }
}

pub fn run_state(c: &Circuit) -> Result<StateVector> {
    c.validate()?;
    let mut psi = StateVector::zero(c.q)?;
    for (i, init) in c.initial.iter().enumerate() {
        if *init == Init::Plus {
            psi.apply_h(i + 1);
        }
    }
    for op in &c.ops {
        match *op {
            Op::H { qubit } => psi.apply_h(qubit),
            Op::X { qubit } => psi.apply_x(qubit),
            Op::Cnot { control, target } => psi.apply_cnot(control, target),
        }
    }
    Ok(psi)
}

/// Exact outcome distribution over working-register bit strings.
pub type Distribution = BTreeMap<BitString, f64>;

pub(crate) fn distribution_from_probs(n: usize, probs: &[f64]) -> Distribution {
    probs
        .iter()
        .enumerate()
        .map(|(m, &p)| (BitString::from_value(m, n), p))
        .collect()
}

/// x-basis outcome distribution of the working register (the first `q/2`
/// qubits), realized by appending Hadamards and reading the computational
/// marginal.
pub fn working_outcome_distribution(c: &Circuit) -> Result<Distribution> {
    let n = c.q / 2;
    let psi = run_state(&c.clone().with_working_hadamards(n))?;
    Ok(distribution_from_probs(n, &psi.marginal(n)))
}

/// Same distribution computed by contracting each working qubit with the
/// unnormalized x-basis bras `<+| = (1, 1)` and `<-| = (1, -1)` directly.
pub fn working_distribution_by_projection(c: &Circuit) -> Result<Distribution> {
    let n = c.q / 2;
    let psi = run_state(c)?;
    let aux_size = 1usize << (c.q - n);
    let mut probs = vec![0.0; 1 << n];
    for (m, p) in probs.iter_mut().enumerate() {
        for x in 0..aux_size {
            let mut amp = C64::new(0.0, 0.0);
            for t in 0..1usize << n {
                let sign = if (m & t).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                amp += psi.amps[(t << (c.q - n)) | x] * sign;
            }
            *p += amp.norm_sqr();
        }
    }
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);
    Ok(distribution_from_probs(n, &probs))
}
