//! Characteristic strings: the concatenated images of all `2^n` inputs.
//!
//! Block `i` (the `i`-th run of `n` bits, counted from the left, 0-based) is
//! the image of the input whose big-endian value is `i`. Gates acting on the
//! zero function have characteristics too, and characteristics compose by XOR.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BitString, FunctionTable};
use crate::error::{Error, Result};

/// A CNOT from working qubit `control` to auxiliary qubit `target`, or an X on
/// auxiliary qubit `target`. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gate {
    Cnot { control: usize, target: usize },
    X { target: usize },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn x(target: usize) -> Self {
        Gate::X { target }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let check = |index: usize| {
            if index == 0 || index > n {
                Err(Error::IndexOutOfRange { index, max: n })
            } else {
                Ok(())
            }
        };
        match *self {
            Gate::Cnot { control, target } => check(control).and(check(target)),
            Gate::X { target } => check(target),
        }
    }

    /// Classical action: XOR into `aux` given the working-register value.
    pub fn apply_classical(&self, working: &BitString, aux: &mut BitString) {
        match *self {
            Gate::Cnot { control, target } => {
                if working.get(control - 1) {
                    aux.flip(target - 1);
                }
            }
            Gate::X { target } => aux.flip(target - 1),
        }
    }

    /// The full gate set `{CNOT(j,k), X(k)}` for `n` qubits.
    pub fn all(n: usize) -> Vec<Gate> {
        let mut gates: Vec<Gate> = (1..=n)
            .flat_map(|j| (1..=n).map(move |k| Gate::cnot(j, k)))
            .collect();
        gates.extend((1..=n).map(Gate::x));
        gates
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Cnot { control, target } => write!(f, "CNOT{control}{target}"),
            Gate::X { target } => write!(f, "X{target}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Characteristic {
    n: usize,
    bits: BitString,
}

impl Characteristic {
    pub fn new(n: usize, bits: BitString) -> Result<Self> {
        let expected = n << n;
        if bits.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: bits.len(),
            });
        }
        Ok(Self { n, bits })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            bits: BitString::zeros(n << n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn block(&self, input: usize) -> BitString {
        self.bits.slice(input * self.n, self.n)
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            bits: self.bits.xor(&other.bits)?,
        })
    }

    pub fn xor_assign(&mut self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        self.bits.xor_assign(&other.bits)
    }

    /// Reads the characteristic back as a truth table.
    pub fn to_function(&self) -> FunctionTable {
        let outputs = (0..1usize << self.n).map(|i| self.block(i)).collect();
        FunctionTable::new(self.n, outputs).expect("well-formed characteristic")
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}

pub fn characteristic_of_function(f: &FunctionTable) -> Characteristic {
    let bits = f
        .outputs()
        .iter()
        .fold(BitString::default(), |acc, o| acc.concat(o));
    Characteristic { n: f.n(), bits }
}

/// Bit `i*n + (k-1)` is set for every block `i` the gate flips, `k` being the
/// target.
pub fn characteristic_of_gate(gate: Gate, n: usize) -> Result<Characteristic> {
    gate.validate(n)?;
    let mut bits = BitString::zeros(n << n);
    for input in 0..1usize << n {
        let fires = match gate {
            // control j is bit j from the left of the input block index
            Gate::Cnot { control, .. } => (input >> (n - control)) & 1 == 1,
            Gate::X { .. } => true,
        };
        if fires {
            let target = match gate {
                Gate::Cnot { target, .. } | Gate::X { target } => target,
            };
            bits.set(input * n + target - 1, true);
        }
    }
    Ok(Characteristic { n, bits })
}
