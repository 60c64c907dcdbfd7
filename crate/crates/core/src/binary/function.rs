//! Explicit truth tables `f: {0,1}^n -> {0,1}^n` and their mod-2 period.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::BitString;
use crate::error::{Error, Result};

/// Truth table of an `n`-bit to `n`-bit function. `outputs[t]` is the image
/// of the input whose big-endian value is `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct FunctionTable {
    n: usize,
    outputs: Vec<BitString>,
}

#[derive(Deserialize)]
struct RawTable {
    n: usize,
    outputs: Vec<BitString>,
}

impl TryFrom<RawTable> for FunctionTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        FunctionTable::new(raw.n, raw.outputs)
    }
}

impl FunctionTable {
    pub fn new(n: usize, outputs: Vec<BitString>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("n must be positive".into()));
        }
        if n >= usize::BITS as usize / 2 {
            return Err(Error::InvalidTable(format!(
                "n = {n} is too large for an explicit table"
            )));
        }
        if outputs.len() != 1 << n {
            return Err(Error::InvalidTable(format!(
                "expected {} outputs, got {}",
                1usize << n,
                outputs.len()
            )));
        }
        if let Some(bad) = outputs.iter().find(|o| o.len() != n) {
            return Err(Error::InvalidTable(format!(
                "output {bad} does not have {n} bits"
            )));
        }
        Ok(Self { n, outputs })
    }

    /// Parses outputs given as bit strings, e.g. `["10", "11", "11", "10"]`.
    pub fn from_strs(n: usize, outputs: &[&str]) -> Result<Self> {
        let outputs = outputs
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, outputs)
    }

    pub fn from_fn(n: usize, f: impl Fn(&BitString) -> BitString) -> Result<Self> {
        let outputs = BitString::all(n).map(|t| f(&t)).collect();
        Self::new(n, outputs)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            outputs: BitString::all(n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn outputs(&self) -> &[BitString] {
        &self.outputs
    }

    pub fn eval(&self, input: &BitString) -> &BitString {
        &self.outputs[input.value()]
    }

    pub fn eval_index(&self, input: usize) -> &BitString {
        &self.outputs[input]
    }

    pub fn image_size(&self) -> usize {
        self.outputs.iter().collect::<BTreeSet<_>>().len()
    }

    /// `true` iff `f(a ^ b) == f(a) ^ f(b) ^ f(0)` for all `a, b`, i.e.
    /// `f(t) = A t + c` over GF(2).
    pub fn is_affine(&self) -> bool {
        let size = 1usize << self.n;
        let f0 = &self.outputs[0];
        (0..size).all(|a| {
            (0..size).all(|b| {
                let lhs = &self.outputs[a ^ b];
                let rhs = self.outputs[a]
                    .xor(&self.outputs[b])
                    .and_then(|x| x.xor(f0));
                rhs.map(|r| &r == lhs).unwrap_or(false)
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeriodKind {
    Bijective,
    TwoToOne,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub kind: PeriodKind,
    /// `0^n` for bijective functions, `None` when the promise is violated.
    pub period: Option<BitString>,
}

/// Classifies `f` against the Simon promise by direct inspection of the
/// table.
pub fn find_period(f: &FunctionTable) -> PeriodReport {
    let n = f.n();
    let size = 1usize << n;
    let mut first_seen: HashMap<&BitString, usize> = HashMap::new();
    let mut offsets = BTreeSet::new();
    let mut buckets: HashMap<&BitString, Vec<usize>> = HashMap::new();
    for (t, out) in f.outputs().iter().enumerate() {
        first_seen.entry(out).or_insert(t);
        buckets.entry(out).or_default().push(t);
    }
    if first_seen.len() == size {
        return PeriodReport {
            kind: PeriodKind::Bijective,
            period: Some(BitString::zeros(n)),
        };
    }
    for members in buckets.values() {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                offsets.insert(a ^ b);
            }
        }
    }
    let invalid = PeriodReport {
        kind: PeriodKind::Invalid,
        period: None,
    };
    if offsets.len() != 1 {
        return invalid;
    }
    let s = *offsets.iter().next().expect("one offset");
    if (0..size).all(|a| f.eval_index(a) == f.eval_index(a ^ s)) {
        PeriodReport {
            kind: PeriodKind::TwoToOne,
            period: Some(BitString::from_value(s, n)),
        }
    } else {
        invalid
    }
}
