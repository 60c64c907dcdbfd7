//! The full quantum-plus-classical Simon protocol.
//!
//! Outcomes are drawn from the exact outcome distribution of the chosen
//! backend, kept only when they raise the GF(2) rank, and solved for the
//! candidate period once `n - 1` independent equations are in hand. Two
//! classical queries, `f(0)` and `f(s)`, then separate two-to-one from
//! bijective oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::binary::{
    find_period, solve_period, BitString, FunctionTable, Gf2Basis, PeriodKind, PeriodSolution,
};
use crate::circuit::{working_outcome_distribution, Circuit, Distribution};
use crate::error::{Error, Result};
use crate::mbqc::{
    build_raw_translation, extract_pattern, pattern_outcome_distribution, simplify_to_mbqc,
    MeasurementPattern, OracleSettings,
};
use crate::oracle::{synthesize_oracle, GateList};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Circuit,
    Mbqc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolReport {
    pub mode: Backend,
    pub seed: u64,
    pub kind: PeriodKind,
    /// `0^n` when bijective.
    pub period: BitString,
    /// Outcomes drawn, including discarded ones.
    pub rounds_used: usize,
    /// The independent outcomes that were kept.
    pub equations: Vec<BitString>,
    pub verified: bool,
    pub distribution: Distribution,
}

/// The adaptive pattern for width `n`, parameters unbound.
pub fn adaptive_pattern(n: usize) -> Result<MeasurementPattern> {
    extract_pattern(&simplify_to_mbqc(&build_raw_translation(n)?.base)?)
}

/// Exact working-register outcome distribution after the oracle `gates`.
pub fn outcome_distribution(gates: &GateList, backend: Backend) -> Result<Distribution> {
    match backend {
        Backend::Circuit => working_outcome_distribution(&Circuit::simon(gates)),
        Backend::Mbqc => {
            let settings = OracleSettings::from_gates(gates)?;
            pattern_outcome_distribution(&adaptive_pattern(gates.n)?.bind(&settings))
        }
    }
}

fn sample(dist: &Distribution, rng: &mut impl Rng) -> BitString {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last = None;
    for (m, &p) in dist {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last = Some(m);
        if u < acc {
            return m.clone();
        }
    }
    last.expect("distribution has mass").clone()
}

pub fn run_simon_protocol(
    f: &FunctionTable,
    seed: u64,
    max_rounds: usize,
    backend: Backend,
) -> Result<ProtocolReport> {
    let gates = synthesize_oracle(f)?;
    let n = f.n();
    let distribution = outcome_distribution(&gates, backend)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = Gf2Basis::new(n);
    let mut equations = Vec::new();
    let mut rounds = 0;
    while basis.rank() + 1 < n {
        if rounds == max_rounds {
            return Err(Error::Underdetermined { rounds });
        }
        rounds += 1;
        let m = sample(&distribution, &mut rng);
        if !m.is_zero() && basis.insert(&m)? {
            equations.push(m);
        }
    }
    let candidate = match solve_period(n, &equations)? {
        PeriodSolution::Unique(s) => s,
        _ => return Err(Error::Underdetermined { rounds }),
    };
    let zero = BitString::zeros(n);
    let (kind, period) = if gates.eval(&zero) == gates.eval(&candidate) {
        (PeriodKind::TwoToOne, candidate)
    } else {
        (PeriodKind::Bijective, zero)
    };
    let truth = find_period(f);
    let verified = truth.kind == kind && truth.period.as_ref() == Some(&period);
    Ok(ProtocolReport {
        mode: backend,
        seed,
        kind,
        period,
        rounds_used: rounds,
        equations,
        verified,
        distribution,
    })
}
