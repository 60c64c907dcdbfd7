//! Acceptance criteria 1-9. Each prints one PASS/FAIL line with its measured
//! figure and runtime; the process exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simonzx::binary::{characteristic_of_gate, find_period, Characteristic, PeriodKind};
use simonzx::mbqc::{build_raw_translation, simplify_to_mbqc, topology, Form, OracleSettings};
use simonzx::oracle::{factorize, Factorization};
use simonzx::verify::{
    circuit_reference, final_vs_circuit_case, mbqc_vs_circuit_case, plus_bra, protocol_case,
    random_affine, random_periodic, realizable_periodic, sampling_case, stagewise_case,
    verify_rules, CaseResult,
};
use simonzx::zx::{proportionality_residual, VertexKind};
use simonzx::{synthesize_oracle, BitString, Error, FunctionTable, Gate};

const TOL: f64 = 1e-9;
const SEED: u64 = 2024;

struct Outcome {
    ok: bool,
    summary: String,
}

fn outcome(ok: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        summary: summary.into(),
    }
}

fn cases_outcome(cases: &[CaseResult]) -> Outcome {
    let ok = cases.iter().all(CaseResult::passed);
    let worst = cases.iter().map(|c| c.max_residual).fold(0.0, f64::max);
    let mut summary = format!("max residual {worst:.2e}");
    for c in cases.iter().filter(|c| !c.passed()) {
        summary.push_str(&format!(
            "; {} failed: {}",
            c.case,
            c.detail.as_deref().unwrap_or("")
        ));
    }
    outcome(ok, summary)
}

fn run(id: u32, title: &str, budget: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(body))
        .unwrap_or_else(|_| outcome(false, "panicked"));
    let elapsed = start.elapsed();
    let in_time = elapsed < budget;
    let ok = result.ok && in_time;
    println!(
        "criterion {id} [{}] {title}: {} ({:.3} ms, budget {} ms{})",
        if ok { "PASS" } else { "FAIL" },
        result.summary,
        elapsed.as_secs_f64() * 1e3,
        budget.as_millis(),
        if in_time { "" } else { ", over budget" },
    );
    ok
}

fn chr(n: usize, s: &str) -> Characteristic {
    Characteristic::new(n, s.parse().expect("bit string")).expect("length")
}

fn criterion_1() -> Outcome {
    let table = [
        (Gate::cnot(1, 1), "00001010"),
        (Gate::cnot(1, 2), "00000101"),
        (Gate::cnot(2, 1), "00100010"),
        (Gate::cnot(2, 2), "00010001"),
        (Gate::x(1), "10101010"),
        (Gate::x(2), "01010101"),
    ];
    let mismatches: Vec<String> = table
        .iter()
        .filter(|(g, s)| {
            characteristic_of_gate(*g, 2)
                .map(|c| c != chr(2, s))
                .unwrap_or(true)
        })
        .map(|(g, _)| g.to_string())
        .collect();
    outcome(
        mismatches.is_empty(),
        format!("6 gates, mismatches: {mismatches:?}"),
    )
}

fn criterion_2() -> Outcome {
    let input = chr(2, "10111110");
    match factorize(&input) {
        Factorization::Realizable(list) => {
            let expected = vec![Gate::x(1), Gate::cnot(2, 2), Gate::cnot(1, 2)];
            let ok = list.gates == expected && list.characteristic() == input;
            let names: Vec<String> = list.gates.iter().map(ToString::to_string).collect();
            outcome(ok, format!("sequence {}", names.join(", ")))
        }
        Factorization::Unrealizable { residual } => {
            outcome(false, format!("unrealizable at {residual}"))
        }
    }
}

fn all_functions(n: usize) -> Vec<FunctionTable> {
    let size = 1usize << n;
    (0..1usize << (n * size))
        .map(|code| {
            let outs = (0..size)
                .map(|t| BitString::from_value(code >> (n * (size - 1 - t)), n))
                .collect();
            FunctionTable::new(n, outs).expect("well-formed")
        })
        .collect()
}

fn round_trips(f: &FunctionTable) -> bool {
    synthesize_oracle(f)
        .map(|g| g.to_function() == *f)
        .unwrap_or(false)
}

fn rejected(f: &FunctionTable) -> bool {
    matches!(synthesize_oracle(f), Err(Error::Unrealizable { .. }))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let every = all_functions(2);
    let affine2: Vec<&FunctionTable> = every.iter().filter(|f| f.is_affine()).collect();
    let bad_affine2 = affine2.iter().filter(|f| !round_trips(f)).count();

    let mut bad_affine3 = 0;
    for _ in 0..500 {
        let f = random_affine(3, &mut rng);
        if !round_trips(&f) {
            bad_affine3 += 1;
        }
    }

    let mut non_affine = 0;
    let mut accepted = 0;
    let periodic2 = every
        .iter()
        .filter(|f| !f.is_affine() && find_period(f).kind != PeriodKind::Invalid);
    for f in periodic2 {
        non_affine += 1;
        if !rejected(f) {
            accepted += 1;
        }
    }
    for _ in 0..500 {
        let s = BitString::from_value(rng.gen_range(1..8), 3);
        let f = random_periodic(3, &s, &mut rng);
        if !f.is_affine() {
            non_affine += 1;
            if !rejected(&f) {
                accepted += 1;
            }
        }
    }
    let ok = affine2.len() == 64
        && bad_affine2 == 0
        && bad_affine3 == 0
        && accepted == 0
        && non_affine > 0;
    outcome(
        ok,
        format!(
            "{} n=2 affine ({bad_affine2} bad), 500 n=3 affine ({bad_affine3} bad), \
             {non_affine} non-affine periodic ({accepted} wrongly realized)",
            affine2.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    let cases = verify_rules(SEED, 200, TOL).expect("rule sweep runs");
    cases_outcome(&cases[..4])
}

fn criterion_5() -> Outcome {
    let cases = verify_rules(SEED, 0, TOL).expect("gadget checks run");
    cases_outcome(&cases[4..])
}

fn criterion_6() -> Outcome {
    let cases = vec![
        stagewise_case(2, TOL).expect("runs"),
        final_vs_circuit_case(2, TOL).expect("runs"),
        mbqc_vs_circuit_case(2, TOL).expect("runs"),
    ];
    let mut o = cases_outcome(&cases);
    // Under <+|<+| on the auxiliaries the circuit tensor no longer depends
    // on the oracle, so that contraction cannot serve as the reference.
    let settings: Vec<OracleSettings> = OracleSettings::all(2).collect();
    let plus = circuit_reference(&settings[0], &[plus_bra(), plus_bra()]).expect("runs");
    let blind = settings.iter().all(|s| {
        let t = circuit_reference(s, &[plus_bra(), plus_bra()]).expect("runs");
        proportionality_residual(&t, &plus).is_some_and(|r| r < TOL)
    });
    o.summary.push_str(&format!(
        "; 64 settings, auxiliaries plugged with <0|; <+|<+| reference oracle-independent: {blind}"
    ));
    o
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let n2 = realizable_periodic(2);
    let mut n3 = Vec::new();
    while n3.len() < 24 {
        let f = random_affine(3, &mut rng);
        if find_period(&f).kind != PeriodKind::Invalid {
            n3.push(f);
        }
    }
    let cases = vec![
        sampling_case("sampling/n2", &n2, TOL).expect("runs"),
        sampling_case("sampling/n3", &n3, TOL).expect("runs"),
    ];
    let mut o = cases_outcome(&cases);
    o.summary.push_str(&format!(
        "; {} n=2 functions, {} sampled n=3 functions",
        n2.len(),
        n3.len()
    ));
    o
}

fn criterion_8() -> Outcome {
    let functions = realizable_periodic(2);
    let two = functions
        .iter()
        .filter(|f| find_period(f).kind == PeriodKind::TwoToOne)
        .count();
    let case = protocol_case("protocol/n2", &functions, &[SEED, 7, 99]).expect("runs");
    outcome(
        case.passed(),
        format!(
            "{} functions ({two} two-to-one, {} bijective): {}",
            functions.len(),
            functions.len() - two,
            case.detail.unwrap_or_default()
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 1..=4 {
        let c = topology(n, Form::Compact).expect("n >= 1");
        let e = topology(n, Form::Expanded).expect("n >= 1");
        let compact_ok =
            c.nodes.len() == 2 * n && c.gadget_edge_count() == n * n && c.legs.len() == n;
        let expanded_ok = e.nodes.len() == 2 * n + n * n && e.hadamard_edge_count() == 2 * n * n;
        ok &= compact_ok && expanded_ok;
        notes.push(format!(
            "n={n}: {}/{}/{} compact, {}/{} expanded",
            c.nodes.len(),
            c.gadget_edge_count(),
            c.legs.len(),
            e.nodes.len(),
            e.hadamard_edge_count()
        ));
    }
    let d = simplify_to_mbqc(&build_raw_translation(2).expect("n=2").base).expect("simplifies");
    let spiders = d.spiders().count();
    let all_z = d.spiders().all(|v| v.kind == VertexKind::Z);
    ok &= spiders == 10 && all_z;
    notes.push(format!("n=2 MBQC diagram: {spiders} spiders"));
    outcome(ok, notes.join("; "))
}

fn main() {
    let ms = Duration::from_millis;
    let results = [
        run(1, "gate characteristics", ms(1), criterion_1),
        run(2, "worked factorization", ms(1), criterion_2),
        run(3, "oracle round-trip", ms(5_000), criterion_3),
        run(4, "rule soundness", ms(30_000), criterion_4),
        run(5, "gadget identities", ms(1_000), criterion_5),
        run(6, "n=2 equivalence sweep", ms(60_000), criterion_6),
        run(7, "sampling law", ms(60_000), criterion_7),
        run(8, "protocol recovery", ms(10_000), criterion_8),
        run(9, "topology counts", ms(1), criterion_9),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
