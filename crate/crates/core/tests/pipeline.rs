use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simonzx::mbqc::{
    build_raw_translation, extract_pattern, instantiate, simplify_stages, OracleSettings, STAGES,
};
use simonzx::verify::stage_residuals;
use simonzx::zx::{eval_tensor, proportional, ZxDiagram};

fn random_settings(n: usize, rng: &mut impl Rng) -> OracleSettings {
    let mut s = OracleSettings::off(n);
    for row in &mut s.cnot_on {
        for c in row.iter_mut() {
            *c = rng.gen_bool(0.5);
        }
    }
    for f in &mut s.x_flip {
        *f = rng.gen_bool(0.5);
    }
    s
}

#[test]
fn sampled_n3_stages_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let a = build_raw_translation(3).unwrap();
    for _ in 0..16 {
        let s = random_settings(3, &mut rng);
        let stages = simplify_stages(&instantiate(&a, &s).unwrap()).unwrap();
        assert_eq!(stages.len(), STAGES.len() + 1);
        for (name, r) in STAGES.iter().zip(stage_residuals(&stages).unwrap()) {
            assert!(r < 1e-9, "{name} under {s:?}: {r}");
        }
    }
}

#[test]
fn mbqc_diagram_survives_json() {
    for n in 1..=3 {
        let a = build_raw_translation(n).unwrap();
        let stages = simplify_stages(&a.base).unwrap();
        let d = &stages.last().unwrap().diagram;
        let back: ZxDiagram = serde_json::from_str(&serde_json::to_string(d).unwrap()).unwrap();
        assert_eq!(back.spiders().count(), n * n + 3 * n);
        assert_eq!(extract_pattern(&back).unwrap(), extract_pattern(d).unwrap());
        let s = OracleSettings::off(n);
        let t1 = eval_tensor(&instantiate(&a, &s).unwrap()).unwrap();
        assert_eq!(t1.legs(), 2 * n);
    }
}

#[test]
fn bound_diagram_round_trip_matches() {
    let a = build_raw_translation(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..8 {
        let s = random_settings(2, &mut rng);
        let d = instantiate(&a, &s).unwrap();
        let back: ZxDiagram = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert!(proportional(&eval_tensor(&d).unwrap(), &eval_tensor(&back).unwrap(), 1e-12));
    }
}
