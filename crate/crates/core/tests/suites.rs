use std::sync::Arc;

use superalg::error::AlgebraError;
use superalg::multiindex::Parity;
use superalg::par::ExecMode;
use superalg::random::rng_for;
use superalg::scalars::ScalarKind;
use superalg::spheres::{make_sphere_projector, z6_ring};
use superalg::suites::*;
use superalg::supermodule::{
    is_idempotent, FreeType,
    SuperMorphism,
};
use superalg::superring::{SuperRing, SuperRingExt};

fn quick(seed: u64) -> SuiteParams {
    SuiteParams { samples: Some(5), seed, ..SuiteParams::default() }
}

#[test]
fn every_suite_passes_quickly() {
    for name in SUITES {
        let mut p = quick(3);
        if name == "landi" {
            p.n = Some(1);
        }
        if name == "sphere-projector" {
            p.max_n = Some(2);
        }
        let r = run_suite(name, &p).unwrap();
        assert!(r.pass, "{r}");
    }
    assert!(matches!(run_suite("nope", &quick(0)), Err(AlgebraError::Unsupported(_))));
}

#[test]
fn reports_are_deterministic_across_modes() {
    for name in ["grassmann-laws", "sqrt", "hom-grading"] {
        let seq = run_suite(name, &SuiteParams { mode: ExecMode::Sequential, ..quick(9) }).unwrap();
        let par = run_suite(name, &SuiteParams { mode: ExecMode::Parallel, ..quick(9) }).unwrap();
        assert_eq!(seq.to_json_untimed(), par.to_json_untimed());
    }
}

#[test]
fn top_coefficient_witness() {
    let r = run_suite("example-2-6", &SuiteParams { l: Some(10), max_n: Some(5), ..SuiteParams::default() }).unwrap();
    assert!(r.pass);
    assert_eq!(r.clauses[2].witness.as_deref(), Some("coeff(x^3, b1..b6) = 6"));
}

#[test]
fn random_idempotents_are_idempotent() {
    let ring = Arc::new(SuperRing::grassmann(ScalarKind::Rational, 3).unwrap());
    for seed in 0..10 {
        let mut rng = rng_for(seed, 0);
        let g = random_idempotent(&ring, FreeType::new(2, 1), &mut rng);
        assert!(is_idempotent(&g).unwrap());
        assert_eq!(g.degree().unwrap_or(Parity::Even), Parity::Even);
    }
}

#[test]
fn certify_cases() {
    let ring = z6_ring();
    let t = FreeType::new(1, 1);
    assert!(certify_idempotent(&SuperMorphism::identity(&ring, t)).pass());
    let two = SuperMorphism::scalar(&ring, t, &ring.from_i64(2));
    let r = certify_idempotent(&two);
    assert!(!r.pass());
    assert!(r.clause("g^2 = g").unwrap().witness.as_deref().unwrap().contains("(0,0)"));
    let rect = SuperMorphism::zero(&ring, t, FreeType::new(1, 0));
    assert!(!certify_idempotent(&rect).pass());
    let b = make_sphere_projector(&SuperRing::grassmann(ScalarKind::Rational, 0).unwrap(), 1).unwrap();
    let json = superalg::json::morphism_to_value(b.g());
    let back = superalg::json::morphism_from_value(&json).unwrap();
    assert!(certify_idempotent(&back).pass());
}
