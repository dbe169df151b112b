use std::sync::Arc;

use superalg::error::AlgebraError;
use superalg::parse::*;
use superalg::random::{rng_for, Sampler};
use superalg::scalars::{CoeffRing, Scalar, ScalarKind};
use superalg::superring::InvolutionConvention;
use superalg::superring::{SuperRing, SuperRingExt};

fn grassmann(l: usize) -> Arc<SuperRing> {
    Arc::new(SuperRing::grassmann(ScalarKind::Rational, l).unwrap())
}

#[test]
fn normalizes_examples() {
    let g = grassmann(2);
    assert_eq!(parse_element(&g, "(1+b1)*(1-b1)").unwrap().to_string(), "1");
    let sphere = Arc::new(SuperRing::new(CoeffRing::sphere(ScalarKind::Rational, &["x0", "x1"]).unwrap(), &[]).unwrap());
    assert_eq!(parse_element(&sphere, "x0^2+x1^2").unwrap().to_string(), "1");
    let z6 = superalg::spheres::z6_ring();
    assert_eq!(parse_element(&z6, "xi1*xi2 + xi2*xi1").unwrap().to_string(), "0");
    assert_eq!(parse_element(&z6, "4*xi1 + 5*xi1").unwrap().to_string(), "3*xi1");
}

#[test]
fn precedence_and_literals() {
    let g = grassmann(3);
    let e = parse_element(&g, " -3/4*b1*b2 + 2^3 - -1").unwrap();
    let b12 = &g.odd(1) * &g.odd(2);
    assert_eq!(e, &b12.scale(&Scalar::ratio(ScalarKind::Rational, -3, 4).unwrap()) + &g.from_i64(9));
    assert_eq!(parse_element(&g, "-b1^2").unwrap(), g.zero());
    assert_eq!(parse_element(&g, "(b1 + b2)^2").unwrap(), g.zero());
    assert_eq!(parse_element(&g, "b2*b1").unwrap(), -&(&g.odd(1) * &g.odd(2)));
}

#[test]
fn scalars_with_units() {
    assert_eq!(parse_scalar(ScalarKind::GaussianRational, "I*I").unwrap(), Scalar::from_i64(ScalarKind::GaussianRational, -1));
    let r = parse_scalar(ScalarKind::Radical, "sqrt(2)*sqrt(6)").unwrap();
    assert_eq!(r, Scalar::from_i64(ScalarKind::Radical, 2).mul(&Scalar::sqrt_int(ScalarKind::Radical, 3).unwrap()));
    assert!(parse_scalar(ScalarKind::Rational, "I").is_err());
    assert!(parse_scalar(ScalarKind::Rational, "sqrt(2)").is_err());
    assert_eq!(parse_scalar(ScalarKind::Rational, "sqrt(9)").unwrap(), Scalar::from_i64(ScalarKind::Rational, 3));
    assert_eq!(parse_scalar(ScalarKind::IntegerMod { n: 7 }, "1/3").unwrap(), Scalar::from_i64(ScalarKind::IntegerMod { n: 7 }, 5));
}

#[test]
fn errors_carry_positions() {
    let g = grassmann(2);
    assert_eq!(parse_element(&g, "b1 + ").unwrap_err(), AlgebraError::Parse { pos: 5, msg: "unexpected end of input".into() });
    assert!(matches!(parse_element(&g, "b1 $ b2"), Err(AlgebraError::Parse { pos: 3, .. })));
    assert!(matches!(parse_element(&g, "(b1"), Err(AlgebraError::Parse { pos: 3, .. })));
    assert!(matches!(parse_element(&g, "b1 b2"), Err(AlgebraError::Parse { pos: 3, .. })));
    assert!(matches!(parse_element(&g, "b1/2"), Err(AlgebraError::Parse { pos: 2, .. })));
    assert!(matches!(parse_element(&g, "1/0"), Err(AlgebraError::Parse { pos: 2, .. })));
    assert!(matches!(parse_element(&g, "b1^b2"), Err(AlgebraError::Parse { pos: 3, .. })));
    assert!(matches!(parse_element(&g, "b3"), Err(AlgebraError::UnknownGenerator(_))));
}

#[test]
fn display_round_trips() {
    let rings = [
        grassmann(4),
        superalg::spheres::z6_ring(),
        superalg::spheres::sphere_ring(&SuperRing::grassmann(ScalarKind::Rational, 2).unwrap(), 2).unwrap(),
        superalg::landi::landi_ring(InvolutionConvention::Graded),
        superalg::superanalysis::trig_ring(3),
        Arc::new(SuperRing::grassmann(ScalarKind::GaussianRational, 3).unwrap()),
    ];
    let sampler = Sampler::default();
    for ring in &rings {
        for seed in 0..30 {
            let e = sampler.element(ring, None, &mut rng_for(seed, 0));
            let text = e.to_string();
            assert_eq!(parse_element(ring, &text).unwrap(), e, "{text}");
        }
    }
}
