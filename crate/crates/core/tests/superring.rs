use std::sync::Arc;

use superalg::error::AlgebraError;
use superalg::multiindex::MultiIndex;
use superalg::scalars::{CoeffRing, Scalar, ScalarKind};
use superalg::superring::*;

fn grassmann(l: usize) -> Arc<SuperRing> {
    Arc::new(SuperRing::grassmann(ScalarKind::Rational, l).unwrap())
}

fn z6xi() -> Arc<SuperRing> {
    Arc::new(
        SuperRing::new(CoeffRing::scalar(ScalarKind::IntegerMod { n: 6 }).unwrap(), &["xi1", "xi2"])
            .unwrap(),
    )
}

#[test]
fn nilpotent_generators_cancel() {
    let r = grassmann(2);
    let b1 = r.odd(1);
    let x = &r.one() + &b1;
    let y = &r.one() - &b1;
    assert!((&x * &y).is_one());
}

#[test]
fn anticommuting_generators() {
    let r = z6xi();
    let (x1, x2) = (r.odd(1), r.odd(2));
    let p = &x1 * &x2;
    assert_eq!(p.to_string(), "xi1*xi2");
    assert_eq!(&x2 * &x1, -&p);
    assert!((&p + &(&x2 * &x1)).is_zero());
    assert!((&x1 * &x1).is_zero());
}

#[test]
fn pairwise_sum_square_coefficient() {
    let r = grassmann(4);
    let mut x = r.zero();
    for i in 1..=4 {
        for j in i + 1..=4 {
            x = &x + &(&r.odd(i) * &r.odd(j));
        }
    }
    let sq = &x * &x;
    let top = MultiIndex::new(&[1, 2, 3, 4]).unwrap();
    assert_eq!(sq.scalar_coefficient(top), Scalar::from_i64(ScalarKind::Rational, 2));
}

#[test]
fn grade_split_examples() {
    let r = grassmann(2);
    let b12 = &r.odd(1) * &r.odd(2);
    let x = &(&r.from_i64(3) + &r.odd(1)) + &b12;
    let (e, o) = x.grade_split();
    assert_eq!(e, &r.from_i64(3) + &b12);
    assert_eq!(o, r.odd(1));
    assert_eq!(&e + &o, x);
    assert_eq!(x.parity(), None);
    let (e, o) = r.zero().grade_split();
    assert!(e.is_zero() && o.is_zero());
    let (e, o) = b12.grade_split();
    assert_eq!((e, o.is_zero()), (b12.clone(), true));
}

#[test]
fn body_and_soul() {
    let r = grassmann(2);
    let b12 = &r.odd(1) * &r.odd(2);
    let x = &r.from_i64(3) + &(&b12 + &b12);
    assert_eq!(x.body().unwrap(), Scalar::from_i64(ScalarKind::Rational, 3));
    assert_eq!(x.soul().unwrap(), &b12 + &b12);
    let p = &(&r.one() + &r.odd(1)) * &(&r.one() + &r.odd(2));
    assert!(p.body().unwrap().is_one());
    let lam = Arc::new(
        SuperRing::new(CoeffRing::sphere(ScalarKind::Rational, &["x0", "x1"]).unwrap(), &[]).unwrap(),
    );
    assert!(matches!(lam.var(0).body(), Err(AlgebraError::Unsupported(_))));
}

#[test]
fn nilpotency_and_powers() {
    let r = grassmann(2);
    let x = &r.odd(1) + &r.odd(2);
    assert!(x.is_nilpotent().unwrap());
    assert!(x.pow(3).is_zero());
    assert!(!(&r.one() + &r.odd(1)).is_nilpotent().unwrap());
    let z = z6xi();
    assert!(!z.from_i64(3).is_nilpotent().unwrap());
    assert!(z6xi().zero().is_nilpotent().unwrap());
}

#[test]
fn involution_on_generators() {
    let coeffs = CoeffRing::polynomial(ScalarKind::GaussianRational, &["a", "ad"]).unwrap();
    let r = Arc::new(
        SuperRing::new(coeffs, &["eta", "etad"])
            .unwrap()
            .with_involution(&[("a", "ad"), ("eta", "etad")], InvolutionConvention::Graded)
            .unwrap(),
    );
    let a = r.generator("a").unwrap();
    let ad = r.generator("ad").unwrap();
    let eta = r.generator("eta").unwrap();
    let etad = r.generator("etad").unwrap();
    assert_eq!(ad.involute().unwrap(), a);
    assert_eq!(eta.involute().unwrap(), etad);
    assert_eq!(etad.involute().unwrap(), -&eta);
    let p = &eta * &etad;
    assert_eq!(p.involute().unwrap(), p);
    // graded double involution
    assert_eq!(eta.involute().unwrap().involute().unwrap(), -&eta);
    assert_eq!(a.involute().unwrap().involute().unwrap(), a);
    let i = r.constant(Scalar::imaginary_unit(ScalarKind::GaussianRational).unwrap());
    assert_eq!((&i * &a).involute().unwrap(), &(-&i) * &ad);
}

#[test]
fn plain_convention_signs() {
    let coeffs = CoeffRing::scalar(ScalarKind::GaussianRational).unwrap();
    let r = Arc::new(
        SuperRing::new(coeffs, &["eta", "etad"])
            .unwrap()
            .with_involution(&[("eta", "etad")], InvolutionConvention::Plain)
            .unwrap(),
    );
    let eta = r.odd(1);
    let etad = r.odd(2);
    assert_eq!(etad.involute().unwrap(), eta);
    let p = &eta * &etad;
    assert_eq!(p.involute().unwrap(), -&p);
}

#[test]
fn involution_requires_table() {
    assert!(grassmann(2).odd(1).involute().is_err());
    let coeffs = CoeffRing::scalar(ScalarKind::GaussianRational).unwrap();
    assert!(SuperRing::new(coeffs.clone(), &["eta"])
        .unwrap()
        .with_involution(&[], InvolutionConvention::Graded)
        .is_err());
    assert!(SuperRing::new(coeffs, &["eta"])
        .unwrap()
        .with_involution(&[("eta", "eta")], InvolutionConvention::Graded)
        .is_err());
}

#[test]
fn ring_mismatch_is_reported() {
    let a = grassmann(2).one();
    let b = grassmann(3).one();
    assert_eq!(a.try_mul(&b), Err(AlgebraError::RingMismatch));
    assert_eq!(a.try_add(&b), Err(AlgebraError::RingMismatch));
}

#[test]
fn embedding_reorders_generators() {
    let small = Arc::new(
        SuperRing::new(CoeffRing::scalar(ScalarKind::Rational).unwrap(), &["b2", "b1"]).unwrap(),
    );
    let big = grassmann(3);
    let x = &small.odd(1) * &small.odd(2); // b2*b1
    let y = x.embed_into(&big).unwrap();
    assert_eq!(y, -&(&big.odd(1) * &big.odd(2)));
}
