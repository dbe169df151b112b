use std::sync::Arc;

use superalg::AlgebraError;
use superalg::multiindex::Parity;
use superalg::random::{rng_for, Sampler};
use superalg::scalars::{CoeffRing, ScalarKind};
use superalg::supermodule::*;
use superalg::superring::{SuperElement, SuperRing, SuperRingExt};

fn z6(odd: &[&str]) -> Arc<SuperRing> {
    Arc::new(SuperRing::new(CoeffRing::scalar(ScalarKind::IntegerMod { n: 6 }).unwrap(), odd).unwrap())
}

fn grassmann(l: usize) -> Arc<SuperRing> {
    Arc::new(SuperRing::grassmann(ScalarKind::Rational, l).unwrap())
}

fn random_morphism(ring: &Arc<SuperRing>, s: FreeType, t: FreeType, seed: u64, stream: u64) -> SuperMorphism {
    let mut rng = rng_for(seed, stream);
    let sampler = Sampler { max_terms: 3, ..Sampler::default() };
    let rows = (0..t.rank())
        .map(|_| (0..s.rank()).map(|_| sampler.element(ring, None, &mut rng)).collect())
        .collect();
    SuperMorphism::new(ring, s, t, rows).unwrap()
}

/// Random morphism homogeneous of degree `d`.
fn random_homogeneous(ring: &Arc<SuperRing>, s: FreeType, t: FreeType, d: Parity, seed: u64) -> SuperMorphism {
    let (even, odd) = random_morphism(ring, s, t, seed, 0).grade_split();
    if d == Parity::Even {
        even
    } else {
        odd
    }
}

fn random_vector(ring: &Arc<SuperRing>, t: FreeType, parity: Option<Parity>, seed: u64) -> ModElement {
    let mut rng = rng_for(seed, 99);
    let sampler = Sampler::default();
    let coords = (0..t.rank())
        .map(|i| sampler.element(ring, parity.map(|a| t.basis_parity(i) + a), &mut rng))
        .collect();
    ModElement::from_coords(t, coords).unwrap()
}

#[test]
fn identity_and_scalar_maps() {
    let r = z6(&["xi1", "xi2"]);
    let t = FreeType::new(2, 1);
    let x = random_vector(&r, t, None, 3);
    assert_eq!(SuperMorphism::identity(&r, t).apply(&x).unwrap(), x);
    let one = FreeType::new(1, 0);
    let three = SuperMorphism::scalar(&r, one, &r.from_i64(3));
    let y = three.apply(&ModElement::basis(&r, one, 0)).unwrap();
    assert_eq!(y.coords()[0], r.from_i64(3));
}

#[test]
fn apply_rejects_wrong_shape() {
    let r = grassmann(2);
    let phi = SuperMorphism::identity(&r, FreeType::new(1, 1));
    let x = ModElement::zero(&r, FreeType::new(2, 0));
    assert!(matches!(phi.apply(&x), Err(AlgebraError::ShapeMismatch(_))));
    assert!(matches!(phi.compose(&SuperMorphism::identity(&r, FreeType::new(2, 0))), Err(AlgebraError::ShapeMismatch(_))));
}

#[test]
fn grade_split_examples() {
    let r = z6(&["xi1"]);
    let t = FreeType::new(1, 0);
    let phi = SuperMorphism::new(&r, t, t, vec![vec![&r.from_i64(2) + &r.odd(1)]]).unwrap();
    let (p0, p1) = phi.grade_split();
    assert_eq!(p0.entry(0, 0), &r.from_i64(2));
    assert_eq!(p1.entry(0, 0), &r.odd(1));
    assert_eq!(p0.degree(), Some(Parity::Even));
    assert_eq!(p1.degree(), Some(Parity::Odd));
    assert_eq!(phi.degree(), None);

    let even = SuperMorphism::scalar(&r, t, &r.from_i64(5));
    let (a, b) = even.grade_split();
    assert_eq!(a, even);
    assert!(b.is_zero());
}

#[test]
fn grade_split_random_z6() {
    let r = z6(&["xi1", "xi2"]);
    let (s, t) = (FreeType::new(2, 1), FreeType::new(1, 2));
    for seed in 0..25 {
        let phi = random_morphism(&r, s, t, seed, 1);
        let (p0, p1) = phi.grade_split();
        assert_eq!(p0.add(&p1).unwrap(), phi);
        for alpha in [Parity::Even, Parity::Odd] {
            let x = random_vector(&r, s, Some(alpha), seed);
            assert_eq!(x.parity().filter(|_| !x.is_zero()).unwrap_or(alpha), alpha);
            let y0 = p0.apply(&x).unwrap();
            let y1 = p1.apply(&x).unwrap();
            assert!(y0.is_zero() || y0.parity() == Some(alpha));
            assert!(y1.is_zero() || y1.parity() == Some(alpha.flip()));
            assert_eq!(phi.apply(&x).unwrap().part(alpha), y0);
        }
    }
}

#[test]
fn extend_basis_map_reproduces_images() {
    let r = grassmann(3);
    let (s, t) = (FreeType::new(1, 2), FreeType::new(2, 1));
    let basis: Vec<ModElement> = (0..t.rank()).map(|k| ModElement::basis(&r, t, k)).collect();
    assert_eq!(SuperMorphism::extend_basis_map(&r, t, t, &basis).unwrap(), SuperMorphism::identity(&r, t));
    let images: Vec<ModElement> = (0..s.rank()).map(|k| random_vector(&r, t, None, k as u64)).collect();
    let phi = SuperMorphism::extend_basis_map(&r, s, t, &images).unwrap();
    for (k, img) in images.iter().enumerate() {
        assert_eq!(&phi.apply(&ModElement::basis(&r, s, k)).unwrap(), img);
    }
    assert!(SuperMorphism::extend_basis_map(&r, s, t, &images[..2]).is_err());
}

#[test]
fn right_linearity() {
    let r = grassmann(3);
    let (s, t) = (FreeType::new(2, 1), FreeType::new(1, 1));
    let sampler = Sampler::default();
    for seed in 0..20 {
        let phi = random_morphism(&r, s, t, seed, 2);
        let x = random_vector(&r, s, None, seed + 100);
        let a = sampler.element(&r, None, &mut rng_for(seed, 5));
        let lhs = phi.apply(&x.mul_right(&a).unwrap()).unwrap();
        let rhs = phi.apply(&x).unwrap().mul_right(&a).unwrap();
        assert_eq!(lhs, rhs);
    }
}

/// `a·(Σ bᵢcᵢ) = Σ bᵢ (−1)^{|a||bᵢ|} a cᵢ`, computed slot by slot.
fn left_action_oracle(a: &SuperElement, y: &ModElement) -> ModElement {
    let pa = a.parity().unwrap();
    let coords = y
        .coords()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let v = a * c;
            if pa.koszul(y.ty().basis_parity(i)) {
                -&v
            } else {
                v
            }
        })
        .collect();
    ModElement::from_coords(y.ty(), coords).unwrap()
}

#[test]
fn left_evaluation_signs() {
    let r = grassmann(2);
    let t = FreeType::new(1, 1);
    let sampler = Sampler::default();
    for seed in 0..20 {
        for (dphi, da) in [(Parity::Even, Parity::Even), (Parity::Even, Parity::Odd), (Parity::Odd, Parity::Even), (Parity::Odd, Parity::Odd)] {
            let phi = random_homogeneous(&r, t, t, dphi, seed);
            let a = sampler.element(&r, Some(da), &mut rng_for(seed, 7));
            let x = random_vector(&r, t, None, seed);
            assert_eq!(x.mul_left(&a).unwrap(), left_action_oracle(&a, &x));
            let lhs = phi.left_evaluate(&a, &x).unwrap();
            let mut rhs = left_action_oracle(&a, &phi.apply(&x).unwrap());
            if dphi.koszul(da) {
                rhs = rhs.neg();
            }
            assert_eq!(lhs, rhs, "seed {seed}, |phi| = {dphi}, |a| = {da}");
        }
    }
    let phi = random_homogeneous(&r, t, t, Parity::Odd, 1);
    let x = random_vector(&r, t, None, 1);
    assert_eq!(phi.left_evaluate(&r.one(), &x).unwrap(), phi.apply(&x).unwrap());
    let mixed = random_morphism(&r, t, t, 4, 4);
    assert!(mixed.degree().is_none());
    assert!(matches!(mixed.left_evaluate(&r.one(), &x), Err(AlgebraError::NotHomogeneous(_))));
    let a = &r.one() + &r.odd(1);
    assert!(matches!(phi.left_evaluate(&a, &x), Err(AlgebraError::NotHomogeneous(_))));
}

#[test]
fn degree_adds_under_composition() {
    let r = grassmann(4);
    let t = FreeType::new(1, 2);
    for (i, dphi) in [Parity::Even, Parity::Odd].into_iter().enumerate() {
        for (j, dpsi) in [Parity::Even, Parity::Odd].into_iter().enumerate() {
            let phi = random_homogeneous(&r, t, t, dphi, 10 + i as u64);
            let psi = random_homogeneous(&r, t, t, dpsi, 20 + j as u64);
            let c = phi.compose(&psi).unwrap();
            assert!(c.is_zero() || c.degree() == Some(dphi + dpsi));
        }
    }
}

#[test]
fn idempotent_checks() {
    let r = z6(&["xi1", "xi2"]);
    let t = FreeType::new(1, 0);
    assert!(is_idempotent(&SuperMorphism::identity(&r, t)).unwrap());
    assert!(is_idempotent(&SuperMorphism::scalar(&r, t, &r.from_i64(3))).unwrap());
    assert!(!is_idempotent(&SuperMorphism::scalar(&r, t, &r.from_i64(2))).unwrap());
    let rect = SuperMorphism::zero(&r, t, FreeType::new(2, 0));
    assert!(matches!(is_idempotent(&rect), Err(AlgebraError::ShapeMismatch(_))));
    assert!(matches!(split_idempotent(&SuperMorphism::scalar(&r, t, &r.from_i64(2))), Err(AlgebraError::NotIdempotent)));
}

#[test]
fn trivial_splittings() {
    let r = grassmann(2);
    let t = FreeType::new(2, 1);
    let x = random_vector(&r, t, None, 8);
    let zero = split_idempotent(&SuperMorphism::zero(&r, t, t)).unwrap();
    let (p, h) = zero.iso(&x).unwrap();
    assert!(p.is_zero());
    assert_eq!(h, x);
    let id = split_idempotent(&SuperMorphism::identity(&r, t)).unwrap();
    let (p, h) = id.iso(&x).unwrap();
    assert_eq!(p, x);
    assert!(h.is_zero());
    assert!(zero.verify_round_trip().unwrap() && id.verify_round_trip().unwrap());
}

#[test]
fn z6_three_splits_exhaustively() {
    let r = z6(&["xi1", "xi2"]);
    let t = FreeType::new(1, 0);
    let split = split_idempotent(&SuperMorphism::scalar(&r, t, &r.from_i64(3))).unwrap();
    assert!(split.verify_round_trip().unwrap());
    assert!(split.verify_orthogonal().unwrap());
    let basis = [
        r.one(),
        r.odd(1),
        r.odd(2),
        &r.odd(1) * &r.odd(2),
    ];
    let mut images = std::collections::HashSet::new();
    let mut kernels = std::collections::HashSet::new();
    for code in 0..6u32.pow(4) {
        let mut c = code;
        let mut v = r.zero();
        for b in &basis {
            v = &v + &(b * &r.from_i64((c % 6) as i64));
            c /= 6;
        }
        let x = ModElement::from_coords(t, vec![v]).unwrap();
        let (p, h) = split.iso(&x).unwrap();
        assert_eq!(split.iso_inv(&p, &h).unwrap(), x);
        images.insert(p.coords()[0].to_string());
        kernels.insert(h.coords()[0].to_string());
    }
    assert_eq!(images.len(), 16);
    assert_eq!(kernels.len(), 81);
    let common: Vec<_> = images.intersection(&kernels).collect();
    assert_eq!(common, vec!["0"]);
}

#[test]
fn section_splitting_identity() {
    let r = grassmann(2);
    let t = FreeType::new(1, 1);
    let id = SuperMorphism::identity(&r, t);
    let sp = SectionSplitting::new(&id, &id).unwrap();
    let x = random_vector(&r, t, None, 1);
    let y = sp.forward(&x).unwrap();
    let parts = superalg::supermodule::split_direct_sum(&y, &[t, t]).unwrap();
    assert_eq!(parts[0], x);
    assert!(parts[1].is_zero());
    assert_eq!(sp.inverse(&y).unwrap(), x);
    assert!(sp.verify().unwrap());
}

/// `g = [1, A]: N ⊕ K → N` with section `s = [1 − AB; B]`.
fn random_split_pair(r: &Arc<SuperRing>, n: FreeType, k: FreeType, seed: u64) -> (SuperMorphism, SuperMorphism) {
    let a = random_homogeneous(r, k, n, Parity::Even, seed);
    let b = random_homogeneous(r, n, k, Parity::Even, seed + 1000);
    let g = superalg::supermodule::block_morphism(r, &[n, k], &[n], &[vec![Some(SuperMorphism::identity(r, n)), Some(a.clone())]]).unwrap();
    let top = SuperMorphism::identity(r, n).sub(&a.compose(&b).unwrap()).unwrap();
    let s = superalg::supermodule::block_morphism(r, &[n], &[n, k], &[vec![Some(top)], vec![Some(b)]]).unwrap();
    (g, s)
}

#[test]
fn section_splitting_random_z6() {
    let r = z6(&["xi1", "xi2"]);
    let (n, k) = (FreeType::new(1, 1), FreeType::new(1, 0));
    for seed in 0..10 {
        let (g, s) = random_split_pair(&r, n, k, seed);
        let sp = SectionSplitting::new(&g, &s).unwrap();
        assert!(sp.verify().unwrap());
        let x = random_vector(&r, n.direct_sum(k), None, seed);
        assert_eq!(sp.inverse(&sp.forward(&x).unwrap()).unwrap(), x);
        assert!(g.apply(&sp.kernel_projector().unwrap().apply(&x).unwrap()).unwrap().is_zero());
    }
    let g = SuperMorphism::scalar(&r, n, &r.from_i64(2));
    assert!(matches!(SectionSplitting::new(&g, &SuperMorphism::identity(&r, n)), Err(AlgebraError::SectionViolated)));
}

#[test]
fn lifting_through_split_surjections() {
    let r = z6(&["xi1", "xi2"]);
    let (n, k, p) = (FreeType::new(1, 1), FreeType::new(0, 1), FreeType::new(2, 0));
    let (g, s) = random_split_pair(&r, n, k, 3);
    let h = random_morphism(&r, p, n, 5, 5);
    let lifted = lift_through_split_surjection(&h, &g, &s).unwrap();
    assert_eq!(g.compose(&lifted).unwrap(), h);
    let zero = SuperMorphism::zero(&r, p, n);
    assert!(lift_through_split_surjection(&zero, &g, &s).unwrap().is_zero());
    let id = SuperMorphism::identity(&r, n);
    assert_eq!(lift_through_split_surjection(&h, &id, &id).unwrap(), h);
    assert!(matches!(lift_through_split_surjection(&h, &SuperMorphism::zero(&r, n, n), &id), Err(AlgebraError::SectionViolated)));
}

#[test]
fn sum_and_tensor_types() {
    for p1 in 0..=3 {
        for q1 in 0..=3 {
            for p2 in 0..=3 {
                for q2 in 0..=3 {
                    let (a, b) = (FreeType::new(p1, q1), FreeType::new(p2, q2));
                    assert_eq!(a.direct_sum(b), FreeType::new(p1 + p2, q1 + q2));
                    let t = a.tensor(b);
                    assert_eq!(t, FreeType::new(p1 * p2 + q1 * q2, p1 * q2 + q1 * p2));
                    let basis = tensor_basis(a, b);
                    assert_eq!(basis.len(), t.rank());
                    for (pos, &(i, j)) in basis.iter().enumerate() {
                        assert_eq!(t.basis_parity(pos), a.basis_parity(i) + b.basis_parity(j));
                    }
                }
            }
        }
    }
    assert_eq!(FreeType::new(1, 1).tensor(FreeType::new(1, 1)), FreeType::new(2, 2));
    assert_eq!(FreeType::new(2, 1).tensor(FreeType::new(1, 1)), FreeType::new(3, 3));
    assert_eq!(FreeType::new(2, 3).direct_sum(FreeType::new(0, 0)), FreeType::new(2, 3));
}

#[test]
fn direct_sum_of_morphisms_acts_blockwise() {
    let r = grassmann(3);
    let (t1, t2) = (FreeType::new(1, 1), FreeType::new(2, 1));
    let phi = random_morphism(&r, t1, t1, 1, 1);
    let psi = random_morphism(&r, t2, t2, 2, 2);
    let sum = direct_sum_morphisms(&phi, &psi).unwrap();
    let x = random_vector(&r, t1, None, 3);
    let y = random_vector(&r, t2, None, 4);
    let xy = direct_sum_elements(&[x.clone(), y.clone()], &r).unwrap();
    let expected = direct_sum_elements(&[phi.apply(&x).unwrap(), psi.apply(&y).unwrap()], &r).unwrap();
    assert_eq!(sum.apply(&xy).unwrap(), expected);
}

#[test]
fn tensor_of_morphisms_koszul_rule() {
    let r = grassmann(4);
    let (s1, t1, s2, t2) = (FreeType::new(1, 1), FreeType::new(1, 1), FreeType::new(1, 1), FreeType::new(2, 0));
    for seed in 0..4 {
        for dphi in [Parity::Even, Parity::Odd] {
            for dpsi in [Parity::Even, Parity::Odd] {
                let phi = random_homogeneous(&r, s1, t1, dphi, seed);
                let psi = random_homogeneous(&r, s2, t2, dpsi, seed + 50);
                let tp = tensor_morphisms(&phi, &psi).unwrap();
                for ax in [Parity::Even, Parity::Odd] {
                    let x = random_vector(&r, s1, Some(ax), seed + 7);
                    let y = random_vector(&r, s2, None, seed + 9);
                    let lhs = tp.apply(&tensor_elements(&x, &y, &r).unwrap()).unwrap();
                    let mut rhs = tensor_elements(&phi.apply(&x).unwrap(), &psi.apply(&y).unwrap(), &r).unwrap();
                    if dpsi.koszul(ax) {
                        rhs = rhs.neg();
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

/// Even idempotent with odd entries: `u diag(1, 0) u⁻¹` for `u = 1 + N`, `N³ = 0`.
fn twisted_idempotent(r: &Arc<SuperRing>) -> SuperMorphism {
    let t = FreeType::new(1, 1);
    let n = SuperMorphism::new(r, t, t, vec![vec![r.zero(), r.odd(1)], vec![r.odd(2), r.zero()]]).unwrap();
    let id = SuperMorphism::identity(r, t);
    let u = id.add(&n).unwrap();
    let n2 = n.compose(&n).unwrap();
    let u_inv = id.sub(&n).unwrap().add(&n2).unwrap();
    assert_eq!(u.compose(&u_inv).unwrap(), id);
    let mut e = SuperMorphism::zero(r, t, t);
    e.set_entry(0, 0, r.one());
    u.compose(&e).unwrap().compose(&u_inv).unwrap()
}

#[test]
fn tensor_of_idempotents_is_idempotent() {
    let r = grassmann(2);
    let e = twisted_idempotent(&r);
    assert!(is_idempotent(&e).unwrap());
    assert_eq!(e.degree(), Some(Parity::Even));
    let ee = tensor_morphisms(&e, &e).unwrap();
    assert!(is_idempotent(&ee).unwrap());
    let es = direct_sum_morphisms(&e, &e).unwrap();
    assert!(is_idempotent(&es).unwrap());
}

#[test]
fn end_projector_trivial_cases() {
    let r = grassmann(2);
    let t = FreeType::new(1, 1);
    let id = end_projector(&SuperMorphism::identity(&r, t)).unwrap();
    assert_eq!(id.hom_type(), FreeType::new(2, 2));
    assert_eq!(id.matrix(), &SuperMorphism::identity(&r, FreeType::new(2, 2)));
    let zero = end_projector(&SuperMorphism::zero(&r, t, t)).unwrap();
    assert!(zero.matrix().is_zero());
    assert!(matches!(end_projector(&SuperMorphism::scalar(&r, t, &r.from_i64(2))), Err(AlgebraError::NotIdempotent)));
}

#[test]
fn end_projector_matches_conjugation() {
    let r = grassmann(2);
    let e = twisted_idempotent(&r);
    let proj = end_projector(&e).unwrap();
    assert!(is_idempotent(proj.matrix()).unwrap());
    for seed in 0..6 {
        for d in [Parity::Even, Parity::Odd] {
            let phi = random_homogeneous(&r, e.source(), e.source(), d, seed);
            let coords = proj.coords_of(&phi).unwrap();
            assert_eq!(proj.morphism_of(&coords).unwrap(), phi);
            let image = proj.matrix().apply(&coords).unwrap();
            let expected = e.compose(&phi).unwrap().compose(&e).unwrap();
            assert_eq!(proj.morphism_of(&image).unwrap(), expected);
        }
    }
}
