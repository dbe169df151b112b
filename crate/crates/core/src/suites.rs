//! Named verification suites shared by the CLI, the acceptance tests and the benches.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{AlgebraError, Result};
use crate::landi::landi_report;
use crate::multiindex::{MultiIndex, Parity};
use crate::par::{map_indexed, ExecMode};
use crate::random::{rng_for, Sampler};
use crate::report::{Clause, Report};
use crate::scalars::{CoeffRing, Scalar, ScalarKind};
use crate::spheres::{end_projector_check, make_sphere_projector, sphere_ring, stably_free_certificate, z6_example, z6_ring};
use crate::superanalysis::{
    chart_forward, chart_inverse, circle_tangent, on_circle, sqrt_by_series, sqrt_even, super_cos, super_sin,
    superderivation_check, trig_ring, Chart,
};
use crate::supermodule::{
    block_morphism, end_projector, is_idempotent, lift_through_split_surjection, split_idempotent, tensor_basis, FreeType, ModElement,
    SuperMorphism,
};
use crate::superring::{InvolutionConvention, SuperElement, SuperRing, SuperRingExt};

pub const SUITES: [&str; 13] = [
    "grassmann-laws",
    "example-2-6",
    "nilpotency",
    "hom-grading",
    "universal-property",
    "sphere-projector",
    "z6",
    "splitting",
    "tensor-types",
    "supercircle",
    "trig",
    "sqrt",
    "landi",
];

/// Knobs shared by the suites; unset values take per-suite defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteParams {
    pub l: Option<usize>,
    pub n: Option<usize>,
    pub max_n: Option<usize>,
    pub samples: Option<u64>,
    pub seed: u64,
    pub mode: ExecMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub params: Map<String, Value>,
    pub clauses: Vec<Clause>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub pass: bool,
    pub elapsed_ms: f64,
}

impl SuiteReport {
    fn from_report(suite: &str, seed: u64, report: Report, elapsed_ms: f64) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            pass: report.pass(),
            params: report.params,
            clauses: report.clauses,
            notes: report.notes,
            elapsed_ms,
        }
    }

    /// JSON without the timing field, for byte-level comparisons.
    pub fn to_json_untimed(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("elapsed_ms");
        v
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "suite {} (seed {})", self.suite, self.seed)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        writeln!(f)?;
        for c in &self.clauses {
            write!(f, "  [{}] {}", if c.pass { "pass" } else { "FAIL" }, c.name)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        write!(f, "result: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    let start = Instant::now();
    let report = match name {
        "grassmann-laws" => grassmann_laws(params),
        "example-2-6" => top_coefficients(params),
        "nilpotency" => nilpotency(params),
        "hom-grading" => hom_grading(params),
        "universal-property" => universal_property(params),
        "sphere-projector" => sphere_projector(params)?,
        "z6" => z6_example(),
        "splitting" => splitting(params)?,
        "tensor-types" => tensor_types(params)?,
        "supercircle" => supercircle(params),
        "trig" => trig(params),
        "sqrt" => sqrt(params),
        "landi" => landi(params)?,
        _ => return Err(AlgebraError::Unsupported(format!("unknown suite `{name}`"))),
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    Ok(SuiteReport::from_report(name, params.seed, report, elapsed))
}

/// Runs `check(i)` for `count` samples and folds the outcomes into one clause.
fn sampled<F>(name: &str, mode: ExecMode, count: u64, check: F) -> Clause
where
    F: Fn(u64) -> std::result::Result<(), String> + Sync + Send,
{
    let outcomes = map_indexed(mode, count, check);
    match outcomes.iter().enumerate().find_map(|(i, r)| r.as_ref().err().map(|w| (i, w))) {
        None => Clause::with_witness(name, true, format!("{count} samples")),
        Some((i, w)) => Clause::with_witness(name, false, format!("sample {i}: {w}")),
    }
}

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

/// The four rings exercised by the law suite.
pub fn featured_rings(l: usize) -> Vec<(String, Arc<SuperRing>)> {
    let grass = Arc::new(SuperRing::grassmann(ScalarKind::Rational, l).expect("grassmann"));
    let sphere_base = SuperRing::grassmann(ScalarKind::Rational, 2).expect("grassmann");
    vec![
        (format!("grassmann{l}"), grass),
        ("z6xi2".to_string(), z6_ring()),
        ("lambda1 over grassmann2".to_string(), sphere_ring(&sphere_base, 1).expect("sphere ring")),
        ("landi".to_string(), crate::landi::landi_ring(InvolutionConvention::Graded)),
    ]
}

fn grassmann_laws(p: &SuiteParams) -> Report {
    let l = p.l.unwrap_or(6);
    let count = p.samples.unwrap_or(500);
    let mut report = Report::new("grassmann-laws").param("L", l).param("samples", count);
    let sampler = Sampler { max_terms: 3, coeff_bound: 4, max_exponent: 1 };
    for (label, ring) in featured_rings(l) {
        let ring = &ring;
        let draw = |i: u64| {
            let mut rng = rng_for(p.seed, i);
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                let parity = if rand::Rng::gen_bool(rng, 0.5) { Parity::Odd } else { Parity::Even };
                (sampler.element(ring, Some(parity), rng), parity)
            };
            (pick(&mut rng), pick(&mut rng), pick(&mut rng))
        };
        report.push(sampled(&format!("{label}: super commutativity"), p.mode, count, |i| {
            let ((a, pa), (b, pb), _) = draw(i);
            let ba = &b * &a;
            let rhs = if pa.koszul(pb) { -&ba } else { ba };
            ensure(&a * &b == rhs, || format!("a = {a}, b = {b}"))
        }));
        report.push(sampled(&format!("{label}: associativity"), p.mode, count, |i| {
            let ((a, _), (b, _), (c, _)) = draw(i);
            ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("a = {a}, b = {b}, c = {c}"))
        }));
        report.push(sampled(&format!("{label}: distributivity"), p.mode, count, |i| {
            let ((a, _), (b, _), (c, _)) = draw(i);
            let left = &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
            let right = &(&a + &b) * &c == &(&a * &c) + &(&b * &c);
            ensure(left && right, || format!("a = {a}, b = {b}, c = {c}"))
        }));
        report.push(sampled(&format!("{label}: grading"), p.mode, count, |i| {
            let ((a, pa), (b, pb), _) = draw(i);
            let ab = &a * &b;
            ensure(ab.is_homogeneous_of(pa + pb), || format!("a = {a}, b = {b}"))
        }));
    }
    report
}

/// `Σ_{i<j≤L} βᵢβⱼ`.
pub fn pair_sum(ring: &Arc<SuperRing>, l: usize) -> SuperElement {
    let mut x = ring.zero();
    for i in 1..=l {
        for j in i + 1..=l {
            x = &x + &(&ring.odd(i) * &ring.odd(j));
        }
    }
    x
}

fn top_coefficients(p: &SuiteParams) -> Report {
    let l = p.l.unwrap_or(10);
    let max_n = p.max_n.unwrap_or(5).min(l / 2);
    let mut report = Report::new("example-2-6").param("L", l).param("max_n", max_n);
    let ring = Arc::new(SuperRing::grassmann(ScalarKind::Rational, l).expect("grassmann"));
    let x = pair_sum(&ring, l);
    let results = map_indexed(p.mode, max_n as u64, |k| {
        let n = k as usize + 1;
        let top = MultiIndex::new(&(1..=2 * n).collect::<Vec<_>>()).expect("index");
        let c = x.pow(n as u32).scalar_coefficient(top);
        let fact = (1..=n as i64).product::<i64>();
        (n, c.clone(), c == Scalar::from_i64(ScalarKind::Rational, fact))
    });
    for (n, c, ok) in results {
        let gens: String = if n == 1 { "b1b2".into() } else { format!("b1..b{}", 2 * n) };
        report.push(Clause::with_witness(format!("coeff of top monomial in x^{n} is {n}!"), ok, format!("coeff(x^{n}, {gens}) = {c}")));
    }
    report
}

fn nilpotency(p: &SuiteParams) -> Report {
    let l = p.l.unwrap_or(6);
    let count = p.samples.unwrap_or(200);
    let ring = Arc::new(SuperRing::grassmann(ScalarKind::Rational, l).expect("grassmann"));
    let sampler = Sampler { max_terms: 6, ..Sampler::default() };
    let mut report = Report::new("nilpotency").param("L", l).param("samples", count);
    report.push(sampled(&format!("x^{} = 0 for souls", l + 1), p.mode, count, |i| {
        let x = sampler.soul(&ring, &mut rng_for(p.seed, i));
        ensure(x.pow(l as u32 + 1).is_zero() && x.is_nilpotent() == Ok(true), || format!("x = {x}"))
    }));
    report.push(sampled(&format!("x^{} = 0 for even souls", l / 2 + 1), p.mode, count, |i| {
        let x = sampler.even_soul(&ring, &mut rng_for(p.seed, i));
        ensure(x.pow(l as u32 / 2 + 1).is_zero(), || format!("x = {x}"))
    }));
    report
}

fn random_morphism(ring: &Arc<SuperRing>, s: FreeType, t: FreeType, sampler: &Sampler, rng: &mut rand_chacha::ChaCha8Rng) -> SuperMorphism {
    let rows = (0..t.rank()).map(|_| (0..s.rank()).map(|_| sampler.element(ring, None, rng)).collect()).collect();
    SuperMorphism::new(ring, s, t, rows).expect("shape")
}

fn random_type(rng: &mut rand_chacha::ChaCha8Rng, max: usize) -> FreeType {
    use rand::Rng;
    loop {
        let t = FreeType::new(rng.gen_range(0..=max), rng.gen_range(0..=max));
        if t.rank() > 0 {
            return t;
        }
    }
}

fn random_vector(ring: &Arc<SuperRing>, t: FreeType, parity: Parity, sampler: &Sampler, rng: &mut rand_chacha::ChaCha8Rng) -> ModElement {
    let coords = (0..t.rank()).map(|i| sampler.element(ring, Some(t.basis_parity(i) + parity), rng)).collect();
    ModElement::from_coords(t, coords).expect("shape")
}

fn hom_grading(p: &SuiteParams) -> Report {
    let count = p.samples.unwrap_or(100);
    let ring = z6_ring();
    let sampler = Sampler::default();
    let mut report = Report::new("hom-grading").param("ring", "z6xi2").param("samples", count);
    report.push(sampled("phi = phi0 + phi1 with phi0 even, phi1 odd", p.mode, count, |i| {
        let mut rng = rng_for(p.seed, i);
        let (s, t) = (random_type(&mut rng, 2), random_type(&mut rng, 2));
        let phi = random_morphism(&ring, s, t, &sampler, &mut rng);
        let (p0, p1) = phi.grade_split();
        ensure(p0.add(&p1).ok() == Some(phi.clone()), || format!("sum differs for {phi}"))?;
        for alpha in [Parity::Even, Parity::Odd] {
            let x = random_vector(&ring, s, alpha, &sampler, &mut rng);
            let (y0, y1) = (p0.apply(&x).expect("shape"), p1.apply(&x).expect("shape"));
            ensure(y0.is_zero() || y0.parity() == Some(alpha), || format!("phi0 moves parity {alpha} in {p0}"))?;
            ensure(y1.is_zero() || y1.parity() == Some(alpha.flip()), || format!("phi1 keeps parity {alpha} in {p1}"))?;
        }
        Ok(())
    }));
    report
}

/// Even idempotent `u·diag(1..1, 0..0)·u⁻¹` with `u = 1 + N` for an even nilpotent `N`.
pub fn random_idempotent(ring: &Arc<SuperRing>, ty: FreeType, rng: &mut rand_chacha::ChaCha8Rng) -> SuperMorphism {
    use rand::Rng;
    let sampler = Sampler { max_terms: 2, coeff_bound: 3, max_exponent: 1 };
    let n = ty.rank();
    let mut nil = SuperMorphism::zero(ring, ty, ty);
    for i in 0..n {
        for j in 0..n {
            let parity = ty.basis_parity(i) + ty.basis_parity(j);
            let e = sampler.element(ring, Some(parity), rng).soul_part();
            nil.set_entry(i, j, e);
        }
    }
    let id = SuperMorphism::identity(ring, ty);
    let u = id.add(&nil).expect("shape");
    let mut u_inv = id.clone();
    let mut power = id.clone();
    for k in 1..=ring.odd_count() + 1 {
        power = power.compose(&nil).expect("shape").neg();
        if power.is_zero() {
            break;
        }
        u_inv = u_inv.add(&power).expect("shape");
        debug_assert!(k <= ring.odd_count());
    }
    let mut diag = SuperMorphism::zero(ring, ty, ty);
    for i in 0..n {
        if rng.gen_bool(0.5) {
            diag.set_entry(i, i, ring.one());
        }
    }
    u.compose(&diag).and_then(|m| m.compose(&u_inv)).expect("shape")
}

fn random_even(ring: &Arc<SuperRing>, s: FreeType, t: FreeType, rng: &mut rand_chacha::ChaCha8Rng) -> SuperMorphism {
    random_morphism(ring, s, t, &Sampler { max_terms: 2, coeff_bound: 3, max_exponent: 1 }, rng).grade_split().0
}

/// `g = [1, A]: N ⊕ K → N` with section `s = [1 − AB; B]`.
pub fn random_split_pair(ring: &Arc<SuperRing>, n: FreeType, k: FreeType, rng: &mut rand_chacha::ChaCha8Rng) -> (SuperMorphism, SuperMorphism) {
    let a = random_even(ring, k, n, rng);
    let b = random_even(ring, n, k, rng);
    let id = SuperMorphism::identity(ring, n);
    let g = block_morphism(ring, &[n, k], &[n], &[vec![Some(id.clone()), Some(a.clone())]]).expect("blocks");
    let top = id.sub(&a.compose(&b).expect("shape")).expect("shape");
    let s = block_morphism(ring, &[n], &[n, k], &[vec![Some(top)], vec![Some(b)]]).expect("blocks");
    (g, s)
}

fn universal_property(p: &SuiteParams) -> Report {
    let count = p.samples.unwrap_or(50);
    let sampler = Sampler { max_terms: 3, ..Sampler::default() };
    let mut report = Report::new("universal-property").param("samples", count);
    for (label, ring) in [("grassmann3", Arc::new(SuperRing::grassmann(ScalarKind::Rational, 3).expect("ring"))), ("z6xi2", z6_ring())] {
        let ring = &ring;
        report.push(sampled(&format!("{label}: maps lift through split surjections"), p.mode, count, |i| {
            let mut rng = rng_for(p.seed, i);
            let (n, k) = (random_type(&mut rng, 2), random_type(&mut rng, 1));
            let (g, s) = random_split_pair(ring, n, k, &mut rng);
            let src = random_type(&mut rng, 2);
            let h = random_morphism(ring, src, n, &sampler, &mut rng).grade_split().0;
            let lifted = lift_through_split_surjection(&h, &g, &s).map_err(|err| err.to_string())?;
            ensure(g.compose(&lifted).ok() == Some(h.clone()), || "lift does not factor".into())
        }));
        report.push(sampled(&format!("{label}: phi(a x) = (-1)^(|phi||a|) a phi(x)"), p.mode, count, |i| {
            let mut rng = rng_for(p.seed, i + count);
            let ty = random_type(&mut rng, 2);
            let phi_full = random_morphism(ring, ty, ty, &sampler, &mut rng);
            let (p0, p1) = phi_full.grade_split();
            for (phi, dphi) in [(p0, Parity::Even), (p1, Parity::Odd)] {
                for da in [Parity::Even, Parity::Odd] {
                    let a = sampler.element(ring, Some(da), &mut rng);
                    let x = random_vector(ring, ty, Parity::Even, &sampler, &mut rng);
                    let lhs = phi.left_evaluate(&a, &x).map_err(|e| e.to_string())?;
                    let direct = phi.apply(&x.mul_left(&a).expect("ring")).expect("shape");
                    ensure(lhs == direct, || format!("left action mismatch for {phi}"))?;
                    let mut rhs = phi.apply(&x).expect("shape").mul_left(&a).expect("ring");
                    if dphi.koszul(da) {
                        rhs = rhs.neg();
                    }
                    ensure(lhs == rhs, || format!("sign rule fails for {phi}, a = {a}"))?;
                }
            }
            Ok(())
        }));
    }
    report
}

fn rational_base() -> SuperRing {
    SuperRing::new(CoeffRing::scalar(ScalarKind::Rational).expect("Q"), &[]).expect("Q")
}

fn sphere_projector(p: &SuiteParams) -> Result<Report> {
    let ns: Vec<usize> = match p.n {
        Some(n) => vec![n],
        None => (1..=p.max_n.unwrap_or(4)).collect(),
    };
    let mut report = Report::new("sphere-projector").param("n", Value::from(ns.clone()));
    let bases = [("Q", rational_base()), ("Q x grassmann2", SuperRing::grassmann(ScalarKind::Rational, 2)?)];
    for (label, base) in &bases {
        let certs = map_indexed(p.mode, ns.len() as u64, |k| {
            let n = ns[k as usize];
            make_sphere_projector(base, n).map(|b| (n, stably_free_certificate(&b)))
        });
        for cert in certs {
            let (n, cert) = cert?;
            for c in cert.clauses {
                report.push(Clause { name: format!("n={n} base={label}: {}", c.name), ..c });
            }
        }
    }
    if ns.contains(&1) {
        let b = make_sphere_projector(&rational_base(), 1)?;
        report.push(Clause::new("end projector of g (n=1) idempotent", end_projector_check(&b)?));
    }
    report.note("basis s0..sn all even");
    report.note("non-freeness of ker g for n not in {0, 1, 3, 7}: cited, not machine-checked");
    Ok(report)
}

fn split_clauses(report: &mut Report, label: &str, g: &SuperMorphism) {
    let clause = match split_idempotent(g) {
        Ok(s) => {
            let ok = s.verify_round_trip().unwrap_or(false) && s.verify_orthogonal().unwrap_or(false);
            Clause::new(format!("{label}: x -> (g x, x - g x) and (p, h) -> p + h are inverse"), ok)
        }
        Err(e) => Clause::with_witness(format!("{label}: split"), false, e.to_string()),
    };
    report.push(clause);
}

fn splitting(p: &SuiteParams) -> Result<Report> {
    let count = p.samples.unwrap_or(30);
    let mut report = Report::new("splitting").param("samples", count);
    for n in 1..=3 {
        for (label, base) in [("Q", rational_base()), ("grassmann2", SuperRing::grassmann(ScalarKind::Rational, 2)?)] {
            let b = make_sphere_projector(&base, n)?;
            split_clauses(&mut report, &format!("sphere g n={n} over {label}"), b.g());
        }
    }
    let z6 = z6_ring();
    let three = SuperMorphism::scalar(&z6, FreeType::new(1, 0), &z6.from_i64(3));
    split_clauses(&mut report, "z6 e = 3", &three);
    let sampler = Sampler::default();
    for (label, ring) in [("grassmann3", Arc::new(SuperRing::grassmann(ScalarKind::Rational, 3)?)), ("z6xi2", z6)] {
        let ring = &ring;
        report.push(sampled(&format!("{label}: random idempotents split"), p.mode, count, |i| {
            let mut rng = rng_for(p.seed, i);
            let ty = random_type(&mut rng, 2);
            let g = random_idempotent(ring, ty, &mut rng);
            let split = split_idempotent(&g).map_err(|e| e.to_string())?;
            for alpha in [Parity::Even, Parity::Odd] {
                let x = random_vector(ring, ty, alpha, &sampler, &mut rng);
                let (img, ker) = split.iso(&x).map_err(|e| e.to_string())?;
                ensure(split.iso_inv(&img, &ker).ok() == Some(x.clone()), || format!("round trip fails for {g}"))?;
                ensure(g.apply(&ker).map(|v| v.is_zero()).unwrap_or(false), || "kernel part not killed".into())?;
                ensure(g.apply(&img).ok() == Some(img.clone()), || "image part not fixed".into())?;
            }
            ensure(split.verify_round_trip() == Ok(true), || format!("matrix round trip fails for {g}"))
        }));
    }
    Ok(report)
}

fn tensor_types(p: &SuiteParams) -> Result<Report> {
    let max = p.max_n.unwrap_or(3);
    let mut report = Report::new("tensor-types").param("max", max);
    let (mut sums, mut tensors) = (true, true);
    for p1 in 0..=max {
        for q1 in 0..=max {
            for p2 in 0..=max {
                for q2 in 0..=max {
                    let (a, b) = (FreeType::new(p1, q1), FreeType::new(p2, q2));
                    sums &= a.direct_sum(b) == FreeType::new(p1 + p2, q1 + q2);
                    let t = a.tensor(b);
                    tensors &= t == FreeType::new(p1 * p2 + q1 * q2, p1 * q2 + q1 * p2);
                    tensors &= tensor_basis(a, b)
                        .iter()
                        .enumerate()
                        .all(|(k, &(i, j))| t.basis_parity(k) == a.basis_parity(i) + b.basis_parity(j));
                }
            }
        }
    }
    report.push(Clause::new("direct sum types", sums));
    report.push(Clause::new("tensor types", tensors));
    let b = make_sphere_projector(&rational_base(), 1)?;
    let e = end_projector(b.g())?;
    report.push(Clause::with_witness(
        "end projector of sphere g (n=1) idempotent",
        is_idempotent(e.matrix())?,
        format!("Hom type {}", e.hom_type()),
    ));
    Ok(report)
}

const PYTHAGOREAN: [(i64, i64, i64); 8] =
    [(3, 5, 4), (4, 5, 3), (-3, 5, 4), (5, 13, 12), (-12, 13, 5), (8, 17, 15), (0, 1, 1), (20, 29, 21)];

/// Even element with a Pythagorean body `n/d` and a random even soul; returns `(y, c/d)`.
pub fn pythagorean_sample(ring: &Arc<SuperRing>, seed: u64, i: u64) -> (SuperElement, Scalar) {
    let (n, d, c) = PYTHAGOREAN[i as usize % PYTHAGOREAN.len()];
    let soul = Sampler::default().even_soul(ring, &mut rng_for(seed, i));
    let y = &ring.rational(n, d) + &soul;
    (y, Scalar::ratio(ScalarKind::Rational, c, d).expect("nonzero"))
}

fn supercircle(p: &SuiteParams) -> Report {
    let l = p.l.unwrap_or(6);
    let count = p.samples.unwrap_or(50);
    let ring = Arc::new(SuperRing::grassmann(ScalarKind::Rational, l).expect("grassmann"));
    let mut report = Report::new("supercircle").param("L", l).param("samples", count);
    report.push(sampled("charts land on x^2 + y^2 = 1 and round trip", p.mode, count, |i| {
        let (t, _) = pythagorean_sample(&ring, p.seed, i);
        for chart in Chart::ALL {
            let (x, y) = chart_inverse(chart, &t).map_err(|e| e.to_string())?;
            ensure(on_circle(&x, &y), || format!("{chart:?} misses the circle at {t}"))?;
            ensure(chart_forward(chart, &x, &y).ok() == Some(t.clone()), || format!("{chart:?} round trip fails at {t}"))?;
        }
        Ok(())
    }));
    let sampler = Sampler::default();
    report.push(sampled("tangent (-l y, l x) is tangent", p.mode, count, |i| {
        let (t, _) = pythagorean_sample(&ring, p.seed, i);
        let (x, y) = chart_inverse(Chart::XPlus, &t).map_err(|e| e.to_string())?;
        let lambda = sampler.element(&ring, None, &mut rng_for(p.seed, i + count));
        let (vx, vy) = circle_tangent(&x, &y, &lambda).map_err(|e| e.to_string())?;
        ensure((&(&x * &vx) + &(&y * &vy)).is_zero(), || format!("at y = {t}"))
    }));
    report
}

fn trig(p: &SuiteParams) -> Report {
    let l = p.l.unwrap_or(6);
    let count = p.samples.unwrap_or(30);
    let ring = trig_ring(l);
    let sampler = Sampler { max_exponent: 0, ..Sampler::default() };
    let mut report = Report::new("trig").param("L", l).param("samples", count);
    report.push(sampled("sin^2 + cos^2 = 1", p.mode, count, |i| {
        let soul = sampler.even_soul(&ring, &mut rng_for(p.seed, i));
        let (s, c) = (super_sin(&soul).map_err(|e| e.to_string())?, super_cos(&soul).map_err(|e| e.to_string())?);
        ensure((&(&s * &s) + &(&c * &c)).is_one(), || format!("soul {soul}"))
    }));
    report.push(sampled("D sin = cos, D cos = -sin, D(sin^2 + cos^2) = 0", p.mode, count, |i| {
        let soul = sampler.even_soul(&ring, &mut rng_for(p.seed, i));
        let r = superderivation_check(&soul).map_err(|e| e.to_string())?;
        ensure(r.pass(), || r.to_string())
    }));
    let grass = Arc::new(SuperRing::grassmann(ScalarKind::Rational, 2).expect("grassmann"));
    let t = &grass.odd(1) * &grass.odd(2);
    let zero_body = super_sin(&t).ok() == Some(t.clone()) && super_cos(&t).map(|c| c.is_one()).unwrap_or(false);
    report.push(Clause::new("sin(b1 b2) = b1 b2, cos(b1 b2) = 1", zero_body));
    report
}

fn sqrt(p: &SuiteParams) -> Report {
    let l = p.l.unwrap_or(6);
    let count = p.samples.unwrap_or(100);
    let ring = Arc::new(SuperRing::grassmann(ScalarKind::Rational, l).expect("grassmann"));
    let mut report = Report::new("sqrt").param("L", l).param("samples", count);
    report.push(sampled("sqrt(1 - y^2)^2 + y^2 = 1", p.mode, count, |i| {
        let (y, root0) = pythagorean_sample(&ring, p.seed, i);
        let z = &ring.one() - &(&y * &y);
        let x = sqrt_even(&z, &root0).map_err(|e| e.to_string())?;
        ensure((&(&x * &x) + &(&y * &y)).is_one(), || format!("y = {y}"))?;
        let series = sqrt_by_series(&z, &root0).map_err(|e| e.to_string())?;
        ensure(series == x, || format!("recursion and binomial series differ at y = {y}"))
    }));
    let b12 = &ring.odd(1) * &ring.odd(2);
    let y = &ring.rational(3, 5) + &b12;
    let x = sqrt_even(&(&ring.one() - &(&y * &y)), &Scalar::ratio(ScalarKind::Rational, 4, 5).expect("q"));
    let expected = &ring.rational(4, 5) - &b12.scale(&Scalar::ratio(ScalarKind::Rational, 3, 4).expect("q"));
    report.push(match x {
        Ok(x) => Clause::with_witness("sqrt(1 - (3/5 + b1 b2)^2)", x == expected, x.to_string()),
        Err(e) => Clause::with_witness("sqrt(1 - (3/5 + b1 b2)^2)", false, e.to_string()),
    });
    report
}

fn landi(p: &SuiteParams) -> Result<Report> {
    let ns: Vec<usize> = match p.n {
        Some(n) => vec![n],
        None => (1..=p.max_n.unwrap_or(3)).collect(),
    };
    let count = p.samples.unwrap_or(20);
    let mut report = Report::new("landi").param("n", Value::from(ns.clone())).param("samples", count);
    let ring = crate::landi::landi_ring(InvolutionConvention::Graded);
    let sampler = Sampler { max_terms: 3, coeff_bound: 3, max_exponent: 1 };
    let reports = map_indexed(p.mode, ns.len() as u64, |k| {
        let n = ns[k as usize];
        let ty = FreeType::new(n + 1, n);
        let vectors: Vec<ModElement> = (0..count)
            .map(|s| {
                let mut rng = rng_for(p.seed, s);
                let coords = (0..ty.rank()).map(|_| sampler.element(&ring, None, &mut rng)).collect();
                ModElement::from_coords(ty, coords).expect("shape")
            })
            .collect();
        landi_report(n, InvolutionConvention::Graded, &vectors).map(|r| (n, r))
    });
    for r in reports {
        let (n, r) = r?;
        for c in r.clauses {
            report.push(Clause { name: format!("n={n}: {}", c.name), ..c });
        }
    }
    report.note("involution convention: graded, (x◇)◇ = (-1)^|x| x");
    Ok(report)
}

/// Checks `g² = g` and, if it holds, the splitting `F ≅ Ker g ⊕ Im g`.
pub fn certify_idempotent(g: &SuperMorphism) -> Report {
    let mut report = Report::new("certify").param("source", g.source().to_string()).param("target", g.target().to_string());
    if !g.is_square() {
        report.push(Clause::with_witness("square", false, format!("{} -> {}", g.source(), g.target())));
        return report;
    }
    report.push(Clause::new("square", true));
    let residual = g.compose(g).and_then(|gg| gg.sub(g));
    let idempotent = match residual {
        Ok(d) => {
            let bad: Vec<String> = (0..d.target().rank())
                .flat_map(|i| (0..d.source().rank()).map(move |j| (i, j)))
                .filter(|&(i, j)| !d.entry(i, j).is_zero())
                .map(|(i, j)| format!("({i},{j}): {}", d.entry(i, j)))
                .collect();
            let ok = bad.is_empty();
            report.push(Clause::with_witness("g^2 = g", ok, if ok { "0".into() } else { bad.join("; ") }));
            ok
        }
        Err(e) => {
            report.push(Clause::with_witness("g^2 = g", false, e.to_string()));
            false
        }
    };
    let degree = match g.degree() {
        Some(Parity::Even) => "even",
        Some(Parity::Odd) => "odd",
        None => "inhomogeneous",
    };
    report.note(format!("degree: {degree}"));
    if idempotent {
        split_clauses(&mut report, "split", g);
        if let Ok(split) = split_idempotent(g) {
            if let (Ok(a), Ok(b)) = (split.iso_matrix(), split.iso_inv_matrix()) {
                report.note(format!("x -> (g x, x - g x) has matrix {}", a.to_string().trim_end()));
                report.note(format!("(p, h) -> p + h has matrix {}", b.to_string().trim_end()));
            }
        }
        if g.degree() == Some(Parity::Even) {
            report.push(Clause::new(
                "endomorphism projector idempotent",
                end_projector(g).and_then(|e| is_idempotent(e.matrix())).unwrap_or(false),
            ));
        }
    }
    report
}
