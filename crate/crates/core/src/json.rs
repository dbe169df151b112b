//! JSON descriptors for rings, elements, morphisms and jets.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{AlgebraError, Result};
use crate::multiindex::MultiIndex;
use crate::parse::{parse_element, parse_poly, parse_scalar};
use crate::scalars::{CoeffRing, Monomial, Poly, ScalarKind};
use crate::superanalysis::Jet;
use crate::supermodule::{FreeType, SuperMorphism};
use crate::superring::{InvolutionConvention, SuperElement, SuperRing, SuperRingExt};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDescriptor {
    /// A variable whose square is rewritten.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lead: Option<String>,
    /// An explicit lead monomial such as `a*ad`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lead_monomial: Option<String>,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionDescriptor {
    pub pairs: Vec<(String, String)>,
    #[serde(default)]
    pub convention: InvolutionConvention,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDescriptor {
    /// Grassmann algebra on `b1..bL`.
    Grassmann {
        generators: usize,
        #[serde(default = "rational_base")]
        base: Value,
    },
    /// `base[vars]/(relation)` with odd generators.
    PolyQuotient {
        #[serde(default)]
        vars: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        relation: Option<RelationDescriptor>,
        #[serde(default = "rational_base")]
        base: Value,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        odd: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        involution: Option<InvolutionDescriptor>,
    },
}

fn rational_base() -> Value {
    json!({"kind": "rational"})
}

fn base_kind(base: &Value) -> Result<ScalarKind> {
    if base.get("kind").and_then(Value::as_str) == Some("poly_quotient") {
        return Err(AlgebraError::Unsupported("nested poly_quotient base".into()));
    }
    let kind: ScalarKind = match base.as_str() {
        Some(name) => serde_json::from_value(json!({ "kind": name }))?,
        None => serde_json::from_value(base.clone())?,
    };
    kind.validate()?;
    Ok(kind)
}

fn monomial_of(coeffs: &CoeffRing, text: &str) -> Result<Monomial> {
    let p = parse_poly(coeffs, text)?;
    match p.terms().iter().next() {
        Some((m, c)) if p.len() == 1 && c.is_one() => Ok(m.clone()),
        _ => Err(AlgebraError::InvalidRing(format!("`{text}` is not a monomial"))),
    }
}

pub fn ring_from_descriptor(d: &RingDescriptor) -> Result<Arc<SuperRing>> {
    match d {
        RingDescriptor::Grassmann { generators, base } => {
            Ok(Arc::new(SuperRing::grassmann(base_kind(base)?, *generators)?))
        }
        RingDescriptor::PolyQuotient { vars, relation, base, odd, involution } => {
            let kind = base_kind(base)?;
            let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
            let mut coeffs = CoeffRing::polynomial(kind, &names)?;
            if let Some(rel) = relation {
                let lead = match (&rel.lead, &rel.lead_monomial) {
                    (Some(v), None) => {
                        let i = coeffs.var_index(v).ok_or_else(|| AlgebraError::UnknownGenerator(v.clone()))?;
                        let mut m = coeffs.unit_monomial();
                        m[i] = 2;
                        m
                    }
                    (None, Some(text)) => monomial_of(&coeffs, text)?,
                    _ => {
                        return Err(AlgebraError::InvalidRing(
                            "relation needs exactly one of `lead` and `lead_monomial`".into(),
                        ))
                    }
                };
                let rhs = parse_poly(&coeffs, &rel.rhs)?;
                coeffs = coeffs.with_relation(lead, rhs)?;
            }
            let odd: Vec<&str> = odd.iter().map(|s| s.as_str()).collect();
            let mut ring = SuperRing::new(coeffs, &odd)?;
            if let Some(inv) = involution {
                let pairs: Vec<(&str, &str)> = inv.pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                ring = ring.with_involution(&pairs, inv.convention)?;
            }
            Ok(Arc::new(ring))
        }
    }
}

pub fn descriptor_of(ring: &SuperRing) -> RingDescriptor {
    let base = serde_json::to_value(ring.scalar_kind()).expect("scalar kind serializes");
    let grassmann_names = ring.odd_generators().iter().enumerate().all(|(i, g)| *g == format!("b{}", i + 1));
    if ring.is_pure_grassmann() && grassmann_names && ring.involution().is_none() && ring.odd_count() > 0 {
        return RingDescriptor::Grassmann { generators: ring.odd_count(), base };
    }
    let coeffs = ring.coeffs();
    let relation = coeffs.relation().map(|rel| {
        let lead = rel.lead();
        let single = lead.iter().filter(|&&e| e > 0).count() == 1 && lead.contains(&2);
        let rhs = coeffs.display(rel.rhs()).to_string();
        if single {
            let i = lead.iter().position(|&e| e == 2).expect("lead variable");
            RelationDescriptor { lead: Some(coeffs.vars()[i].clone()), lead_monomial: None, rhs }
        } else {
            RelationDescriptor { lead: None, lead_monomial: Some(coeffs.monomial_text(lead)), rhs }
        }
    });
    RingDescriptor::PolyQuotient {
        vars: coeffs.vars().to_vec(),
        relation,
        base,
        odd: ring.odd_generators().to_vec(),
        involution: ring.involution().map(|inv| InvolutionDescriptor {
            pairs: inv.pairs().to_vec(),
            convention: inv.convention(),
        }),
    }
}

/// Named rings: `grassmann<L>`, `lambda<n>`, `z6xi2`, `trig` / `trig<L>`, `landi`, `landi-plain`.
pub fn preset_ring(name: &str) -> Result<Arc<SuperRing>> {
    let number = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    if let Some(l) = number("grassmann") {
        return Ok(Arc::new(SuperRing::grassmann(ScalarKind::Rational, l)?));
    }
    if let Some(n) = number("lambda") {
        let base = SuperRing::new(CoeffRing::scalar(ScalarKind::Rational)?, &[])?;
        return crate::spheres::sphere_ring(&base, n);
    }
    if name == "trig" {
        return Ok(crate::superanalysis::trig_ring(2));
    }
    if let Some(l) = number("trig") {
        return Ok(crate::superanalysis::trig_ring(l));
    }
    match name {
        "z6xi2" => Ok(crate::spheres::z6_ring()),
        "landi" => Ok(crate::landi::landi_ring(InvolutionConvention::Graded)),
        "landi-plain" => Ok(crate::landi::landi_ring(InvolutionConvention::Plain)),
        _ => Err(AlgebraError::InvalidRing(format!("unknown ring preset `{name}`"))),
    }
}

/// A ring given either inline as JSON or as a preset name.
pub fn ring_from_value(v: &Value) -> Result<Arc<SuperRing>> {
    match v {
        Value::String(name) => preset_ring(name),
        _ => ring_from_descriptor(&serde_json::from_value(v.clone())?),
    }
}

pub fn ring_to_value(ring: &SuperRing) -> Value {
    serde_json::to_value(descriptor_of(ring)).expect("descriptor serializes")
}

pub fn element_to_value(e: &SuperElement) -> Value {
    let ring = e.ring();
    let vars = ring.coeffs().vars();
    let mut terms = Vec::new();
    for (mu, p) in e.terms() {
        for (m, c) in p.sorted_terms() {
            let even: Map<String, Value> =
                m.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (vars[i].clone(), json!(x))).collect();
            terms.push(json!({"odd": mu, "even": even, "coeff": c.to_string()}));
        }
    }
    json!({"ring": ring_to_value(ring), "terms": terms})
}

fn terms_into(ring: &Arc<SuperRing>, terms: &Value) -> Result<SuperElement> {
    let terms = terms.as_array().ok_or_else(|| AlgebraError::Json("`terms` must be an array".into()))?;
    let mut out = ring.zero();
    for t in terms {
        let odd: MultiIndex = serde_json::from_value(t.get("odd").cloned().unwrap_or(json!([])))?;
        if odd.max_index() > ring.odd_count() {
            return Err(AlgebraError::Json(format!("odd index {odd} beyond {} generators", ring.odd_count())));
        }
        let mut m = ring.coeffs().unit_monomial();
        if let Some(even) = t.get("even") {
            let even: BTreeMap<String, u16> = serde_json::from_value(even.clone())?;
            for (v, x) in even {
                let i = ring.coeffs().var_index(&v).ok_or(AlgebraError::UnknownGenerator(v))?;
                m[i] = x;
            }
        }
        let coeff = match t.get("coeff") {
            Some(Value::String(s)) => parse_scalar(ring.scalar_kind(), s)?,
            Some(Value::Number(n)) => parse_scalar(ring.scalar_kind(), &n.to_string())?,
            None => parse_scalar(ring.scalar_kind(), "1")?,
            Some(other) => return Err(AlgebraError::Json(format!("bad coefficient {other}"))),
        };
        out = &out + &ring.from_poly(odd, Poly::from_terms([(m, coeff)]));
    }
    Ok(out)
}

pub fn element_from_value(v: &Value) -> Result<SuperElement> {
    let ring = ring_from_value(v.get("ring").ok_or_else(|| AlgebraError::Json("missing `ring`".into()))?)?;
    terms_into(&ring, v.get("terms").unwrap_or(&json!([])))
}

/// Element terms read into an already-known ring.
pub fn element_in_ring(ring: &Arc<SuperRing>, v: &Value) -> Result<SuperElement> {
    match v {
        Value::String(s) => parse_element(ring, s),
        _ => terms_into(ring, v.get("terms").unwrap_or(v)),
    }
}

pub fn morphism_to_value(m: &SuperMorphism) -> Value {
    let matrix: Vec<Vec<String>> = m.matrix().iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect();
    json!({
        "ring": ring_to_value(m.ring()),
        "source": m.source(),
        "target": m.target(),
        "matrix": matrix,
    })
}

pub fn morphism_from_value(v: &Value) -> Result<SuperMorphism> {
    let ring = ring_from_value(v.get("ring").ok_or_else(|| AlgebraError::Json("missing `ring`".into()))?)?;
    let source: FreeType = serde_json::from_value(v.get("source").cloned().ok_or_else(|| AlgebraError::Json("missing `source`".into()))?)?;
    let target: FreeType = match v.get("target") {
        Some(t) => serde_json::from_value(t.clone())?,
        None => source,
    };
    let rows = v
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| AlgebraError::Json("missing `matrix`".into()))?;
    let matrix = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| AlgebraError::Json("matrix rows must be arrays".into()))?
                .iter()
                .map(|e| element_in_ring(&ring, e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SuperMorphism::new(&ring, source, target, matrix)
}

fn degree_key(i: &[u32]) -> String {
    let parts: Vec<String> = i.iter().map(|k| k.to_string()).collect();
    format!("({})", parts.join(","))
}

fn parse_degree_key(s: &str) -> Result<Vec<u32>> {
    let inner = s
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| AlgebraError::Json(format!("bad multi-degree key `{s}`")))?;
    inner
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| AlgebraError::Json(format!("bad multi-degree key `{s}`"))))
        .collect()
}

pub fn jet_to_value(jet: &Jet) -> Value {
    let table: Map<String, Value> = jet
        .table()
        .iter()
        .map(|(i, p)| (degree_key(i), json!(jet.coeffs().display(p).to_string())))
        .collect();
    let mut out = json!({"order": jet.order(), "arity": jet.arity(), "table": table});
    if let Some(base) = jet.base() {
        out["base"] = json!(base.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    }
    out
}

/// Reads a jet over `coeffs`; `arity` defaults to the length of the first key.
pub fn jet_from_value(coeffs: &CoeffRing, v: &Value) -> Result<Jet> {
    let order = v.get("order").and_then(Value::as_u64).ok_or_else(|| AlgebraError::Json("missing `order`".into()))? as usize;
    let table = v.get("table").and_then(Value::as_object).ok_or_else(|| AlgebraError::Json("missing `table`".into()))?;
    let mut entries = Vec::new();
    for (k, p) in table {
        let text = p.as_str().ok_or_else(|| AlgebraError::Json("table values must be strings".into()))?;
        entries.push((parse_degree_key(k)?, parse_poly(coeffs, text)?));
    }
    let arity = match v.get("arity").and_then(Value::as_u64) {
        Some(a) => a as usize,
        None => entries.first().map_or(1, |(i, _)| i.len()),
    };
    let base = match v.get("base").and_then(Value::as_array) {
        Some(b) => Some(
            b.iter()
                .map(|s| parse_scalar(coeffs.scalar_kind(), s.as_str().unwrap_or("")))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Jet::new(coeffs.clone(), arity, order, base, entries)
}
