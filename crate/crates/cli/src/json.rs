//! JSON documents and their reader.
//!
//! * Laurent polynomial: `[[exponent, "integer"], ...]`, ascending.
//! * Rational function: the Laurent form when integral, else
//!   `{"num": [...], "den": [...]}`.
//! * PBW element: `{"terms":[{"f":a,"k":b,"e":m,"coeff":c}]}`.
//! * Tensor: `{"order":k,"terms":[{"slots":[{"f","k","e"},...],"coeff":c}]}`.
//! * Torus element: `{"torus":[{"k":b,"coeff":c}]}`.
//! * Scalar: `{"scalar":c}`.
//! * Central polynomial: `[{"n":n,"a":"text","b":"text"}]`.
//! * Truncated element:
//!   `{"filtration":"Un","n":3,"terms":[{"f","kdelta","bbb","e","coeff"}]}`.

use num_bigint::BigInt;
use qsl2_core::center::CentralPoly;
use qsl2_core::coeff::{LaurentInt, RatFunc};
use qsl2_core::completion::{Filtration, Membership, TruncIndex, TruncatedElement};
use qsl2_core::hopf::TensorElement;
use qsl2_core::pbw::{Monomial, PbwElement};
use qsl2_core::torus::TorusElement;
use serde_json::{json, Map, Value as Json};

use crate::error::{CliError, CliResult};
use crate::eval::{eval_pbw, Value};

pub fn laurent(x: &LaurentInt) -> Json {
    Json::Array(x.terms().iter().map(|(e, c)| json!([e, c.to_string()])).collect())
}

pub fn ratfunc(x: &RatFunc) -> Json {
    if x.is_integral() {
        laurent(x.num())
    } else {
        json!({"num": laurent(x.num()), "den": laurent(x.den())})
    }
}

fn monomial(m: &Monomial) -> Map<String, Json> {
    let mut o = Map::new();
    o.insert("f".into(), json!(m.f));
    o.insert("k".into(), json!(m.k));
    o.insert("e".into(), json!(m.e));
    o
}

pub fn pbw(x: &PbwElement) -> Json {
    let terms: Vec<Json> = x
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut o = monomial(m);
            o.insert("coeff".into(), ratfunc(c));
            Json::Object(o)
        })
        .collect();
    json!({ "terms": terms })
}

pub fn tensor(t: &TensorElement) -> Json {
    let terms: Vec<Json> = t
        .terms()
        .iter()
        .map(|(s, c)| {
            let slots: Vec<Json> = s.iter().map(|m| Json::Object(monomial(m))).collect();
            json!({"slots": slots, "coeff": ratfunc(c)})
        })
        .collect();
    json!({"order": t.order(), "terms": terms})
}

pub fn value(v: &Value) -> Json {
    match v {
        Value::Pbw(x) => pbw(x),
        Value::Tensor(t) => tensor(t),
    }
}

pub fn torus(t: &TorusElement) -> Json {
    let terms: Vec<Json> = t.terms().iter().map(|(k, c)| json!({"k": k, "coeff": ratfunc(c)})).collect();
    json!({ "torus": terms })
}

pub fn scalar(c: &RatFunc) -> Json {
    json!({ "scalar": ratfunc(c) })
}

pub fn central(p: &CentralPoly) -> Json {
    Json::Array(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(n, (a, b))| json!({"n": n, "a": a.to_string(), "b": b.to_string()}))
            .collect(),
    )
}

pub fn truncated(t: &TruncatedElement) -> Json {
    let terms: Vec<Json> = t
        .terms()
        .iter()
        .map(|(i, c)| json!({"f": i.f, "kdelta": i.delta, "bbb": i.j, "e": i.e, "coeff": laurent(c)}))
        .collect();
    json!({"filtration": t.filtration().name(), "n": t.precision(), "terms": terms})
}

pub fn membership(ideal: &str, m: Membership) -> Json {
    json!({"ideal": ideal, "membership": m.to_string()})
}

/// A document read back from JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Pbw(PbwElement),
    Tensor(TensorElement),
    Torus(TorusElement),
    Scalar(RatFunc),
    Central(CentralPoly),
    Truncated(TruncatedElement),
    Membership(String),
    Grades(Vec<(i64, PbwElement)>),
}

impl Document {
    /// The mathematical value, for comparison with re-parsed text.
    pub fn to_value(&self) -> Option<Value> {
        Some(match self {
            Document::Pbw(x) => Value::Pbw(x.clone()),
            Document::Tensor(t) => Value::Tensor(t.clone()),
            Document::Torus(t) => Value::Pbw(PbwElement::from_torus(t)),
            Document::Scalar(c) => Value::Pbw(PbwElement::scalar(c.clone())),
            Document::Central(p) => Value::Pbw(p.assemble()),
            Document::Truncated(t) => Value::Pbw(t.assemble()),
            Document::Membership(_) | Document::Grades(_) => return None,
        })
    }
}

fn bad<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(format!("malformed JSON document: {}", msg.into())))
}

fn int(o: &Json, key: &str) -> CliResult<i64> {
    match o.get(key).and_then(Json::as_i64) {
        Some(k) => Ok(k),
        None => bad(format!("missing integer field '{key}'")),
    }
}

fn uint(o: &Json, key: &str) -> CliResult<u32> {
    u32::try_from(int(o, key)?).or_else(|_| bad(format!("field '{key}' must be a non-negative integer")))
}

pub fn read_laurent(j: &Json) -> CliResult<LaurentInt> {
    let Some(items) = j.as_array() else {
        return bad("expected a Laurent polynomial array");
    };
    let mut pairs = Vec::with_capacity(items.len());
    for it in items {
        let (Some(e), Some(c)) = (it.get(0).and_then(Json::as_i64), it.get(1).and_then(Json::as_str)) else {
            return bad("expected [exponent, \"integer\"] pairs");
        };
        let Ok(c) = c.parse::<BigInt>() else {
            return bad(format!("bad integer '{c}'"));
        };
        pairs.push((e, c));
    }
    Ok(LaurentInt::from_terms(pairs))
}

pub fn read_ratfunc(j: &Json) -> CliResult<RatFunc> {
    if j.is_array() {
        return Ok(read_laurent(j)?.into());
    }
    match (j.get("num"), j.get("den")) {
        (Some(n), Some(d)) => Ok(RatFunc::new(read_laurent(n)?, read_laurent(d)?)?),
        _ => bad("expected a coefficient"),
    }
}

fn read_monomial(j: &Json) -> CliResult<Monomial> {
    Ok(Monomial::new(uint(j, "f")?, int(j, "k")?, uint(j, "e")?))
}

fn terms(j: &Json) -> CliResult<&Vec<Json>> {
    match j.get("terms").and_then(Json::as_array) {
        Some(t) => Ok(t),
        None => bad("missing 'terms' array"),
    }
}

fn coeff(j: &Json) -> CliResult<&Json> {
    match j.get("coeff") {
        Some(c) => Ok(c),
        None => bad("missing 'coeff'"),
    }
}

pub fn read_pbw(j: &Json) -> CliResult<PbwElement> {
    let mut x = PbwElement::zero();
    for t in terms(j)? {
        x.add_term(read_monomial(t)?, &read_ratfunc(coeff(t)?)?);
    }
    Ok(x)
}

/// Parses any document emitted by the commands.
pub fn read_document(text: &str) -> CliResult<Document> {
    let j: Json = match serde_json::from_str(text) {
        Ok(j) => j,
        Err(e) => return bad(e.to_string()),
    };
    if let Some(items) = j.as_array() {
        let mut coeffs = Vec::with_capacity(items.len());
        for (i, it) in items.iter().enumerate() {
            if int(it, "n")? != i as i64 {
                return bad("central coefficients must be listed in order");
            }
            let read = |key: &str| -> CliResult<RatFunc> {
                let Some(s) = it.get(key).and_then(Json::as_str) else {
                    return bad(format!("missing string field '{key}'"));
                };
                match eval_pbw(s)?.as_scalar() {
                    Some(c) => Ok(c),
                    None => bad(format!("'{s}' is not a scalar")),
                }
            };
            coeffs.push((read("a")?, read("b")?));
        }
        return Ok(Document::Central(CentralPoly::from_coeffs(coeffs)));
    }
    if let Some(m) = j.get("membership").and_then(Json::as_str) {
        return Ok(Document::Membership(m.to_string()));
    }
    if let Some(c) = j.get("scalar") {
        return Ok(Document::Scalar(read_ratfunc(c)?));
    }
    if let Some(items) = j.get("torus").and_then(Json::as_array) {
        let mut pairs = Vec::with_capacity(items.len());
        for it in items {
            pairs.push((int(it, "k")?, read_ratfunc(coeff(it)?)?));
        }
        return Ok(Document::Torus(TorusElement::from_pairs(pairs)));
    }
    if let Some(parts) = j.get("parts").and_then(Json::as_array) {
        let mut out = Vec::with_capacity(parts.len());
        for p in parts {
            let Some(el) = p.get("element") else {
                return bad("grade part without 'element'");
            };
            out.push((int(p, "degree")?, read_pbw(el)?));
        }
        return Ok(Document::Grades(out));
    }
    if let Some(f) = j.get("filtration").and_then(Json::as_str) {
        let filtration = match f {
            "Un" => Filtration::Un,
            "U1pow" => Filtration::U1pow,
            _ => return bad(format!("unknown filtration '{f}'")),
        };
        let mut items = Vec::new();
        for t in terms(&j)? {
            let delta = uint(t, "kdelta")?;
            if delta > 1 {
                return bad("kdelta must be 0 or 1");
            }
            let idx = TruncIndex { f: uint(t, "f")?, e: uint(t, "e")?, j: uint(t, "bbb")?, delta: delta as u8 };
            items.push((idx, read_laurent(coeff(t)?)?));
        }
        return Ok(Document::Truncated(TruncatedElement::from_terms(filtration, uint(&j, "n")?, items)?));
    }
    if j.get("order").is_some() {
        let order = uint(&j, "order")? as usize;
        let mut t = TensorElement::zero(order);
        for it in terms(&j)? {
            let Some(slots) = it.get("slots").and_then(Json::as_array) else {
                return bad("tensor term without 'slots'");
            };
            if slots.len() != order {
                return bad("slot count does not match the order");
            }
            let ms = slots.iter().map(read_monomial).collect::<CliResult<Vec<_>>>()?;
            t.add_term(ms, &read_ratfunc(coeff(it)?)?);
        }
        return Ok(Document::Tensor(t));
    }
    Ok(Document::Pbw(read_pbw(&j)?))
}

/// Compact JSON text, one document per line.
pub fn render(j: &Json) -> String {
    serde_json::to_string(j).expect("JSON values serialize")
}
