//! Versioned JSON (de)serialization for norm specs, weights, and sparse
//! vectors.
//!
//! All reals are serialized as decimal strings (17 significant digits, which
//! round-trips binary64 exactly) and all indices as decimal strings, so
//! archives diff cleanly and never depend on a JSON parser's number range.
//! Documents carry a top-level `"spec_version": 1`.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::index::Index;
use crate::norms::NormSpec;
use crate::rules::CoefficientRule;
use crate::sparse::SparseVector;
use crate::weights::Weight;

pub const SPEC_VERSION: u64 = 1;

/// Formats a real as a decimal string that round-trips binary64 exactly.
pub fn real_to_string(v: f64) -> String {
    format!("{v:.16e}")
}

/// Accepts the canonical decimal string, or a plain JSON number for
/// hand-written input. Output is always the canonical string form.
pub fn real_from_value(v: &Value) -> Result<f64> {
    if let Some(n) = v.as_f64() {
        return Ok(n);
    }
    let s = v
        .as_str()
        .ok_or_else(|| Error::Schema(format!("expected decimal string, got {v}")))?;
    s.parse::<f64>()
        .map_err(|e| Error::Schema(format!("bad real {s:?}: {e}")))
}

pub fn index_to_string(i: Index) -> String {
    i.to_string()
}

/// Accepts the canonical decimal string, or a plain JSON integer for
/// hand-written input (JSON numbers cover indices up to 2^53 losslessly).
pub fn index_from_value(v: &Value) -> Result<Index> {
    if let Some(n) = v.as_u64() {
        return Ok(Index::from(n));
    }
    let s = v
        .as_str()
        .ok_or_else(|| Error::Schema(format!("expected index string, got {v}")))?;
    s.parse::<Index>()
        .map_err(|e| Error::Schema(format!("bad index {s:?}: {e}")))
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Schema(format!("expected object for {what}")))
}

fn field<'a>(m: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    m.get(name)
        .ok_or_else(|| Error::Schema(format!("missing field {name:?}")))
}

fn kind(m: &Map<String, Value>) -> Result<&str> {
    field(m, "kind")?
        .as_str()
        .ok_or_else(|| Error::Schema("\"kind\" must be a string".into()))
}

// ---------------------------------------------------------------- weights

pub fn weight_to_value(w: &Weight) -> Value {
    match w {
        Weight::Constant(c) => json!({"kind": "constant", "value": real_to_string(*c)}),
        Weight::FormulaW1 => json!({"kind": "formula_w1"}),
        Weight::Explicit { values, tail } => json!({
            "kind": "explicit",
            "values": values.iter().map(|v| Value::String(real_to_string(*v))).collect::<Vec<_>>(),
            "tail": real_to_string(*tail),
        }),
        Weight::Combined(l, r) => json!({
            "kind": "combined",
            "left": weight_to_value(l),
            "right": weight_to_value(r),
        }),
    }
}

pub fn weight_from_value(v: &Value) -> Result<Weight> {
    let m = obj(v, "weight")?;
    let w = match kind(m)? {
        "constant" => Weight::Constant(real_from_value(field(m, "value")?)?),
        "formula_w1" => Weight::FormulaW1,
        "explicit" => {
            let values = field(m, "values")?
                .as_array()
                .ok_or_else(|| Error::Schema("\"values\" must be an array".into()))?
                .iter()
                .map(real_from_value)
                .collect::<Result<Vec<_>>>()?;
            Weight::Explicit { values, tail: real_from_value(field(m, "tail")?)? }
        }
        "combined" => Weight::Combined(
            Box::new(weight_from_value(field(m, "left")?)?),
            Box::new(weight_from_value(field(m, "right")?)?),
        ),
        k => return Err(Error::Schema(format!("unknown weight kind {k:?}"))),
    };
    w.validate()?;
    Ok(w)
}

// ------------------------------------------------------------------ rules

fn rule_to_value(r: &CoefficientRule) -> Value {
    match r {
        CoefficientRule::InvPow34 => json!({"kind": "inv_pow_3_4"}),
        CoefficientRule::Tabulated(t) => json!({
            "kind": "tabulated",
            "entries": t.iter()
                .map(|(&i, &c)| json!([index_to_string(i), real_to_string(c)]))
                .collect::<Vec<_>>(),
        }),
    }
}

fn rule_from_value(v: &Value) -> Result<CoefficientRule> {
    let m = obj(v, "rule")?;
    match kind(m)? {
        "inv_pow_3_4" => Ok(CoefficientRule::InvPow34),
        "tabulated" => {
            let mut t = BTreeMap::new();
            for e in field(m, "entries")?
                .as_array()
                .ok_or_else(|| Error::Schema("\"entries\" must be an array".into()))?
            {
                let pair = e
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Schema("tabulated entry must be a pair".into()))?;
                t.insert(index_from_value(&pair[0])?, real_from_value(&pair[1])?);
            }
            Ok(CoefficientRule::Tabulated(t))
        }
        k => Err(Error::Schema(format!("unknown rule kind {k:?}"))),
    }
}

// ------------------------------------------------------------------ norms

fn norm_to_value(n: &NormSpec) -> Value {
    match n {
        NormSpec::WeightedLp { p, weight } => json!({
            "kind": "weighted_lp",
            "p": real_to_string(*p),
            "weight": weight_to_value(weight),
        }),
        NormSpec::SupNorm => json!({"kind": "sup"}),
        NormSpec::Prefix { rule } => json!({"kind": "prefix", "rule": rule_to_value(rule)}),
        NormSpec::Intervals { intervals, rule } => json!({
            "kind": "intervals",
            "intervals": intervals.iter()
                .map(|&(a, b)| json!([index_to_string(a), index_to_string(b)]))
                .collect::<Vec<_>>(),
            "rule": rule_to_value(rule),
        }),
        NormSpec::MaxOf(children) => json!({
            "kind": "max_of",
            "children": children.iter().map(norm_to_value).collect::<Vec<_>>(),
        }),
        NormSpec::Interleave { left, right } => json!({
            "kind": "interleave",
            "left": norm_to_value(left),
            "right": norm_to_value(right),
        }),
        NormSpec::SchauderMajorant { inner } => json!({
            "kind": "schauder_majorant",
            "inner": norm_to_value(inner),
        }),
    }
}

fn norm_from_value(v: &Value) -> Result<NormSpec> {
    let m = obj(v, "norm")?;
    let n = match kind(m)? {
        "weighted_lp" => NormSpec::WeightedLp {
            p: real_from_value(field(m, "p")?)?,
            weight: weight_from_value(field(m, "weight")?)?,
        },
        "sup" => NormSpec::SupNorm,
        "prefix" => NormSpec::Prefix { rule: rule_from_value(field(m, "rule")?)? },
        "intervals" => {
            let mut intervals = Vec::new();
            for e in field(m, "intervals")?
                .as_array()
                .ok_or_else(|| Error::Schema("\"intervals\" must be an array".into()))?
            {
                let pair = e
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Schema("interval must be a pair".into()))?;
                intervals.push((index_from_value(&pair[0])?, index_from_value(&pair[1])?));
            }
            NormSpec::Intervals { intervals, rule: rule_from_value(field(m, "rule")?)? }
        }
        "max_of" => NormSpec::MaxOf(
            field(m, "children")?
                .as_array()
                .ok_or_else(|| Error::Schema("\"children\" must be an array".into()))?
                .iter()
                .map(norm_from_value)
                .collect::<Result<Vec<_>>>()?,
        ),
        "interleave" => NormSpec::Interleave {
            left: Box::new(norm_from_value(field(m, "left")?)?),
            right: Box::new(norm_from_value(field(m, "right")?)?),
        },
        "schauder_majorant" => NormSpec::SchauderMajorant {
            inner: Box::new(norm_from_value(field(m, "inner")?)?),
        },
        k => return Err(Error::Schema(format!("unknown norm kind {k:?}"))),
    };
    n.validate()?;
    Ok(n)
}

// ------------------------------------------------------------- documents

/// Serializes a norm spec as a versioned JSON document.
pub fn norm_to_json(n: &NormSpec) -> Value {
    json!({"spec_version": SPEC_VERSION, "norm": norm_to_value(n)})
}

pub fn norm_from_json(v: &Value) -> Result<NormSpec> {
    let m = obj(v, "document")?;
    check_version(m)?;
    norm_from_value(field(m, "norm")?)
}

/// Serializes a weight as a versioned JSON document.
pub fn weight_to_json(w: &Weight) -> Value {
    json!({"spec_version": SPEC_VERSION, "weight": weight_to_value(w)})
}

pub fn weight_from_json(v: &Value) -> Result<Weight> {
    let m = obj(v, "document")?;
    check_version(m)?;
    weight_from_value(field(m, "weight")?)
}

fn check_version(m: &Map<String, Value>) -> Result<()> {
    match field(m, "spec_version")?.as_u64() {
        Some(SPEC_VERSION) => Ok(()),
        Some(v) => Err(Error::Schema(format!("unsupported spec_version {v}"))),
        None => Err(Error::Schema("spec_version must be an integer".into())),
    }
}

// --------------------------------------------------------------- vectors

pub fn vector_to_value(x: &SparseVector) -> Value {
    Value::Array(
        x.iter()
            .map(|(i, c)| json!([index_to_string(i), real_to_string(c)]))
            .collect(),
    )
}

pub fn vector_from_value(v: &Value) -> Result<SparseVector> {
    let mut entries = Vec::new();
    for e in v
        .as_array()
        .ok_or_else(|| Error::Schema("vector must be an array of pairs".into()))?
    {
        let pair = e
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Schema("vector entry must be a pair".into()))?;
        let i = index_from_value(&pair[0])?;
        let c = real_from_value(&pair[1])?;
        if i == 0 {
            return Err(Error::Schema("vector indices start at 1".into()));
        }
        if !c.is_finite() {
            return Err(Error::Schema(format!("coefficient at index {i} is not finite")));
        }
        entries.push((i, c));
    }
    Ok(SparseVector::from_entries(entries))
}
