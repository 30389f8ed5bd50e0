//! JSON interchange for weight systems.
//!
//! ```json
//! {"dimension": 1,
//!  "weights": [["2"], ["0"], ["-2"]],
//!  "inner_product": [["1"]],
//!  "weyl": [[["1"]], [["-1"]]],
//!  "chamber": [["1"]],
//!  "adjoint_weights": ["2"]}
//! ```
//!
//! Rationals are `"p/q"` strings (bare integers are accepted too). Errors
//! carry the path of the offending field, e.g. `weights[1][0]`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hkkn::WeightSystem;
use crate::rational::{fmt_rational, int, parse_rational, InnerProduct, QMatrix, QVector, Rational};

fn rational_at(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Error::field(path, e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(int)
            .ok_or_else(|| Error::field(path, format!("{n} is not an integer; write fractions as \"p/q\""))),
        other => Err(Error::field(path, format!("expected a rational string, found {other}"))),
    }
}

fn array_at<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::field(path, "expected an array"))
}

fn vector_at(v: &Value, path: &str, dim: usize) -> Result<QVector> {
    let items = array_at(v, path)?;
    if items.len() != dim {
        return Err(Error::field(path, format!("expected {dim} entries, found {}", items.len())));
    }
    let coords = items
        .iter()
        .enumerate()
        .map(|(k, x)| rational_at(x, &format!("{path}[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(QVector::new(coords))
}

fn matrix_at(v: &Value, path: &str, dim: usize) -> Result<QMatrix> {
    let rows = array_at(v, path)?;
    if rows.len() != dim {
        return Err(Error::field(path, format!("expected {dim} rows, found {}", rows.len())));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(k, r)| vector_at(r, &format!("{path}[{k}]"), dim).map(QVector::into_coords))
        .collect::<Result<Vec<_>>>()?;
    QMatrix::new(rows).map_err(|e| e.at(path))
}

fn list_at<T>(v: &Value, path: &str, f: impl Fn(&Value, &str) -> Result<T>) -> Result<Vec<T>> {
    array_at(v, path)?.iter().enumerate().map(|(k, x)| f(x, &format!("{path}[{k}]"))).collect()
}

pub fn parse_weight_system(text: &str) -> Result<WeightSystem> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    weight_system_from_json(&root)
}

pub fn weight_system_from_json(root: &Value) -> Result<WeightSystem> {
    let obj = root.as_object().ok_or_else(|| Error::field("$", "expected a JSON object"))?;
    if let Some(key) = obj.keys().find(|k| {
        !["dimension", "weights", "inner_product", "weyl", "chamber", "adjoint_weights"].contains(&k.as_str())
    }) {
        return Err(Error::field(key.as_str(), "unknown field"));
    }
    let dim = obj
        .get("dimension")
        .ok_or_else(|| Error::field("dimension", "missing"))?
        .as_u64()
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::field("dimension", "expected a positive integer"))? as usize;
    let weights = list_at(
        obj.get("weights").ok_or_else(|| Error::field("weights", "missing"))?,
        "weights",
        |v, p| vector_at(v, p, dim),
    )?;
    if weights.is_empty() {
        return Err(Error::field("weights", "at least one weight is required"));
    }
    let ip = match obj.get("inner_product") {
        None | Some(Value::Null) => InnerProduct::identity(dim),
        Some(v) => InnerProduct::new(matrix_at(v, "inner_product", dim)?).map_err(|e| e.at("inner_product"))?,
    };
    let mut ws = WeightSystem::new(weights, ip)?;
    match (obj.get("weyl"), obj.get("chamber")) {
        (None, None) => {}
        (Some(w), Some(c)) => {
            let group = list_at(w, "weyl", |v, p| matrix_at(v, p, dim))?;
            let chamber = list_at(c, "chamber", |v, p| vector_at(v, p, dim))?;
            ws = ws.with_weyl(group, chamber).map_err(|e| e.at("weyl"))?;
        }
        (Some(_), None) => return Err(Error::field("chamber", "required when weyl is given")),
        (None, Some(_)) => return Err(Error::field("weyl", "required when chamber is given")),
    }
    if let Some(a) = obj.get("adjoint_weights") {
        ws = ws.with_adjoint_weights(list_at(a, "adjoint_weights", rational_at)?);
    }
    Ok(ws)
}

fn vector_json(v: &QVector) -> Value {
    Value::Array(v.coords().iter().map(|c| Value::String(fmt_rational(c))).collect())
}

fn matrix_json(m: &QMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| vector_json(&QVector::new(r.clone()))).collect())
}

pub fn weight_system_to_json(ws: &WeightSystem) -> Value {
    let mut obj = Map::new();
    obj.insert("dimension".into(), json!(ws.dim()));
    obj.insert("weights".into(), Value::Array(ws.weights().iter().map(vector_json).collect()));
    obj.insert("inner_product".into(), matrix_json(ws.ip().gram()));
    if let (Some(g), Some(c)) = (ws.weyl(), ws.chamber()) {
        obj.insert("weyl".into(), Value::Array(g.iter().map(matrix_json).collect()));
        obj.insert("chamber".into(), Value::Array(c.iter().map(vector_json).collect()));
    }
    if let Some(a) = ws.adjoint_weights() {
        obj.insert("adjoint_weights".into(), Value::Array(a.iter().map(|r| Value::String(fmt_rational(r))).collect()));
    }
    Value::Object(obj)
}
