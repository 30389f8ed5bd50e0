//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON string; failures come back as `{"error": "..."}`.

use gitstrata_core::p1::{self, Configuration};
use gitstrata_core::poly::HNType;
use gitstrata_core::rational::fmt_rational;
use gitstrata_core::{beta_of_type, hkkn, WeightSystem};
use serde_json::{json, Value};
use num_traits::{ToPrimitive, Zero};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(result: Result<Value, gitstrata_core::Error>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Stratum of a configuration such as `"0,0,1,inf"`, its binary form and,
/// for each admissible number `i` of points at infinity, the Y/Z and
/// total-stability verdicts.
#[wasm_bindgen]
pub fn classify_configuration(points: &str) -> String {
    respond((|| {
        let c = Configuration::parse(points)?;
        let n = c.n();
        let coeffs: Vec<String> = c.binary_form().iter().map(fmt_rational).collect();
        let weights: Vec<i64> = (0..=n as i64).map(|j| n as i64 - 2 * j).collect();
        let per_i = (n / 2 + 1..=n)
            .map(|i| {
                Ok(json!({
                    "i": i,
                    "yz": p1::membership_yz(&c, i)?.to_string(),
                    "ts": p1::membership_ts(&c, i)?,
                }))
            })
            .collect::<Result<Vec<Value>, gitstrata_core::Error>>()?;
        Ok(json!({
            "configuration": c.to_string(),
            "n": n,
            "beta": fmt_rational(&p1::classify(&c)),
            "engine_beta": fmt_rational(&p1::engine_stratum(&c)?),
            "coefficients": coeffs,
            "weights": weights,
            "support": p1::to_support(&c).indices().iter().collect::<Vec<_>>(),
            "by_i": per_i,
        }))
    })())
}

/// Index set of `Sym^n(P^1)` with the number of coincident points behind each entry.
#[wasm_bindgen]
pub fn sym_index_set(n: usize) -> String {
    respond((|| {
        if !(1..=40).contains(&n) {
            return Err(gitstrata_core::Error::invalid("n must be between 1 and 40"));
        }
        let betas = WeightSystem::sym_power(n).index_set()?;
        let entries: Vec<Value> = betas
            .iter()
            .map(|b| {
                let beta = b.coords()[0].clone();
                let coincide =
                    if beta.is_zero() { Value::Null } else { json!(fmt_rational(&((&beta + int(n)) / int(2)))) };
                json!({ "beta": fmt_rational(&beta), "norm_sq": fmt_rational(&(&beta * &beta)), "coincident": coincide })
            })
            .collect();
        Ok(json!({ "n": n, "strata": entries }))
    })())
}

fn int(v: usize) -> gitstrata_core::Rational {
    gitstrata_core::rational::int(v as i64)
}

/// `beta(n, m, tau)` for a type such as `"t+2;t+1"`, with the parabolic block sizes.
#[wasm_bindgen]
pub fn beta_type(tau: &str, n: i32, m: i32) -> String {
    respond((|| {
        let tau = HNType::parse(tau)?;
        let beta = beta_of_type(&tau, n.into(), m.into())?;
        let blocks = hkkn::parabolic_blocks(&beta.expanded())?;
        let entries: Vec<Value> = beta
            .entries()
            .iter()
            .map(|(b, k)| json!({ "value": fmt_rational(b), "approx": b.to_f64(), "multiplicity": k }))
            .collect();
        Ok(json!({
            "tau": tau.to_string(),
            "total": tau.total().to_string(),
            "entries": entries,
            "trace": fmt_rational(&beta.trace()),
            "dim_unipotent": blocks.dim_unipotent,
        }))
    })())
}
