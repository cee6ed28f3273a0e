//! wasm-bindgen entry points for the browser demo in `www/`.
//!
//! Every export takes a group spec and set literals in the CLI grammar and
//! returns a JSON string, or throws a string error.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use setcalc::covering::ruzsa_cover;
use setcalc::magnification::magnification;
use setcalc::setops::{power, product, GSet};
use setcalc::verify::{self, TheoremReport};
use setcalc::{Group, Rational};

/// Returned growth curves stop here so a page cannot ask for huge products.
pub const MAX_H: u32 = 6;

fn sets(group: &str, a: &str, b: &str) -> Result<(GSet, GSet), String> {
    let g = Group::parse(group).map_err(|e| e.to_string())?;
    let a = GSet::parse(&g, a).map_err(|e| e.to_string())?;
    let b = GSet::parse(&g, b).map_err(|e| e.to_string())?;
    Ok((a, b))
}

fn to_json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn magnify_json(group: &str, a: &str, b: &str) -> Result<String, String> {
    let (a, b) = sets(group, a, b)?;
    let cert = magnification(&a, &b).map_err(|e| e.to_string())?;
    let ab = product(&a, &b).map_err(|e| e.to_string())?;
    to_json(&json!({
        "K": cert.k.to_string(),
        "X": cert.x.to_strings(),
        "ratio": Rational::new(ab.len() as u64, a.len() as u64).to_string(),
        "a_size": a.len(),
        "ab_size": ab.len(),
        "method": cert.method,
        "verified": cert.verified,
    }))
}

/// `|B^h|` for `h = 1..=h_max`, with the triple and power bounds where defined.
pub fn growth_json(group: &str, b: &str, h_max: u32) -> Result<String, String> {
    if !(1..=MAX_H).contains(&h_max) {
        return Err(format!("h must be in 1..={MAX_H}, got {h_max}"));
    }
    let (_, b) = sets(group, "identity", b)?;
    let mut rows = Vec::new();
    for h in 1..=h_max {
        let size = power(&b, h).map_err(|e| e.to_string())?.len();
        let report: Option<TheoremReport> = match h {
            3 => Some(verify::verify_triple(&b).map_err(|e| e.to_string())?),
            4.. => Some(verify::verify_tao_power(&b, h).map_err(|e| e.to_string())?),
            _ => None,
        };
        rows.push(json!({
            "h": h,
            "size": size,
            "bound": report.as_ref().map(|r| r.bound.to_sig_string(6)),
            "pass": report.as_ref().map(|r| r.pass),
        }));
    }
    to_json(&json!({ "b_size": b.len(), "rows": rows }))
}

pub fn cover_json(group: &str, a: &str, b: &str) -> Result<String, String> {
    let (a, b) = sets(group, a, b)?;
    let cert = ruzsa_cover(&a, &b).map_err(|e| e.to_string())?;
    to_json(&json!({
        "T": cert.t.to_strings(),
        "size_bound": cert.size_bound.to_string(),
        "covered": cert.covered,
        "disjoint": cert.disjoint,
        "within_bound": cert.within_bound,
    }))
}

#[wasm_bindgen]
pub fn magnify(group: &str, a: &str, b: &str) -> Result<String, JsValue> {
    magnify_json(group, a, b).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn growth(group: &str, b: &str, h_max: u32) -> Result<String, JsValue> {
    growth_json(group, b, h_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn cover(group: &str, a: &str, b: &str) -> Result<String, JsValue> {
    cover_json(group, a, b).map_err(|e| JsValue::from_str(&e))
}
