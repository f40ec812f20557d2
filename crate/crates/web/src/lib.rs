//! Browser bindings. Each exported function takes plain strings and returns
//! a JSON string for the page to render; errors become JS exceptions.
//!
//! The `*_json` functions hold the logic and run on any target, so they are
//! tested natively.

use hopfarb::invariants::{self, SeifertMatrix};
use hopfarb::minor_lab::minimal_excluded;
use hopfarb::{embed_witness, PlaneTree, Predicate};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest universe the page may mine; bigger sweeps stall a browser tab.
pub const MINE_LIMIT: usize = 5;

fn parse(what: &str, text: &str) -> Result<PlaneTree, String> {
    PlaneTree::parse(text.trim()).map_err(|e| format!("{what}: {e}"))
}

/// Canonical form, drawing data, Seifert matrix and invariants of a tree.
pub fn tree_json(text: &str) -> Result<String, String> {
    let t = parse("tree", text)?;
    let v = SeifertMatrix::of_tree(&t);
    let fp = v.fingerprint();
    Ok(json!({
        "canonical": t.to_text(),
        "tree": t.to_json(),
        "seifert": v.rows(),
        "fingerprint": fp,
        "alexander": fp.alexander.to_string(),
        "top_defect_ub": invariants::top_defect_upper_bound(&t).ok(),
        "smooth_guarantee": invariants::smooth_defect_guarantee(&t),
    })
    .to_string())
}

/// Minor test with the witness, if any, and both trees for drawing.
pub fn embed_json(sub: &str, sup: &str) -> Result<String, String> {
    let small = parse("minor", sub)?;
    let large = parse("host", sup)?;
    let witness = embed_witness(&small, &large);
    Ok(json!({
        "embeds": witness.is_some(),
        "witness": witness,
        "sub": small.to_json(),
        "super": large.to_json(),
    })
    .to_string())
}

/// Minimal trees of size at most `max_size` violating `predicate`.
pub fn mine_json(predicate: &str, max_size: usize) -> Result<String, String> {
    if max_size > MINE_LIMIT {
        return Err(format!("size bound {max_size} is above the page limit {MINE_LIMIT}"));
    }
    let p = Predicate::parse(predicate).map_err(|e| e.to_string())?;
    let found = minimal_excluded(&p, max_size).map_err(|e| e.to_string())?;
    let texts: Vec<String> = found.iter().map(PlaneTree::to_text).collect();
    Ok(json!({ "predicate": p.to_string(), "max_size": max_size, "obstructions": texts }).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = treeReport)]
pub fn tree_report(text: &str) -> Result<String, JsValue> {
    js(tree_json(text))
}

#[wasm_bindgen(js_name = embedReport)]
pub fn embed_report(sub: &str, sup: &str) -> Result<String, JsValue> {
    js(embed_json(sub, sup))
}

#[wasm_bindgen(js_name = mineReport)]
pub fn mine_report(predicate: &str, max_size: usize) -> Result<String, JsValue> {
    js(mine_json(predicate, max_size))
}
