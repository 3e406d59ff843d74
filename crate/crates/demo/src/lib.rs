//! Browser bindings: property summaries, zero-divisor graphs and random
//! semigroups. The plain functions return JSON or DOT text and are what the
//! wasm exports wrap.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use zdlab::properties::{check_property, PROPERTY_NAMES};
use zdlab::search::random_structure;
use zdlab::zdgraph::{build_graph, connectivity, diameter, resolve_notion, to_dot};
use zdlab::{named, FiniteStructure, Kind};

/// `@name` picks a built-in structure; anything else is read as a
/// structure file.
pub fn load(input: &str) -> Result<FiniteStructure, String> {
    let input = input.trim();
    match input.strip_prefix('@') {
        Some(name) => named::by_name(name).ok_or_else(|| format!("no built-in structure `{name}`")),
        None => FiniteStructure::from_json(input, true).map_err(|e| e.to_string()),
    }
}

pub fn summary(input: &str) -> Result<String, String> {
    let s = load(input)?;
    let props: Vec<Value> = PROPERTY_NAMES
        .iter()
        .filter_map(|p| check_property(&s, p, 2).ok())
        .map(|r| serde_json::to_value(r).expect("reports serialize"))
        .collect();
    let out = json!({ "kind": s.kind().name(), "order": s.order(), "properties": props });
    Ok(serde_json::to_string_pretty(&out).expect("reports serialize"))
}

pub fn graph(input: &str, notion: &str) -> Result<String, String> {
    let s = load(input)?;
    let notion = resolve_notion(notion).map_err(|e| e.to_string())?;
    let g = build_graph(&s);
    let out = json!({
        "dot": to_dot(&g),
        "notion": notion.name(),
        "connected": connectivity(&g, notion),
        "diameter": diameter(&g, notion),
    });
    Ok(serde_json::to_string_pretty(&out).expect("reports serialize"))
}

pub fn random_semigroup(order: usize, seed: u64) -> Result<String, String> {
    random_structure(Kind::SemigroupWithZero, order, seed)
        .map(|s| s.to_json())
        .map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = summarize)]
pub fn summarize_js(input: &str) -> Result<String, JsValue> {
    summary(input).map_err(JsValue::from)
}

#[wasm_bindgen(js_name = zeroDivisorGraph)]
pub fn graph_js(input: &str, notion: &str) -> Result<String, JsValue> {
    graph(input, notion).map_err(JsValue::from)
}

#[wasm_bindgen(js_name = randomSemigroup)]
pub fn random_semigroup_js(order: u32, seed: u32) -> Result<String, JsValue> {
    random_semigroup(order as usize, seed.into()).map_err(JsValue::from)
}
