//! Browser bindings: pick a corpus algebra, draw its congruence lattice,
//! close a congruence under an operator, and report an operator's axioms.
//!
//! Every export returns a JSON string; errors come back as JS exceptions.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use closure_form::instances::{self, CorpusKind};
use closure_form::{ClosureOperator, Universe};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Corpora larger than this take too long to build in a page.
pub const MAX_DEMO_SIZE: usize = 8;

thread_local! {
    static UNIVERSES: RefCell<HashMap<(CorpusKind, usize), Arc<Universe>>> = RefCell::new(HashMap::new());
}

fn universe(kind: &str, max_size: usize) -> Result<Arc<Universe>, String> {
    let kind: CorpusKind = kind.parse()?;
    if max_size > MAX_DEMO_SIZE {
        return Err(format!("the demo stops at size {MAX_DEMO_SIZE}"));
    }
    if let Some(u) = UNIVERSES.with(|c| c.borrow().get(&(kind, max_size)).cloned()) {
        return Ok(u);
    }
    let u = instances::corpus(kind, max_size).map_err(|e| e.to_string())?;
    UNIVERSES.with(|c| c.borrow_mut().insert((kind, max_size), u.clone()));
    Ok(u)
}

fn member(u: &Universe, id: &str) -> Result<usize, String> {
    u.find(id)
        .ok_or_else(|| format!("no algebra `{id}` in this corpus"))
}

fn operator(u: &Arc<Universe>, kind: &str, name: &str) -> Result<ClosureOperator, String> {
    let kind: CorpusKind = kind.parse()?;
    if !instances::operators_for(kind).contains(&name) {
        return Err(format!("`{name}` does not apply to {kind}"));
    }
    instances::operator_by_name(u, name).map_err(|e| e.to_string())
}

fn to_string(v: Value) -> String {
    serde_json::to_string(&v).expect("serializable")
}

pub fn algebras_json(kind: &str, max_size: usize) -> Result<String, String> {
    let u = universe(kind, max_size)?;
    let kind: CorpusKind = kind.parse()?;
    let list: Vec<Value> = u
        .members()
        .iter()
        .map(|m| json!({ "id": m.name, "size": m.algebra.size(), "congruences": m.lattice.len() }))
        .collect();
    Ok(to_string(json!({
        "algebras": list,
        "operators": instances::operators_for(kind),
    })))
}

/// Congruences with their rank (number of blocks) and the covering pairs.
pub fn lattice_json(kind: &str, max_size: usize, id: &str) -> Result<String, String> {
    let u = universe(kind, max_size)?;
    let lat = &u.member(member(&u, id)?).lattice;
    let nodes: Vec<Value> = lat
        .elements()
        .iter()
        .map(|c| json!({ "blocks": c, "label": c.to_string(), "rank": c.blocks().len() }))
        .collect();
    let covers: Vec<[usize; 2]> = lat.covers().into_iter().map(|(lo, hi)| [lo, hi]).collect();
    Ok(to_string(
        json!({ "id": id, "nodes": nodes, "covers": covers }),
    ))
}

/// Where the operator sends every congruence of the chosen algebra.
pub fn close_json(
    kind: &str,
    max_size: usize,
    id: &str,
    op: &str,
    index: usize,
) -> Result<String, String> {
    let u = universe(kind, max_size)?;
    let x = member(&u, id)?;
    let c = operator(&u, kind, op)?;
    let lat = &u.member(x).lattice;
    if index >= lat.len() {
        return Err(format!("congruence {index} out of range"));
    }
    let image = c.table()[x].clone();
    let closed = image[index];
    Ok(to_string(json!({
        "operator": c.name(),
        "from": index,
        "to": closed,
        "closed": lat.get(closed),
        "map": image,
        "fixed": (0..lat.len()).filter(|&i| image[i] == i).collect::<Vec<_>>(),
    })))
}

pub fn report_json(kind: &str, max_size: usize, op: &str) -> Result<String, String> {
    let u = universe(kind, max_size)?;
    let c = operator(&u, kind, op)?;
    let report = serde_json::to_value(c.report()).expect("serializable");
    let members: Vec<&str> = u
        .members()
        .iter()
        .filter(|m| c.is_closed_at_bottom(m.index))
        .map(|m| m.name.as_str())
        .collect();
    Ok(to_string(
        json!({ "report": report, "subcategory": members }),
    ))
}

#[wasm_bindgen]
pub fn algebras(kind: &str, max_size: usize) -> Result<String, JsValue> {
    algebras_json(kind, max_size).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn lattice(kind: &str, max_size: usize, id: &str) -> Result<String, JsValue> {
    lattice_json(kind, max_size, id).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn close(
    kind: &str,
    max_size: usize,
    id: &str,
    op: &str,
    index: usize,
) -> Result<String, JsValue> {
    close_json(kind, max_size, id, op, index).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn operator_report(kind: &str, max_size: usize, op: &str) -> Result<String, JsValue> {
    report_json(kind, max_size, op).map_err(|e| JsValue::from_str(&e))
}
