//! Browser bindings: catalogue listing, verification and generator matrices
//! as JSON strings.

use fockalg::catalogue::{build, list_catalogue, parse_params, RepSpec};
use fockalg::realize::{generator_matrix, Realization};
use fockalg::verify::verify;
use serde_json::json;
use wasm_bindgen::prelude::*;

fn load(id: &str, params: &str) -> Result<RepSpec, String> {
    let items: Vec<&str> = params.split_whitespace().collect();
    let params = parse_params(&items).map_err(|e| e.to_string())?;
    build(id, &params).map_err(|e| e.to_string())
}

/// Catalogue entries as a JSON array.
pub fn catalogue_json() -> String {
    serde_json::to_string(&list_catalogue()).expect("entries serialize")
}

/// Generator names of one representation as a JSON array.
pub fn generators_json(id: &str, params: &str) -> Result<String, String> {
    Ok(json!(load(id, params)?.names()).to_string())
}

/// Verification report for `id` with space-separated `name=value` parameters.
pub fn verify_json(id: &str, params: &str) -> Result<String, String> {
    let rep = load(id, params)?;
    let report = verify(&rep, None).map_err(|e| e.to_string())?;
    let mut v = report.to_json();
    v["passed"] = json!(report.passed());
    Ok(v.to_string())
}

/// Matrix of one generator; `realization` is `fock`, `diff`, `fd` or `jackson`.
pub fn matrix_json(
    id: &str,
    params: &str,
    generator: &str,
    realization: &str,
    cutoff: Option<u32>,
) -> Result<String, String> {
    let rep = load(id, params)?;
    let kind = match realization {
        "fock" | "" => None,
        other => Some(other.parse::<Realization>().map_err(|e| e.to_string())?),
    };
    let m = generator_matrix(&rep, generator, kind, cutoff).map_err(|e| e.to_string())?;
    let mut v = m.to_json();
    v["basis"] = json!(m.basis.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(v.to_string())
}

#[wasm_bindgen]
pub fn catalogue() -> String {
    catalogue_json()
}

#[wasm_bindgen]
pub fn generators(id: &str, params: &str) -> Result<String, JsError> {
    generators_json(id, params).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = verifyRep)]
pub fn verify_rep(id: &str, params: &str) -> Result<String, JsError> {
    verify_json(id, params).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn matrix(
    id: &str,
    params: &str,
    generator: &str,
    realization: &str,
    cutoff: Option<u32>,
) -> Result<String, JsError> {
    matrix_json(id, params, generator, realization, cutoff).map_err(|e| JsError::new(&e))
}
