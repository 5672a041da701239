//! Browser bindings. Every exported function takes and returns JSON text; the `api`
//! functions underneath are plain Rust so they can be tested on the host.

use wasm_bindgen::prelude::*;

pub mod api;

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// Builds the classic schedule and describes its levels.
#[wasm_bindgen(js_name = buildClassic)]
pub fn build_classic(ratios: &str, symbols: &str) -> Result<String, JsValue> {
    js(api::build_classic(ratios, symbols))
}

/// Describes the levels of a spec given as JSON.
#[wasm_bindgen(js_name = inspect)]
pub fn inspect(spec_json: &str) -> Result<String, JsValue> {
    js(api::inspect(spec_json))
}

/// Density of `symbol` among the defined cells of each level.
#[wasm_bindgen(js_name = densityProfile)]
pub fn density_profile(spec_json: &str, symbol: &str) -> Result<String, JsValue> {
    js(api::density_profile(spec_json, symbol))
}

/// Shifts and relabels a spec, then runs the conjugacy search against the original.
#[wasm_bindgen(js_name = conjugacyAgainstImage)]
pub fn conjugacy_against_image(spec_json: &str, shift: i32, level: usize, rho_json: &str) -> Result<String, JsValue> {
    js(api::conjugacy_against_image(spec_json, shift as i64, level, rho_json))
}
