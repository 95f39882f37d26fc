//! wasm-bindgen entry points for the static page in `www/`.
//!
//! Each export returns pretty JSON; errors come back as the message string.

use wasm_bindgen::prelude::*;
use wmodchar::characters::{boundary_affine_character, wmin_character};
use wmodchar::liealg::{RootSystem, WeylGroup};
use wmodchar::report;
use wmodchar::Q;

/// Weyl groups above this order are refused in the browser.
const WEB_WEYL_CAP: u128 = 60_000;
const MAX_ORDER: i64 = 12;

fn order(n: i64) -> Result<Q, String> {
    if !(0..=MAX_ORDER).contains(&n) {
        return Err(format!("q-order must be between 0 and {MAX_ORDER}"));
    }
    Ok(Q::from_integer(n))
}

pub fn algebra_info_json(name: &str) -> Result<String, String> {
    let rs = RootSystem::from_name(name).map_err(|e| e.to_string())?;
    Ok(report::to_pretty(&report::algebra_json(&rs)))
}

pub fn wmin_json(name: &str, level: i64, n: i64) -> Result<String, String> {
    let rs = RootSystem::from_name(name).map_err(|e| e.to_string())?;
    let wg = WeylGroup::new(&rs, WEB_WEYL_CAP).map_err(|e| e.to_string())?;
    let r = wmin_character(&rs, &wg, level, order(n)?, 0).map_err(|e| e.to_string())?;
    Ok(report::to_pretty(&report::character_json(&r)))
}

pub fn boundary_json(name: &str, u: i64, n: i64) -> Result<String, String> {
    let rs = RootSystem::from_name(name).map_err(|e| e.to_string())?;
    let r = boundary_affine_character(&rs, u, order(n)?).map_err(|e| e.to_string())?;
    Ok(report::to_pretty(&report::character_json(&r)))
}

#[wasm_bindgen]
pub fn algebra_info(name: &str) -> Result<String, JsValue> {
    algebra_info_json(name).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn wmin(name: &str, level: i32, n: i32) -> Result<String, JsValue> {
    wmin_json(name, level as i64, n as i64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn boundary(name: &str, u: i32, n: i32) -> Result<String, JsValue> {
    boundary_json(name, u as i64, n as i64).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports_render() {
        assert!(algebra_info_json("D4").unwrap().contains("\"dual_coxeter\": 6"));
        assert!(wmin_json("D4", -2, 3).unwrap().contains("\"central_charge\": \"0\""));
        assert!(boundary_json("A1", 3, 4).unwrap().contains("\"leading_exponent\": \"1/4\""));
    }

    #[test]
    fn refuses_large_inputs() {
        assert!(wmin_json("E7", -4, 2).unwrap_err().contains("exceeds cap"));
        assert!(boundary_json("A1", 3, 40).unwrap_err().contains("q-order"));
    }
}
