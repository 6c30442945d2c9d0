//! Browser bindings: each export takes the text syntax of the CLI and returns
//! JSON. The plain functions are usable (and tested) without a browser.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qgames::dsl::{parse_strategy, parse_type};
use qgames::Error;

fn game_value(ty: &str) -> Result<Value, Error> {
    let g = parse_type(ty)?.eval()?;
    let mut v = serde_json::to_value(g.to_json()).expect("serializable");
    v["axioms"] = serde_json::to_value(g.check_axioms()).expect("serializable");
    v["position_names"] = json!(g.positions().iter().map(|p| g.position_names(p)).collect::<Vec<_>>());
    Ok(v)
}

fn matrix_value(expr: &str) -> Result<Value, Error> {
    let m = parse_strategy(expr)?.eval()?;
    let mut v = serde_json::to_value(m.matrix()?.to_json()).expect("serializable");
    v["game"] = json!(m.arena().shape().to_string());
    v["unitary"] = json!(qgames::unitary::is_unitary(&m)?);
    Ok(v)
}

fn compare_value(left: &str, right: &str) -> Result<Value, Error> {
    let (a, b) = (parse_strategy(left)?.eval()?, parse_strategy(right)?.eval()?);
    let equal = a.equivalent(&b)?;
    Ok(json!({ "equal": equal, "left": a.matrix()?.to_json(), "right": b.matrix()?.to_json() }))
}

/// Game data for a type such as `Bool -o Bool`.
pub fn game_json(ty: &str) -> Result<String, String> {
    game_value(ty).map(|v| v.to_string()).map_err(|e| e.to_string())
}

/// Matrix of a strategy expression such as `sqrtnot ; sqrtnot`.
pub fn matrix_json(expr: &str) -> Result<String, String> {
    matrix_value(expr).map(|v| v.to_string()).map_err(|e| e.to_string())
}

/// Whether two expressions have the same matrix, with both matrices.
pub fn compare_json(left: &str, right: &str) -> Result<String, String> {
    compare_value(left, right).map(|v| v.to_string()).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = game)]
pub fn game_js(ty: &str) -> Result<String, JsValue> {
    game_json(ty).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = matrix)]
pub fn matrix_js(expr: &str) -> Result<String, JsValue> {
    matrix_json(expr).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = compare)]
pub fn compare_js(left: &str, right: &str) -> Result<String, JsValue> {
    compare_json(left, right).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn game_reports_dims_and_axioms() {
        let v = parse(&game_json("Bool * Bool").unwrap());
        assert_eq!(v["dims"], json!([1, 4]));
        assert_eq!(v["position_names"].as_array().unwrap().len(), 8);
        assert_eq!(v["axioms"]["extension"]["status"], "pass");
    }

    #[test]
    fn matrix_of_sqrt_not() {
        let v = parse(&matrix_json("sqrtnot").unwrap());
        assert_eq!(v["unitary"], true);
        assert_eq!(v["entries"][0][0], json!([0.5, 0.5]));
        assert_eq!(v["entries"][0][1], json!([0.5, -0.5]));
    }

    #[test]
    fn compare_and_errors() {
        let v = parse(&compare_json("sqrtnot ; sqrtnot", "perm[1]{0->1,1->0}").unwrap());
        assert_eq!(v["equal"], true);
        assert!(matrix_json("id[Bool").unwrap_err().contains("expected"));
    }
}
