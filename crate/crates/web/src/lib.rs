//! WebAssembly bindings for the static demo page. Every entry point takes
//! a zoo spec (`pt:2`, `b:2`, `six`, ...) or a JSON table and returns a
//! JSON string with `"ok": true` or `"ok": false` and an `"error"`.

use ehresmann::algebra::verify_isomorphism;
use ehresmann::interchange::SemigroupFile;
use ehresmann::radical::{radical_oracle, StructureConstants};
use ehresmann::rep::{ei_report, invertible_morphisms, semisimple_image_data};
use ehresmann::zoo::ZooSpec;
use ehresmann::{build_category, EhresmannStructure, Order};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest semigroup the page will analyse.
pub const MAX_SIZE: usize = 128;

fn load(source: &str) -> Result<EhresmannStructure, String> {
    let source = source.trim();
    let es = if source.starts_with('{') {
        let file = SemigroupFile::parse(source).map_err(|e| e.to_string())?;
        let (s, e) = file.into_semigroup().map_err(|e| e.to_string())?;
        let e = e.ok_or("the table needs an \"E\" field")?;
        EhresmannStructure::derive(s, &e).map_err(|e| format!("not E-Ehresmann: {e}"))?
    } else {
        let spec = source.parse::<ZooSpec>().map_err(|e| e.to_string())?;
        spec.build().map_err(|e| e.to_string())?
    };
    if es.size() > MAX_SIZE {
        return Err(format!("{} elements; the demo accepts at most {MAX_SIZE}", es.size()));
    }
    Ok(es)
}

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(Value::Object(mut m)) => {
            m.insert("ok".into(), true.into());
            Value::Object(m).to_string()
        }
        Ok(other) => json!({ "ok": true, "value": other }).to_string(),
        Err(e) => json!({ "ok": false, "error": e }).to_string(),
    }
}

fn classification(es: &EhresmannStructure) -> &'static str {
    match (es.is_left_restriction(), es.is_right_restriction()) {
        (true, true) => "restriction",
        (true, false) => "left restriction",
        (false, true) => "right restriction",
        (false, false) => "neither left nor right restriction",
    }
}

fn names(es: &EhresmannStructure) -> Vec<String> {
    (0..es.size()).map(|a| es.name(a)).collect()
}

fn witness(es: &EhresmannStructure, w: Option<(usize, usize)>) -> Value {
    w.map_or(Value::Null, |(a, e)| json!({ "a": es.name(a), "e": es.name(e) }))
}

pub fn classify_json(source: &str) -> String {
    respond(load(source).map(|es| {
        let variety = es.check_variety();
        let axioms = build_category(&es).verify_axioms();
        json!({
            "size": es.size(),
            "names": names(&es),
            "E": es.e().iter().map(|&e| es.name(e)).collect::<Vec<_>>(),
            "plus": es.plus_map().iter().map(|&a| es.name(a)).collect::<Vec<_>>(),
            "star": es.star_map().iter().map(|&a| es.name(a)).collect::<Vec<_>>(),
            "classification": classification(&es),
            "left_restriction_witness": witness(&es, es.left_restriction_failure()),
            "right_restriction_witness": witness(&es, es.right_restriction_failure()),
            "variety_passed": variety.passed,
            "category_axioms_passed": axioms.passed,
        })
    }))
}

pub fn isomorphism_json(source: &str, order: &str) -> String {
    respond(load(source).and_then(|es| {
        let order = order.parse::<Order>().map_err(|e| e.to_string())?;
        let r = verify_isomorphism(&es, order, 1).map_err(|e| e.to_string())?;
        let hypothesis = match order {
            Order::Right => es.is_left_restriction(),
            Order::Left => es.is_right_restriction(),
        };
        Ok(json!({
            "order": order,
            "hypothesis_holds": hypothesis,
            "passed": r.passed(),
            "bijection": r.bijection,
            "homomorphism": r.homomorphism,
            "pairs_checked": r.pairs_checked,
            "composable_pairs": r.case1_pairs,
            "failures_composable": r.hom_case1_failures.len(),
            "failures_not_composable": r.hom_case2_failures.len(),
            "witness": r.witness_expansion,
        }))
    }))
}

pub fn representation_json(source: &str) -> String {
    respond(load(source).map(|es| {
        let c = build_category(&es);
        let g = es.semigroup().green();
        let invertible = invertible_morphisms(&es, &g);
        let ei = ei_report(&es, &c, &g);
        let oracle = radical_oracle(&StructureConstants::category_algebra(&c));
        let semisimple = semisimple_image_data(&es, &c, &g);
        json!({
            "size": es.size(),
            "reg_e": invertible.iter().map(|&a| es.name(a)).collect::<Vec<_>>(),
            "is_ei": ei.is_ei,
            "ei_witness": ei.witness.map(|a| es.name(a)),
            "category_radical_dim": oracle.dim(),
            "semigroup_radical_dim": semisimple.radical_dim,
            "within_theorem": semisimple.within_theorem,
            "unmet_preconditions": semisimple.unmet_preconditions,
            "semisimple_check": semisimple.passed,
        })
    }))
}

/// Classifies the input as (left/right) restriction or neither.
#[wasm_bindgen]
pub fn classify(source: &str) -> String {
    classify_json(source)
}

/// Checks the Möbius isomorphism for order `"r"` or `"l"`.
#[wasm_bindgen]
pub fn isomorphism(source: &str, order: &str) -> String {
    isomorphism_json(source, order)
}

/// Invertible morphisms, EI status and radical dimensions.
#[wasm_bindgen]
pub fn representation(source: &str) -> String {
    representation_json(source)
}

/// Zoo specs offered by the page.
#[wasm_bindgen]
pub fn examples() -> String {
    let specs: Vec<String> = ZooSpec::small_members().iter().map(|s| s.to_string()).collect();
    Value::from(specs).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_accepts_spec_and_table() {
        assert_eq!(load("six").unwrap().size(), 6);
        assert_eq!(load("  {\"n\":1,\"table\":[[0]],\"E\":[0]}").unwrap().size(), 1);
    }

    #[test]
    fn load_reports_errors() {
        assert!(load("nonsense").is_err());
        assert!(load("{\"n\":2,\"table\":[[0,0],[1,1]],\"E\":[0]}").unwrap_err().contains("not E-Ehresmann"));
    }

    #[test]
    fn respond_marks_status() {
        let ok: Value = serde_json::from_str(&respond(Ok(json!({ "x": 1 })))).unwrap();
        assert_eq!(ok["ok"], true);
        let err: Value = serde_json::from_str(&respond(Err("bad".into()))).unwrap();
        assert_eq!(err, json!({ "ok": false, "error": "bad" }));
    }
}
