//! The `check`, `iso` and `rep` pipelines. Each returns a JSON report and a
//! verdict; only malformed input is an error.

use std::fmt;
use std::path::PathBuf;

use ehresmann::algebra::verify_isomorphism;
use ehresmann::ehresmann::maximal_subsemilattices;
use ehresmann::interchange::SemigroupFile;
use ehresmann::radical::{radical_oracle, StructureConstants};
use ehresmann::rep::{
    ei_report, invertible_by_search, invertible_morphisms, radical_span, reg_e, semisimple_image_data,
};
use ehresmann::zoo::ZooSpec;
use ehresmann::{build_category, EhresmannStructure, FiniteSemigroup, Order};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub enum Source {
    File(PathBuf),
    Zoo(ZooSpec),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub source: Source,
    pub order: Order,
    pub workers: usize,
}

impl RunConfig {
    fn to_json(&self) -> Value {
        let input = match &self.source {
            Source::File(p) => json!({ "file": p.display().to_string() }),
            Source::Zoo(z) => json!({ "zoo": z.to_string() }),
        };
        json!({ "input": input, "order": self.order, "workers": self.workers })
    }
}

/// Malformed or incomplete input; exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub struct Outcome {
    pub report: Value,
    pub passed: bool,
    pub summary: Vec<String>,
    pub structure: Option<EhresmannStructure>,
}

struct Loaded {
    semigroup: FiniteSemigroup,
    e: Vec<usize>,
    structure: Result<EhresmannStructure, ehresmann::ehresmann::EhresmannError>,
}

fn load(source: &Source) -> Result<Loaded, InputError> {
    match source {
        Source::Zoo(spec) => {
            let es = spec.build().map_err(|e| InputError(format!("zoo member {spec}: {e}")))?;
            Ok(Loaded { semigroup: es.semigroup().clone(), e: es.e().to_vec(), structure: Ok(es) })
        }
        Source::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
            let file =
                SemigroupFile::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let (semigroup, e) =
                file.into_semigroup().map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let Some(e) = e else {
                let options: Vec<String> =
                    maximal_subsemilattices(&semigroup).iter().map(|m| format!("{m:?}")).collect();
                return Err(InputError(format!(
                    "{}: no \"E\" given; maximal subsemilattices are {}",
                    path.display(),
                    options.join(", ")
                )));
            };
            let structure = EhresmannStructure::derive(semigroup.clone(), &e);
            Ok(Loaded { semigroup, e, structure })
        }
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

fn base(command: &str, config: &RunConfig, loaded: &Loaded) -> Value {
    let mut e = loaded.e.clone();
    e.sort_unstable();
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config.to_json(),
        "semigroup": { "size": loaded.semigroup.size(), "E": e },
    })
}

fn merge(target: &mut Value, extra: Value) {
    let (Value::Object(t), Value::Object(x)) = (target, extra) else { unreachable!("objects") };
    t.extend(x);
}

/// Report for inputs that are not `E`-Ehresmann.
fn not_ehresmann(mut report: Value, err: &ehresmann::ehresmann::EhresmannError) -> Outcome {
    merge(
        &mut report,
        json!({
            "passed": false,
            "classification": "not E-Ehresmann",
            "derive_structure": { "ok": false, "error": err, "message": err.to_string() },
        }),
    );
    Outcome { report, passed: false, summary: vec![format!("not E-Ehresmann: {err}")], structure: None }
}

pub fn run_check(config: &RunConfig) -> Result<Outcome, InputError> {
    let loaded = load(&config.source)?;
    let mut report = base("check", config, &loaded);
    let subsemilattice = loaded.semigroup.is_subsemilattice(&loaded.e);
    merge(&mut report, json!({ "subsemilattice": subsemilattice }));
    let es = match &loaded.structure {
        Ok(es) => es,
        Err(err) => return Ok(not_ehresmann(report, err)),
    };
    let variety = es.check_variety();
    let c = build_category(es);
    let axioms = c.verify_axioms();
    let left = es.left_restriction_failure();
    let right = es.right_restriction_failure();
    let class = classification(es);
    let passed = variety.passed && axioms.passed;
    merge(
        &mut report,
        json!({
            "passed": passed,
            "classification": class,
            "derive_structure": { "ok": true, "plus": es.plus_map(), "star": es.star_map() },
            "variety": variety,
            "left_restriction": { "holds": left.is_none(), "witness": left },
            "right_restriction": { "holds": right.is_none(), "witness": right },
            "order_containment": es.order_containment(),
            "axioms": axioms,
        }),
    );
    let mut summary = vec![format!("E-Ehresmann, {class}")];
    if let Some((a, e)) = left {
        let ae = es.mul(a, e);
        summary.push(format!(
            "left restriction fails: a = {}, e = {}: ae = {} but (ae)⁺a = {}",
            es.name(a),
            es.name(e),
            es.name(ae),
            es.name(es.mul(es.plus(ae), a))
        ));
    }
    if let Some((a, e)) = right {
        let ea = es.mul(e, a);
        summary.push(format!(
            "right restriction fails: a = {}, e = {}: ea = {} but a(ea)* = {}",
            es.name(a),
            es.name(e),
            es.name(ea),
            es.name(es.mul(a, es.star(ea)))
        ));
    }
    for f in variety.failures().chain(axioms.failures()) {
        summary.push(format!("FAILED {}: witness {:?}", f.name, f.witness));
    }
    Ok(Outcome { report, passed, summary, structure: loaded.structure.ok() })
}

pub fn run_iso(config: &RunConfig) -> Result<Outcome, InputError> {
    let loaded = load(&config.source)?;
    let mut report = base("iso", config, &loaded);
    let es = match &loaded.structure {
        Ok(es) => es,
        Err(err) => return Ok(not_ehresmann(report, err)),
    };
    let r = verify_isomorphism(es, config.order, config.workers)
        .map_err(|e| InputError(format!("order {}: {e}", config.order)))?;
    let theorem_applies = match config.order {
        Order::Right => es.is_left_restriction(),
        Order::Left => es.is_right_restriction(),
    };
    let passed = r.passed();
    let mut summary = vec![format!(
        "order ≤{}: bijection {}, homomorphism {} ({} pairs: {} composable, {} not)",
        config.order, r.bijection, r.homomorphism, r.pairs_checked, r.case1_pairs, r.case2_pairs
    )];
    if !theorem_applies {
        summary
            .push("the restriction hypothesis for this order does not hold; result is informational".into());
    }
    if let Some(w) = &r.witness_expansion {
        summary.push(format!("counterexample a = {}, b = {}, ab = {}", w.a_name, w.b_name, w.ab_name));
        summary.push(format!("  φ(a)     = {}", w.phi_a));
        summary.push(format!("  φ(b)     = {}", w.phi_b));
        summary.push(format!("  φ(ab)    = {}", w.phi_ab));
        summary.push(format!("  φ(a)φ(b) = {}", w.phi_a_phi_b));
    }
    merge(
        &mut report,
        json!({ "passed": passed, "classification": classification(es), "theorem_applies": theorem_applies }),
    );
    merge(&mut report, serde_json::to_value(&r).expect("serializable"));
    Ok(Outcome { report, passed, summary, structure: loaded.structure.ok() })
}

pub fn run_rep(config: &RunConfig) -> Result<Outcome, InputError> {
    let loaded = load(&config.source)?;
    let mut report = base("rep", config, &loaded);
    let es = match &loaded.structure {
        Ok(es) => es,
        Err(err) => return Ok(not_ehresmann(report, err)),
    };
    let c = build_category(es);
    let g = es.semigroup().green();
    let invertible = invertible_morphisms(es, &g);
    let cross_check = invertible == invertible_by_search(&c);
    let reg = reg_e(es, &g);
    let ei = ei_report(es, &c, &g);
    let oracle = radical_oracle(&StructureConstants::category_algebra(&c));
    let span = ei.is_ei.then(|| radical_span(es, &c, &g).expect("EI checked"));
    let semisimple = semisimple_image_data(es, &c, &g);

    let reg_ok = reg.is_ok();
    let span_ok = span.as_ref().is_none_or(|s| s.agrees());
    let passed = cross_check
        && reg_ok
        && ei.is_ei == ei.is_ei_by_search
        && span_ok
        && semisimple.passed != Some(false);

    let mut summary = vec![
        format!("|Reg_E(S)| = {} of {}", invertible.len(), es.size()),
        format!("EI: {}", ei.is_ei),
        format!("dim Rad(ℚC) = {}", oracle.dim()),
    ];
    match semisimple.passed {
        Some(ok) => summary.push(format!(
            "ℚReg_E(S) ≅ ℚS/Rad(ℚS): {ok} (dim Rad(ℚS) = {}, quotient dimension {})",
            semisimple.radical_dim, semisimple.projection_rank
        )),
        None => summary.push(format!(
            "outside the theorem ({}); raw data only",
            semisimple.unmet_preconditions.join(", ")
        )),
    }
    merge(
        &mut report,
        json!({
            "passed": passed,
            "classification": classification(es),
            "reg_e_size": invertible.len(),
            "reg_e": match &reg {
                Ok(r) => serde_json::to_value(r).expect("serializable"),
                Err(e) => json!({ "error": e.to_string() }),
            },
            "invertible_cross_check": cross_check,
            "is_EI": ei.is_ei,
            "ei": ei,
            "radical_dim": oracle.dim(),
            "quotient_dim": oracle.quotient_dim(),
            "radical_span": span,
            "semisimple_check": semisimple.passed,
            "semisimple": semisimple,
        }),
    );
    Ok(Outcome { report, passed, summary, structure: loaded.structure.ok() })
}
