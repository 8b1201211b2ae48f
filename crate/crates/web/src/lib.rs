//! Browser bindings. Each operation takes JSON text in the same schemas the
//! CLI reads and returns a pretty-printed JSON report.

use std::sync::Arc;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use pfk::bundle::{classify, enumerate_kernel_maps, Base, Filter};
use pfk::cli::error_verdict;
use pfk::dot::{bundle_dot, lattice_dot};
use pfk::frame::primes;
use pfk::hyper::Carrier;
use pfk::order::{validate_lattice, Level};
use pfk::schema::{load_bundle, load_order, load_space, parse_json};
use pfk::{Caps, Error};

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn failure(e: Error) -> String {
    match e {
        Error::InvalidInput(list) => pretty(&json!({"status": "invalid-input", "errors": list})),
        other => pretty(&json!({"status": "fail", "verdicts": [error_verdict(&other)]})),
    }
}

/// Frame validation, primes and Hasse diagram of a lattice.
pub fn lattice_report(text: &str) -> Result<String, String> {
    let caps = Caps::default();
    let run = || -> pfk::Result<Value> {
        let (raw, _) = load_order(&parse_json(text)?)?;
        let report = validate_lattice(&raw, Level::Frame, &caps)?;
        let mut out = json!({"status": if report.passed() { "pass" } else { "fail" }, "verdicts": report.checks});
        if let Ok(l) = pfk::order::FinLattice::from_raw(&raw) {
            out["primes"] = json!(l.names(&primes(&l)));
            out["dot"] = json!(lattice_dot(&l));
        }
        Ok(out)
    };
    run().map(|v| pretty(&v)).map_err(failure)
}

/// Classification of a bundle given as `{space, fq, kappa}`.
pub fn bundle_report(text: &str) -> Result<String, String> {
    let caps = Caps::default();
    let run = || -> pfk::Result<Value> {
        let b = load_bundle(&parse_json(text)?, &caps)?.value;
        let c = classify(&b, &caps)?;
        Ok(json!({
            "open_support": c.open_support,
            "criteria": c.criteria,
            "spectral": c.spectral,
            "sober": c.sober,
            "verdicts": c.checks,
            "total_points": b.total.labels(),
            "dot": bundle_dot(&b),
        }))
    };
    run().map(|v| pretty(&v)).map_err(failure)
}

/// Counts of kernel maps over a space for `F_q^dim` with the discrete carrier.
pub fn census_report(space: &str, q: u32, dim: usize) -> Result<String, String> {
    let caps = Caps::default();
    let run = || -> pfk::Result<Value> {
        let x = load_space(&parse_json(space)?, &caps)?.value;
        let base = Base::new(Arc::new(x), &caps)?;
        let carrier = Arc::new(Carrier::discrete(q, dim, &caps)?);
        let mut counts = serde_json::Map::new();
        for f in [Filter::Continuous, Filter::OpenSupport, Filter::Spectral, Filter::Sober] {
            let n = enumerate_kernel_maps(base.clone(), carrier.clone(), f, &caps)?.len();
            counts.insert(f.to_string(), json!(n));
        }
        Ok(json!({"counts": counts, "subspaces": carrier.sub.len()}))
    };
    run().map(|v| pretty(&v)).map_err(failure)
}

#[wasm_bindgen(js_name = latticeReport)]
pub fn lattice_report_js(text: &str) -> Result<String, JsValue> {
    lattice_report(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = bundleReport)]
pub fn bundle_report_js(text: &str) -> Result<String, JsValue> {
    bundle_report(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = censusReport)]
pub fn census_report_js(space: &str, q: u32, dim: usize) -> Result<String, JsValue> {
    census_report(space, q, dim).map_err(|e| JsValue::from_str(&e))
}
