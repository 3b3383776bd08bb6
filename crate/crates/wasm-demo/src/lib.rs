//! Browser bindings for `mincomp`. Each export takes plain values, returns a
//! JSON string, and runs single-threaded.
//!
//! The `*_json` functions hold the logic and are what the native tests call;
//! the `#[wasm_bindgen]` wrappers only convert errors.

use mincomp::record::{check_witness, WitnessBundle};
use mincomp::{
    build_witness, decide, parse_set, thm4_generate, thm4_verify, write_canonical, Outcome,
    SearchConfig, SlackSpec,
};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest window the page may request, to keep the tab responsive.
const MAX_WINDOW: i64 = 4000;
/// Deeper prefixes overflow i64 for large slack values.
const MAX_STEPS: usize = 30;

fn config(t_max: Option<usize>) -> SearchConfig {
    SearchConfig {
        t_max,
        workers: 1,
        ..SearchConfig::default()
    }
}

pub fn decide_json(text: &str, t_max: Option<usize>) -> Result<String, String> {
    let given = parse_set(text).map_err(|e| e.to_string())?;
    let resolved = given.resolve().map_err(|e| e.to_string())?;
    let v = decide(&resolved.set, &config(t_max));
    Ok(json!({
        "canonical": resolved.set,
        "canonical_text": write_canonical(&resolved.set),
        "reflected": resolved.reflected,
        "outcome": v.outcome,
        "reason": v.reason,
        "reason_text": v.reason.to_string(),
        "certificate": v.certificate,
        "stats": v.stats,
    })
    .to_string())
}

pub fn witness_json(text: &str, lo: i64, hi: i64, t_max: Option<usize>) -> Result<String, String> {
    if hi < lo || hi - lo > MAX_WINDOW {
        return Err(format!(
            "window must satisfy lo <= hi and hi - lo <= {MAX_WINDOW}"
        ));
    }
    let given = parse_set(text).map_err(|e| e.to_string())?;
    let set = given.resolve().map_err(|e| e.to_string())?.set;
    let v = decide(&set, &config(t_max));
    let certificate = match (v.outcome, v.certificate) {
        (Outcome::Exists, Some(c)) => c,
        (outcome, _) => return Err(format!("no periodic certificate: {outcome} ({})", v.reason)),
    };
    let witness = build_witness(&set, &certificate, lo, hi).map_err(|e| e.to_string())?;
    let members: Vec<i64> = set.window_elements(lo, hi);
    let bundle = WitnessBundle {
        set,
        certificate,
        witness,
    };
    let checks = check_witness(&bundle)?;
    Ok(json!({
        "bundle": bundle,
        "checks": checks,
        "safe_window": bundle.witness.safe_window(),
        "w_members": members,
    })
    .to_string())
}

pub fn thm4_json(steps: usize, slack: &str, show_upto: i64) -> Result<String, String> {
    if steps == 0 || steps > MAX_STEPS {
        return Err(format!("steps must be in 1..={MAX_STEPS}"));
    }
    let spec: SlackSpec = slack.parse()?;
    let state = thm4_generate(steps, |i| spec.value(i)).map_err(|e| e.to_string())?;
    let hi = -state.c_seq()[steps - 1] - 1;
    let report = thm4_verify(&state, hi, 50).map_err(|e| e.to_string())?;
    let shown = state.elements(1, show_upto.clamp(1, MAX_WINDOW));
    Ok(json!({
        "state": state,
        "report": report,
        "passed": report.passed(),
        "elements": shown,
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Decision for a set description in the text format. `t_max = 0` means
/// the default `8m`.
#[wasm_bindgen]
pub fn decide_set(text: &str, t_max: usize) -> Result<String, JsError> {
    js(decide_json(text, (t_max > 0).then_some(t_max)))
}

/// Witness window `[lo, hi]` with both verifier reports.
#[wasm_bindgen]
pub fn witness_window(text: &str, lo: i64, hi: i64, t_max: usize) -> Result<String, JsError> {
    js(witness_json(text, lo, hi, (t_max > 0).then_some(t_max)))
}

/// Prefix of the inductive construction plus its verification report.
#[wasm_bindgen]
pub fn thm4_prefix(steps: usize, slack: &str, show_upto: i64) -> Result<String, JsError> {
    js(thm4_json(steps, slack, show_upto))
}
