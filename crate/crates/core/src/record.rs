//! Run records: what was asked, with which settings, what came out, and how
//! long it took. The `result` payload is deterministic; timings live in
//! `stats` only.
//!
//! Records carry enough data to re-check positive results with the
//! verifiers alone (see [`reverify`]).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::criteria::{Certificate, Outcome, Reason, SearchConfig, Verdict};
use crate::format::{Resolved, SetInput};
use crate::sets::CanonicalSet;
use crate::thm4::{thm4_verify, Thm4Report, Thm4State};
use crate::witness::{
    verify_coverage, verify_local_minimality, CoverageReport, MinimalityReport, WitnessWindow,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub input: Value,
    pub config: Value,
    pub result: Value,
    pub stats: Value,
}

/// Input echo shared by the set-based commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetEcho {
    pub given: SetInput,
    pub canonical: CanonicalSet,
    pub reflected: bool,
}

impl SetEcho {
    pub fn new(given: &SetInput, resolved: &Resolved) -> Self {
        Self {
            given: given.clone(),
            canonical: resolved.set.clone(),
            reflected: resolved.reflected,
        }
    }
}

/// The timing-free part of a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideResult {
    pub outcome: Outcome,
    pub reason: Reason,
    pub certificate: Option<Certificate>,
}

/// Everything `verify-witness` needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessBundle {
    pub set: CanonicalSet,
    pub certificate: Certificate,
    pub witness: WitnessWindow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChecks {
    pub coverage: CoverageReport,
    pub minimality: MinimalityReport,
}

impl WitnessChecks {
    pub fn passed(&self) -> bool {
        self.coverage.passed && self.minimality.passed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm4Config {
    pub steps: usize,
    pub slack: String,
    pub window_hi: i64,
    pub p_max: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm4Result {
    pub state: Thm4State,
    pub report: Thm4Report,
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("record payloads serialize")
}

impl RunRecord {
    pub fn canonicalize(echo: &SetEcho) -> Self {
        Self {
            command: "canonicalize".into(),
            input: json(&echo.given),
            config: Value::Null,
            result: json(&serde_json::json!({
                "canonical": echo.canonical,
                "reflected": echo.reflected,
            })),
            stats: Value::Null,
        }
    }

    pub fn decide(echo: &SetEcho, cfg: &SearchConfig, verdict: &Verdict) -> Self {
        Self {
            command: "decide".into(),
            input: json(echo),
            config: json(cfg),
            result: json(&DecideResult {
                outcome: verdict.outcome,
                reason: verdict.reason,
                certificate: verdict.certificate.clone(),
            }),
            stats: json(&verdict.stats),
        }
    }

    pub fn witness(
        echo: &SetEcho,
        window: (i64, i64),
        bundle: &WitnessBundle,
        checks: &WitnessChecks,
    ) -> Self {
        Self {
            command: "witness".into(),
            input: json(echo),
            config: json(&serde_json::json!({ "window": [window.0, window.1] })),
            result: json(&serde_json::json!({ "bundle": bundle, "checks": checks })),
            stats: Value::Null,
        }
    }

    pub fn verify_witness(bundle: &WitnessBundle, checks: &WitnessChecks) -> Self {
        Self {
            command: "verify-witness".into(),
            input: json(bundle),
            config: Value::Null,
            result: json(checks),
            stats: Value::Null,
        }
    }

    pub fn thm4(cfg: &Thm4Config, result: &Thm4Result, wall_time_ms: f64) -> Self {
        Self {
            command: "thm4".into(),
            input: Value::Null,
            config: json(cfg),
            result: json(result),
            stats: json(&serde_json::json!({ "wall_time_ms": wall_time_ms })),
        }
    }

    /// Pretty JSON of the result payload alone.
    pub fn result_json(&self) -> String {
        serde_json::to_string_pretty(&self.result).expect("values serialize")
    }

    /// The witness bundle inside a `witness` record.
    pub fn witness_bundle(&self) -> Option<WitnessBundle> {
        serde_json::from_value(self.result.get("bundle")?.clone()).ok()
    }
}

/// Outcome of re-checking a record without repeating any search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Reverification {
    Valid,
    Invalid(String),
    /// Nothing checkable without a search (negative or inconclusive verdicts).
    NotApplicable(String),
}

/// Re-checks a record from its own contents.
///
/// `decide`: the echoed input must still canonicalize to the echoed set and
/// an `Exists` certificate must satisfy both conditions. `witness`: both
/// window verifiers are re-run. `thm4`: the state is re-verified on the
/// recorded window.
pub fn reverify(record: &RunRecord) -> Reverification {
    use Reverification::*;
    match record.command.as_str() {
        "decide" => {
            let echo: SetEcho = match serde_json::from_value(record.input.clone()) {
                Ok(e) => e,
                Err(e) => return Invalid(format!("input echo: {e}")),
            };
            let result: DecideResult = match serde_json::from_value(record.result.clone()) {
                Ok(r) => r,
                Err(e) => return Invalid(format!("result: {e}")),
            };
            match echo.given.resolve() {
                Ok(r) if r.set == echo.canonical && r.reflected == echo.reflected => {}
                Ok(_) => return Invalid("echoed canonical form does not match the input".into()),
                Err(e) => return Invalid(format!("input no longer validates: {e}")),
            }
            let set = &echo.canonical;
            match (result.outcome, result.reason, &result.certificate) {
                (Outcome::Exists, Reason::FiniteSet, None) => {
                    if set.is_finite() && !set.is_empty() {
                        Valid
                    } else {
                        Invalid("set is not finite and nonempty".into())
                    }
                }
                (Outcome::Exists, Reason::CertificateAtBasePeriod { modulus }, Some(c))
                | (Outcome::Exists, Reason::CertificateAtLiftedPeriod { modulus }, Some(c)) => {
                    if c.t != modulus {
                        Invalid(format!(
                            "certificate modulus {} differs from reason {modulus}",
                            c.t
                        ))
                    } else if c.verify_for(set) {
                        Valid
                    } else {
                        Invalid("certificate fails the conditions".into())
                    }
                }
                (Outcome::Exists, reason, _) => {
                    Invalid(format!("Exists with unexpected reason {reason}"))
                }
                (outcome, reason, _) => NotApplicable(format!("{outcome}: {reason}")),
            }
        }
        "witness" | "verify-witness" => {
            let bundle = if record.command == "witness" {
                record.witness_bundle()
            } else {
                serde_json::from_value(record.input.clone()).ok()
            };
            let Some(b) = bundle else {
                return Invalid("witness bundle missing or malformed".into());
            };
            if !b.certificate.verify_for(&b.set) {
                return Invalid("certificate fails the conditions".into());
            }
            match check_witness(&b) {
                Ok(c) if c.passed() => Valid,
                Ok(c) => Invalid(format!(
                    "coverage passed: {}, minimality passed: {}",
                    c.coverage.passed, c.minimality.passed
                )),
                Err(e) => Invalid(e),
            }
        }
        "thm4" => {
            let cfg: Thm4Config = match serde_json::from_value(record.config.clone()) {
                Ok(c) => c,
                Err(e) => return Invalid(format!("config: {e}")),
            };
            let result: Thm4Result = match serde_json::from_value(record.result.clone()) {
                Ok(r) => r,
                Err(e) => return Invalid(format!("result: {e}")),
            };
            match thm4_verify(&result.state, cfg.window_hi, cfg.p_max) {
                Ok(r) if r.passed() => Valid,
                Ok(_) => Invalid("state fails verification".into()),
                Err(e) => Invalid(e.to_string()),
            }
        }
        "canonicalize" => NotApplicable("nothing to certify".into()),
        other => Invalid(format!("unknown command `{other}`")),
    }
}

/// Runs both window verifiers on a bundle.
pub fn check_witness(b: &WitnessBundle) -> Result<WitnessChecks, String> {
    let coverage = verify_coverage(&b.set, &b.witness);
    let minimality = verify_local_minimality(&b.set, &b.witness).map_err(|e| e.to_string())?;
    Ok(WitnessChecks {
        coverage,
        minimality,
    })
}
