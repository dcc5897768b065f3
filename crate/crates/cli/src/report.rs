//! Serializable experiment reports: quantities with provenance tags and
//! named pass/fail certificates.

use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize)]
pub struct Quantity {
    pub value: serde_json::Value,
    /// How the value was produced: "exact", "closed-form",
    /// "grid-estimate", "sampled", ...
    pub provenance: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub pass: bool,
    /// Stable identifier of the statement this certificate checks.
    pub anchor: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

/// One run's inputs, outputs and certificates. Serialization is ordered, so
/// identical runs produce identical bytes apart from `wall_time_ms`.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub command: Vec<String>,
    pub seed: u64,
    pub inputs: BTreeMap<String, String>,
    pub quantities: BTreeMap<String, Quantity>,
    pub certificates: BTreeMap<String, Certificate>,
    pub wall_time_ms: u64,
}

impl ExperimentReport {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        ExperimentReport {
            command,
            seed,
            inputs: BTreeMap::new(),
            quantities: BTreeMap::new(),
            certificates: BTreeMap::new(),
            wall_time_ms: 0,
        }
    }

    pub fn input(&mut self, name: &str, digest: String) {
        self.inputs.insert(name.to_string(), digest);
    }

    pub fn quantity(&mut self, name: &str, value: impl Serialize, provenance: &'static str) {
        self.quantities.insert(
            name.to_string(),
            Quantity { value: serde_json::to_value(value).expect("serializable quantity"), provenance },
        );
    }

    pub fn certificate(&mut self, name: &str, anchor: &'static str, pass: bool) {
        self.certificates.insert(name.to_string(), Certificate { pass, anchor, witness: None });
    }

    pub fn certificate_with(
        &mut self,
        name: &str,
        anchor: &'static str,
        pass: bool,
        witness: impl Serialize,
    ) {
        self.certificates.insert(
            name.to_string(),
            Certificate {
                pass,
                anchor,
                witness: Some(serde_json::to_value(witness).expect("serializable witness")),
            },
        );
    }

    pub fn all_pass(&self) -> bool {
        self.certificates.values().all(|c| c.pass)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    out.iter().take(8).map(|b| format!("{b:02x}")).collect()
}
