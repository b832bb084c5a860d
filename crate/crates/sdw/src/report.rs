//! Machine-readable run reports for the CLI: command echo, input digests,
//! answer, and timing.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub fn sha256_hex(data: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(data);
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// Input name -> sha256 of the file contents; stable across runs.
    pub digests: BTreeMap<String, String>,
    /// "YES", "NO", or a numeric value rendered as a string.
    pub answer: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_path: Option<String>,
    pub wall_ms: f64,
    pub solver_version: String,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            digests: BTreeMap::new(),
            answer: String::new(),
            witness_path: None,
            wall_ms: 0.0,
            solver_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn add_digest(&mut self, name: impl Into<String>, contents: &str) {
        self.digests.insert(name.into(), sha256_hex(contents.as_bytes()));
    }

    pub fn finish(&mut self, started: Instant) {
        self.wall_ms = started.elapsed().as_secs_f64() * 1e3;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digests_are_stable() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        let mut r = RunReport::new("sdw test");
        r.add_digest("p", "payload");
        let mut r2 = RunReport::new("sdw test");
        r2.add_digest("p", "payload");
        assert_eq!(r.digests, r2.digests);
    }

    #[test]
    fn report_serializes() {
        let mut r = RunReport::new("sdw dff value");
        r.answer = "5".into();
        let s = r.to_json();
        assert!(s.contains("\"answer\": \"5\""));
        assert!(!s.contains("witness_path"));
    }
}
