use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RunStatus {
    Ok,
    Failed,
}

/// Canonical `key -> value` settings of one invocation. Keys are sorted, so
/// the hash does not depend on the order flags were given in.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn float(mut self, key: &str, value: f64) -> Self {
        self.0.insert(key.to_string(), canonical_f64(value));
        self
    }

    pub fn int(mut self, key: &str, value: impl Into<u64>) -> Self {
        self.0.insert(key.to_string(), value.into().to_string());
        self
    }

    pub fn text(mut self, key: &str, value: &str) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        self.get(key)?.parse().ok()
    }

    pub fn get_u64(&self, key: &str) -> Option<u64> {
        self.get(key)?.parse().ok()
    }

    /// Hex SHA-256 over `command` and the sorted `key=value` lines.
    pub fn hash(&self, command: &str) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("command={command}\n"));
        for (k, v) in &self.0 {
            hasher.update(format!("{k}={v}\n"));
        }
        hex(&hasher.finalize())
    }
}

/// Shortest representation that parses back to the same bits.
pub fn canonical_f64(value: f64) -> String {
    format!("{value:?}")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex(&Sha256::digest(bytes))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config_hash: String,
    pub tool_version: String,
    pub timestamp: String,
    pub seed: Option<u64>,
    pub status: RunStatus,
    pub settings: Settings,
    /// Output file name to SHA-256 of its bytes.
    pub outputs: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

impl RunManifest {
    pub fn new(command: &str, settings: Settings, seed: Option<u64>) -> Self {
        Self {
            command: command.to_string(),
            config_hash: settings.hash(command),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            seed,
            status: RunStatus::Ok,
            settings,
            outputs: BTreeMap::new(),
            error: None,
        }
    }

    pub fn record_output(&mut self, name: &str, bytes: &[u8]) {
        self.outputs.insert(name.to_string(), sha256_hex(bytes));
    }

    pub fn fail(&mut self, message: String) {
        self.status = RunStatus::Failed;
        self.error = Some(message);
    }

    /// True when the stored hash matches the stored settings.
    pub fn hash_is_consistent(&self) -> bool {
        self.settings.hash(&self.command) == self.config_hash
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_ignores_insertion_order() {
        let a = Settings::new().float("lambda_min", 10.0).float("lambda_max", 30.0);
        let b = Settings::new().float("lambda_max", 30.0).float("lambda_min", 10.0);
        assert_eq!(a.hash("scan"), b.hash("scan"));
        assert_ne!(a.hash("scan"), a.hash("spectrum"));
        assert_eq!(a.hash("scan").len(), 64);
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.05, 1e-9, 14.134725141734694, -0.0, 1e300, 0.1 + 0.2] {
            let s = Settings::new().float("x", v);
            assert_eq!(s.get_f64("x").unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn manifest_json_round_trip() {
        let mut m = RunManifest::new(
            "verify",
            Settings::new().text("suite", "all").int("seed", 42u64),
            Some(42),
        );
        m.record_output("report.txt", b"PASS\n");
        m.fail("boom".into());
        let back: RunManifest = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        assert!(back.hash_is_consistent());
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"status\":\"FAILED\""));
    }
}
