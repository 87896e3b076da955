use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Top-level JSON schema version of every emitted document.
pub const SCHEMA: u32 = 1;

/// What produced a result. Identical manifests yield identical results
/// apart from wall-time fields.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: Value,
    pub seeds: Vec<u64>,
    pub version: String,
    pub fixture_hashes: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, params: Value, seeds: Vec<u64>, fixtures: &Path) -> Self {
        let mut fixture_hashes = BTreeMap::new();
        if let Ok(bytes) = std::fs::read(fixtures) {
            let name = fixtures.file_name().map_or_else(|| fixtures.display().to_string(), |n| n.to_string_lossy().into_owned());
            fixture_hashes.insert(name, hex::encode(Sha256::digest(&bytes)));
        }
        RunManifest { subcommand: subcommand.to_string(), params, seeds, version: env!("CARGO_PKG_VERSION").to_string(), fixture_hashes }
    }
}

/// `{"schema", "manifest", ...result}`; object results are flattened into
/// the top level, anything else goes under `"result"`.
pub fn document<T: Serialize>(manifest: &RunManifest, result: &T) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), Value::from(SCHEMA));
    out.insert("manifest".into(), serde_json::to_value(manifest).expect("manifest serializes"));
    match serde_json::to_value(result).expect("result serializes") {
        Value::Object(fields) => {
            for (k, v) in fields {
                out.insert(k, v);
            }
        }
        other => {
            out.insert("result".into(), other);
        }
    }
    Value::Object(out)
}
