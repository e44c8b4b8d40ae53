//! Run manifests: every invocation records its subcommand, full parameter
//! map, seed, tool version, input digests, and output paths, so a run can be
//! replayed and compared byte for byte (timestamps aside).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> RunManifest {
        RunManifest {
            tool: "folkman".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand: subcommand.into(),
            params: BTreeMap::new(),
            seed: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params.insert(
            key.into(),
            serde_json::to_value(value).expect("serializable parameter"),
        );
        self
    }

    pub fn input(&mut self, path: &Path) -> Result<&mut Self> {
        let bytes = fs::read(path)
            .with_context(|| format!("cannot read input {}", path.display()))?;
        let digest = Sha256::digest(&bytes);
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex_string(&digest),
        });
        Ok(self)
    }

    pub fn output(&mut self, path: &Path) -> &mut Self {
        self.outputs.push(path.display().to_string());
        self
    }

    /// Writes the manifest next to `out` (as `<out>.manifest.json`) or to an
    /// explicit path; falls back to `folkman-manifest.json` in the working
    /// directory when neither is given.
    pub fn write(&self, explicit: Option<&Path>, out: Option<&Path>) -> Result<PathBuf> {
        let path = match (explicit, out) {
            (Some(p), _) => p.to_path_buf(),
            (None, Some(o)) => {
                let mut s = o.as_os_str().to_owned();
                s.push(".manifest.json");
                PathBuf::from(s)
            }
            (None, None) => PathBuf::from("folkman-manifest.json"),
        };
        let json = serde_json::to_string_pretty(self)?;
        fs::write(&path, json)
            .with_context(|| format!("cannot write manifest {}", path.display()))?;
        Ok(path)
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
