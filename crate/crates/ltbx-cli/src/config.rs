//! Run configuration: fully serializable, reproducible, hash-stamped.
//!
//! A run is reconstructible from its config alone; every artifact carries the
//! config hash in its header. The `threads` knob is accepted but excluded
//! from the hash (outputs are bit-identical regardless of it).

use ltbx_fock::FieldSpec;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Zxy,
    Effpot,
    Toeplitz,
    Split,
    Verify,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Zxy => "zxy",
            CommandKind::Effpot => "effpot",
            CommandKind::Toeplitz => "toeplitz",
            CommandKind::Split => "split",
            CommandKind::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignArg {
    Plus,
    Minus,
}

impl SignArg {
    pub fn to_sign(self) -> ltbx_algebra::Sign {
        match self {
            SignArg::Plus => ltbx_algebra::Sign::Plus,
            SignArg::Minus => ltbx_algebra::Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// λ grid: explicit values or log-uniform decades.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LambdaGrid {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_decade: Option<u32>,
}

impl LambdaGrid {
    pub fn decades(from: f64, to: f64, per_decade: u32) -> Self {
        LambdaGrid {
            values: None,
            from: Some(from),
            to: Some(to),
            per_decade: Some(per_decade),
        }
    }

    /// Materialize as a decreasing positive grid.
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // !(x > 0) also rejects NaN
    pub fn materialize(&self) -> Result<Vec<f64>, String> {
        if let Some(vals) = &self.values {
            if vals.iter().any(|&v| !(v > 0.0)) {
                return Err("lambda_grid.values must be strictly positive".into());
            }
            let mut v = vals.clone();
            v.sort_by(|a, b| b.partial_cmp(a).unwrap());
            return Ok(v);
        }
        let from = self
            .from
            .ok_or("lambda_grid needs `values` or `from`/`to`")?;
        let to = self.to.ok_or("lambda_grid needs `values` or `from`/`to`")?;
        let per = self.per_decade.unwrap_or(1).max(1);
        if !(from > 0.0 && to > 0.0 && from > to) {
            return Err("lambda_grid requires from > to > 0".into());
        }
        let decades = (from / to).log10();
        let steps = (decades * per as f64).round() as usize;
        let mut out = Vec::with_capacity(steps + 1);
        for i in 0..=steps {
            out.push(from * (10.0f64).powf(-(i as f64) / per as f64));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DiskSpec {
    #[serde(rename = "R")]
    pub radius: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u16>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<SignArg>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub basis_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_grid: Option<LambdaGrid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disk: Option<DiskSpec>,
    #[serde(default, rename = "B0", skip_serializing_if = "Option::is_none")]
    pub b0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dump_matrices: Option<bool>,
    /// Accepted and recorded but ignored for determinism: all library code
    /// is sequential and bit-reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        RunConfig {
            command,
            q: None,
            sign: None,
            basis_size: None,
            lambda_grid: None,
            field: None,
            disk: None,
            b0: None,
            n_max: None,
            out: None,
            format: None,
            dump_matrices: None,
            threads: None,
        }
    }

    /// Parse a config file (or inline JSON starting with `{`) and validate.
    pub fn parse(path_or_inline: &str) -> Result<RunConfig, ConfigError> {
        let text = if path_or_inline.trim_start().starts_with('{') {
            path_or_inline.to_string()
        } else {
            std::fs::read_to_string(path_or_inline).map_err(|source| ConfigError::Io {
                path: path_or_inline.to_string(),
                source,
            })?
        };
        let cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Command-specific preconditions checked up front, before any work.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(field) = &self.field {
            field
                .validate()
                .map_err(|e| ConfigError::Invalid(format!("field: {}", e)))?;
        }
        let q = self.q.unwrap_or(1);
        match self.command {
            CommandKind::Zxy | CommandKind::Effpot => {
                if self.q == Some(0) {
                    return Err(ConfigError::Invalid(format!(
                        "{} requires q >= 1 (the reduction is stated for q > 0)",
                        self.command.name()
                    )));
                }
            }
            CommandKind::Split => {
                if self.field.is_none() {
                    return Err(ConfigError::Invalid(
                        "split requires a `field` specification".into(),
                    ));
                }
            }
            CommandKind::Toeplitz => {
                let has_disk = self.disk.is_some();
                let has_profile = self
                    .field
                    .as_ref()
                    .map(|f| !f.v_terms.is_empty())
                    .unwrap_or(false);
                if !has_disk && !has_profile {
                    return Err(ConfigError::Invalid(
                        "toeplitz requires `disk` or a field with V bumps".into(),
                    ));
                }
            }
            CommandKind::Verify => {}
        }
        // bump smoothness must cover the requested level (early check)
        if let Some(field) = &self.field {
            let needed = ltbx_fock::required_smoothness(q);
            for bump in field.b_terms.iter().chain(field.v_terms.iter()) {
                if bump.k < needed {
                    return Err(ConfigError::Invalid(format!(
                        "bump smoothness k = {} too small for q = {}: need k >= {}",
                        bump.k, q, needed
                    )));
                }
            }
        }
        Ok(())
    }

    /// Canonical hash over the scientific content of the run: the `threads`
    /// annotation and the output location are excluded, so relocated or
    /// re-threaded reruns stamp identical hashes (and must produce
    /// byte-identical artifacts).
    pub fn hash(&self) -> String {
        let mut canon = self.clone();
        canon.threads = None;
        canon.out = None;
        let text = serde_json::to_string(&canon).expect("config serializes");
        let digest = Sha256::digest(text.as_bytes());
        let mut hex = String::with_capacity(16);
        for b in digest.iter().take(8) {
            hex.push_str(&format!("{:02x}", b));
        }
        hex
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_fills_defaults() {
        let cfg = RunConfig::parse(r#"{"command": "zxy", "q": 2}"#).unwrap();
        assert_eq!(cfg.command, CommandKind::Zxy);
        assert_eq!(cfg.q, Some(2));
        assert!(cfg.basis_size.is_none());
    }

    #[test]
    fn effpot_rejects_q0() {
        let err = RunConfig::parse(r#"{"command": "effpot", "q": 0}"#).unwrap_err();
        assert!(err.to_string().contains("q >= 1"), "{}", err);
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = RunConfig::parse(r#"{"command": "zxy", "qq": 1}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field"), "{}", err);
    }

    #[test]
    fn smoothness_checked_early() {
        let cfg = r#"{"command": "split", "q": 2,
                      "field": {"B0": 1.0, "b": [{"center": [0,0], "c": 0.1, "R": 1.0, "k": 4}]}}"#;
        let err = RunConfig::parse(cfg).unwrap_err();
        assert!(err.to_string().contains("k >= 10"), "{}", err);
    }

    #[test]
    fn hash_ignores_threads() {
        let mut a = RunConfig::new(CommandKind::Verify);
        let mut b = a.clone();
        a.threads = Some(1);
        b.threads = Some(8);
        assert_eq!(a.hash(), b.hash());
    }

    #[test]
    fn lambda_grid_decades() {
        let g = LambdaGrid::decades(1e-1, 1e-3, 2).materialize().unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[0] - 1e-1).abs() < 1e-15);
        assert!((g[4] - 1e-3).abs() < 1e-17);
        assert!(g.windows(2).all(|w| w[0] > w[1]));
    }
}
