//! Run configuration: a TOML or JSON file whose values command-line flags override.
//!
//! ```toml
//! seed = 42
//! provider = "hashed-bow-v1"
//!
//! [paths]
//! dictionary = "data/cmudict.dict"
//! matrix = "data/cost-matrix.tsv"
//! catalog = "data/skills.jsonl"
//! blacklist = "data/blacklist.txt"
//! syscmds = "data/syscmds.txt"
//! variants = "data/variants.toml"          # optional, built-in defaults otherwise
//! response_variants = "data/response-variants.json"
//! labels = "data/labels.jsonl"
//! model = "data/forest.json"
//!
//! [thresholds]
//! scan = 1.0   # >= 0
//! src = 0.29   # (0, 1]
//! ```
//!
//! Relative paths resolve against the directory holding the config file.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use skillvet::embed::HashedBagOfWords;

/// The only provider built in.
pub const PROVIDER_HASHED_BOW_V1: &str = "hashed-bow-v1";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub paths: Paths,
    #[serde(default)]
    pub thresholds: Thresholds,
    pub provider: Option<String>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Paths {
    pub dictionary: Option<PathBuf>,
    pub matrix: Option<PathBuf>,
    pub catalog: Option<PathBuf>,
    pub blacklist: Option<PathBuf>,
    pub syscmds: Option<PathBuf>,
    pub variants: Option<PathBuf>,
    pub response_variants: Option<PathBuf>,
    pub labels: Option<PathBuf>,
    pub model: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    pub scan: Option<f64>,
    pub src: Option<f64>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let mut cfg: Config = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        } else {
            toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        };
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.paths.resolve(base);
        cfg.validate()?;
        Ok(cfg)
    }

    /// Every input path must exist. `model` is exempt: `train-uic` creates it,
    /// and `detect` reports a missing one when it loads it.
    pub fn validate(&self) -> Result<()> {
        for (key, p) in self.paths.inputs() {
            if let Some(p) = p {
                if !p.exists() {
                    bail!("config path `{key}` does not exist: {}", p.display());
                }
            }
        }
        if let Some(t) = self.thresholds.scan {
            check_scan_threshold(t)?;
        }
        if let Some(t) = self.thresholds.src {
            check_src_threshold(t)?;
        }
        if let Some(p) = &self.provider {
            provider(p)?;
        }
        if self.threads == Some(0) {
            bail!("threads must be positive");
        }
        Ok(())
    }
}

impl Paths {
    fn inputs(&self) -> [(&'static str, &Option<PathBuf>); 8] {
        [
            ("dictionary", &self.dictionary),
            ("matrix", &self.matrix),
            ("catalog", &self.catalog),
            ("blacklist", &self.blacklist),
            ("syscmds", &self.syscmds),
            ("variants", &self.variants),
            ("response_variants", &self.response_variants),
            ("labels", &self.labels),
        ]
    }

    fn resolve(&mut self, base: &Path) {
        for p in [
            &mut self.dictionary,
            &mut self.matrix,
            &mut self.catalog,
            &mut self.blacklist,
            &mut self.syscmds,
            &mut self.variants,
            &mut self.response_variants,
            &mut self.labels,
            &mut self.model,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }
}

pub fn check_scan_threshold(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        bail!("scan threshold {t} must be a non-negative number");
    }
    Ok(())
}

pub fn check_src_threshold(t: f64) -> Result<()> {
    if !(t > 0.0 && t <= 1.0) {
        bail!("SRC threshold {t} outside (0, 1]");
    }
    Ok(())
}

pub fn provider(key: &str) -> Result<HashedBagOfWords> {
    match key {
        PROVIDER_HASHED_BOW_V1 => Ok(HashedBagOfWords::default()),
        other => bail!("unknown embedding provider `{other}` (available: {PROVIDER_HASHED_BOW_V1})"),
    }
}

/// Flag value if given, else the config value, else an error naming both.
pub fn pick(flag: Option<PathBuf>, config: &Option<PathBuf>, what: &str) -> Result<PathBuf> {
    match flag.or_else(|| config.clone()) {
        Some(p) => Ok(p),
        None => bail!("no {what} given: pass --{what} or set it under [paths] in --config"),
    }
}
