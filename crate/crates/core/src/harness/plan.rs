use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::HarnessError;
use crate::codec::{catalog, CodeSpec};
use crate::graph::{GbpOptions, ModifiedLbpOptions, RegionMode};
use crate::trellis::{Trellis2dOptions, ViterbiOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct StopRule {
    /// A point ends once this many word errors are seen...
    pub min_word_errors: u64,
    /// ...or after this many trials.
    pub max_trials: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            min_word_errors: 100,
            max_trials: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LbpOptions {
    pub max_iters: usize,
}

impl Default for LbpOptions {
    fn default() -> Self {
        LbpOptions { max_iters: 50 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModifiedLbpConfig {
    pub outer: usize,
    pub inner: usize,
    pub segment_iters: usize,
    pub p_flip: f64,
    /// Syndrome-former multipliers; the first one gives the base matrix.
    pub z: Vec<String>,
}

impl Default for ModifiedLbpConfig {
    fn default() -> Self {
        let d = ModifiedLbpOptions::default();
        ModifiedLbpConfig {
            outer: d.outer,
            inner: d.inner,
            segment_iters: d.segment_iters,
            p_flip: d.p_flip,
            z: vec!["1".into(), "1 + y".into(), "1 + x".into()],
        }
    }
}

impl ModifiedLbpConfig {
    pub fn options(&self) -> ModifiedLbpOptions {
        ModifiedLbpOptions {
            outer: self.outer,
            inner: self.inner,
            segment_iters: self.segment_iters,
            p_flip: self.p_flip,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GbpConfig {
    pub regions: RegionMode,
    pub max_iters: usize,
    pub damping: f64,
}

impl Default for GbpConfig {
    fn default() -> Self {
        let d = GbpOptions::default();
        GbpConfig {
            regions: RegionMode::Modified,
            max_iters: d.max_iters,
            damping: d.damping,
        }
    }
}

impl GbpConfig {
    pub fn options(&self) -> GbpOptions {
        GbpOptions {
            max_iters: self.max_iters,
            damping: self.damping,
            ..Default::default()
        }
    }
}

/// Decoder selection, written as `[decoder]` with a `kind` key.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecoderConfig {
    Viterbi(ViterbiOptions),
    /// Enumerates every codeword; small codes only.
    Exhaustive,
    Trellis2d(Trellis2dOptions),
    Lbp(LbpOptions),
    ModifiedLbp(ModifiedLbpConfig),
    Gbp(GbpConfig),
}

impl DecoderConfig {
    pub fn name(&self) -> &'static str {
        match self {
            DecoderConfig::Viterbi(_) => "viterbi",
            DecoderConfig::Exhaustive => "exhaustive",
            DecoderConfig::Trellis2d(_) => "trellis2d",
            DecoderConfig::Lbp(_) => "lbp",
            DecoderConfig::ModifiedLbp(_) => "modified_lbp",
            DecoderConfig::Gbp(_) => "gbp",
        }
    }
}

fn default_batch() -> usize {
    1024
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentPlan {
    /// Catalog name (`c1`, `ex4`, ...) or a code-spec file path, relative
    /// to the plan file.
    pub code: String,
    #[serde(default)]
    pub seed: u64,
    pub snr_db: Vec<f64>,
    #[serde(default)]
    pub stop: StopRule,
    pub decoder: DecoderConfig,
    /// Trials decoded between two stop-rule checks.
    #[serde(default = "default_batch")]
    pub batch: usize,
    /// CSV destination, relative to the plan file.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

/// A plan with its code inlined; this is what gets hashed.
#[derive(Clone, Debug, Serialize)]
pub struct ResolvedPlan {
    pub plan: ExperimentPlan,
    pub spec_text: String,
    #[serde(skip)]
    pub spec: CodeSpec,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl ExperimentPlan {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plans serialize")
    }

    pub fn load(path: &Path) -> Result<ResolvedPlan, HarnessError> {
        let text = std::fs::read_to_string(path)?;
        ExperimentPlan::from_toml(&text)?.resolve(path.parent().unwrap_or(Path::new(".")))
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.snr_db.is_empty() || self.snr_db.iter().any(|s| !s.is_finite()) {
            return Err(HarnessError::Config(
                "snr_db must be a nonempty list of finite values".into(),
            ));
        }
        if self.stop.min_word_errors == 0 || self.stop.max_trials == 0 {
            return Err(HarnessError::Config(
                "stop rule needs min_word_errors >= 1 and max_trials >= 1".into(),
            ));
        }
        if self.batch == 0 {
            return Err(HarnessError::Config("batch must be positive".into()));
        }
        Ok(())
    }

    pub fn resolve(self, base: &Path) -> Result<ResolvedPlan, HarnessError> {
        self.validate()?;
        let spec = match catalog::get(&self.code) {
            Some(s) => s,
            None => {
                let path = base.join(&self.code);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| HarnessError::Config(format!("code {:?}: {e}", self.code)))?;
                text.parse::<CodeSpec>()?
            }
        };
        let output = self.output.as_ref().map(|o| base.join(o));
        Ok(ResolvedPlan {
            spec_text: spec.to_string(),
            spec,
            output,
            plan: self,
        })
    }
}

impl ResolvedPlan {
    /// For plans built in code, with no files involved.
    pub fn in_memory(plan: ExperimentPlan, spec: CodeSpec) -> Result<Self, HarnessError> {
        plan.validate()?;
        Ok(ResolvedPlan {
            spec_text: spec.to_string(),
            spec,
            output: None,
            plan,
        })
    }

    /// Batch size only schedules work and never changes results, so it is
    /// left out.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("plans serialize");
        if let Some(plan) = v.get_mut("plan").and_then(|p| p.as_object_mut()) {
            plan.remove("batch");
        }
        v.to_string()
    }

    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}
