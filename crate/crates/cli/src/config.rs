//! Config file, flag merging and the resolved-config artifact.

use std::path::{Path, PathBuf};

use anyhow::Context;
use gclm_core::{Direction, HlEstimator};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_K: usize = 7;
pub const DEFAULT_H: f64 = 0.2;

/// Keys accepted in a `--config` TOML file. Flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub input: Option<PathBuf>,
    pub gmt: Option<PathBuf>,
    pub ranked: Option<PathBuf>,
    pub labels: Option<PathBuf>,
    pub stat: Option<String>,
    pub stats: Option<Vec<String>>,
    pub hl_estimator: Option<String>,
    pub bias_replicates: Option<usize>,
    pub bias_seed: Option<u64>,
    pub permutations: Option<usize>,
    pub fdr_levels: Option<Vec<f64>>,
    pub weight_p: Option<f64>,
    pub min_set_size: Option<usize>,
    pub max_set_size: Option<usize>,
    pub top_profiles: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub k: Option<usize>,
    pub direction: Option<String>,
    pub out_dir: Option<PathBuf>,
    pub delimiter: Option<String>,
    pub h: Option<Vec<f64>>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub x_points: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))
            .map_err(CliError::Runtime)?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

/// Everything that determines a run's outputs. Thread count and output
/// directory are left out: they never change results.
#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    pub subcommand: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gmt: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranked: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<PathBuf>,
    pub delimiter: String,
    pub statistics: Vec<String>,
    pub hl_estimator: HlEstimator,
    pub bias_replicates: usize,
    pub bias_seed: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub screen: Option<ScreenSettings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gsea: Option<GseaSettings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub robustness: Option<RobustnessSettings>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScreenSettings {
    pub k: usize,
    pub direction: Direction,
}

#[derive(Debug, Clone, Serialize)]
pub struct GseaSettings {
    pub permutations: usize,
    pub fdr_levels: Vec<f64>,
    pub weight_p: f64,
    pub min_set_size: usize,
    pub max_set_size: usize,
    pub top_profiles: usize,
    pub compare: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RobustnessSettings {
    pub h: Vec<f64>,
    pub x_min: f64,
    pub x_max: f64,
    pub x_points: usize,
}

impl Resolved {
    /// Header lines printed to stderr before a run.
    pub fn header(&self) -> Vec<String> {
        let mut lines = vec![
            format!("gclm {} {}", self.version, self.subcommand),
            format!("statistics: {}", self.statistics.join(",")),
            format!(
                "hl estimator: {} (bias calibration: {} Gaussian replicates, seed {})",
                self.hl_estimator, self.bias_replicates, self.bias_seed
            ),
            format!("seed: {}", self.seed),
        ];
        if let Some(s) = &self.screen {
            lines.push(format!("selection: k = {} ({})", s.k, s.direction));
        }
        if let Some(g) = &self.gsea {
            lines.push(format!(
                "gsea: K = {} permutations, FDR levels {:?}, weight p = {}{}, set size [{}, {}]",
                g.permutations,
                g.fdr_levels,
                g.weight_p,
                if g.weight_p == 0.0 { " (classic scoring)" } else { "" },
                g.min_set_size,
                g.max_set_size
            ));
        }
        if let Some(r) = &self.robustness {
            lines.push(format!(
                "robustness: h = {:?}, {} log-spaced points on [{}, {}]",
                r.h, r.x_points, r.x_min, r.x_max
            ));
        }
        lines
    }

    pub fn write(&self, dir: &Path) -> anyhow::Result<()> {
        let text = toml::to_string(self).context("serialising resolved config")?;
        std::fs::write(dir.join("resolved_config.toml"), text)?;
        Ok(())
    }
}

pub fn parse_delimiter(s: &str) -> Result<u8, CliError> {
    match s {
        "tab" | "\\t" | "\t" => Ok(b'\t'),
        "comma" | "," => Ok(b','),
        "space" | " " => Ok(b' '),
        "semicolon" | ";" => Ok(b';'),
        other if other.len() == 1 && other.is_ascii() => Ok(other.as_bytes()[0]),
        other => Err(CliError::Usage(format!("unsupported delimiter `{other}`"))),
    }
}

pub fn delimiter_name(d: u8) -> String {
    match d {
        b'\t' => "tab".into(),
        b',' => "comma".into(),
        other => (other as char).to_string(),
    }
}

pub fn parse_estimator(s: &str) -> Result<HlEstimator, CliError> {
    s.parse().map_err(|e: gclm_core::Error| CliError::Usage(e.to_string()))
}

pub fn parse_direction(s: &str) -> Result<Direction, CliError> {
    s.parse().map_err(|e: gclm_core::Error| CliError::Usage(e.to_string()))
}
