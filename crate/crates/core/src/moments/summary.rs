//! The full per-variable summary.

use serde::{Deserialize, Serialize};

use super::bias::{HlBiasTable, BiasKey, DEFAULT_BIAS_REPLICATES, DEFAULT_BIAS_SEED};
use super::conventional::{conventional_sample_skewness_kurtosis, sample_mean, sample_sd};
use super::hl::{HlEstimator, HlWeights};
use super::lmoments::sample_l_moments;
use super::quantile::{bowley_skewness, ruppert_kurtosis, BOWLEY_P, RUPPERT_P1, RUPPERT_P2};
use super::rl::RlMoments;
use super::Sample;
use crate::error::{Error, Result};
use crate::gaussian::RlConstants;

/// Smallest sample the summary accepts.
pub const MIN_SUMMARY_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStatistics {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
    pub conventional_skewness: f64,
    pub conventional_kurtosis: f64,
    pub l2: f64,
    pub l_skewness: f64,
    pub l_kurtosis: f64,
    pub hl2: f64,
    pub hl_skewness: f64,
    pub hl_kurtosis: f64,
    pub rl2: f64,
    pub rl_skewness: f64,
    pub rl_kurtosis: f64,
    pub bowley_skewness: f64,
    pub ruppert_kurtosis: f64,
}

/// Choices that affect the HL columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SummaryConfig {
    pub hl_estimator: HlEstimator,
    pub bias_replicates: usize,
    pub bias_seed: u64,
}

impl Default for SummaryConfig {
    fn default() -> Self {
        Self {
            hl_estimator: HlEstimator::Sample,
            bias_replicates: DEFAULT_BIAS_REPLICATES,
            bias_seed: DEFAULT_BIAS_SEED,
        }
    }
}

impl SummaryConfig {
    fn bias_key(&self, n: usize) -> BiasKey {
        BiasKey {
            estimator: self.hl_estimator,
            n,
            replicates: self.bias_replicates,
            seed: self.bias_seed,
        }
    }

    /// Builds every shared table needed for samples of size `n`. Calling this
    /// before a parallel fan-out keeps table construction out of the workers.
    pub fn prepare(&self, n: usize) -> Result<()> {
        if n < MIN_SUMMARY_N {
            return Ok(());
        }
        HlWeights::get(self.hl_estimator, n)?;
        HlBiasTable::get(self.bias_key(n))?;
        RlConstants::gaussian();
        Ok(())
    }
}

pub fn compute_summary(s: &Sample) -> Result<SummaryStatistics> {
    compute_summary_with(s, &SummaryConfig::default())
}

pub fn compute_summary_with(s: &Sample, cfg: &SummaryConfig) -> Result<SummaryStatistics> {
    s.require(MIN_SUMMARY_N, "the summary statistics")?;
    s.require_spread()?;
    let n = s.len();
    let (g1, g2) = conventional_sample_skewness_kurtosis(s)?;
    let l = sample_l_moments(s, 4)?;
    if !(l[1] > 0.0) {
        return Err(Error::ZeroScale("sample L-scale"));
    }
    let eta = HlWeights::get(cfg.hl_estimator, n)?.apply(s.sorted(), 4);
    if !(eta[1] > 0.0) {
        return Err(Error::ZeroScale("sample HL-scale"));
    }
    let bias = HlBiasTable::get(cfg.bias_key(n))?;
    let rl = RlMoments::from_l_moments(&l, RlConstants::gaussian())?;
    Ok(SummaryStatistics {
        n,
        mean: sample_mean(s),
        sd: sample_sd(s)?,
        conventional_skewness: g1,
        conventional_kurtosis: g2,
        l2: l[1],
        l_skewness: l[2] / l[1],
        l_kurtosis: l[3] / l[1],
        hl2: eta[1],
        hl_skewness: eta[2] / eta[1] - bias.bias(3),
        hl_kurtosis: eta[3] / eta[1] - bias.bias(4),
        rl2: rl.rho2,
        rl_skewness: rl.skewness,
        rl_kurtosis: rl.kurtosis,
        bowley_skewness: bowley_skewness(s, BOWLEY_P)?,
        ruppert_kurtosis: ruppert_kurtosis(s, RUPPERT_P1, RUPPERT_P2)?,
    })
}

/// `(η̂*_3, η̂*_4)` after subtracting the Gaussian calibration.
pub fn sample_hl_moment_ratios(s: &Sample) -> Result<(f64, f64)> {
    sample_hl_moment_ratios_with(s, &SummaryConfig::default())
}

pub fn sample_hl_moment_ratios_with(s: &Sample, cfg: &SummaryConfig) -> Result<(f64, f64)> {
    s.require(2, "sample HL-moment ratios")?;
    let eta = HlWeights::get(cfg.hl_estimator, s.len())?.apply(s.sorted(), 4);
    if !(eta[1] > 0.0) {
        return Err(Error::ZeroScale("sample HL-scale"));
    }
    let bias = HlBiasTable::get(cfg.bias_key(s.len()))?;
    Ok((eta[2] / eta[1] - bias.bias(3), eta[3] / eta[1] - bias.bias(4)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{sample_distribution, StandardNormal};

    #[test]
    fn constant_vector_is_degenerate() {
        let err = compute_summary(&Sample::new(vec![4.0; 20]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::DegenerateSample(_)));
        assert!(compute_summary(&Sample::new(vec![1.0, 2.0, 3.0]).unwrap()).is_err());
    }

    #[test]
    fn deterministic_and_equivariant() {
        let s = sample_distribution(&StandardNormal, 60, 4).unwrap();
        let a = compute_summary(&s).unwrap();
        let b = compute_summary(&s).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let t = compute_summary(&s.affine(-2.0, 3.0).unwrap()).unwrap();
        for (x, y) in [
            (a.l_skewness, -t.l_skewness),
            (a.hl_skewness, -t.hl_skewness),
            (a.rl_skewness, -t.rl_skewness),
            (a.bowley_skewness, -t.bowley_skewness),
            (a.l_kurtosis, t.l_kurtosis),
            (a.hl_kurtosis, t.hl_kurtosis),
            (a.rl_kurtosis, t.rl_kurtosis),
            (a.ruppert_kurtosis, t.ruppert_kurtosis),
        ] {
            assert!((x - y).abs() < 1e-10, "{x} vs {y}");
        }
    }
}
