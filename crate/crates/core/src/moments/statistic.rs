//! Identifiers of the per-variable measures.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::summary::SummaryStatistics;
use super::theoretical::{
    theoretical_bowley, theoretical_conventional, theoretical_ratios, theoretical_ruppert,
    theoretical_l_moments, theoretical_hl_moments, MomentFamily,
};
use super::quantile::{BOWLEY_P, RUPPERT_P1, RUPPERT_P2};
use crate::distributions::QuantileDistribution;
use crate::error::{Error, Result};
use crate::gaussian::RlConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    Mean,
    Sd,
    Skewness,
    Kurtosis,
    L2,
    LSkewness,
    LKurtosis,
    Hl2,
    HlSkewness,
    HlKurtosis,
    Rl2,
    RlSkewness,
    RlKurtosis,
    Bowley,
    Ruppert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureKind {
    Location,
    Scale,
    Skewness,
    Kurtosis,
}

impl Statistic {
    pub const ALL: [Statistic; 15] = [
        Statistic::Mean,
        Statistic::Sd,
        Statistic::Skewness,
        Statistic::Kurtosis,
        Statistic::L2,
        Statistic::LSkewness,
        Statistic::LKurtosis,
        Statistic::Hl2,
        Statistic::HlSkewness,
        Statistic::HlKurtosis,
        Statistic::Rl2,
        Statistic::RlSkewness,
        Statistic::RlKurtosis,
        Statistic::Bowley,
        Statistic::Ruppert,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Statistic::Mean => "mean",
            Statistic::Sd => "sd",
            Statistic::Skewness => "skewness",
            Statistic::Kurtosis => "kurtosis",
            Statistic::L2 => "l2",
            Statistic::LSkewness => "l_skewness",
            Statistic::LKurtosis => "l_kurtosis",
            Statistic::Hl2 => "hl2",
            Statistic::HlSkewness => "hl_skewness",
            Statistic::HlKurtosis => "hl_kurtosis",
            Statistic::Rl2 => "rl2",
            Statistic::RlSkewness => "rl_skewness",
            Statistic::RlKurtosis => "rl_kurtosis",
            Statistic::Bowley => "bowley",
            Statistic::Ruppert => "ruppert",
        }
    }

    pub fn kind(&self) -> MeasureKind {
        match self {
            Statistic::Mean => MeasureKind::Location,
            Statistic::Sd | Statistic::L2 | Statistic::Hl2 | Statistic::Rl2 => MeasureKind::Scale,
            Statistic::Skewness
            | Statistic::LSkewness
            | Statistic::HlSkewness
            | Statistic::RlSkewness
            | Statistic::Bowley => MeasureKind::Skewness,
            Statistic::Kurtosis
            | Statistic::LKurtosis
            | Statistic::HlKurtosis
            | Statistic::RlKurtosis
            | Statistic::Ruppert => MeasureKind::Kurtosis,
        }
    }

    pub fn available() -> String {
        Self::ALL.iter().map(|s| s.id()).collect::<Vec<_>>().join(", ")
    }

    /// Reads this measure from a computed summary.
    pub fn value(&self, s: &SummaryStatistics) -> f64 {
        match self {
            Statistic::Mean => s.mean,
            Statistic::Sd => s.sd,
            Statistic::Skewness => s.conventional_skewness,
            Statistic::Kurtosis => s.conventional_kurtosis,
            Statistic::L2 => s.l2,
            Statistic::LSkewness => s.l_skewness,
            Statistic::LKurtosis => s.l_kurtosis,
            Statistic::Hl2 => s.hl2,
            Statistic::HlSkewness => s.hl_skewness,
            Statistic::HlKurtosis => s.hl_kurtosis,
            Statistic::Rl2 => s.rl2,
            Statistic::RlSkewness => s.rl_skewness,
            Statistic::RlKurtosis => s.rl_kurtosis,
            Statistic::Bowley => s.bowley_skewness,
            Statistic::Ruppert => s.ruppert_kurtosis,
        }
    }

    /// Population value of the measure. HL ratios are the plain ratios
    /// `η_r / η_2`; the Monte-Carlo calibration only concerns samples.
    pub fn theoretical(&self, dist: &dyn QuantileDistribution) -> Result<f64> {
        let rl = RlConstants::gaussian();
        Ok(match self {
            Statistic::Mean => theoretical_l_moments(dist)?[0],
            Statistic::Sd => theoretical_conventional(dist)?.sd,
            Statistic::Skewness => theoretical_conventional(dist)?.skewness,
            Statistic::Kurtosis => theoretical_conventional(dist)?.kurtosis,
            Statistic::L2 => theoretical_l_moments(dist)?[1],
            Statistic::LSkewness => theoretical_ratios(dist, MomentFamily::L)?.0,
            Statistic::LKurtosis => theoretical_ratios(dist, MomentFamily::L)?.1,
            Statistic::Hl2 => theoretical_hl_moments(dist)?[1],
            Statistic::HlSkewness => theoretical_ratios(dist, MomentFamily::HL)?.0,
            Statistic::HlKurtosis => theoretical_ratios(dist, MomentFamily::HL)?.1,
            Statistic::Rl2 => rl.scale_factor() * theoretical_l_moments(dist)?[1],
            Statistic::RlSkewness => rl.skewness_factor() * theoretical_ratios(dist, MomentFamily::L)?.0,
            Statistic::RlKurtosis => rl.rl_kurtosis(theoretical_ratios(dist, MomentFamily::L)?.1),
            Statistic::Bowley => theoretical_bowley(dist, BOWLEY_P)?,
            Statistic::Ruppert => theoretical_ruppert(dist, RUPPERT_P1, RUPPERT_P2)?,
        })
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Statistic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|st| st.id() == s)
            .ok_or_else(|| Error::UnknownStatistic {
                name: s.to_string(),
                available: Self::available(),
            })
    }
}
