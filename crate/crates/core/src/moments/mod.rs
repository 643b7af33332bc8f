//! Sample and population measures of location, scale, skewness and kurtosis.

mod bias;
mod conventional;
mod hl;
mod lmoments;
pub mod quantile;
mod rl;
mod sample;
mod statistic;
mod summary;
pub mod theoretical;

pub use bias::{
    hl_bias_correction, hl_bias_correction_with, BiasKey, HlBiasTable, DEFAULT_BIAS_REPLICATES,
    DEFAULT_BIAS_SEED, MIN_BIAS_REPLICATES,
};
pub use conventional::{conventional_sample_skewness_kurtosis, sample_mean, sample_sd};
pub use hl::{
    sample_hl_moments, sample_hl_moments_bh, sample_hl_moments_plugin, sample_hl_moments_with,
    HlEstimator, HlWeights, MAX_HL_ORDER,
};
pub use lmoments::{sample_l_moment_ratios, sample_l_moments, MAX_L_ORDER};
pub use quantile::{bowley_skewness, ruppert_kurtosis, sample_quantile};
pub use rl::{sample_rl_moments, RlMoments};
pub use sample::Sample;
pub use statistic::{MeasureKind, Statistic};
pub use summary::{
    compute_summary, compute_summary_with, sample_hl_moment_ratios, sample_hl_moment_ratios_with,
    SummaryConfig, SummaryStatistics, MIN_SUMMARY_N,
};
pub use theoretical::{theoretical_moment, theoretical_ratios, MomentFamily};
