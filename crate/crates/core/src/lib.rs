//! Gaussian-centred L-moment statistics: L-, HL- and RL-moments with
//! conventional and quantile baselines, influence-function studies over
//! Tukey's g-and-h family, high-dimensional screening and gene set
//! enrichment analysis.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cache;
pub mod distributions;
pub mod error;
pub mod gaussian;
pub mod gsea;
pub mod moments;
pub mod polynomials;
pub mod quadrature;
pub mod rng;
pub mod robustness;
pub mod screening;

pub use distributions::{QuantileDistribution, TukeyGH};
pub use error::{Error, Result};
pub use gsea::{GeneSetCollection, GseaConfig, GseaReport};
pub use moments::{HlEstimator, Sample, Statistic, SummaryConfig, SummaryStatistics};
pub use screening::{DataMatrix, Direction, RankedList};
