//! Fixtures shared by the benchmarks.

use gclm_core::distributions::{sample_distribution, StandardNormal};
use gclm_core::gsea::{planted_benchmark, GeneSetCollection, PlantedConfig};
use gclm_core::screening::{compute_summaries, rank_by, DataMatrix};
use gclm_core::{RankedList, Sample, Statistic, SummaryConfig};

/// A Gaussian sample of size `n`.
pub fn gaussian(n: usize, seed: u64) -> Sample {
    sample_distribution(&StandardNormal, n, seed).expect("n > 0")
}

/// Default planted benchmark with its L-skewness ranking.
pub fn planted(seed: u64) -> (DataMatrix, GeneSetCollection, RankedList) {
    let (m, sets) = planted_benchmark(&PlantedConfig::default(), seed).expect("default config is valid");
    let summaries = compute_summaries(&m, &SummaryConfig::default()).expect("summaries");
    let list = rank_by(&summaries, Statistic::LSkewness);
    (m, sets, list)
}
