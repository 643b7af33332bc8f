//! Side-by-side enrichment performance of several statistics.

use serde::{Deserialize, Serialize};

use super::fisher::fisher_exact_2x2;
use super::gmt::GeneSetCollection;
use super::null::{run_gsea, GseaConfig, GseaReport};
use crate::error::{Error, Result};
use crate::moments::{Statistic, SummaryConfig};
use crate::screening::{compute_summaries, rank_by, DataMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorCount {
    pub statistic: String,
    pub enriched: usize,
    pub tested: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseComparison {
    pub a: String,
    pub b: String,
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorFailure {
    pub statistic: String,
    pub error: String,
}

/// Enriched counts per statistic, best first, with Fisher p-values for each
/// unordered pair in that order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub fdr_level: f64,
    pub estimators: Vec<EstimatorCount>,
    pub pairwise: Vec<PairwiseComparison>,
    pub failures: Vec<EstimatorFailure>,
}

impl ComparisonTable {
    /// Builds the table from per-statistic reports.
    pub fn from_reports(reports: &[GseaReport], fdr_level: f64) -> Self {
        let mut estimators: Vec<EstimatorCount> = reports
            .iter()
            .map(|r| EstimatorCount {
                statistic: r.statistic.clone(),
                enriched: r.enriched_count(fdr_level),
                tested: r.results.len(),
            })
            .collect();
        // stable: ties keep request order
        estimators.sort_by_key(|e| std::cmp::Reverse(e.enriched));
        let mut pairwise = Vec::new();
        for (i, a) in estimators.iter().enumerate() {
            for b in &estimators[i + 1..] {
                let p_value = fisher_exact_2x2(
                    a.enriched as u64,
                    (a.tested - a.enriched) as u64,
                    b.enriched as u64,
                    (b.tested - b.enriched) as u64,
                );
                pairwise.push(PairwiseComparison {
                    a: a.statistic.clone(),
                    b: b.statistic.clone(),
                    p_value,
                });
            }
        }
        Self {
            fdr_level,
            estimators,
            pairwise,
            failures: Vec::new(),
        }
    }

    pub fn p_value(&self, a: &str, b: &str) -> Option<f64> {
        self.pairwise
            .iter()
            .find(|p| (p.a == a && p.b == b) || (p.a == b && p.b == a))
            .map(|p| p.p_value)
    }
}

/// Full comparison: one set of summaries, a ranked list and GSEA run per
/// statistic, all sharing `gsea.seed` so every statistic sees the same
/// permutations. Statistics whose run fails are listed in `failures`.
pub fn compare_estimators(
    matrix: &DataMatrix,
    sets: &GeneSetCollection,
    statistics: &[Statistic],
    fdr_level: f64,
    summary: &SummaryConfig,
    gsea: &GseaConfig,
) -> Result<(ComparisonTable, Vec<GseaReport>)> {
    if statistics.len() < 2 {
        return Err(Error::Precondition("a comparison needs at least two statistics".into()));
    }
    let summaries = compute_summaries(matrix, summary)?;
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for &s in statistics {
        match run_gsea(&rank_by(&summaries, s), sets, gsea) {
            Ok(r) => reports.push(r),
            Err(e) => failures.push(EstimatorFailure {
                statistic: s.id().into(),
                error: e.to_string(),
            }),
        }
    }
    let mut table = ComparisonTable::from_reports(&reports, fdr_level);
    table.failures = failures;
    Ok((table, reports))
}
