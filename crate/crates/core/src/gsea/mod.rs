//! Gene set enrichment analysis over ranked lists.

mod compare;
mod enrichment;
mod fisher;
mod gmt;
mod null;
mod synthetic;

pub use compare::{compare_estimators, ComparisonTable, EstimatorCount, EstimatorFailure, PairwiseComparison};
pub use enrichment::{enrichment_score, Enrichment};
pub use fisher::{fisher_exact_2x2, fisher_exact_comparison, fisher_point_probability};
pub use gmt::{
    load_gmt, load_gmt_path, FilteredSet, GeneSet, GeneSetCollection, DEFAULT_MAX_SET_SIZE, DEFAULT_MIN_SET_SIZE,
};
pub use null::{
    fdr, nominal_p_value, permutation_null, run_gsea, EnrichmentResult, GseaConfig, GseaReport, NullMatrix,
    DEFAULT_FDR_LEVELS, DEFAULT_PERMUTATIONS, DEFAULT_PERMUTATION_SEED,
};
pub use synthetic::{planted_benchmark, PlantedConfig, PLANTED_SET};
