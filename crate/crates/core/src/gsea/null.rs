//! Permutation null distribution, nominal p-values and pooled FDR.

use log::warn;
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enrichment::{enrichment_score, es_from_positions, hit_weight, member_indices};
use super::gmt::{FilteredSet, GeneSetCollection};
use crate::error::{Error, Result};
use crate::rng::{self, Domain};
use crate::screening::RankedList;

pub const DEFAULT_PERMUTATIONS: usize = 1000;
pub const DEFAULT_FDR_LEVELS: [f64; 2] = [0.05, 0.25];
pub const DEFAULT_PERMUTATION_SEED: u64 = 20_240_917;

/// Enrichment scores of every set under every permutation, permutation-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullMatrix {
    pub permutations: usize,
    pub sets: usize,
    pub values: Vec<f64>,
}

impl NullMatrix {
    pub fn get(&self, permutation: usize, set: usize) -> f64 {
        self.values[permutation * self.sets + set]
    }

    /// Null scores of one set across permutations.
    pub fn column(&self, set: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.permutations).map(move |k| self.get(k, set))
    }
}

/// Index form of a collection against one list.
pub(crate) fn index_sets(list: &RankedList, sets: &GeneSetCollection) -> Vec<Vec<usize>> {
    sets.sets.iter().map(|s| member_indices(list, &s.members)).collect()
}

/// Scores of each set when the gene labels are shuffled against the fixed
/// metrics. Permutation `k` draws from its own stream, so the matrix does
/// not depend on scheduling.
pub fn permutation_null(list: &RankedList, sets: &GeneSetCollection, k: usize, seed: u64, p: f64) -> Result<NullMatrix> {
    if k == 0 {
        return Err(Error::Precondition("at least one permutation is required".into()));
    }
    let n = list.len();
    let indexed = index_sets(list, sets);
    for (s, idx) in sets.sets.iter().zip(&indexed) {
        if idx.is_empty() {
            return Err(Error::EmptyIntersection(s.name.clone()));
        }
        if idx.len() == n {
            return Err(Error::DegenerateGeneSet(s.name.clone()));
        }
    }
    let weights: Vec<f64> = list.entries.iter().map(|e| hit_weight(e.metric, p)).collect();
    let rows: Vec<Vec<f64>> = (0..k)
        .into_par_iter()
        .map(|perm| {
            let mut rng = rng::stream(seed, Domain::Permutation, perm as u64);
            let mut position: Vec<usize> = (0..n).collect();
            position.shuffle(&mut rng);
            let mut pos = Vec::new();
            let mut w = Vec::new();
            indexed
                .iter()
                .map(|idx| {
                    pos.clear();
                    pos.extend(idx.iter().map(|&g| position[g]));
                    pos.sort_unstable();
                    w.clear();
                    w.extend(pos.iter().map(|&j| weights[j]));
                    if w.iter().sum::<f64>() > 0.0 {
                        es_from_positions(&pos, &w, n)
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    Ok(NullMatrix {
        permutations: k,
        sets: indexed.len(),
        values: rows.into_iter().flatten().collect(),
    })
}

/// Same-sign nominal p-value, counting the observed score as one of the
/// permutations: `(1 + #{ES_k at least as extreme}) / (1 + #{ES_k same sign})`.
pub fn nominal_p_value(observed: f64, null: impl Iterator<Item = f64>) -> f64 {
    let (mut extreme, mut same) = (0usize, 0usize);
    for v in null {
        if observed > 0.0 {
            if v > 0.0 {
                same += 1;
                extreme += usize::from(v >= observed);
            }
        } else if v <= 0.0 {
            same += 1;
            extreme += usize::from(v <= observed);
        }
    }
    (1 + extreme) as f64 / (1 + same) as f64
}

/// Pooled two-branch FDR over every set and permutation:
/// `#{ES_k(S_m) > ES} / #{ES_k(S_m) > 0}` for positive scores and
/// `#{ES_k(S_m) <= ES} / #{ES_k(S_m) <= 0}` otherwise. A branch without
/// null scores gives `q = 1`.
pub fn fdr(observed: &[f64], null: &NullMatrix) -> Vec<f64> {
    let mut positive: Vec<f64> = null.values.iter().copied().filter(|v| *v > 0.0).collect();
    let mut negative: Vec<f64> = null.values.iter().copied().filter(|v| *v <= 0.0).collect();
    positive.sort_by(f64::total_cmp);
    negative.sort_by(f64::total_cmp);
    observed
        .iter()
        .map(|&es| {
            if es > 0.0 {
                if positive.is_empty() {
                    warn!("no positive null enrichment scores; q set to 1");
                    return 1.0;
                }
                let above = positive.len() - positive.partition_point(|v| *v <= es);
                above as f64 / positive.len() as f64
            } else {
                if negative.is_empty() {
                    warn!("no non-positive null enrichment scores; q set to 1");
                    return 1.0;
                }
                negative.partition_point(|v| *v <= es) as f64 / negative.len() as f64
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GseaConfig {
    pub permutations: usize,
    pub seed: u64,
    /// Hit weight exponent; 0 is the classic scheme.
    pub weight_p: f64,
    pub fdr_levels: Vec<f64>,
    pub min_set_size: usize,
    pub max_set_size: usize,
}

impl Default for GseaConfig {
    fn default() -> Self {
        Self {
            permutations: DEFAULT_PERMUTATIONS,
            seed: DEFAULT_PERMUTATION_SEED,
            weight_p: 0.0,
            fdr_levels: DEFAULT_FDR_LEVELS.to_vec(),
            min_set_size: super::gmt::DEFAULT_MIN_SET_SIZE,
            max_set_size: super::gmt::DEFAULT_MAX_SET_SIZE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnrichmentResult {
    pub set_name: String,
    pub size: usize,
    pub es: f64,
    pub position: usize,
    pub p_value: f64,
    pub fdr_q: f64,
    /// `+1` or `-1`; zero scores count as negative, as in the FDR branches.
    pub direction: i8,
    /// `q < level` for each configured level, in order.
    pub enriched: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GseaReport {
    pub statistic: String,
    pub config: GseaConfig,
    pub list_length: usize,
    pub results: Vec<EnrichmentResult>,
    pub filtered_out: Vec<FilteredSet>,
}

impl GseaReport {
    pub fn enriched_count(&self, level: f64) -> usize {
        self.results.iter().filter(|r| r.fdr_q < level).count()
    }

    pub fn result(&self, set_name: &str) -> Option<&EnrichmentResult> {
        self.results.iter().find(|r| r.set_name == set_name)
    }

    /// Tab-separated report: one row per set.
    pub fn write_tsv<W: std::io::Write>(&self, mut out: W) -> Result<()> {
        write!(out, "set\tsize\tes\tposition\tp_value\tfdr_q")?;
        for l in &self.config.fdr_levels {
            write!(out, "\tenriched@{l}")?;
        }
        writeln!(out)?;
        for r in &self.results {
            write!(out, "{}\t{}\t{}\t{}\t{}\t{}", r.set_name, r.size, r.es, r.position, r.p_value, r.fdr_q)?;
            for e in &r.enriched {
                write!(out, "\t{e}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Enrichment, permutation null and FDR for every set of `sets` that passes
/// the size filter against `list`.
pub fn run_gsea(list: &RankedList, sets: &GeneSetCollection, cfg: &GseaConfig) -> Result<GseaReport> {
    let mut filtered = sets.filter(
        list.entries.iter().map(|e| e.variable_id.as_str()),
        cfg.min_set_size,
        cfg.max_set_size,
    );
    // a set covering the whole list has no misses
    let (kept, degenerate): (Vec<_>, Vec<_>) = filtered.sets.drain(..).partition(|s| s.members.len() < list.len());
    filtered.sets = kept;
    filtered.filtered_out.extend(degenerate.into_iter().map(|s| FilteredSet {
        size: s.members.len(),
        name: s.name,
        reason: "covers the whole ranked list".into(),
    }));
    if filtered.sets.is_empty() {
        return Err(Error::Empty(format!(
            "no gene set has between {} and {} members in the ranked list",
            cfg.min_set_size, cfg.max_set_size
        )));
    }
    let observed: Vec<_> = filtered
        .sets
        .par_iter()
        .map(|s| enrichment_score(list, &s.name, &s.members, cfg.weight_p))
        .collect::<Result<_>>()?;
    let null = permutation_null(list, &filtered, cfg.permutations, cfg.seed, cfg.weight_p)?;
    let scores: Vec<f64> = observed.iter().map(|e| e.es).collect();
    let q = fdr(&scores, &null);
    let results = filtered
        .sets
        .iter()
        .zip(&observed)
        .enumerate()
        .map(|(m, (s, e))| EnrichmentResult {
            set_name: s.name.clone(),
            size: s.members.len(),
            es: e.es,
            position: e.position,
            p_value: nominal_p_value(e.es, null.column(m)),
            fdr_q: q[m],
            direction: if e.es > 0.0 { 1 } else { -1 },
            enriched: cfg.fdr_levels.iter().map(|&l| q[m] < l).collect(),
        })
        .collect();
    Ok(GseaReport {
        statistic: list.statistic.clone(),
        config: cfg.clone(),
        list_length: list.len(),
        results,
        filtered_out: filtered.filtered_out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn null_of(values: Vec<f64>) -> NullMatrix {
        NullMatrix {
            permutations: values.len(),
            sets: 1,
            values,
        }
    }

    #[test]
    fn fdr_branches() {
        let null = null_of(vec![-0.5, -0.4, -0.3, -0.2, 0.1, 0.2, 0.3, 0.4]);
        let q = fdr(&[0.9, -0.9, 0.2, -0.35, 0.0], &null);
        assert_eq!(q[0], 0.0);
        assert_eq!(q[1], 0.0);
        assert_eq!(q[2], 0.5);
        assert_eq!(q[3], 0.5);
        assert_eq!(q[4], 1.0);
        // no positive nulls
        assert_eq!(fdr(&[0.3], &null_of(vec![-0.1, -0.2])), vec![1.0]);
    }

    #[test]
    fn fdr_is_monotone() {
        let null = null_of((0..200).map(|i| (i as f64 - 100.0) / 100.0).collect());
        let obs: Vec<f64> = (0..50).map(|i| i as f64 / 50.0).collect();
        let q = fdr(&obs, &null);
        assert!(q.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn nominal_p_counts_observed() {
        let null = [0.1, 0.2, 0.3, -0.1];
        assert_eq!(nominal_p_value(0.25, null.iter().copied()), 2.0 / 4.0);
        assert_eq!(nominal_p_value(-0.5, null.iter().copied()), 1.0 / 2.0);
    }
}
