//! Planted-signal benchmark: a matrix where a known group of variables is
//! skewed by a minority component while a control group is skewed only by
//! isolated outliers.

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::gmt::{GeneSet, GeneSetCollection};
use crate::error::Result;
use crate::rng::{self, Domain};
use crate::screening::DataMatrix;

pub const PLANTED_SET: &str = "PLANTED";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedConfig {
    pub variables: usize,
    pub samples: usize,
    pub planted: usize,
    /// Weight of the shifted component in planted variables.
    pub mixture_weight: f64,
    pub mixture_shift: f64,
    /// Variables with isolated outliers.
    pub outlier_controls: usize,
    pub outliers_per_control: usize,
    pub outlier_shift: f64,
    /// Random sets of the same size as the planted set.
    pub decoy_sets: usize,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        Self {
            variables: 500,
            samples: 300,
            planted: 50,
            mixture_weight: 0.15,
            mixture_shift: -3.0,
            outlier_controls: 50,
            outliers_per_control: 2,
            outlier_shift: -8.0,
            decoy_sets: 19,
        }
    }
}

/// Variables `0..planted` are the mixtures, the next `outlier_controls` the
/// contaminated Gaussian controls, the rest plain N(0, 1). Ids are `v0000`,
/// `v0001`, ... .
pub fn planted_benchmark(cfg: &PlantedConfig, seed: u64) -> Result<(DataMatrix, GeneSetCollection)> {
    let ids: Vec<String> = (0..cfg.variables).map(|i| format!("v{i:04}")).collect();
    let samples: Vec<String> = (0..cfg.samples).map(|j| format!("s{j:04}")).collect();
    let rows = (0..cfg.variables)
        .map(|i| {
            let mut r = rng::stream(seed, Domain::Synthetic, i as u64);
            let mut row: Vec<f64> = (0..cfg.samples).map(|_| rng::standard_normal(&mut r)).collect();
            if i < cfg.planted {
                for v in row.iter_mut() {
                    if rng::open_unit(&mut r) < cfg.mixture_weight {
                        *v += cfg.mixture_shift;
                    }
                }
            } else if i < cfg.planted + cfg.outlier_controls {
                for j in sample(&mut r, cfg.samples, cfg.outliers_per_control) {
                    row[j] += cfg.outlier_shift;
                }
            }
            row
        })
        .collect();
    let matrix = DataMatrix::from_rows(ids.clone(), samples, rows)?;

    let mut sets = vec![GeneSet {
        name: PLANTED_SET.into(),
        description: "mixture variables".into(),
        members: ids[..cfg.planted].to_vec(),
    }];
    let mut r = rng::stream(seed, Domain::Synthetic, u64::MAX);
    for d in 0..cfg.decoy_sets {
        let mut members: Vec<String> = sample(&mut r, cfg.variables, cfg.planted)
            .into_iter()
            .map(|i| ids[i].clone())
            .collect();
        members.sort();
        sets.push(GeneSet {
            name: format!("DECOY_{d:02}"),
            description: "random variables".into(),
            members,
        });
    }
    Ok((matrix, GeneSetCollection::new(sets)?))
}
