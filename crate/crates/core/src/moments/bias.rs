//! Monte-Carlo calibration of sample HL-moments at the standard Gaussian.
//!
//! For orders `r >= 3` the calibrated quantity is the Gaussian mean of the
//! ratio `η̂_r / η̂_2`, which is what gets subtracted from a sample ratio; this
//! keeps the corrected ratio invariant under affine maps of the data. Orders
//! 1 and 2 report the plain Gaussian mean of `η̂_r`. Replicates come in
//! antithetic pairs `(X, -X)`, so odd orders calibrate to zero.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, LazyLock, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hl::{HlEstimator, HlWeights, MAX_HL_ORDER};
use crate::cache;
use crate::error::{Error, Result};
use crate::rng::{self, Domain};

pub const DEFAULT_BIAS_REPLICATES: usize = 10_000;
pub const DEFAULT_BIAS_SEED: u64 = 20_240_917;
pub const MIN_BIAS_REPLICATES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiasKey {
    pub estimator: HlEstimator,
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
}

impl BiasKey {
    fn cache_key(&self) -> String {
        format!("{}-n{}-reps{}-seed{}", self.estimator, self.n, self.replicates, self.seed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HlBiasTable {
    pub key: BiasKey,
    /// `bias[r - 1]` for `r = 1..=MAX_HL_ORDER`.
    pub bias: Vec<f64>,
}

impl HlBiasTable {
    pub fn compute(key: BiasKey) -> Result<Self> {
        if key.replicates < MIN_BIAS_REPLICATES {
            return Err(Error::Precondition(format!(
                "bias calibration needs at least {MIN_BIAS_REPLICATES} replicates, got {}",
                key.replicates
            )));
        }
        let weights = HlWeights::get(key.estimator, key.n)?;
        let n = key.n;
        let pairs = key.replicates.div_ceil(2);
        let per_pair: Vec<[f64; MAX_HL_ORDER]> = (0..pairs)
            .into_par_iter()
            .map(|p| {
                let mut rng = rng::stream(key.seed, Domain::HlBias, p as u64);
                let mut x: Vec<f64> = (0..n).map(|_| rng::standard_normal(&mut rng)).collect();
                x.sort_by(f64::total_cmp);
                let mut acc = [0.0; MAX_HL_ORDER];
                let members = if 2 * p + 1 < key.replicates { 2 } else { 1 };
                for m in 0..members {
                    if m == 1 {
                        x.reverse();
                        x.iter_mut().for_each(|v| *v = -*v);
                    }
                    let eta = weights.apply(&x, MAX_HL_ORDER);
                    for r in 1..=MAX_HL_ORDER {
                        acc[r - 1] += if r <= 2 { eta[r - 1] } else { eta[r - 1] / eta[1] };
                    }
                }
                acc
            })
            .collect();
        let mut bias = vec![0.0; MAX_HL_ORDER];
        for acc in &per_pair {
            for (b, a) in bias.iter_mut().zip(acc) {
                *b += a;
            }
        }
        bias.iter_mut().for_each(|b| *b /= key.replicates as f64);
        Ok(Self { key, bias })
    }

    /// Shared table, computed once per key and persisted in the cache
    /// directory named by the environment when set.
    pub fn get(key: BiasKey) -> Result<Arc<Self>> {
        let dir = cache::cache_dir_from_env();
        Self::get_with_cache_dir(key, dir.as_deref())
    }

    pub fn get_with_cache_dir(key: BiasKey, dir: Option<&Path>) -> Result<Arc<Self>> {
        static TABLES: LazyLock<Mutex<HashMap<BiasKey, Arc<HlBiasTable>>>> =
            LazyLock::new(|| Mutex::new(HashMap::new()));
        if let Some(t) = TABLES.lock().expect("bias cache poisoned").get(&key) {
            return Ok(Arc::clone(t));
        }
        let table: HlBiasTable = cache::load_or_compute(dir, "hl-bias", &key.cache_key(), || Self::compute(key))?;
        if table.key != key || table.bias.len() != MAX_HL_ORDER {
            return Err(Error::Cache {
                path: dir.map(|d| cache::entry_path(d, "hl-bias", &key.cache_key())).unwrap_or_default(),
                message: "bias table does not match its key".into(),
            });
        }
        let mut map = TABLES.lock().expect("bias cache poisoned");
        Ok(Arc::clone(map.entry(key).or_insert_with(|| Arc::new(table))))
    }

    pub fn bias(&self, r: usize) -> f64 {
        self.bias[r - 1]
    }
}

/// Gaussian Monte-Carlo calibration value for order `r` of the default
/// (expected-order-statistic) estimator; see the module notes for its meaning.
pub fn hl_bias_correction(n: usize, r: usize, replicates: usize, seed: u64) -> Result<f64> {
    hl_bias_correction_with(HlEstimator::Sample, n, r, replicates, seed)
}

pub fn hl_bias_correction_with(
    estimator: HlEstimator,
    n: usize,
    r: usize,
    replicates: usize,
    seed: u64,
) -> Result<f64> {
    if r == 0 || r > MAX_HL_ORDER {
        return Err(Error::Precondition(format!(
            "HL-moment order must be in 1..={MAX_HL_ORDER}, got {r}"
        )));
    }
    let key = BiasKey {
        estimator,
        n,
        replicates,
        seed,
    };
    Ok(HlBiasTable::get(key)?.bias(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_orders_vanish_and_first_is_zero_mean() {
        let b3 = hl_bias_correction(20, 3, 2000, 5).unwrap();
        let b1 = hl_bias_correction(20, 1, 2000, 5).unwrap();
        assert!(b3.abs() < 1e-14 && b1.abs() < 1e-14);
    }

    #[test]
    fn too_few_replicates() {
        assert!(hl_bias_correction(20, 4, 999, 5).is_err());
    }

    #[test]
    fn deterministic_and_cached_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let key = BiasKey {
            estimator: HlEstimator::Plugin,
            n: 17,
            replicates: 1001,
            seed: 3,
        };
        let a = HlBiasTable::get_with_cache_dir(key, Some(dir.path())).unwrap();
        let b = HlBiasTable::compute(key).unwrap();
        assert_eq!(a.bias, b.bias);
        assert!(cache::entry_path(dir.path(), "hl-bias", &key.cache_key()).exists());
        // an odd replicate count leaves one unpaired draw
        assert!(a.bias(4) < 0.0);
    }
}
