//! Sample Hermite L-moments: `η̂_r = Σ_i c_{i,r} X_{i:n}` for three choices
//! of the coefficients.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, Mutex};

use serde::{Deserialize, Serialize};

use super::Sample;
use crate::error::{Error, Result};
use crate::gaussian::{quantile_unchecked, std_normal_pdf, OrderStatisticTable, DEFAULT_MAX_POWER};
use crate::polynomials::eval_hermite;

/// Largest supported HL-moment order.
pub const MAX_HL_ORDER: usize = DEFAULT_MAX_POWER + 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HlEstimator {
    /// `n⁻¹ E(H_{r-1}(Z_{i:n}))`.
    #[default]
    Sample,
    /// Brown–Hettmansperger: `∫_{(i-1)/n}^{i/n} H_{r-1}(Φ⁻¹(u)) du`.
    Bh,
    /// `n⁻¹ H_{r-1}(Φ⁻¹(i/(n+1)))`.
    Plugin,
}

impl HlEstimator {
    pub const ALL: [HlEstimator; 3] = [HlEstimator::Sample, HlEstimator::Bh, HlEstimator::Plugin];

    pub fn as_str(&self) -> &'static str {
        match self {
            HlEstimator::Sample => "sample",
            HlEstimator::Bh => "bh",
            HlEstimator::Plugin => "plugin",
        }
    }
}

impl fmt::Display for HlEstimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HlEstimator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sample" => Ok(HlEstimator::Sample),
            "bh" => Ok(HlEstimator::Bh),
            "plugin" => Ok(HlEstimator::Plugin),
            other => Err(Error::Precondition(format!(
                "unknown HL estimator `{other}` (expected sample, bh or plugin)"
            ))),
        }
    }
}

/// Coefficients `c_{i,r}` for `r = 1..=MAX_HL_ORDER` at one sample size.
#[derive(Debug, Clone, PartialEq)]
pub struct HlWeights {
    pub estimator: HlEstimator,
    pub n: usize,
    /// `coefficients[r - 1][i - 1]`.
    pub coefficients: Vec<Vec<f64>>,
}

impl HlWeights {
    pub fn compute(estimator: HlEstimator, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InsufficientSample {
                n,
                required: 2,
                what: "sample HL-moments",
            });
        }
        let nf = n as f64;
        let coefficients = match estimator {
            HlEstimator::Sample => {
                let table = OrderStatisticTable::get(n, DEFAULT_MAX_POWER)?;
                (1..=MAX_HL_ORDER)
                    .map(|r| table.hermite_expectations(r - 1).iter().map(|e| e / nf).collect())
                    .collect()
            }
            HlEstimator::Bh => {
                // Φ⁻¹ at the cell boundaries i/n; the outermost are ±∞ where H φ vanishes.
                let edge: Vec<Option<f64>> = (0..=n)
                    .map(|i| (i > 0 && i < n).then(|| quantile_unchecked(i as f64 / nf)))
                    .collect();
                let antideriv = |z: Option<f64>, degree: usize| {
                    z.map_or(0.0, |z| eval_hermite(degree, z) * std_normal_pdf(z))
                };
                (1..=MAX_HL_ORDER)
                    .map(|r| {
                        (1..=n)
                            .map(|i| {
                                if r == 1 {
                                    1.0 / nf
                                } else {
                                    antideriv(edge[i - 1], r - 2) - antideriv(edge[i], r - 2)
                                }
                            })
                            .collect()
                    })
                    .collect()
            }
            HlEstimator::Plugin => {
                let z: Vec<f64> = (1..=n).map(|i| quantile_unchecked(i as f64 / (nf + 1.0))).collect();
                (1..=MAX_HL_ORDER)
                    .map(|r| z.iter().map(|&z| eval_hermite(r - 1, z) / nf).collect())
                    .collect()
            }
        };
        Ok(Self {
            estimator,
            n,
            coefficients,
        })
    }

    /// Shared weights, computed once per `(estimator, n)`.
    pub fn get(estimator: HlEstimator, n: usize) -> Result<Arc<Self>> {
        static WEIGHTS: LazyLock<Mutex<HashMap<(HlEstimator, usize), Arc<HlWeights>>>> =
            LazyLock::new(|| Mutex::new(HashMap::new()));
        if let Some(w) = WEIGHTS.lock().expect("weight cache poisoned").get(&(estimator, n)) {
            return Ok(Arc::clone(w));
        }
        let w = Self::compute(estimator, n)?;
        let mut map = WEIGHTS.lock().expect("weight cache poisoned");
        Ok(Arc::clone(map.entry((estimator, n)).or_insert_with(|| Arc::new(w))))
    }

    /// `[η̂_1, ..., η̂_max_r]` of sorted data of length `n`.
    pub fn apply(&self, sorted: &[f64], max_r: usize) -> Vec<f64> {
        debug_assert_eq!(sorted.len(), self.n);
        self.coefficients[..max_r]
            .iter()
            .map(|c| c.iter().zip(sorted).map(|(c, x)| c * x).sum())
            .collect()
    }
}

fn check_order(max_r: usize) -> Result<()> {
    if max_r == 0 || max_r > MAX_HL_ORDER {
        return Err(Error::Precondition(format!(
            "HL-moment order must be in 1..={MAX_HL_ORDER}, got {max_r}"
        )));
    }
    Ok(())
}

/// `[η̂_1, ..., η̂_max_r]` with the chosen estimator, without bias correction.
pub fn sample_hl_moments_with(s: &Sample, max_r: usize, estimator: HlEstimator) -> Result<Vec<f64>> {
    check_order(max_r)?;
    s.require(2, "sample HL-moments")?;
    Ok(HlWeights::get(estimator, s.len())?.apply(s.sorted(), max_r))
}

/// Expected-order-statistic weights `n⁻¹ E(H_{r-1}(Z_{i:n}))`.
pub fn sample_hl_moments(s: &Sample, max_r: usize) -> Result<Vec<f64>> {
    sample_hl_moments_with(s, max_r, HlEstimator::Sample)
}

/// Brown–Hettmansperger weights, integrated in closed form through
/// `d/dz [H_k(z) φ(z)] = -H_{k+1}(z) φ(z)`.
pub fn sample_hl_moments_bh(s: &Sample, max_r: usize) -> Result<Vec<f64>> {
    sample_hl_moments_with(s, max_r, HlEstimator::Bh)
}

/// Plug-in weights at the plotting positions `i/(n+1)`.
pub fn sample_hl_moments_plugin(s: &Sample, max_r: usize) -> Result<Vec<f64>> {
    sample_hl_moments_with(s, max_r, HlEstimator::Plugin)
}
