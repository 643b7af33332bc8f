//! Expected spacings `δ_{i,j:k}(F) = E(X_{j:k} - X_{i:k})` and the rescaled
//! L-moment weight polynomials built from them.

use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use super::order_stats::{OrderStatisticTable, DEFAULT_MAX_POWER};
use crate::error::{Error, Result};
use crate::polynomials::{binomial, Polynomial};

/// Source of expected order statistics `E(X_{i:n})` for a reference distribution.
pub trait ExpectedOrderStatistics: Sync {
    fn expected(&self, i: usize, n: usize) -> Result<f64>;
    fn label(&self) -> &str;
}

/// The standard Gaussian reference.
#[derive(Debug, Clone, Copy, Default)]
pub struct GaussianReference;

impl ExpectedOrderStatistics for GaussianReference {
    fn expected(&self, i: usize, n: usize) -> Result<f64> {
        if i == 0 || i > n {
            return Err(Error::Index { i, j: i, k: n });
        }
        Ok(OrderStatisticTable::get(n, DEFAULT_MAX_POWER)?.moment(i, 1))
    }

    fn label(&self) -> &str {
        "N(0,1)"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectedSpacing {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

impl ExpectedSpacing {
    pub fn compute(reference: &dyn ExpectedOrderStatistics, i: usize, j: usize, k: usize) -> Result<Self> {
        if i == 0 || i >= j || j > k {
            return Err(Error::Index { i, j, k });
        }
        let value = reference.expected(j, k)? - reference.expected(i, k)?;
        Ok(Self { i, j, k, value })
    }
}

/// `δ_{i,j:k}(Φ)`.
pub fn expected_spacing_gaussian(i: usize, j: usize, k: usize) -> Result<f64> {
    Ok(ExpectedSpacing::compute(&GaussianReference, i, j, k)?.value)
}

/// Density weight of the `j`-th of `r` order statistics in `u = F(x)`:
/// `r C(r-1, j-1) u^(j-1) (1-u)^(r-j)`, in the power basis.
fn order_statistic_weight(j: usize, r: usize) -> Polynomial {
    let mut poly = Polynomial::new(vec![r as f64 * binomial(r - 1, j - 1)]);
    let u = Polynomial::new(vec![0.0, 1.0]);
    let one_minus_u = Polynomial::new(vec![1.0, -1.0]);
    for _ in 1..j {
        poly = poly.mul(&u);
    }
    for _ in j..r {
        poly = poly.mul(&one_minus_u);
    }
    poly
}

/// The polynomial `R_{r-1}` with `ρ_r = ∫ F⁻¹(u) R_{r-1}(u) du`, for
/// `r = 1..=4`, obtained by writing each rescaled spacing as a difference of
/// order-statistic weights.
pub fn rescaled_weight_polynomial(reference: &dyn ExpectedOrderStatistics, r: usize) -> Result<Polynomial> {
    if r == 0 || r > 4 {
        return Err(Error::Precondition(format!(
            "rescaled weight polynomials are provided for orders 1..=4, got {r}"
        )));
    }
    if r == 1 {
        return Ok(Polynomial::new(vec![1.0]));
    }
    let mut out = Polynomial::zero();
    for k in 0..=(r - 2) {
        let upper = r - k;
        let delta = ExpectedSpacing::compute(reference, upper - 1, upper, r)?.value;
        if !(delta > 0.0) {
            return Err(Error::ZeroDenominator("reference spacing"));
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let scale = sign * binomial(r - 2, k) / (r as f64 * delta);
        out.add_scaled(&order_statistic_weight(upper, r), scale);
        out.add_scaled(&order_statistic_weight(upper - 1, r), -scale);
    }
    Ok(out)
}

/// Constants relating rescaled and classical L-moments at a symmetric reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RlConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub delta_12_2: f64,
    pub delta_12_3: f64,
    pub delta_23_4: f64,
    pub delta_34_4: f64,
    /// Multiplier of the L-kurtosis in the RL-kurtosis.
    pub kurtosis_scale: f64,
    /// L-kurtosis of the reference distribution, where the RL-kurtosis vanishes.
    pub reference_l_kurtosis: f64,
}

impl RlConstants {
    /// Reads `c1..c4` off the power-basis coefficients of `R_1..R_3`.
    pub fn from_reference(reference: &dyn ExpectedOrderStatistics) -> Result<Self> {
        let r1 = rescaled_weight_polynomial(reference, 2)?;
        let r2 = rescaled_weight_polynomial(reference, 3)?;
        let r3 = rescaled_weight_polynomial(reference, 4)?;
        let lead = |p: &Polynomial, d: usize| p.coeffs.get(d).copied().unwrap_or(0.0);
        let c1 = lead(&r1, 1) / 2.0;
        let c2 = lead(&r2, 2) / 6.0;
        let c4 = -r3.eval(0.0);
        let c3 = (lead(&r3, 3) / c4 - 2.0) / 6.0;

        let d = |i, j, k| ExpectedSpacing::compute(reference, i, j, k).map(|s| s.value);
        let delta_12_2 = d(1, 2, 2)?;
        let delta_12_3 = d(1, 2, 3)?;
        let delta_23_4 = d(2, 3, 4)?;
        let delta_34_4 = d(3, 4, 4)?;
        let kurtosis_scale = delta_12_2 / 5.0 * (3.0 / delta_23_4 + 2.0 / delta_34_4);
        let offset = 3.0 * delta_12_2 / 5.0 * (1.0 / delta_23_4 - 1.0 / delta_34_4);
        Ok(Self {
            c1,
            c2,
            c3,
            c4,
            delta_12_2,
            delta_12_3,
            delta_23_4,
            delta_34_4,
            kurtosis_scale,
            reference_l_kurtosis: offset / kurtosis_scale,
        })
    }

    /// Constants at the standard Gaussian, computed once per process.
    pub fn gaussian() -> &'static RlConstants {
        static CONSTANTS: LazyLock<RlConstants> = LazyLock::new(|| {
            RlConstants::from_reference(&GaussianReference).expect("Gaussian spacings are well defined")
        });
        &CONSTANTS
    }

    /// `ρ₂ / λ₂`.
    pub fn scale_factor(&self) -> f64 {
        1.0 / self.delta_12_2
    }

    /// `ρ*₃ / λ*₃`.
    pub fn skewness_factor(&self) -> f64 {
        self.delta_12_2 / self.delta_12_3
    }

    /// `ρ*₄` as a function of `λ*₄`.
    pub fn rl_kurtosis(&self, l_kurtosis: f64) -> f64 {
        self.kurtosis_scale * (l_kurtosis - self.reference_l_kurtosis)
    }
}

/// RL constants at the standard Gaussian.
pub fn rl_polynomial_constants() -> RlConstants {
    *RlConstants::gaussian()
}
