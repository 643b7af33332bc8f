//! Influence functions by numerical contamination.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::contamination::{base_score_of, contaminated_quantile, ContaminationSpec};
use crate::distributions::QuantileDistribution;
use crate::error::{Error, Result};
use crate::gaussian::std_normal_cdf;
use crate::moments::Statistic;

/// Relative disagreement tolerated between the raw quotients at the two
/// smallest contamination levels.
pub const QUOTIENT_STABILITY: f64 = 0.05;
const QUOTIENT_ABS_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfluenceEstimate {
    pub statistic: Statistic,
    pub x: f64,
    pub symmetric: bool,
    /// Extrapolated to `ε → 0`.
    pub value: f64,
    /// Difference quotient at the smallest `ε`.
    pub raw_smallest_eps: f64,
    pub error_estimate: f64,
    pub eps: Vec<f64>,
    pub quotients: Vec<f64>,
}

/// `lim_{ε↓0} (θ(F_{ε,x}) - θ(F)) / ε`, extrapolated from the quotients at
/// `spec.eps_sequence` by Neville–Richardson elimination of the `ε^k` terms.
pub fn influence_estimate(spec: &ContaminationSpec, statistic: Statistic) -> Result<InfluenceEstimate> {
    let theta = statistic.theoretical(spec.base.as_ref())?;
    influence_estimate_from(spec, statistic, theta)
}

/// As [`influence_estimate`] with `θ(F)` supplied by the caller.
pub fn influence_estimate_from(spec: &ContaminationSpec, statistic: Statistic, theta: f64) -> Result<InfluenceEstimate> {
    let quotients: Vec<f64> = spec
        .eps_sequence
        .iter()
        .map(|&eps| {
            let mixed = contaminated_quantile(spec, eps)?;
            Ok((statistic.theoretical(&mixed)? - theta) / eps)
        })
        .collect::<Result<_>>()?;
    let eps = &spec.eps_sequence;
    let m = quotients.len();
    let (q_last, q_prev) = (quotients[m - 1], quotients[m - 2]);
    if (q_last - q_prev).abs() > QUOTIENT_STABILITY * q_last.abs() + QUOTIENT_ABS_FLOOR {
        return Err(Error::NonConvergence(format!(
            "influence quotients of {statistic} at x = {} do not stabilise: {q_prev} then {q_last}",
            spec.x
        )));
    }

    // t[k][j]: extrapolation of order j using quotients k-j..=k
    let mut t = vec![vec![0.0; m]; m];
    for k in 0..m {
        t[k][0] = quotients[k];
        for j in 1..=k {
            let ratio = eps[k - j] / eps[k];
            t[k][j] = t[k][j - 1] + (t[k][j - 1] - t[k - 1][j - 1]) / (ratio - 1.0);
        }
    }
    let value = t[m - 1][m - 1];
    let diagonal = (value - t[m - 2][m - 2]).abs().max((value - t[m - 1][m - 2]).abs());
    // quadrature noise in θ amplified by 1/ε
    let noise = 1e-11 * (1.0 + theta.abs()) / eps[m - 1];
    Ok(InfluenceEstimate {
        statistic,
        x: spec.x,
        symmetric: spec.symmetric,
        value,
        raw_smallest_eps: q_last,
        error_estimate: diagonal.max(noise),
        eps: eps.clone(),
        quotients,
    })
}

/// Halvings per contamination ladder in [`adaptive_influence`].
pub const LADDER_LEVELS: usize = 5;
/// How many times [`adaptive_influence`] moves the ladder down before giving up.
pub const MAX_LADDER_SHIFTS: usize = 3;

/// Influence at `x` from the ladder of [`scaled_spec`]. When the quotients
/// have not stabilised, typically near a root of the influence function
/// where the relative criterion is strict, the whole ladder is moved
/// `2^LADDER_LEVELS` lower and the estimate repeated.
pub fn adaptive_influence(
    base: &Arc<dyn QuantileDistribution>,
    statistic: Statistic,
    x: f64,
    symmetric: bool,
    theta: f64,
) -> Result<InfluenceEstimate> {
    let mut spec = scaled_spec(Arc::clone(base), statistic, x, symmetric, LADDER_LEVELS)?;
    let mut shifts = 0;
    loop {
        match influence_estimate_from(&spec, statistic, theta) {
            Err(Error::NonConvergence(_)) if shifts < MAX_LADDER_SHIFTS => {
                let factor = f64::powi(2.0, LADDER_LEVELS as i32);
                let eps = spec.eps_sequence.iter().map(|e| e / factor).collect();
                spec = ContaminationSpec::with_eps(Arc::clone(base), x, symmetric, eps)?;
                shifts += 1;
            }
            other => return other,
        }
    }
}

/// Largest contamination level used for `statistic` at `x`. Moment measures
/// of degree `d` react like `ε |x - m|^d / σ^d`, so the level is scaled down
/// to keep that product small and the quotients in their linear regime.
pub fn initial_eps(statistic: Statistic, x: f64, centre: f64, scale: f64) -> f64 {
    let degree = match statistic {
        Statistic::Bowley | Statistic::Ruppert => 0,
        Statistic::Mean | Statistic::L2 | Statistic::Hl2 | Statistic::Rl2 => 1,
        Statistic::Sd => 2,
        Statistic::Skewness => 3,
        Statistic::Kurtosis => 4,
        // L-, HL- and RL-ratios grow roughly linearly
        _ => 1,
    };
    let rel = scale / (x - centre).abs().max(1e-300);
    1e-2 * rel.min(1.0).powi(degree)
}

/// Contamination spec with `count` halving levels from [`initial_eps`].
/// Fraction of the base tail mass beyond `x` used to cap the first eps for
/// HL measures.
pub const HL_TAIL_FRACTION: f64 = 0.02;

/// Contamination spec at `x` with `count` halvings from [`initial_eps`].
pub fn scaled_spec(
    base: Arc<dyn QuantileDistribution>,
    statistic: Statistic,
    x: f64,
    symmetric: bool,
    count: usize,
) -> Result<ContaminationSpec> {
    let (centre, scale) = (base.quantile(0.5), (base.quantile(0.75) - base.quantile(0.25)) / 1.349);
    let mut eps0 = initial_eps(statistic, x, centre, scale);
    if matches!(statistic, Statistic::Hl2 | Statistic::HlSkewness | Statistic::HlKurtosis) {
        // Hermite weights vary on the scale of the tail mass beyond x, so the
        // quotient is only linear in eps once eps is well below that mass.
        let tail = |x: f64| {
            let z = base_score_of(base.as_ref(), x);
            std_normal_cdf(z).min(std_normal_cdf(-z))
        };
        let t = if symmetric { tail(x).min(tail(-x)) } else { tail(x) };
        if t > 0.0 {
            eps0 = eps0.min(HL_TAIL_FRACTION * t);
        }
    }
    let eps = (0..count).map(|k| eps0 / f64::powi(2.0, k as i32)).collect();
    ContaminationSpec::with_eps(base, x, symmetric, eps)
}

/// One row of an SIF-versus-IF comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SifIfRow {
    pub x: f64,
    pub influence: f64,
    pub symmetric_influence: f64,
    pub tolerance: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SifIfCheck {
    pub statistic: Statistic,
    pub base: String,
    pub rows: Vec<SifIfRow>,
}

impl SifIfCheck {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.agrees)
    }
}

/// Compares the symmetric and ordinary influence functions of a kurtosis
/// measure at a symmetric base; a point agrees when the difference is within
/// ten times the combined extrapolation error.
pub fn sif_equals_if_check(statistic: Statistic, base: Arc<dyn QuantileDistribution>, points: &[f64]) -> Result<SifIfCheck> {
    let theta = statistic.theoretical(base.as_ref())?;
    let rows = points
        .iter()
        .map(|&x| {
            let a = adaptive_influence(&base, statistic, x, false, theta)?;
            let b = adaptive_influence(&base, statistic, x, true, theta)?;
            let tolerance = 10.0 * (a.error_estimate + b.error_estimate);
            Ok(SifIfRow {
                x,
                influence: a.value,
                symmetric_influence: b.value,
                tolerance,
                agrees: (a.value - b.value).abs() <= tolerance,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SifIfCheck {
        statistic,
        base: base.label(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::StandardNormal;
    use crate::polynomials::eval_hermite;

    #[test]
    fn skewness_influence_is_third_hermite() {
        let base: Arc<dyn QuantileDistribution> = Arc::new(StandardNormal);
        for &x in &[0.0, 0.5, 2.0] {
            let spec = scaled_spec(base.clone(), Statistic::Skewness, x, false, 5).unwrap();
            let est = influence_estimate(&spec, Statistic::Skewness).unwrap();
            assert!((est.value - eval_hermite(3, x)).abs() < 1e-5 * (1.0 + eval_hermite(3, x).abs()), "{x}: {}", est.value);
        }
    }

    #[test]
    fn kurtosis_symmetric_influence_is_fourth_hermite() {
        let base: Arc<dyn QuantileDistribution> = Arc::new(StandardNormal);
        let spec = scaled_spec(base, Statistic::Kurtosis, 2.0, true, 5).unwrap();
        let est = influence_estimate(&spec, Statistic::Kurtosis).unwrap();
        assert!((est.value + 5.0).abs() < 1e-5, "{}", est.value);
    }

    #[test]
    fn skewness_under_symmetric_contamination_is_zero() {
        let base: Arc<dyn QuantileDistribution> = Arc::new(StandardNormal);
        let spec = ContaminationSpec::new(base, 1.7, true).unwrap();
        let est = influence_estimate(&spec, Statistic::LSkewness).unwrap();
        assert!(est.value.abs() < 1e-6);
    }

    #[test]
    fn unstable_quotients_are_reported() {
        // a huge contamination at a far point makes the quotient strongly ε-dependent
        let base: Arc<dyn QuantileDistribution> = Arc::new(StandardNormal);
        let spec = ContaminationSpec::with_eps(base, 50.0, false, vec![0.4, 0.2]).unwrap();
        assert!(matches!(influence_estimate(&spec, Statistic::Kurtosis), Err(Error::NonConvergence(_))));
    }
}
