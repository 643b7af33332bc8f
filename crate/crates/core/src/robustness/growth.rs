//! Empirical growth order of influence functions in `|x|`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::influence::{adaptive_influence, InfluenceEstimate};
use crate::distributions::{QuantileDistribution, TukeyGH};
use crate::error::{Error, Result};
use crate::moments::Statistic;

pub const MIN_FIT_POINTS: usize = 8;

/// `count` log-spaced points on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|k| (a + (b - a) * k as f64 / (count - 1) as f64).exp())
        .collect()
}

/// 49 points on `[1, 100]`, 24 per decade.
pub fn default_x_grid() -> Vec<f64> {
    log_grid(1.0, 100.0, 49)
}

/// The fit starts at least this factor beyond the last sign change.
pub const SIGN_CHANGE_MARGIN: f64 = 2.0;

/// The order `Θ(|x|^a (log(|x|+1))^b)` expected for each measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectedGrowth {
    pub exponent: f64,
    pub log_power: f64,
}

pub fn expected_growth(statistic: Statistic) -> Option<ExpectedGrowth> {
    let g = |exponent, log_power| Some(ExpectedGrowth { exponent, log_power });
    match statistic {
        Statistic::Bowley | Statistic::Ruppert => g(0.0, 0.0),
        Statistic::LSkewness | Statistic::LKurtosis | Statistic::RlSkewness | Statistic::RlKurtosis => g(1.0, 0.0),
        Statistic::HlSkewness => g(1.0, 1.0),
        Statistic::HlKurtosis => g(1.0, 1.5),
        Statistic::Skewness => g(3.0, 0.0),
        Statistic::Kurtosis => g(4.0, 0.0),
        _ => None,
    }
}

/// The measures covered by the growth study.
pub const GROWTH_STATISTICS: [Statistic; 10] = [
    Statistic::Skewness,
    Statistic::Kurtosis,
    Statistic::LSkewness,
    Statistic::LKurtosis,
    Statistic::RlSkewness,
    Statistic::RlKurtosis,
    Statistic::HlSkewness,
    Statistic::HlKurtosis,
    Statistic::Bowley,
    Statistic::Ruppert,
];

/// Whether the symmetric influence function is the one studied.
pub fn uses_symmetric_influence(statistic: Statistic) -> bool {
    statistic == Statistic::Kurtosis
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthOrderEstimate {
    pub statistic: Statistic,
    pub base: String,
    /// Least-squares slope of `log |IF|` against `log |x|`.
    pub exponent: f64,
    /// Power `c` in `log(|IF| / |x|) = a + c log log(|x| + 1)`, fitted for
    /// HL measures.
    pub log_correction_power: Option<f64>,
    pub fit_range: [f64; 2],
    pub fit_points: usize,
    pub r_squared: f64,
    pub influence: Vec<InfluenceEstimate>,
}

/// Ordinary least squares `y = a + b t`; returns `(b, r²)`. A perfectly
/// flat response has `r² = 1`.
fn ols(t: &[f64], y: &[f64]) -> (f64, f64) {
    let n = t.len() as f64;
    let mt = t.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut stt, mut sty, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in t.iter().zip(y) {
        stt += (a - mt) * (a - mt);
        sty += (a - mt) * (b - my);
        syy += (b - my) * (b - my);
    }
    let slope = sty / stt;
    let ss_res: f64 = t
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let r = b - my - slope * (a - mt);
            r * r
        })
        .sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    (slope, r2)
}

/// Fits the growth order of the influence function of `statistic` at a
/// Tukey g-and-h base over `x_grid`.
///
/// The fit uses the top decade of the grid, `[x_max/10, x_max]`, restricted
/// to points at least [`SIGN_CHANGE_MARGIN`] times beyond the last sign
/// change of the influence function. The bounds are asymptotic, and just
/// past a root `log |IF|` climbs much faster than its limiting slope.
pub fn growth_order(statistic: Statistic, base: TukeyGH, x_grid: &[f64]) -> Result<GrowthOrderEstimate> {
    if !(base.h > 0.0) {
        return Err(Error::domain("h", base.h, "h > 0"));
    }
    let positive: Vec<f64> = x_grid.iter().copied().filter(|x| *x > 0.0).collect();
    let (x_min, x_max) = positive
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    if positive.len() < MIN_FIT_POINTS || x_max / x_min < 100.0 * (1.0 - 1e-12) {
        return Err(Error::Precondition(format!(
            "growth grid needs at least {MIN_FIT_POINTS} positive points spanning two decades"
        )));
    }
    let dist: Arc<dyn QuantileDistribution> = Arc::new(base);
    let theta = statistic.theoretical(dist.as_ref())?;
    let symmetric = uses_symmetric_influence(statistic);
    let influence: Vec<InfluenceEstimate> = positive
        .par_iter()
        .map(|&x| adaptive_influence(&dist, statistic, x, symmetric, theta))
        .collect::<Result<_>>()?;

    let mut order: Vec<usize> = (0..influence.len()).collect();
    order.sort_by(|&a, &b| influence[a].x.total_cmp(&influence[b].x));
    let last_sign_change = order
        .windows(2)
        .filter(|w| influence[w[0]].value.signum() != influence[w[1]].value.signum() || influence[w[1]].value == 0.0)
        .map(|w| influence[w[1]].x)
        .fold(f64::NEG_INFINITY, f64::max);
    let lower = (x_max / 10.0).max(SIGN_CHANGE_MARGIN * last_sign_change);
    let fit: Vec<&InfluenceEstimate> = order
        .iter()
        .map(|&i| &influence[i])
        .filter(|e| e.x >= lower * (1.0 - 1e-12) && e.value != 0.0)
        .collect();
    if fit.len() < MIN_FIT_POINTS {
        return Err(Error::Precondition(format!(
            "only {} grid points in the fit window [{lower}, {x_max}] for {statistic}; need {MIN_FIT_POINTS}",
            fit.len()
        )));
    }
    let t: Vec<f64> = fit.iter().map(|e| e.x.ln()).collect();
    let y: Vec<f64> = fit.iter().map(|e| e.value.abs().ln()).collect();
    let (exponent, r_squared) = ols(&t, &y);
    let log_correction_power = matches!(statistic, Statistic::HlSkewness | Statistic::HlKurtosis).then(|| {
        let s: Vec<f64> = fit.iter().map(|e| (e.x + 1.0).ln().ln()).collect();
        let w: Vec<f64> = fit.iter().map(|e| (e.value.abs() / e.x).ln()).collect();
        ols(&s, &w).0
    });
    Ok(GrowthOrderEstimate {
        statistic,
        base: dist.label(),
        exponent,
        log_correction_power,
        fit_range: [fit[0].x, fit[fit.len() - 1].x],
        fit_points: fit.len(),
        r_squared,
        influence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = default_x_grid();
        assert_eq!(g.len(), 49);
        assert!((g[0] - 1.0).abs() < 1e-12 && (g[48] - 100.0).abs() < 1e-9);
    }

    #[test]
    fn ols_recovers_line() {
        let t = [0.0, 1.0, 2.0, 3.0];
        let (b, r2) = ols(&t, &[1.0, 3.0, 5.0, 7.0]);
        assert!((b - 2.0).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
        assert_eq!(ols(&t, &[2.0; 4]), (0.0, 1.0));
    }

    #[test]
    fn preconditions() {
        let t = TukeyGH { g: 0.0, h: 0.2 };
        assert!(growth_order(Statistic::Bowley, t, &log_grid(1.0, 10.0, 20)).is_err());
        assert!(growth_order(Statistic::Bowley, TukeyGH { g: 0.0, h: 0.0 }, &default_x_grid()).is_err());
    }

    #[test]
    fn bowley_is_bounded() {
        let est = growth_order(Statistic::Bowley, TukeyGH { g: 0.0, h: 0.2 }, &default_x_grid()).unwrap();
        assert!(est.exponent.abs() < 0.2, "{}", est.exponent);
    }
}
