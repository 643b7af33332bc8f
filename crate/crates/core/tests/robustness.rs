use std::sync::Arc;

use gclm_core::distributions::{QuantileDistribution, StandardNormal, TukeyGH};
use gclm_core::moments::Statistic;
use gclm_core::robustness::*;

fn normal() -> Arc<dyn QuantileDistribution> {
    Arc::new(StandardNormal)
}

fn tukey() -> Arc<dyn QuantileDistribution> {
    Arc::new(TukeyGH { g: 0.0, h: 0.2 })
}

#[test]
fn hermite_influence_at_gaussian() {
    let base = normal();
    for &x in &[0.5, 1.0, 2.0, 4.0] {
        let g1 = adaptive_influence(&base, Statistic::Skewness, x, false, 0.0).unwrap();
        let h3 = x * x * x - 3.0 * x;
        assert!((g1.value - h3).abs() <= 0.02 * h3.abs(), "x = {x}: {} vs {h3}", g1.value);
        let g2 = adaptive_influence(&base, Statistic::Kurtosis, x, true, 0.0).unwrap();
        let h4 = x.powi(4) - 6.0 * x * x + 3.0;
        assert!((g2.value - h4).abs() <= 0.02 * h4.abs(), "x = {x}: {} vs {h4}", g2.value);
    }
}

#[test]
fn symmetric_and_plain_influence_agree_for_kurtosis_ratios() {
    for base in [normal(), tukey()] {
        for s in [Statistic::LKurtosis, Statistic::RlKurtosis, Statistic::HlKurtosis] {
            let check = sif_equals_if_check(s, Arc::clone(&base), &[0.5, 1.0, 2.0, 4.0]).unwrap();
            assert!(check.passed(), "{s} at {}: {:?}", check.base, check.rows);
        }
    }
}

#[test]
fn skewness_vanishes_under_symmetric_contamination() {
    let base = tukey();
    for &x in &[0.5, 3.0] {
        let e = adaptive_influence(&base, Statistic::LSkewness, x, true, 0.0).unwrap();
        assert!(e.value.abs() < 1e-6, "{}", e.value);
    }
}

#[test]
fn influence_at_median_is_small() {
    let base = tukey();
    for s in [Statistic::LSkewness, Statistic::HlSkewness, Statistic::RlSkewness, Statistic::Bowley] {
        let e = adaptive_influence(&base, s, 0.0, false, 0.0).unwrap();
        assert!(e.value.abs() < 1e-6, "{s}: {}", e.value);
    }
}

#[test]
fn growth_orders_follow_the_robustness_ordering() {
    let grid = default_x_grid();
    let base = TukeyGH { g: 0.0, h: 0.2 };
    let fit = |s| growth_order(s, base, &grid).unwrap();
    let mut exps = Vec::new();
    for s in GROWTH_STATISTICS {
        let e = fit(s);
        assert!(e.fit_points >= MIN_FIT_POINTS);
        let expected = expected_growth(s).unwrap();
        if expected.log_power == 0.0 {
            assert!((e.exponent - expected.exponent).abs() <= 0.3, "{s}: {}", e.exponent);
        } else {
            assert!(e.exponent > 1.0 && e.exponent < 3.0, "{s}: {}", e.exponent);
            assert!(e.log_correction_power.unwrap() > 0.0);
        }
        exps.push((s, e.exponent));
    }
    let get = |s: Statistic| exps.iter().find(|p| p.0 == s).unwrap().1;
    assert!(get(Statistic::Bowley) < get(Statistic::LSkewness));
    assert!((get(Statistic::LSkewness) - get(Statistic::RlSkewness)).abs() < 0.05);
    assert!(get(Statistic::RlSkewness) < get(Statistic::HlSkewness));
    assert!(get(Statistic::HlSkewness) < get(Statistic::Skewness));
}

#[test]
fn hl_skewness_log_corrected_ratio_is_stable() {
    let e = growth_order(Statistic::HlSkewness, TukeyGH { g: 0.0, h: 0.2 }, &default_x_grid()).unwrap();
    let ratios: Vec<f64> = e
        .influence
        .iter()
        .filter(|p| p.x >= 10.0 - 1e-9)
        .map(|p| p.value.abs() / (p.x * (p.x + 1.0).ln()))
        .collect();
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(lo > 0.0 && hi / lo < 3.0, "{lo} .. {hi}");
}
