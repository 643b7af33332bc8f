use gclm_core::distributions::{sample_distribution, Exponential, StandardNormal, TukeyGH, Uniform};
use gclm_core::gaussian::{rl_polynomial_constants, OrderStatisticTable};
use gclm_core::moments::*;
use gclm_core::rng::{self, Domain};
use proptest::prelude::*;

/// All `r`-subsets of a sorted sample, each contributing
/// `r⁻¹ Σ_k (-1)^k C(r-1, k) X_{r-k:r}`.
fn u_statistic(sorted: &[f64], r: usize) -> f64 {
    fn walk(sorted: &[f64], r: usize, start: usize, chosen: &mut Vec<f64>, acc: &mut (f64, usize)) {
        if chosen.len() == r {
            let mut c = 1.0;
            let mut term = 0.0;
            for k in 0..r {
                if k > 0 {
                    c = c * (r - k) as f64 / k as f64;
                }
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                term += sign * c * chosen[r - 1 - k];
            }
            acc.0 += term / r as f64;
            acc.1 += 1;
            return;
        }
        for i in start..sorted.len() {
            chosen.push(sorted[i]);
            walk(sorted, r, i + 1, chosen, acc);
            chosen.pop();
        }
    }
    let mut acc = (0.0, 0);
    walk(sorted, r, 0, &mut Vec::new(), &mut acc);
    acc.0 / acc.1 as f64
}

#[test]
fn l_moments_equal_subset_enumeration() {
    let mut rng = rng::stream(42, Domain::Synthetic, 0);
    for trial in 0..200 {
        let n = 4 + trial % 9;
        let x: Vec<f64> = (0..n).map(|_| 3.0 * rng::standard_normal(&mut rng)).collect();
        let s = Sample::new(x).unwrap();
        let l = sample_l_moments(&s, 4).unwrap();
        for r in 1..=4 {
            assert!((l[r - 1] - u_statistic(s.sorted(), r)).abs() < 1e-12, "n = {n}, r = {r}");
        }
    }
}

#[test]
fn hl_bias_matches_reference_means() {
    // E(η̂_4/η̂_2) is the raw Monte-Carlo mean; the correction is that mean.
    let b20 = hl_bias_correction(20, 4, DEFAULT_BIAS_REPLICATES, DEFAULT_BIAS_SEED).unwrap();
    let b50 = hl_bias_correction(50, 4, DEFAULT_BIAS_REPLICATES, DEFAULT_BIAS_SEED).unwrap();
    assert!((b20 + 0.2833).abs() < 0.01, "{b20}");
    assert!((b50 + 0.1733).abs() < 0.01, "{b50}");
    assert!(hl_bias_correction(20, 3, DEFAULT_BIAS_REPLICATES, DEFAULT_BIAS_SEED).unwrap().abs() < 1e-12);
}

#[test]
fn corrected_hl_ratios_are_centred_at_gaussian() {
    let cfg = SummaryConfig::default();
    let reps = 400;
    let mut mean = (0.0, 0.0);
    for k in 0..reps {
        let s = sample_distribution(&StandardNormal, 50, 1000 + k).unwrap();
        let (e3, e4) = sample_hl_moment_ratios_with(&s, &cfg).unwrap();
        mean.0 += e3 / reps as f64;
        mean.1 += e4 / reps as f64;
    }
    assert!(mean.0.abs() < 0.01 && mean.1.abs() < 0.01, "{mean:?}");
}

#[test]
fn every_estimator_is_consistent() {
    let dist = TukeyGH { g: 0.3, h: 0.0 };
    let eta = theoretical::theoretical_hl_moments(&dist).unwrap();
    let s = sample_distribution(&dist, 20_000, 9).unwrap();
    let reference = sample_hl_moments(&s, 4).unwrap();
    for r in 1..=4 {
        // sampling error of the shared sample dominates here
        assert!((reference[r - 1] - eta[r - 1]).abs() < 0.05, "r = {r}: {reference:?} vs {eta:?}");
    }
    for est in HlEstimator::ALL {
        let e = sample_hl_moments_with(&s, 4, est).unwrap();
        for r in 1..=4 {
            // the plug-in scores Φ⁻¹(i/(n+1)) undershoot the extreme expected
            // scores, which order 4 weights by z³; that gap closes slowly
            let tol = 0.02;
            assert!((e[r - 1] - reference[r - 1]).abs() < tol, "{est} r = {r}: {e:?} vs {reference:?}");
        }
    }
}

#[test]
fn sample_statistics_converge_to_population_values() {
    let dist = TukeyGH { g: 0.3, h: 0.05 };
    let s = sample_distribution(&dist, 200_000, 17).unwrap();
    let (t3, t4) = sample_l_moment_ratios(&s).unwrap();
    let (l3, l4) = theoretical_ratios(&dist, MomentFamily::L).unwrap();
    assert!((t3 - l3).abs() < 0.01 && (t4 - l4).abs() < 0.01);
    let b = bowley_skewness(&s, 0.25).unwrap();
    assert!((b - Statistic::Bowley.theoretical(&dist).unwrap()).abs() < 0.01);
    let rl = sample_rl_moments(&s).unwrap();
    let (r3, r4) = theoretical_ratios(&dist, MomentFamily::RL).unwrap();
    assert!((rl.skewness - r3).abs() < 0.02 && (rl.kurtosis - r4).abs() < 0.02);
}

#[test]
fn rl_constants_and_gaussian_centering() {
    let c = rl_polynomial_constants();
    for (got, want) in [(c.c1, 0.8862), (c.c2, 1.1816), (c.c3, 3.4658), (c.c4, 1.3654), (c.kurtosis_scale, 1.7560)] {
        assert!((got - want).abs() <= 1e-4, "{got} vs {want}");
    }
    for family in [MomentFamily::HL, MomentFamily::RL] {
        let (a, b) = theoretical_ratios(&StandardNormal, family).unwrap();
        assert!(a.abs() < 1e-8 && b.abs() < 1e-8, "{family:?}: {a} {b}");
    }
    let (a, b) = theoretical_ratios(&Uniform::standard(), MomentFamily::L).unwrap();
    assert!(a.abs() < 1e-10 && b.abs() < 1e-10);
}

#[test]
fn exponential_l_ratios() {
    let (t3, t4) = theoretical_ratios(&Exponential::new(1.0).unwrap(), MomentFamily::L).unwrap();
    assert!((t3 - 1.0 / 3.0).abs() < 1e-10 && (t4 - 1.0 / 6.0).abs() < 1e-10);
}

#[test]
fn l_kurtosis_bound_on_random_samples() {
    let mut rng = rng::stream(7, Domain::Synthetic, 1);
    for k in 0..10_000u64 {
        let n = 20 + (k % 40) as usize;
        // mix of shapes: heavy tails, skew, bimodality
        let x: Vec<f64> = (0..n)
            .map(|_| {
                let z = rng::standard_normal(&mut rng);
                match k % 4 {
                    0 => z,
                    1 => z * (0.4 * z * z).exp(),
                    2 => (0.8 * z).exp(),
                    _ => z + if rng::open_unit(&mut rng) < 0.5 { 4.0 } else { 0.0 },
                }
            })
            .collect();
        let (t3, t4) = sample_l_moment_ratios(&Sample::new(x).unwrap()).unwrap();
        assert!(0.25 * (5.0 * t3 * t3 - 1.0) <= t4 + 1e-12 && t4 < 1.0, "sample {k}: {t3} {t4}");
    }
}

#[test]
fn order_statistic_means_sum_to_zero() {
    let t = OrderStatisticTable::get(200, 4).unwrap();
    let s: f64 = t.means().iter().sum();
    assert!(s.abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratios_are_affine_invariant(
        x in prop::collection::vec(-50.0f64..50.0, 8..40),
        a in 0.1f64..10.0,
        b in -100.0f64..100.0,
    ) {
        let s = Sample::new(x).unwrap();
        let Ok(base) = compute_summary(&s) else { return Ok(()) };
        let t = compute_summary(&s.affine(a, b).unwrap()).unwrap();
        let close = |u: f64, v: f64| (u - v).abs() <= 1e-8 * (1.0 + u.abs());
        prop_assert!(close(base.l_skewness, t.l_skewness));
        prop_assert!(close(base.l_kurtosis, t.l_kurtosis));
        prop_assert!(close(base.hl_skewness, t.hl_skewness));
        prop_assert!(close(base.hl_kurtosis, t.hl_kurtosis));
        prop_assert!(close(base.rl_skewness, t.rl_skewness));
        prop_assert!(close(base.conventional_skewness, t.conventional_skewness));
        prop_assert!(close(base.conventional_kurtosis, t.conventional_kurtosis));
        prop_assert!(close(base.l2 * a, t.l2));
    }

    #[test]
    fn reflection_negates_skewness(x in prop::collection::vec(-50.0f64..50.0, 8..40)) {
        let s = Sample::new(x).unwrap();
        let Ok(base) = compute_summary(&s) else { return Ok(()) };
        let t = compute_summary(&s.affine(-1.0, 0.0).unwrap()).unwrap();
        let close = |u: f64, v: f64| (u - v).abs() <= 1e-8 * (1.0 + u.abs());
        prop_assert!(close(base.l_skewness, -t.l_skewness));
        prop_assert!(close(base.hl_skewness, -t.hl_skewness));
        prop_assert!(close(base.bowley_skewness, -t.bowley_skewness));
        prop_assert!(close(base.l_kurtosis, t.l_kurtosis));
        prop_assert!(close(base.ruppert_kurtosis, t.ruppert_kurtosis));
    }
}
