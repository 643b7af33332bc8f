//! Standard Gaussian machinery: distribution and quantile functions,
//! expected order statistics and the spacing constants built from them.

mod order_stats;
mod spacing;

pub use order_stats::{
    expected_gaussian_order_statistic_power, OrderStatisticTable, DEFAULT_MAX_POWER,
};
pub use spacing::{
    expected_spacing_gaussian, rescaled_weight_polynomial, rl_polynomial_constants,
    ExpectedOrderStatistics, ExpectedSpacing, GaussianReference, RlConstants,
};

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Standard Gaussian density.
pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

pub fn std_normal_log_pdf(x: f64) -> f64 {
    -0.5 * x * x - LN_SQRT_2PI
}

/// Standard Gaussian distribution function, accurate to a few ulps.
pub fn std_normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// `ln Φ(x)`, finite far into the lower tail.
pub fn std_normal_log_cdf(x: f64) -> f64 {
    if x > -30.0 {
        return std_normal_cdf(x).ln();
    }
    // Mills-ratio asymptotic series; the first omitted term is below 1e-16 here.
    let x2 = x * x;
    let series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2);
    std_normal_log_pdf(x) - (-x).ln() + series.ln()
}

/// Standard Gaussian quantile function `Φ⁻¹(u)`.
///
/// Acklam's rational approximation (relative error about 1e-9) followed by a
/// single Halley step, which brings the result to working precision.
pub fn std_normal_quantile(u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::domain("u", u, "0 < u < 1"));
    }
    Ok(quantile_unchecked(u))
}

/// Quantile for `u` already known to be in (0, 1). Exposed within the crate
/// for hot loops.
pub(crate) fn quantile_unchecked(u: f64) -> f64 {
    if u <= 0.5 {
        lower_quantile(u)
    } else {
        -lower_quantile(1.0 - u)
    }
}

/// Gaussian score of an upper-tail probability, `-Φ⁻¹(q) = Φ⁻¹(1 - q)`,
/// without forming `1 - q`.
pub(crate) fn upper_tail_score(q: f64) -> f64 {
    -quantile_unchecked(q)
}

const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const P_LOW: f64 = 0.024_25;

fn lower_quantile(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p <= 0.5);
    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    };
    // Halley step in relative form so it stays finite for p near f64::MIN_POSITIVE.
    let cdf = std_normal_cdf(x);
    if cdf == p {
        return x;
    }
    let rel = cdf / p - 1.0;
    let step = rel * (p / std_normal_pdf(x));
    if !step.is_finite() {
        return x;
    }
    x - step / (1.0 + 0.5 * x * step)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisect_quantile(u: f64) -> f64 {
        let (mut lo, mut hi) = (-40.0, 40.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if std_normal_cdf(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn cdf_reference_values() {
        assert_eq!(std_normal_cdf(0.0), 0.5);
        // high-precision references
        assert!((std_normal_cdf(1.959964) - 0.975_000_000_903_557_6).abs() < 1e-12);
        assert!((std_normal_cdf(-1.0) - 0.158_655_253_931_457_05).abs() < 1e-15);
        assert!((std_normal_cdf(-8.0) - 6.220_960_574_271_785e-16).abs() < 1e-27);
        assert_eq!(std_normal_cdf(-40.0), 0.0);
        assert_eq!(std_normal_cdf(40.0), 1.0);
    }

    #[test]
    fn cdf_monotone() {
        let mut prev = 0.0;
        for k in 0..=4000 {
            let x = -20.0 + k as f64 * 0.01;
            let c = std_normal_cdf(x);
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn log_cdf_tail_matches_direct() {
        for &x in &[-5.0, -12.0, -25.0, -29.9] {
            let direct = std_normal_cdf(x).ln();
            assert!((std_normal_log_cdf(x) - direct).abs() < 1e-12 * direct.abs());
        }
        // continuity across the series switch-over
        let a = std_normal_log_cdf(-30.0 + 1e-9);
        let b = std_normal_log_cdf(-30.0 - 1e-9);
        assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn quantile_examples_against_bisection() {
        assert_eq!(std_normal_quantile(0.5).unwrap(), 0.0);
        for &u in &[0.975, 0.1, 1e-3, 0.3, 0.999_999, 1e-12] {
            let q = std_normal_quantile(u).unwrap();
            assert!((q - bisect_quantile(u)).abs() < 1e-9, "u = {u}");
            assert!((std_normal_cdf(q) - u).abs() < 1e-9);
        }
        assert!((std_normal_quantile(0.975).unwrap() - 1.959_963_984_540_054).abs() < 1e-12);
        assert!((std_normal_quantile(0.1).unwrap() + 1.281_551_565_544_600_5).abs() < 1e-12);
    }

    #[test]
    fn quantile_domain_errors() {
        assert!(std_normal_quantile(0.0).is_err());
        assert!(std_normal_quantile(1.0).is_err());
        assert!(std_normal_quantile(-0.2).is_err());
    }

    #[test]
    fn quantile_inverts_cdf() {
        for k in 0..=1200 {
            let x = -6.0 + k as f64 * 0.01;
            let back = std_normal_quantile(std_normal_cdf(x)).unwrap();
            assert!((back - x).abs() < 1e-8, "x = {x}, back = {back}");
        }
    }

    #[test]
    fn extreme_tail_quantile_is_finite() {
        let q = quantile_unchecked(1e-300);
        assert!(q.is_finite() && q < -37.0);
        let rel = std_normal_cdf(q) / 1e-300 - 1.0;
        assert!(rel.abs() < 1e-10);
        assert_eq!(upper_tail_score(1e-300), -q);
    }
}
