//! Moment-based location, scale, skewness and kurtosis.

use super::Sample;
use crate::error::Result;

pub fn sample_mean(s: &Sample) -> f64 {
    s.values().iter().sum::<f64>() / s.len() as f64
}

/// Standard deviation with the `n - 1` denominator.
pub fn sample_sd(s: &Sample) -> Result<f64> {
    s.require(2, "standard deviation")?;
    let m = sample_mean(s);
    let ss: f64 = s.values().iter().map(|x| (x - m) * (x - m)).sum();
    Ok((ss / (s.len() - 1) as f64).sqrt())
}

/// `(γ̂1, γ̂2)` with divide-by-`n` central moments and excess kurtosis.
pub fn conventional_sample_skewness_kurtosis(s: &Sample) -> Result<(f64, f64)> {
    s.require(2, "conventional skewness and kurtosis")?;
    s.require_spread()?;
    let n = s.len() as f64;
    let m = sample_mean(s);
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for x in s.values() {
        let d = x - m;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    Ok((m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = Sample::new(vec![-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(conventional_sample_skewness_kurtosis(&s).unwrap().0, 0.0);
        // {0,0,0,1}: mean 1/4, m2 = 3/16, m3 = 3/32, m4 = 21/256
        let s = Sample::new(vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        let (g1, g2) = conventional_sample_skewness_kurtosis(&s).unwrap();
        let m2: f64 = 3.0 / 16.0;
        assert!((g1 - (3.0 / 32.0) / m2.powf(1.5)).abs() < 1e-14);
        assert!((g1 - 2.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!((g2 - ((21.0 / 256.0) / (m2 * m2) - 3.0)).abs() < 1e-14);
        assert!(conventional_sample_skewness_kurtosis(&Sample::new(vec![2.0; 5]).unwrap()).is_err());
        assert!((sample_sd(&Sample::new(vec![1.0, 3.0]).unwrap()).unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }
}
