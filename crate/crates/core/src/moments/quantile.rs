//! Quantile-based skewness and kurtosis.

use super::Sample;
use crate::error::{Error, Result};

/// Sample quantile by linear interpolation of the order statistics at
/// position `h = p (n + 1)`, clamped to `[1, n]`.
pub fn sample_quantile(s: &Sample, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("p", p, "0 < p < 1"));
    }
    let x = s.sorted();
    let n = x.len();
    let h = (p * (n + 1) as f64).clamp(1.0, n as f64);
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if lo >= n {
        return Ok(x[n - 1]);
    }
    Ok(x[lo - 1] + frac * (x[lo] - x[lo - 1]))
}

/// Bowley's quartile skewness generalised to probability `p`.
pub fn bowley_from_quantiles(lower: f64, median: f64, upper: f64) -> Result<f64> {
    let range = upper - lower;
    if !(range > 0.0) {
        return Err(Error::ZeroDenominator("Bowley skewness interquantile range"));
    }
    Ok((upper + lower - 2.0 * median) / range)
}

/// Ruppert's ratio of interfractile ranges.
pub fn ruppert_from_quantiles(outer: (f64, f64), inner: (f64, f64)) -> Result<f64> {
    let denom = inner.1 - inner.0;
    if !(denom > 0.0) {
        return Err(Error::ZeroDenominator("Ruppert kurtosis inner range"));
    }
    Ok((outer.1 - outer.0) / denom)
}

pub fn bowley_skewness(s: &Sample, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::domain("p", p, "0 < p < 0.5"));
    }
    bowley_from_quantiles(
        sample_quantile(s, p)?,
        sample_quantile(s, 0.5)?,
        sample_quantile(s, 1.0 - p)?,
    )
}

pub fn ruppert_kurtosis(s: &Sample, p1: f64, p2: f64) -> Result<f64> {
    if !(p1 > 0.0 && p1 < p2 && p2 < 0.5) {
        return Err(Error::Precondition(format!(
            "Ruppert kurtosis needs 0 < p1 < p2 < 0.5, got p1 = {p1}, p2 = {p2}"
        )));
    }
    ruppert_from_quantiles(
        (sample_quantile(s, p1)?, sample_quantile(s, 1.0 - p1)?),
        (sample_quantile(s, p2)?, sample_quantile(s, 1.0 - p2)?),
    )
}

pub const BOWLEY_P: f64 = 0.25;
pub const RUPPERT_P1: f64 = 0.1;
pub const RUPPERT_P2: f64 = 0.3;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_rule() {
        let s = Sample::new(vec![0.0, 1.0, 2.0, 3.0, 10.0]).unwrap();
        // h = 1.5, 3, 4.5
        assert_eq!(sample_quantile(&s, 0.25).unwrap(), 0.5);
        assert_eq!(sample_quantile(&s, 0.5).unwrap(), 2.0);
        assert_eq!(sample_quantile(&s, 0.75).unwrap(), 6.5);
        assert_eq!(sample_quantile(&s, 0.01).unwrap(), 0.0);
        assert_eq!(sample_quantile(&s, 0.99).unwrap(), 10.0);
    }

    #[test]
    fn bowley_examples() {
        let s = Sample::new(vec![0.0, 1.0, 2.0, 3.0, 10.0]).unwrap();
        // (6.5 + 0.5 - 4) / 6
        assert!((bowley_skewness(&s, 0.25).unwrap() - 0.5).abs() < 1e-15);
        let sym = Sample::new(vec![-3.0, -1.0, 0.0, 1.0, 3.0]).unwrap();
        assert_eq!(bowley_skewness(&sym, 0.25).unwrap(), 0.0);
        let t = s.affine(2.0, 5.0).unwrap();
        assert!((bowley_skewness(&t, 0.25).unwrap() - 0.5).abs() < 1e-15);
        assert!(bowley_skewness(&Sample::new(vec![1.0; 9]).unwrap(), 0.25).is_err());
    }

    #[test]
    fn ruppert_arguments() {
        let s = Sample::new((0..50).map(|i| (i * i) as f64).collect()).unwrap();
        assert!(ruppert_kurtosis(&s, 0.3, 0.1).is_err());
        let k = ruppert_kurtosis(&s, 0.1, 0.3).unwrap();
        let k2 = ruppert_kurtosis(&s.affine(-3.0, 1.0).unwrap(), 0.1, 0.3).unwrap();
        assert!((k - k2).abs() < 1e-12);
    }
}
