//! Sample L-moments through probability-weighted moments.

use super::Sample;
use crate::error::{Error, Result};
use crate::polynomials::binomial;

/// Largest supported L-moment order.
pub const MAX_L_ORDER: usize = 5;

/// `[λ̂_1, ..., λ̂_max_r]`, equal to the U-statistic averaging over all
/// size-`r` subsamples.
///
/// Uses `b_k = n⁻¹ Σ_i [C(i-1, k) / C(n-1, k)] X_{i:n}` and
/// `λ̂_{r+1} = Σ_k (-1)^{r-k} C(r, k) C(r+k, k) b_k`.
pub fn sample_l_moments(s: &Sample, max_r: usize) -> Result<Vec<f64>> {
    if max_r == 0 || max_r > MAX_L_ORDER {
        return Err(Error::Precondition(format!(
            "L-moment order must be in 1..={MAX_L_ORDER}, got {max_r}"
        )));
    }
    s.require(max_r, "sample L-moments")?;
    let b = probability_weighted_moments(s.sorted(), max_r);
    Ok((0..max_r)
        .map(|r| {
            (0..=r)
                .map(|k| {
                    let sign = if (r - k) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * binomial(r, k) * binomial(r + k, k) * b[k]
                })
                .sum()
        })
        .collect())
}

/// `b_0 .. b_{count-1}` of sorted data.
pub(crate) fn probability_weighted_moments(sorted: &[f64], count: usize) -> Vec<f64> {
    let n = sorted.len();
    let mut b = vec![0.0; count];
    for (idx, &x) in sorted.iter().enumerate() {
        // w_k = Π_{j=1..k} (i - j)/(n - j) for 1-based i = idx + 1
        let mut w = 1.0;
        b[0] += x;
        for (k, slot) in b.iter_mut().enumerate().skip(1) {
            w *= (idx + 1 - k.min(idx + 1)) as f64 / (n - k) as f64;
            if w == 0.0 {
                break;
            }
            *slot += w * x;
        }
    }
    b.iter_mut().for_each(|v| *v /= n as f64);
    b
}

/// `(λ̂*_3, λ̂*_4)`.
pub fn sample_l_moment_ratios(s: &Sample) -> Result<(f64, f64)> {
    let l = sample_l_moments(s, 4)?;
    if !(l[1] > 0.0) {
        return Err(Error::ZeroScale("sample L-scale"));
    }
    Ok((l[2] / l[1], l[3] / l[1]))
}
