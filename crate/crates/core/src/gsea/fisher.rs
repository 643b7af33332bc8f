//! Fisher's exact test on 2×2 tables.

use crate::error::{Error, Result};

fn ln_factorial(k: u64) -> f64 {
    libm::lgamma(k as f64 + 1.0)
}

/// Hypergeometric log-probabilities of the 2×2 tables with fixed margins,
/// indexed by the top-left cell from its minimum to its maximum.
fn table_log_probs(row1: u64, row2: u64, col1: u64) -> (u64, Vec<f64>) {
    let n = row1 + row2;
    let lo = col1.saturating_sub(row2);
    let hi = col1.min(row1);
    let col2 = n - col1;
    let fixed = ln_factorial(row1) + ln_factorial(row2) + ln_factorial(col1) + ln_factorial(col2) - ln_factorial(n);
    let probs = (lo..=hi)
        .map(|a| {
            let (b, c) = (row1 - a, col1 - a);
            let d = row2 - c;
            fixed - ln_factorial(a) - ln_factorial(b) - ln_factorial(c) - ln_factorial(d)
        })
        .collect();
    (lo, probs)
}

/// Probability of exactly the table `[[a, b], [c, d]]` given its margins.
pub fn fisher_point_probability(a: u64, b: u64, c: u64, d: u64) -> f64 {
    let (lo, probs) = table_log_probs(a + b, c + d, a + c);
    probs[(a - lo) as usize].exp()
}

/// Two-sided p-value: total probability of the tables no more likely than
/// the observed one.
pub fn fisher_exact_2x2(a: u64, b: u64, c: u64, d: u64) -> f64 {
    let (lo, probs) = table_log_probs(a + b, c + d, a + c);
    let observed = probs[(a - lo) as usize];
    // relative slack so that tables tied with the observed one count
    let cutoff = observed + 1e-7;
    let max = probs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // normalising by the total cancels the rounding in the log-factorials
    let total: f64 = probs.iter().map(|lp| (lp - max).exp()).sum();
    let sum: f64 = probs.iter().filter(|&&lp| lp <= cutoff).map(|lp| (lp - max).exp()).sum();
    (sum / total).min(1.0)
}

/// Compares two enriched counts out of the same number of tested sets on the
/// table `[enriched, not enriched] × [A, B]`.
pub fn fisher_exact_comparison(count_a: u64, count_b: u64, total: u64) -> Result<f64> {
    if count_a > total || count_b > total {
        return Err(Error::Precondition(format!(
            "enriched counts {count_a} and {count_b} must not exceed {total}"
        )));
    }
    Ok(fisher_exact_2x2(count_a, total - count_a, count_b, total - count_b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_counts() {
        assert_eq!(fisher_exact_comparison(10, 10, 40).unwrap(), 1.0);
        assert!(fisher_exact_comparison(41, 1, 40).is_err());
    }

    #[test]
    fn tea_tasting_table() {
        assert!((fisher_point_probability(1, 9, 11, 3) - 0.001_346).abs() < 5e-7);
        let brute = {
            // direct enumeration with exact binomials
            let choose = |n: u64, k: u64| -> f64 { (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64) };
            let p = |a: u64| choose(10, a) * choose(14, 12 - a) / choose(24, 12);
            let obs = p(1);
            (0..=10).map(p).filter(|&q| q <= obs * (1.0 + 1e-9)).sum::<f64>()
        };
        assert!((fisher_exact_2x2(1, 9, 11, 3) - brute).abs() < 1e-12);
        assert!((brute - 0.002_759_5).abs() < 1e-6);
    }

    #[test]
    fn symmetric_in_columns() {
        let a = fisher_exact_comparison(316, 271, 1531).unwrap();
        let b = fisher_exact_comparison(271, 316, 1531).unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}
