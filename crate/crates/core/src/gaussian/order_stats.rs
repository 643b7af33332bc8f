//! Expected powers of standard Gaussian order statistics, `E(Z_{i:n}^k)`.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, LazyLock, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{quantile_unchecked, std_normal_log_cdf, std_normal_log_pdf, std_normal_pdf};
use crate::cache;
use crate::error::{Error, Result};
use crate::polynomials::{PolynomialFamily, PolynomialKind};
use crate::quadrature::{integrate, QuadConfig};

pub const DEFAULT_MAX_POWER: usize = 4;
const MAX_SUPPORTED_POWER: usize = 8;
const Z_LIMIT: f64 = 9.0;

/// `E(Z_{i:n}^k)` for `i = 1..=n`, `k = 1..=max_power`.
///
/// Tables are immutable once built and shared through [`OrderStatisticTable::get`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderStatisticTable {
    n: usize,
    max_power: usize,
    /// Row-major, row `i - 1` holds powers `1..=max_power`.
    values: Vec<f64>,
}

impl OrderStatisticTable {
    /// Builds the table by quadrature, using the reflection symmetry
    /// `E(Z_{n+1-i:n}^k) = (-1)^k E(Z_{i:n}^k)` to halve the work.
    pub fn compute(n: usize, max_power: usize) -> Result<Self> {
        check_shape(n, max_power)?;
        let half = n.div_ceil(2);
        let rows: Vec<Vec<f64>> = (1..=half)
            .into_par_iter()
            .map(|i| order_statistic_powers(i, n, max_power))
            .collect();
        let mut values = vec![0.0; n * max_power];
        for (idx, row) in rows.iter().enumerate() {
            let i = idx + 1;
            let mirror = n - idx;
            for k in 1..=max_power {
                let v = row[k - 1];
                values[idx * max_power + k - 1] = v;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                values[(mirror - 1) * max_power + k - 1] = sign * v;
                if i == mirror && k % 2 == 1 {
                    // the median of an odd-sized sample has vanishing odd moments
                    values[idx * max_power + k - 1] = 0.0;
                }
            }
        }
        Ok(Self {
            n,
            max_power,
            values,
        })
    }

    /// Shared table for `(n, max_power)`, built at most once per process and
    /// persisted under the directory named by the cache environment variable
    /// when it is set.
    pub fn get(n: usize, max_power: usize) -> Result<Arc<Self>> {
        let dir = cache::cache_dir_from_env();
        Self::get_with_cache_dir(n, max_power, dir.as_deref())
    }

    pub fn get_with_cache_dir(n: usize, max_power: usize, dir: Option<&Path>) -> Result<Arc<Self>> {
        static TABLES: LazyLock<Mutex<HashMap<(usize, usize), Arc<OrderStatisticTable>>>> =
            LazyLock::new(|| Mutex::new(HashMap::new()));
        check_shape(n, max_power)?;
        if let Some(t) = TABLES.lock().expect("table cache poisoned").get(&(n, max_power)) {
            return Ok(Arc::clone(t));
        }
        let key = format!("n{n}-k{max_power}");
        let table: OrderStatisticTable = cache::load_or_compute(dir, "gaussian-order-stats", &key, || {
            Self::compute(n, max_power)
        })?;
        if table.n != n || table.max_power != max_power || table.values.len() != n * max_power {
            return Err(Error::Cache {
                path: dir.map(|d| cache::entry_path(d, "gaussian-order-stats", &key)).unwrap_or_default(),
                message: "table shape does not match its key".into(),
            });
        }
        let mut map = TABLES.lock().expect("table cache poisoned");
        Ok(Arc::clone(map.entry((n, max_power)).or_insert_with(|| Arc::new(table))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_power(&self) -> usize {
        self.max_power
    }

    /// `E(Z_{i:n}^k)`, 1-based `i`, `0 <= k <= max_power`.
    pub fn moment(&self, i: usize, k: usize) -> f64 {
        assert!(i >= 1 && i <= self.n, "order-statistic index {i} out of 1..={}", self.n);
        assert!(k <= self.max_power, "power {k} exceeds table maximum {}", self.max_power);
        if k == 0 {
            return 1.0;
        }
        self.values[(i - 1) * self.max_power + k - 1]
    }

    /// `E(Z_{i:n})` for every `i`.
    pub fn means(&self) -> Vec<f64> {
        (1..=self.n).map(|i| self.moment(i, 1)).collect()
    }

    /// `E(H_d(Z_{i:n}))` for every `i`, expanded in the power basis.
    pub fn hermite_expectations(&self, degree: usize) -> Vec<f64> {
        assert!(degree <= self.max_power, "Hermite degree {degree} needs a larger table");
        let coeffs = PolynomialFamily::new(PolynomialKind::Hermite, degree).coefficients(degree);
        (1..=self.n)
            .map(|i| {
                coeffs
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * self.moment(i, k))
                    .sum()
            })
            .collect()
    }
}

fn check_shape(n: usize, max_power: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("order-statistic table needs n >= 1".into()));
    }
    if max_power == 0 || max_power > MAX_SUPPORTED_POWER {
        return Err(Error::Precondition(format!(
            "max_power must be in 1..={MAX_SUPPORTED_POWER}, got {max_power}"
        )));
    }
    Ok(())
}

/// Single value `E(Z_{i:n}^k)` by quadrature.
pub fn expected_gaussian_order_statistic_power(i: usize, n: usize, k: usize) -> Result<f64> {
    if i == 0 || i > n {
        return Err(Error::Index { i, j: i, k: n });
    }
    if k == 0 {
        return Ok(1.0);
    }
    if k > MAX_SUPPORTED_POWER {
        return Err(Error::Precondition(format!("power must be at most {MAX_SUPPORTED_POWER}")));
    }
    Ok(order_statistic_powers(i, n, k)[k - 1])
}

/// `[E(Z_{i:n}^1), ..., E(Z_{i:n}^max_power)]`.
fn order_statistic_powers(i: usize, n: usize, max_power: usize) -> Vec<f64> {
    let log_norm = libm::lgamma(n as f64 + 1.0) - libm::lgamma(i as f64) - libm::lgamma((n - i) as f64 + 1.0);
    let lo_pow = (i - 1) as f64;
    let hi_pow = (n - i) as f64;
    let density = move |z: f64| {
        let mut log_w = log_norm + std_normal_log_pdf(z);
        if lo_pow > 0.0 {
            log_w += lo_pow * std_normal_log_cdf(z);
        }
        if hi_pow > 0.0 {
            log_w += hi_pow * std_normal_log_cdf(-z);
        }
        log_w.exp()
    };
    let f = |z: f64| {
        let w = density(z);
        let mut out = [0.0; MAX_SUPPORTED_POWER];
        let mut p = w;
        for slot in out.iter_mut().take(max_power) {
            p *= z;
            *slot = p;
        }
        out
    };

    // Concentrate the initial subdivision where the density lives: its
    // location and spread are approximated by the quantile at Blom's plotting
    // position and the delta-method standard deviation.
    let p = (i as f64 - 0.375) / (n as f64 + 0.25);
    let centre = quantile_unchecked(p);
    let spread = (p * (1.0 - p) / (n as f64 + 2.0)).sqrt() / std_normal_pdf(centre);
    let a = (centre - 12.0 * spread).max(-Z_LIMIT);
    let b = (centre + 12.0 * spread).min(Z_LIMIT);
    let cfg = QuadConfig {
        abs_tol: 1e-14,
        rel_tol: 1e-13,
        max_intervals: 2000,
        initial_pieces: 1,
    };
    let core = integrate(f, a, b, &QuadConfig { initial_pieces: 24, ..cfg });
    let left = integrate(f, -Z_LIMIT, a, &cfg);
    let right = integrate(f, b, Z_LIMIT, &cfg);
    if !(core.converged && left.converged && right.converged) {
        log::debug!("order statistic ({i}, {n}) quadrature stopped before reaching tolerance");
    }
    (0..max_power)
        .map(|k| left.value[k] + core.value[k] + right.value[k])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_forms_for_small_n() {
        assert!(expected_gaussian_order_statistic_power(1, 1, 1).unwrap().abs() < 1e-14);
        let e22 = expected_gaussian_order_statistic_power(2, 2, 1).unwrap();
        assert!((e22 - 1.0 / PI.sqrt()).abs() < 1e-12);
        let e12 = expected_gaussian_order_statistic_power(1, 2, 1).unwrap();
        assert!((e12 + 1.0 / PI.sqrt()).abs() < 1e-12);
        // E(Z_{3:3}) = 3 / (2 sqrt(pi))
        let e33 = expected_gaussian_order_statistic_power(3, 3, 1).unwrap();
        assert!((e33 - 1.5 / PI.sqrt()).abs() < 1e-12);
        // E(Z_{1:1}^2) = 1, E(Z^4) = 3
        assert!((expected_gaussian_order_statistic_power(1, 1, 2).unwrap() - 1.0).abs() < 1e-12);
        assert!((expected_gaussian_order_statistic_power(1, 1, 4).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn bad_indices() {
        assert!(expected_gaussian_order_statistic_power(0, 3, 1).is_err());
        assert!(expected_gaussian_order_statistic_power(4, 3, 1).is_err());
        assert!(OrderStatisticTable::compute(0, 4).is_err());
    }

    #[test]
    fn table_sum_identities() {
        for &n in &[1usize, 2, 7, 20, 101, 817] {
            let t = OrderStatisticTable::compute(n, 4).unwrap();
            let s1: f64 = (1..=n).map(|i| t.moment(i, 1)).sum();
            let s2: f64 = (1..=n).map(|i| t.moment(i, 2)).sum();
            let s4: f64 = (1..=n).map(|i| t.moment(i, 4)).sum();
            assert!(s1.abs() < 1e-8, "n = {n}");
            assert!((s2 - n as f64).abs() < 1e-6, "n = {n}: {s2}");
            assert!((s4 - 3.0 * n as f64).abs() < 1e-6, "n = {n}: {s4}");
            for i in 1..=n {
                assert!((t.moment(i, 1) + t.moment(n + 1 - i, 1)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn strictly_increasing_means() {
        for n in (2..=200).step_by(11) {
            let m = OrderStatisticTable::compute(n, 1).unwrap().means();
            assert!(m.windows(2).all(|w| w[0] < w[1]), "n = {n}");
        }
    }

    #[test]
    fn large_n_is_finite_and_balanced() {
        let t = OrderStatisticTable::compute(10_000, 2).unwrap();
        let s2: f64 = (1..=t.n()).map(|i| t.moment(i, 2)).sum();
        assert!((s2 - 10_000.0).abs() < 1e-5, "{s2}");
        // known value E(Z_{10000:10000}) ~ 3.8508
        assert!((t.moment(10_000, 1) - 3.8508).abs() < 1e-3);
    }

    #[test]
    fn hermite_expectations_match_definition() {
        let t = OrderStatisticTable::compute(9, 4).unwrap();
        let h3 = t.hermite_expectations(3);
        for i in 1..=9 {
            let direct = t.moment(i, 3) - 3.0 * t.moment(i, 1);
            assert!((h3[i - 1] - direct).abs() < 1e-14);
        }
        let h0 = t.hermite_expectations(0);
        assert!(h0.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn shared_table_and_disk_cache_agree() {
        let dir = tempfile::tempdir().unwrap();
        let a = OrderStatisticTable::get_with_cache_dir(13, 3, Some(dir.path())).unwrap();
        let b = OrderStatisticTable::get_with_cache_dir(13, 3, None).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let path = cache::entry_path(dir.path(), "gaussian-order-stats", "n13-k3");
        let text = std::fs::read_to_string(path).unwrap();
        assert!(text.contains("\"format_version\":1"));
        let fresh = OrderStatisticTable::compute(13, 3).unwrap();
        assert_eq!(*a, fresh);
    }
}
