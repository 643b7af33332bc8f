//! Shifted Legendre polynomials on (0, 1) and probabilists' Hermite
//! polynomials on the real line.
//!
//! Degrees 0 through 3 are evaluated from their closed forms; higher
//! degrees run the usual three-term recurrences seeded from degrees 2 and 3.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolynomialKind {
    ShiftedLegendre,
    Hermite,
}

/// A family of orthogonal polynomials truncated at `max_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolynomialFamily {
    pub kind: PolynomialKind,
    pub max_degree: usize,
}

impl PolynomialFamily {
    pub fn new(kind: PolynomialKind, max_degree: usize) -> Self {
        Self { kind, max_degree }
    }

    /// Evaluates every degree `0..=max_degree` at `x`.
    pub fn eval_all(&self, x: f64) -> Result<Vec<f64>> {
        if self.kind == PolynomialKind::ShiftedLegendre && !(x > 0.0 && x < 1.0) {
            return Err(Error::domain("u", x, "0 < u < 1"));
        }
        Ok(match self.kind {
            PolynomialKind::ShiftedLegendre => shifted_legendre_all(self.max_degree, x),
            PolynomialKind::Hermite => hermite_all(self.max_degree, x),
        })
    }

    /// Power-basis coefficients (constant term first) of the degree-`r` member.
    pub fn coefficients(&self, r: usize) -> Polynomial {
        match self.kind {
            PolynomialKind::ShiftedLegendre => shifted_legendre_coefficients(r),
            PolynomialKind::Hermite => hermite_coefficients(r),
        }
    }
}

/// Shifted Legendre polynomial `P*_r(u)`, orthogonal on (0, 1) under unit weight.
pub fn eval_shifted_legendre(r: usize, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::domain("u", u, "0 < u < 1"));
    }
    Ok(shifted_legendre_unchecked(r, u))
}

/// Same as [`eval_shifted_legendre`] without the open-interval check; the
/// polynomial itself is defined everywhere.
pub(crate) fn shifted_legendre_unchecked(r: usize, u: f64) -> f64 {
    match r {
        0 => 1.0,
        1 => 2.0 * u - 1.0,
        2 => 6.0 * u * u - 6.0 * u + 1.0,
        3 => ((20.0 * u - 30.0) * u + 12.0) * u - 1.0,
        _ => {
            let x = 2.0 * u - 1.0;
            let mut prev = 6.0 * u * u - 6.0 * u + 1.0;
            let mut cur = ((20.0 * u - 30.0) * u + 12.0) * u - 1.0;
            for k in 3..r {
                let k = k as f64;
                let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

fn shifted_legendre_all(max_degree: usize, u: f64) -> Vec<f64> {
    (0..=max_degree)
        .map(|r| shifted_legendre_unchecked(r, u))
        .collect()
}

/// Probabilists' Hermite polynomial `H_r(x)`, orthogonal under `exp(-x^2/2)`.
pub fn eval_hermite(r: usize, x: f64) -> f64 {
    match r {
        0 => 1.0,
        1 => x,
        2 => x * x - 1.0,
        3 => x * (x * x - 3.0),
        _ => {
            let mut prev = x * x - 1.0;
            let mut cur = x * (x * x - 3.0);
            for k in 3..r {
                let next = x * cur - k as f64 * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

fn hermite_all(max_degree: usize, x: f64) -> Vec<f64> {
    (0..=max_degree).map(|r| eval_hermite(r, x)).collect()
}

/// Dense polynomial in the power basis, `coeffs[k]` multiplying `x^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|&c| c != 0.0)
            .unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn add_scaled(&mut self, other: &Polynomial, scale: f64) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0.0);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += scale * b;
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scaled(&self, s: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

fn shifted_legendre_coefficients(r: usize) -> Polynomial {
    // P*_r(u) = (-1)^r sum_k C(r,k) C(r+k,k) (-u)^k
    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
    let coeffs = (0..=r)
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * s * binomial(r, k) * binomial(r + k, k)
        })
        .collect();
    Polynomial::new(coeffs)
}

fn hermite_coefficients(r: usize) -> Polynomial {
    let mut prev = Polynomial::new(vec![1.0]);
    if r == 0 {
        return prev;
    }
    let mut cur = Polynomial::new(vec![0.0, 1.0]);
    let x = Polynomial::new(vec![0.0, 1.0]);
    for k in 1..r {
        let mut next = x.mul(&cur);
        next.add_scaled(&prev, -(k as f64));
        prev = cur;
        cur = next;
    }
    cur
}

/// Binomial coefficient as a float; exact for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
