//! Distributions described by their quantile functions, including Tukey's
//! g-and-h family.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{quantile_unchecked, std_normal_cdf, std_normal_log_cdf};
use crate::moments::Sample;
use crate::rng::{self, Domain};

/// A distribution given by its quantile function `F⁻¹ : (0, 1) → ℝ`.
///
/// Integrals over `u` are evaluated in Gaussian-score coordinates
/// `u = Φ(z)`, so implementations may override [`quantile_at_score`] to keep
/// precision where `u` is within rounding of 0 or 1.
///
/// [`quantile_at_score`]: QuantileDistribution::quantile_at_score
pub trait QuantileDistribution: Send + Sync {
    /// `F⁻¹(u)` for `0 < u < 1`; the argument is not checked.
    fn quantile(&self, u: f64) -> f64;

    /// `F⁻¹(Φ(z))`.
    fn quantile_at_score(&self, z: f64) -> f64 {
        self.quantile(std_normal_cdf(z))
    }

    /// Scores `z` at which `F⁻¹(Φ(z))` jumps or is flat-ended (atoms).
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    fn label(&self) -> String;

    fn checked_quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::domain("u", u, "0 < u < 1"));
        }
        Ok(self.quantile(u))
    }
}

impl<T: QuantileDistribution + ?Sized> QuantileDistribution for Arc<T> {
    fn quantile(&self, u: f64) -> f64 {
        (**self).quantile(u)
    }
    fn quantile_at_score(&self, z: f64) -> f64 {
        (**self).quantile_at_score(z)
    }
    fn breakpoints(&self) -> Vec<f64> {
        (**self).breakpoints()
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StandardNormal;

impl QuantileDistribution for StandardNormal {
    fn quantile(&self, u: f64) -> f64 {
        quantile_unchecked(u)
    }
    fn quantile_at_score(&self, z: f64) -> f64 {
        z
    }
    fn label(&self) -> String {
        "N(0,1)".into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normal {
    pub mean: f64,
    pub sd: f64,
}

impl Normal {
    pub fn new(mean: f64, sd: f64) -> Result<Self> {
        if !(sd > 0.0 && sd.is_finite()) || !mean.is_finite() {
            return Err(Error::domain("sd", sd, "finite mean and 0 < sd < inf"));
        }
        Ok(Self { mean, sd })
    }
}

impl QuantileDistribution for Normal {
    fn quantile(&self, u: f64) -> f64 {
        self.mean + self.sd * quantile_unchecked(u)
    }
    fn quantile_at_score(&self, z: f64) -> f64 {
        self.mean + self.sd * z
    }
    fn label(&self) -> String {
        format!("N({}, {}^2)", self.mean, self.sd)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniform {
    pub lower: f64,
    pub upper: f64,
}

impl Uniform {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower < upper) || !lower.is_finite() || !upper.is_finite() {
            return Err(Error::domain("upper", upper, "finite bounds with lower < upper"));
        }
        Ok(Self { lower, upper })
    }

    pub fn standard() -> Self {
        Self {
            lower: 0.0,
            upper: 1.0,
        }
    }
}

impl QuantileDistribution for Uniform {
    fn quantile(&self, u: f64) -> f64 {
        self.lower + (self.upper - self.lower) * u
    }
    fn quantile_at_score(&self, z: f64) -> f64 {
        if z <= 0.0 {
            self.lower + (self.upper - self.lower) * std_normal_cdf(z)
        } else {
            self.upper - (self.upper - self.lower) * std_normal_cdf(-z)
        }
    }
    fn label(&self) -> String {
        format!("U({}, {})", self.lower, self.upper)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponential {
    pub rate: f64,
}

impl Exponential {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::domain("rate", rate, "0 < rate < inf"));
        }
        Ok(Self { rate })
    }
}

impl QuantileDistribution for Exponential {
    fn quantile(&self, u: f64) -> f64 {
        -(-u).ln_1p() / self.rate
    }
    fn quantile_at_score(&self, z: f64) -> f64 {
        -std_normal_log_cdf(-z) / self.rate
    }
    fn label(&self) -> String {
        format!("Exp({})", self.rate)
    }
}

/// Tukey's g-and-h distribution: the law of `((e^{gZ} - 1)/g) e^{hZ²/2}`,
/// or `Z e^{hZ²/2}` when `g = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TukeyGH {
    pub g: f64,
    pub h: f64,
}

impl TukeyGH {
    pub fn new(g: f64, h: f64) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::domain("g", g, "finite"));
        }
        if !(h >= 0.0 && h.is_finite()) {
            return Err(Error::domain("h", h, "0 <= h < inf"));
        }
        Ok(Self { g, h })
    }
}

impl fmt::Display for TukeyGH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T(g={}, h={})", self.g, self.h)
    }
}

pub fn tukey_gh_transform(z: f64, params: TukeyGH) -> f64 {
    let tail = (0.5 * params.h * z * z).exp();
    if params.g == 0.0 {
        z * tail
    } else {
        (params.g * z).exp_m1() / params.g * tail
    }
}

pub fn tukey_gh_quantile(u: f64, params: TukeyGH) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::domain("u", u, "0 < u < 1"));
    }
    Ok(tukey_gh_transform(quantile_unchecked(u), params))
}

impl QuantileDistribution for TukeyGH {
    fn quantile(&self, u: f64) -> f64 {
        tukey_gh_transform(quantile_unchecked(u), *self)
    }
    fn quantile_at_score(&self, z: f64) -> f64 {
        tukey_gh_transform(z, *self)
    }
    fn label(&self) -> String {
        self.to_string()
    }
}

/// Wraps an arbitrary quantile function.
#[derive(Clone)]
pub struct FnDistribution {
    quantile: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    label: String,
}

impl FnDistribution {
    pub fn new(label: impl Into<String>, quantile: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            quantile: Arc::new(quantile),
            label: label.into(),
        }
    }
}

impl fmt::Debug for FnDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnDistribution").field("label", &self.label).finish()
    }
}

impl QuantileDistribution for FnDistribution {
    fn quantile(&self, u: f64) -> f64 {
        (self.quantile)(u)
    }
    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Draws `n` values by inversion from the seeded sampling stream.
pub fn sample_distribution(dist: &dyn QuantileDistribution, n: usize, seed: u64) -> Result<Sample> {
    if n == 0 {
        return Err(Error::InsufficientSample {
            n,
            required: 1,
            what: "sampling",
        });
    }
    let mut rng = rng::stream(seed, Domain::Sampling, 0);
    let values = (0..n).map(|_| dist.quantile(rng::open_unit(&mut rng))).collect();
    Sample::new(values)
}

/// Checks that the quantile function is nondecreasing on `points` equally
/// spaced probabilities.
pub fn check_monotone(dist: &dyn QuantileDistribution, points: usize) -> Result<()> {
    let mut prev = f64::NEG_INFINITY;
    for k in 1..=points {
        let u = k as f64 / (points + 1) as f64;
        let q = dist.quantile(u);
        if q.is_nan() || q < prev {
            return Err(Error::Precondition(format!(
                "quantile function of {} decreases at u = {u}",
                dist.label()
            )));
        }
        prev = q;
    }
    Ok(())
}
