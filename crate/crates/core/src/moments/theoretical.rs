//! Population values of the measures for a distribution given by its
//! quantile function.
//!
//! Every integral `∫₀¹ F⁻¹(u) w(u) du` is taken in score coordinates,
//! `∫ F⁻¹(Φ(z)) w(Φ(z)) φ(z) dz`. The central range `Φ(z) ∈ [ε₀, 1 - ε₀]`,
//! `ε₀ = 1e-6` (widened to contain every breakpoint of the distribution),
//! is integrated adaptively. The tails are then added piece by piece, each
//! piece halving the remaining tail probability, until a piece and a
//! geometric estimate of the rest both fall below the tolerance.

use serde::{Deserialize, Serialize};

use crate::distributions::QuantileDistribution;
use crate::error::{Error, Result};
use crate::gaussian::{
    rescaled_weight_polynomial, std_normal_cdf, std_normal_pdf, upper_tail_score, GaussianReference,
    RlConstants,
};
use crate::moments::quantile::{bowley_from_quantiles, ruppert_from_quantiles};
use crate::polynomials::{eval_hermite, shifted_legendre_unchecked, Polynomial};
use crate::quadrature::{integrate, QuadConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MomentFamily {
    L,
    HL,
    RL,
}

/// Controls for the tail refinement.
#[derive(Debug, Clone, Copy)]
pub struct TailConfig {
    /// Tail probability where refinement starts.
    pub start_eps: f64,
    /// A tail is finished once its pieces fall below `rel_tol * max(1, |I|)`.
    pub rel_tol: f64,
    /// Refinement gives up below this tail probability.
    pub min_eps: f64,
}

impl Default for TailConfig {
    fn default() -> Self {
        Self {
            start_eps: 1e-6,
            rel_tol: 1e-13,
            min_eps: 1e-300,
        }
    }
}

const CORE_CFG: QuadConfig = QuadConfig {
    abs_tol: 1e-15,
    rel_tol: 1e-14,
    max_intervals: 4000,
    initial_pieces: 1,
};

fn magnitude<const D: usize>(v: &[f64; D]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// `∫ k(z, F⁻¹(Φ(z))) φ(z) dz` for a vector kernel `k`.
pub fn integrate_quantile<const D: usize, K>(dist: &dyn QuantileDistribution, kernel: K) -> Result<[f64; D]>
where
    K: Fn(f64, f64) -> [f64; D],
{
    integrate_quantile_with(dist, kernel, &TailConfig::default())
}

pub fn integrate_quantile_with<const D: usize, K>(
    dist: &dyn QuantileDistribution,
    kernel: K,
    cfg: &TailConfig,
) -> Result<[f64; D]>
where
    K: Fn(f64, f64) -> [f64; D],
{
    let integrand = |z: f64| {
        let w = std_normal_pdf(z);
        if w == 0.0 {
            return [0.0; D];
        }
        let mut v = kernel(z, dist.quantile_at_score(z));
        v.iter_mut().for_each(|x| *x *= w);
        v
    };
    let z_limit = upper_tail_score(cfg.min_eps);
    let z_core = upper_tail_score(cfg.start_eps);
    let mut knots: Vec<f64> = dist
        .breakpoints()
        .into_iter()
        .filter(|b| b.is_finite())
        .map(|b| b.clamp(-z_limit + 1.0, z_limit - 1.0))
        .collect();
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let lo = knots.first().map_or(-z_core, |b| (b - 0.5).min(-z_core));
    let hi = knots.last().map_or(z_core, |b| (b + 0.5).max(z_core));
    knots.insert(0, lo);
    knots.push(hi);

    let mut total = [0.0; D];
    for w in knots.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let pieces = ((w[1] - w[0]) * 2.0).ceil().max(2.0) as usize;
        let r = integrate(&integrand, w[0], w[1], &QuadConfig { initial_pieces: pieces, ..CORE_CFG });
        if !r.converged {
            log::debug!("central quadrature on [{}, {}] stopped at error {:e}", w[0], w[1], r.error);
        }
        for d in 0..D {
            total[d] += r.value[d];
        }
    }

    for side in [1.0, -1.0] {
        let start = if side > 0.0 { hi } else { -lo };
        let tail = integrate_tail(&integrand, side, start, &total, cfg)?;
        for d in 0..D {
            total[d] += tail[d];
        }
    }
    Ok(total)
}

/// Adds the pieces beyond `side * start`, halving the remaining tail
/// probability each time.
fn integrate_tail<const D: usize, F>(f: &F, side: f64, start: f64, core: &[f64; D], cfg: &TailConfig) -> Result<[f64; D]>
where
    F: Fn(f64) -> [f64; D],
{
    let mut sum = [0.0; D];
    let mut eps = std_normal_cdf(-start);
    let mut z = start;
    let mut prev_mag = f64::INFINITY;
    loop {
        let tol = cfg.rel_tol * magnitude(core).max(magnitude(&sum)).max(1.0);
        let next_eps = 0.5 * eps;
        if next_eps < cfg.min_eps {
            return Err(Error::NonConvergence(format!(
                "tail integral has not settled by tail probability {:e} (last piece {:e})",
                eps, prev_mag
            )));
        }
        let z_next = upper_tail_score(next_eps);
        let (a, b) = if side > 0.0 { (z, z_next) } else { (-z_next, -z) };
        let piece = integrate(f, a, b, &QuadConfig { initial_pieces: 1, ..CORE_CFG }).value;
        for d in 0..D {
            sum[d] += piece[d];
        }
        let mag = magnitude(&piece);
        if mag <= tol {
            let ratio = if prev_mag.is_finite() && prev_mag > 0.0 { mag / prev_mag } else { 0.0 };
            let remainder = if ratio < 1.0 { mag * ratio / (1.0 - ratio) } else { f64::INFINITY };
            if remainder <= tol {
                return Ok(sum);
            }
        }
        if !mag.is_finite() {
            return Err(Error::NonConvergence("tail integrand is not finite".into()));
        }
        prev_mag = mag;
        eps = next_eps;
        z = z_next;
    }
}

/// `[λ_1, λ_2, λ_3, λ_4]`.
pub fn theoretical_l_moments(dist: &dyn QuantileDistribution) -> Result<[f64; 4]> {
    integrate_quantile(dist, |z, q| {
        let u = std_normal_cdf(z);
        [
            q,
            q * shifted_legendre_unchecked(1, u),
            q * shifted_legendre_unchecked(2, u),
            q * shifted_legendre_unchecked(3, u),
        ]
    })
}

/// `[η_1, η_2, η_3, η_4]`.
pub fn theoretical_hl_moments(dist: &dyn QuantileDistribution) -> Result<[f64; 4]> {
    integrate_quantile(dist, |z, q| {
        [q, q * z, q * eval_hermite(2, z), q * eval_hermite(3, z)]
    })
}

/// `[ρ_1, ρ_2, ρ_3, ρ_4]` from the rescaled weight polynomials.
pub fn theoretical_rl_moments(dist: &dyn QuantileDistribution) -> Result<[f64; 4]> {
    let polys: Vec<Polynomial> = (1..=4)
        .map(|r| rescaled_weight_polynomial(&GaussianReference, r))
        .collect::<Result<_>>()?;
    integrate_quantile(dist, |z, q| {
        let u = std_normal_cdf(z);
        [q * polys[0].eval(u), q * polys[1].eval(u), q * polys[2].eval(u), q * polys[3].eval(u)]
    })
}

/// A single moment of order `r` (1..=4) in the given family.
pub fn theoretical_moment(dist: &dyn QuantileDistribution, family: MomentFamily, r: usize) -> Result<f64> {
    if r == 0 || r > 4 {
        return Err(Error::Precondition(format!("theoretical moments are provided for orders 1..=4, got {r}")));
    }
    let all = match family {
        MomentFamily::L => theoretical_l_moments(dist)?,
        MomentFamily::HL => theoretical_hl_moments(dist)?,
        MomentFamily::RL => theoretical_rl_moments(dist)?,
    };
    Ok(all[r - 1])
}

/// `(order-3 ratio, order-4 ratio)` of a family, each divided by the
/// order-2 moment.
pub fn theoretical_ratios(dist: &dyn QuantileDistribution, family: MomentFamily) -> Result<(f64, f64)> {
    let m = match family {
        MomentFamily::L => theoretical_l_moments(dist)?,
        MomentFamily::HL => theoretical_hl_moments(dist)?,
        MomentFamily::RL => theoretical_rl_moments(dist)?,
    };
    if !(m[1] > 0.0) {
        return Err(Error::ZeroScale("theoretical second moment"));
    }
    Ok((m[2] / m[1], m[3] / m[1]))
}

/// Population mean, standard deviation, skewness `γ₁` and excess kurtosis `γ₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConventionalMoments {
    pub mean: f64,
    pub sd: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

pub fn theoretical_conventional(dist: &dyn QuantileDistribution) -> Result<ConventionalMoments> {
    let [mean] = integrate_quantile(dist, |_, q| [q])?;
    let [m2, m3, m4] = integrate_quantile(dist, |_, q| {
        let d = q - mean;
        let d2 = d * d;
        [d2, d2 * d, d2 * d2]
    })?;
    if !(m2 > 0.0) {
        return Err(Error::ZeroScale("theoretical variance"));
    }
    Ok(ConventionalMoments {
        mean,
        sd: m2.sqrt(),
        skewness: m3 / m2.powf(1.5),
        kurtosis: m4 / (m2 * m2) - 3.0,
    })
}

pub fn theoretical_bowley(dist: &dyn QuantileDistribution, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::domain("p", p, "0 < p < 0.5"));
    }
    bowley_from_quantiles(dist.quantile(p), dist.quantile(0.5), dist.quantile(1.0 - p))
}

pub fn theoretical_ruppert(dist: &dyn QuantileDistribution, p1: f64, p2: f64) -> Result<f64> {
    if !(p1 > 0.0 && p1 < p2 && p2 < 0.5) {
        return Err(Error::Precondition(format!(
            "Ruppert kurtosis needs 0 < p1 < p2 < 0.5, got p1 = {p1}, p2 = {p2}"
        )));
    }
    ruppert_from_quantiles(
        (dist.quantile(p1), dist.quantile(1.0 - p1)),
        (dist.quantile(p2), dist.quantile(1.0 - p2)),
    )
}

/// RL ratios through the linear relation to the L ratios.
pub fn theoretical_rl_ratios_from_l(dist: &dyn QuantileDistribution) -> Result<(f64, f64)> {
    let (t3, t4) = theoretical_ratios(dist, MomentFamily::L)?;
    let c = RlConstants::gaussian();
    Ok((c.skewness_factor() * t3, c.rl_kurtosis(t4)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{Exponential, Normal, StandardNormal, TukeyGH, Uniform};
    use std::f64::consts::PI;

    #[test]
    fn uniform_l_moments() {
        let l = theoretical_l_moments(&Uniform::standard()).unwrap();
        assert!((l[0] - 0.5).abs() < 1e-12);
        assert!((l[1] - 1.0 / 6.0).abs() < 1e-12);
        assert!(l[2].abs() < 1e-10 && l[3].abs() < 1e-10);
    }

    #[test]
    fn gaussian_centering() {
        for d in [&StandardNormal as &dyn QuantileDistribution, &Normal::new(3.0, 2.5).unwrap()] {
            let (h3, h4) = theoretical_ratios(d, MomentFamily::HL).unwrap();
            let (r3, r4) = theoretical_ratios(d, MomentFamily::RL).unwrap();
            assert!(h3.abs() < 1e-8 && h4.abs() < 1e-8, "{h3} {h4}");
            assert!(r3.abs() < 1e-8 && r4.abs() < 1e-8, "{r3} {r4}");
        }
        let l = theoretical_l_moments(&StandardNormal).unwrap();
        assert!((l[1] - 1.0 / PI.sqrt()).abs() < 1e-12);
        let c = RlConstants::gaussian();
        assert!((l[3] / l[1] - c.reference_l_kurtosis).abs() < 1e-10);
    }

    #[test]
    fn rl_polynomial_route_matches_linear_relation() {
        let d = TukeyGH::new(0.3, 0.1).unwrap();
        let (a3, a4) = theoretical_ratios(&d, MomentFamily::RL).unwrap();
        let (b3, b4) = theoretical_rl_ratios_from_l(&d).unwrap();
        assert!((a3 - b3).abs() < 1e-10 && (a4 - b4).abs() < 1e-10);
    }

    #[test]
    fn exponential_values() {
        let e = Exponential::new(1.0).unwrap();
        let (t3, t4) = theoretical_ratios(&e, MomentFamily::L).unwrap();
        assert!((t3 - 1.0 / 3.0).abs() < 1e-10 && (t4 - 1.0 / 6.0).abs() < 1e-10);
        let c = theoretical_conventional(&e).unwrap();
        assert!((c.mean - 1.0).abs() < 1e-10 && (c.sd - 1.0).abs() < 1e-10);
        assert!((c.skewness - 2.0).abs() < 1e-9 && (c.kurtosis - 6.0).abs() < 1e-8);
        let (h3, _) = theoretical_ratios(&e, MomentFamily::HL).unwrap();
        assert!(h3 > 0.0);
    }

    #[test]
    fn heavy_tails_and_divergence() {
        let t = TukeyGH::new(0.0, 0.2).unwrap();
        let c = theoretical_conventional(&t).unwrap();
        // E(Z^4 e^{2hZ^2}) / E(Z^2 e^{hZ^2})^2 - 3 in closed form
        let v2 = (1.0 - 2.0 * 0.2f64).powf(-1.5);
        let v4 = 3.0 * (1.0 - 4.0 * 0.2f64).powf(-2.5);
        assert!((c.kurtosis - (v4 / (v2 * v2) - 3.0)).abs() < 1e-7, "{}", c.kurtosis);
        // fourth moment does not exist for h >= 1/4
        assert!(theoretical_conventional(&TukeyGH::new(0.0, 0.3).unwrap()).is_err());
    }

    #[test]
    fn quantile_measures() {
        let r = theoretical_ruppert(&StandardNormal, 0.1, 0.3).unwrap();
        assert!((r - 2.443_841_175_758_161).abs() < 1e-12, "{r}");
        assert!(theoretical_bowley(&StandardNormal, 0.25).unwrap().abs() < 1e-15);
        assert!(theoretical_bowley(&Exponential::new(1.0).unwrap(), 0.25).unwrap() > 0.0);
    }
}
