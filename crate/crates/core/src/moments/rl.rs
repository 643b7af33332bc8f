//! Sample rescaled L-moments, linear in the sample L-moments.

use serde::{Deserialize, Serialize};

use super::lmoments::sample_l_moments;
use super::Sample;
use crate::error::{Error, Result};
use crate::gaussian::RlConstants;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RlMoments {
    pub rho1: f64,
    pub rho2: f64,
    /// `ρ̂*_3`
    pub skewness: f64,
    /// `ρ̂*_4`
    pub kurtosis: f64,
}

impl RlMoments {
    pub fn from_l_moments(l: &[f64], c: &RlConstants) -> Result<Self> {
        if !(l[1] > 0.0) {
            return Err(Error::ZeroScale("sample L-scale"));
        }
        let t3 = l[2] / l[1];
        let t4 = l[3] / l[1];
        Ok(Self {
            rho1: l[0],
            rho2: c.scale_factor() * l[1],
            skewness: c.skewness_factor() * t3,
            kurtosis: c.rl_kurtosis(t4),
        })
    }
}

pub fn sample_rl_moments(s: &Sample) -> Result<RlMoments> {
    RlMoments::from_l_moments(&sample_l_moments(s, 4)?, RlConstants::gaussian())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::sample_l_moment_ratios;

    #[test]
    fn linear_in_l_moment_ratios() {
        let s = Sample::new(vec![0.3, -1.2, 2.5, 0.0, 0.7, 4.1, -0.4, 1.1, 0.9, -2.2]).unwrap();
        let c = RlConstants::gaussian();
        let rl = sample_rl_moments(&s).unwrap();
        let (t3, t4) = sample_l_moment_ratios(&s).unwrap();
        assert!((rl.skewness / t3 - c.delta_12_2 / c.delta_12_3).abs() < 1e-10);
        assert!((rl.kurtosis - 1.7560 * (t4 - 0.1226)).abs() < 1e-3);
        // the factor form and the two-term form agree
        let direct = c.delta_12_2 / 5.0 * (3.0 / c.delta_23_4 + 2.0 / c.delta_34_4) * t4
            - 3.0 * c.delta_12_2 / 5.0 * (1.0 / c.delta_23_4 - 1.0 / c.delta_34_4);
        assert!((rl.kurtosis - direct).abs() < 1e-14);
        assert!(sample_rl_moments(&Sample::new(vec![1.0; 5]).unwrap()).is_err());
    }
}
