//! Point-mass contamination `(1 - ε) F + ε δ_x` and its symmetric version
//! `(1 - ε) F + (ε/2)(δ_x + δ_{-x})`.

use std::sync::Arc;

use crate::distributions::QuantileDistribution;
use crate::error::{Error, Result};
use crate::gaussian::{quantile_unchecked, std_normal_cdf, upper_tail_score};

/// Default contamination levels: `1e-2 / 2^k`, `k = 0..5`.
pub fn default_eps_sequence() -> Vec<f64> {
    (0..5).map(|k| 1e-2 / f64::powi(2.0, k)).collect()
}

#[derive(Clone)]
pub struct ContaminationSpec {
    pub base: Arc<dyn QuantileDistribution>,
    pub x: f64,
    pub eps_sequence: Vec<f64>,
    pub symmetric: bool,
}

impl std::fmt::Debug for ContaminationSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ContaminationSpec")
            .field("base", &self.base.label())
            .field("x", &self.x)
            .field("eps_sequence", &self.eps_sequence)
            .field("symmetric", &self.symmetric)
            .finish()
    }
}

impl ContaminationSpec {
    pub fn new(base: Arc<dyn QuantileDistribution>, x: f64, symmetric: bool) -> Result<Self> {
        Self::with_eps(base, x, symmetric, default_eps_sequence())
    }

    pub fn with_eps(base: Arc<dyn QuantileDistribution>, x: f64, symmetric: bool, eps_sequence: Vec<f64>) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::domain("x", x, "finite"));
        }
        if eps_sequence.len() < 2 {
            return Err(Error::Precondition("need at least two contamination levels".into()));
        }
        if eps_sequence.iter().any(|&e| !(e > 0.0 && e < 0.5)) {
            return Err(Error::Precondition("contamination levels must lie in (0, 0.5)".into()));
        }
        if eps_sequence.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Precondition("contamination levels must be strictly decreasing".into()));
        }
        Ok(Self {
            base,
            x,
            eps_sequence,
            symmetric,
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct Atom {
    x: f64,
    mass: f64,
    /// Score interval `[z_lo, z_hi]` on which the mixture quantile equals `x`.
    z_lo: f64,
    z_hi: f64,
}

/// Quantile function of a contaminated distribution.
#[derive(Clone)]
pub struct ContaminatedDistribution {
    base: Arc<dyn QuantileDistribution>,
    eps: f64,
    atoms: Vec<Atom>,
}

/// Score corresponding to a probability given both as lower and upper tail.
fn score_from(lower: f64, upper: f64) -> f64 {
    if lower <= 0.0 {
        f64::NEG_INFINITY
    } else if upper <= 0.0 {
        f64::INFINITY
    } else if lower <= upper {
        quantile_unchecked(lower)
    } else {
        upper_tail_score(upper)
    }
}

/// Score `z` with `F⁻¹(Φ(z)) = x`, by bisection; `±∞` outside the support.
pub(crate) fn base_score_of(base: &dyn QuantileDistribution, x: f64) -> f64 {
    const Z_MAX: f64 = 38.0;
    if base.quantile_at_score(Z_MAX) < x {
        return f64::INFINITY;
    }
    if base.quantile_at_score(-Z_MAX) >= x {
        return f64::NEG_INFINITY;
    }
    let (mut lo, mut hi) = (-Z_MAX, Z_MAX);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if base.quantile_at_score(mid) < x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn contaminated_quantile(spec: &ContaminationSpec, eps: f64) -> Result<ContaminatedDistribution> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::domain("eps", eps, "0 < eps < 0.5"));
    }
    let mut points: Vec<(f64, f64)> = if spec.symmetric && spec.x != 0.0 {
        vec![(-spec.x.abs(), 0.5 * eps), (spec.x.abs(), 0.5 * eps)]
    } else {
        vec![(spec.x, eps)]
    };
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    let keep = 1.0 - eps;
    let total: f64 = points.iter().map(|p| p.1).sum();
    let mut atoms = Vec::with_capacity(points.len());
    let mut mass_below = 0.0;
    for &(x, mass) in &points {
        let z = base_score_of(spec.base.as_ref(), x);
        let below = keep * std_normal_cdf(z) + mass_below;
        let above = keep * std_normal_cdf(-z) + (total - mass_below - mass);
        atoms.push(Atom {
            x,
            mass,
            z_lo: score_from(below, above + mass),
            z_hi: score_from(below + mass, above),
        });
        mass_below += mass;
    }
    Ok(ContaminatedDistribution {
        base: Arc::clone(&spec.base),
        eps,
        atoms,
    })
}

impl ContaminatedDistribution {
    pub fn eps(&self) -> f64 {
        self.eps
    }
}

impl QuantileDistribution for ContaminatedDistribution {
    fn quantile(&self, u: f64) -> f64 {
        self.quantile_at_score(quantile_unchecked(u))
    }

    fn quantile_at_score(&self, z: f64) -> f64 {
        let keep = 1.0 - self.eps;
        let mut mass_below = 0.0;
        for a in &self.atoms {
            if z >= a.z_lo && z <= a.z_hi {
                return a.x;
            }
            if z > a.z_hi {
                mass_below += a.mass;
            }
        }
        let mass_above = self.eps - mass_below;
        let base_score = if z <= 0.0 {
            let v = ((std_normal_cdf(z) - mass_below) / keep).clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON);
            quantile_unchecked(v)
        } else {
            let v = ((std_normal_cdf(-z) - mass_above) / keep).clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON);
            upper_tail_score(v)
        };
        self.base.quantile_at_score(base_score)
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self
            .atoms
            .iter()
            .flat_map(|a| [a.z_lo, a.z_hi])
            .filter(|z| z.is_finite())
            .collect();
        b.extend(self.base.breakpoints());
        b
    }

    fn label(&self) -> String {
        let atoms: Vec<String> = self.atoms.iter().map(|a| format!("{}@{}", a.mass, a.x)).collect();
        format!("{} + [{}]", self.base.label(), atoms.join(", "))
    }
}
