//! Globally adaptive Gauss–Kronrod (7/15) quadrature for small vector-valued
//! integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_41,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for nodes XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
    /// Number of equal pieces the range is cut into before adapting.
    pub initial_pieces: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-13,
            max_intervals: 4000,
            initial_pieces: 1,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<const D: usize> {
    pub value: [f64; D],
    pub error: f64,
    pub converged: bool,
}

struct Segment<const D: usize> {
    a: f64,
    b: f64,
    value: [f64; D],
    error: f64,
}

impl<const D: usize> PartialEq for Segment<D> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<const D: usize> Eq for Segment<D> {}
impl<const D: usize> PartialOrd for Segment<D> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const D: usize> Ord for Segment<D> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<const D: usize, F: Fn(f64) -> [f64; D]>(f: &F, a: f64, b: f64) -> Segment<D> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut k = [0.0; D];
    let mut g = [0.0; D];
    for d in 0..D {
        k[d] = WGK[7] * fc[d];
        g[d] = WG[3] * fc[d];
    }
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        for d in 0..D {
            let s = f1[d] + f2[d];
            k[d] += WGK[j] * s;
            if j % 2 == 1 {
                g[d] += WG[j / 2] * s;
            }
        }
    }
    let mut error: f64 = 0.0;
    for d in 0..D {
        k[d] *= half;
        g[d] *= half;
        error = error.max((k[d] - g[d]).abs());
    }
    Segment {
        a,
        b,
        value: k,
        error,
    }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<const D: usize, F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> QuadResult<D>
where
    F: Fn(f64) -> [f64; D],
{
    if a == b {
        return QuadResult {
            value: [0.0; D],
            error: 0.0,
            converged: true,
        };
    }
    let pieces = cfg.initial_pieces.max(1);
    let width = (b - a) / pieces as f64;
    let mut heap = BinaryHeap::with_capacity(cfg.max_intervals + pieces);
    for p in 0..pieces {
        let lo = a + p as f64 * width;
        let hi = if p + 1 == pieces { b } else { lo + width };
        heap.push(kronrod(&f, lo, hi));
    }
    let mut total = sum_values(&heap);
    let mut err: f64 = heap.iter().map(|s| s.error).sum();
    loop {
        let scale = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tol = cfg.abs_tol.max(cfg.rel_tol * scale);
        if err <= tol || heap.len() >= cfg.max_intervals {
            // fresh sums remove drift from the incremental updates
            let err: f64 = heap.iter().map(|s| s.error).sum();
            return QuadResult {
                value: sum_values(&heap),
                error: err,
                converged: err <= tol,
            };
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval can no longer be split in floating point
            heap.push(worst);
            return QuadResult {
                value: sum_values(&heap),
                error: err,
                converged: false,
            };
        }
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        err += left.error + right.error - worst.error;
        for d in 0..D {
            total[d] += left.value[d] + right.value[d] - worst.value[d];
        }
        heap.push(left);
        heap.push(right);
    }
}

fn sum_values<const D: usize>(heap: &BinaryHeap<Segment<D>>) -> [f64; D] {
    let mut total = [0.0; D];
    for s in heap.iter() {
        for d in 0..D {
            total[d] += s.value[d];
        }
    }
    total
}

/// Scalar convenience wrapper.
pub fn integrate_scalar<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> (f64, f64) {
    let r = integrate(|x| [f(x)], a, b, cfg);
    (r.value[0], r.error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let cfg = QuadConfig::default();
        let (v, _) = integrate_scalar(|x| x.powi(5) - 2.0 * x * x + 1.0, -1.0, 2.0, &cfg);
        let exact = (64.0 - 1.0) / 6.0 - 2.0 * (8.0 + 1.0) / 3.0 + 3.0;
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn peaked_integrand() {
        let cfg = QuadConfig::default();
        let s = 1e-3;
        let (v, _) = integrate_scalar(
            |x| (-(x - 0.3f64).powi(2) / (2.0 * s * s)).exp(),
            -5.0,
            5.0,
            &QuadConfig {
                initial_pieces: 50,
                ..cfg
            },
        );
        let exact = s * (2.0 * std::f64::consts::PI).sqrt();
        assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
    }

    #[test]
    fn vector_valued() {
        let r = integrate(|x| [x.sin(), x.cos()], 0.0, std::f64::consts::PI, &QuadConfig::default());
        assert!(r.converged);
        assert!((r.value[0] - 2.0).abs() < 1e-13);
        assert!(r.value[1].abs() < 1e-13);
    }
}
