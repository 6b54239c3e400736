//! Globally adaptive Gauss-Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::specfun::Complex;

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
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Equal-width panels before adaptive refinement.
    pub initial_segments: usize,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            initial_segments: 16,
            max_intervals: 50_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex,
    pub error: f64,
    pub evaluations: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

fn gk15(f: &impl Fn(f64) -> Complex, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let pair = f(c - h * XGK[i]) + f(c + h * XGK[i]);
        k += pair * WGK[i];
        if i % 2 == 1 {
            g += pair * WG[i / 2];
        }
    }
    Panel {
        a,
        b,
        value: k * h,
        error: ((k - g) * h).norm(),
    }
}

/// Integrates a complex integrand over `[a, b]`.
pub fn integrate(
    f: impl Fn(f64) -> Complex,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<QuadResult> {
    let n = opts.initial_segments.max(1);
    let w = (b - a) / n as f64;
    let mut heap: BinaryHeap<Panel> = (0..n)
        .map(|i| {
            gk15(
                &f,
                a + i as f64 * w,
                if i + 1 == n {
                    b
                } else {
                    a + (i + 1) as f64 * w
                },
            )
        })
        .collect();
    let mut evaluations = 15 * n;
    loop {
        let value: Complex = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        let tol = opts.abs_tol.max(opts.rel_tol * value.norm());
        if error <= tol {
            return Ok(QuadResult {
                value,
                error,
                evaluations,
            });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::Quadrature {
                error,
                tolerance: tol,
            });
        }
        let worst = heap.pop().expect("non-empty panel set");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::Quadrature {
                error,
                tolerance: tol,
            });
        }
        heap.push(gk15(&f, worst.a, mid));
        heap.push(gk15(&f, mid, worst.b));
        evaluations += 30;
    }
}

/// Integrates a real integrand over `[a, b]`.
pub fn integrate_real(f: impl Fn(f64) -> f64, a: f64, b: f64, opts: QuadOptions) -> Result<f64> {
    integrate(|x| Complex::new(f(x), 0.0), a, b, opts).map(|r| r.value.re)
}

/// Smallest radius past which `envelope` stays below `floor`, found by
/// geometric stepping from `start`.
pub fn truncation_radius(envelope: impl Fn(f64) -> f64, start: f64, floor: f64) -> f64 {
    let mut r = start;
    while r < 1e4 && (envelope(r) > floor || envelope(1.25 * r) > floor) {
        r *= 1.1;
    }
    r
}
