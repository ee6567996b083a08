//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate falls below the absolute tolerance. Each segment is evaluated
//! with the 15-point rule on itself and on both halves; its error is the
//! larger of the halves' QUADPACK `qk15` estimates and the disagreement
//! between the two levels, plus a check of the endpoint values against
//! extrapolation from the outermost nodes so that a jump hiding next to an
//! endpoint is not missed. Estimates are floored at a few ulps of the local
//! integral.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::sum::KahanSum;

/// Default absolute tolerance for normalization, entropy and TV integrals.
pub const DEFAULT_ABS_TOL: f64 = 1e-9;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub max_intervals: usize,
    /// Number of equal pieces the range is cut into before adapting.
    pub initial_pieces: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: DEFAULT_ABS_TOL,
            max_intervals: 20_000,
            initial_pieces: 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * res_abs;
    error = error.max(roundoff);

    // A jump between an endpoint and the outermost node is invisible to every
    // rule above. Compare each endpoint value with the linear extrapolation
    // from the two outermost nodes on that side.
    let reach = (1.0 - XGK[0]) / (XGK[0] - XGK[1]);
    let gap = half.abs() * (1.0 - XGK[0]);
    let (fa, fb) = (f(a), f(b));
    let pred_a = fv1[0] + (fv1[0] - fv1[1]) * reach;
    let pred_b = fv2[0] + (fv2[0] - fv2[1]) * reach;
    error = error.max(gap * ((fa - pred_a).abs() + (fb - pred_b).abs()));

    Segment { a, b, value, error }
}

fn segment<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let mid = 0.5 * (a + b);
    let whole = kronrod15(f, a, b);
    if mid <= a || mid >= b {
        return whole;
    }
    let left = kronrod15(f, a, mid);
    let right = kronrod15(f, mid, b);
    let value = left.value + right.value;
    let error = (left.error + right.error).max((whole.value - value).abs());
    Segment { a, b, value, error }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `cfg.abs_tol`.
///
/// Fails with [`Error::Quadrature`] if the interval budget is exhausted or the
/// integrand produces a non-finite value.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        });
    }
    let pieces = cfg.initial_pieces.max(1);
    let mut heap = BinaryHeap::with_capacity(cfg.max_intervals + 1);
    let width = (b - a) / pieces as f64;
    for i in 0..pieces {
        let lo = a + width * i as f64;
        let hi = if i + 1 == pieces {
            b
        } else {
            a + width * (i + 1) as f64
        };
        heap.push(segment(&f, lo, hi));
    }

    let mut total_error: f64 = heap.iter().map(|s| s.error).sum();
    while total_error > cfg.abs_tol && heap.len() < cfg.max_intervals {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval cannot be split further in floating point.
            heap.push(worst);
            break;
        }
        let left = segment(&f, worst.a, mid);
        let right = segment(&f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    let intervals = heap.len();
    let mut value = KahanSum::new();
    let mut error = KahanSum::new();
    for s in heap.into_iter() {
        value.add(s.value);
        error.add(s.error);
    }
    let (value, error) = (value.value(), error.value());

    if !value.is_finite() || !error.is_finite() {
        return Err(Error::Quadrature {
            error,
            tol: cfg.abs_tol,
        });
    }
    if error > cfg.abs_tol {
        return Err(Error::Quadrature {
            error,
            tol: cfg.abs_tol,
        });
    }
    Ok(Quadrature {
        value,
        error,
        intervals,
    })
}
