//! Independent oracles shared by the integration tests. Nothing here calls
//! into the series or quadrature code under test.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Composite Simpson on `[a, b]` with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

/// Plain log-normal density.
pub fn lognormal_pdf(y: f64, m: f64, s: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    let z = (y.ln() - m) / s;
    (-0.5 * z * z).exp() / (y * s * (2.0 * PI).sqrt())
}

/// `Σ_{k=-R}^{R} b^k ρ(x b^k)` with a generous fixed range and naive summation.
pub fn brute_wrapped_lognormal(x: f64, m: f64, s: f64, b: f64) -> f64 {
    let r = 120;
    (-r..=r)
        .map(|k| {
            let scale = b.powi(k);
            scale * lognormal_pdf(x * scale, m, s)
        })
        .filter(|t| t.is_finite())
        .sum()
}

pub fn nb_pdf(x: f64, b: f64) -> f64 {
    1.0 / (x * b.ln())
}

/// TV distance `½∫₁ᵇ |f − nb|` by dense Simpson in `u = ln x`.
pub fn brute_tv_to_nb<F: Fn(f64) -> f64>(f: F, b: f64) -> f64 {
    0.5 * simpson(
        |u| {
            let x = u.exp();
            (f(x) - nb_pdf(x, b)).abs() * x
        },
        0.0,
        b.ln(),
        20_000,
    )
}

/// Deterministic stream of uniforms in `[0, 1)` (SplitMix64).
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}
