//! Condensing densities on `(0, ∞)` onto the significand interval `[1, b)`.
//!
//! A density `ρ` on the positive reals induces a density on `[1, b)` by
//! summing its mass decade by decade:
//!
//! ```text
//! F_b(x) = Σ_k F(x·b^k) − F(b^k)        ρ_b(x) = Σ_k b^k ρ(x·b^k)
//! ```
//!
//! [`WrappedDensity`] evaluates both series for any [`SourceDensity`],
//! truncated to `|k| <= K` with `K` picked from the source's certified tail
//! bounds. For log-normal sources the series is a sum of Gaussians in `ln x`
//! ([`wrapped_lognormal_pdf`]); replacing that sum by an integral over
//! `k·ln b` gives exactly the NB density ([`euler_maclaurin_leading`]), and
//! [`distance_to_nb`] measures how far the true sum is from it.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::nb::nb_density;
use crate::significand::Base;
use crate::special::{normal_cdf, normal_sf};
use crate::sum::KahanSum;

/// Largest truncation index the series will use.
pub const K_MAX: u32 = 10_000;

/// Smallest accepted log-normal scale. Below this the wrapped density is
/// numerically a Dirac comb.
pub const S_MIN: f64 = 1e-6;

/// Grid size for [`distance_to_nb`].
pub const DISTANCE_GRID: usize = 2048;

/// A probability density on `(0, ∞)` that can be wrapped.
///
/// Implementations must be pure: equal inputs give equal outputs.
pub trait SourceDensity: Send + Sync {
    fn pdf(&self, y: f64) -> f64;

    fn cdf(&self, y: f64) -> f64;

    /// `P(lo < Y <= hi)`. Override when `cdf(hi) - cdf(lo)` cancels badly.
    fn mass_between(&self, lo: f64, hi: f64) -> f64 {
        self.cdf(hi) - self.cdf(lo)
    }

    /// Upper bound on `P(Y ∉ [b^-K, b^K])`.
    fn tail_mass(&self, base: Base, k: u32) -> f64;

    /// Upper bound, uniform over `x ∈ [1, b)`, on `Σ_{|j| > K} b^j ρ(x·b^j)`.
    fn tail_density_bound(&self, base: Base, k: u32) -> f64;
}

impl<T: SourceDensity + ?Sized> SourceDensity for &T {
    fn pdf(&self, y: f64) -> f64 {
        (**self).pdf(y)
    }
    fn cdf(&self, y: f64) -> f64 {
        (**self).cdf(y)
    }
    fn mass_between(&self, lo: f64, hi: f64) -> f64 {
        (**self).mass_between(lo, hi)
    }
    fn tail_mass(&self, base: Base, k: u32) -> f64 {
        (**self).tail_mass(base, k)
    }
    fn tail_density_bound(&self, base: Base, k: u32) -> f64 {
        (**self).tail_density_bound(base, k)
    }
}

impl<T: SourceDensity + ?Sized> SourceDensity for Box<T> {
    fn pdf(&self, y: f64) -> f64 {
        (**self).pdf(y)
    }
    fn cdf(&self, y: f64) -> f64 {
        (**self).cdf(y)
    }
    fn mass_between(&self, lo: f64, hi: f64) -> f64 {
        (**self).mass_between(lo, hi)
    }
    fn tail_mass(&self, base: Base, k: u32) -> f64 {
        (**self).tail_mass(base, k)
    }
    fn tail_density_bound(&self, base: Base, k: u32) -> f64 {
        (**self).tail_density_bound(base, k)
    }
}

// ---------------------------------------------------------------------------
// Log-normal
// ---------------------------------------------------------------------------

/// Log-normal law: `ln Y ~ N(m, s²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogNormalParams {
    m: f64,
    s: f64,
}

/// The log-normal family is the canonical wrapping source.
pub type LogNormal = LogNormalParams;

impl LogNormalParams {
    pub fn new(m: f64, s: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "location M must be finite, got {m}"
            )));
        }
        if !(s > S_MIN) || !s.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "scale s must be finite and exceed {S_MIN:e}, got {s}"
            )));
        }
        Ok(Self { m, s })
    }

    pub fn location(&self) -> f64 {
        self.m
    }

    pub fn scale(&self) -> f64 {
        self.s
    }

    #[inline]
    fn z(&self, y: f64) -> f64 {
        (y.ln() - self.m) / self.s
    }
}

/// `Σ_{i>=0} exp(-(d + i·step)²/(2s²))` for `d > 0`, bounded by a geometric series.
fn gaussian_series_tail(d: f64, step: f64, s: f64) -> f64 {
    if d <= 0.0 {
        return f64::INFINITY;
    }
    let s2 = s * s;
    (-d * d / (2.0 * s2)).exp() / (1.0 - (-d * step / s2).exp())
}

impl SourceDensity for LogNormalParams {
    fn pdf(&self, y: f64) -> f64 {
        if !(y > 0.0) || y.is_infinite() {
            return 0.0;
        }
        let z = self.z(y);
        (-0.5 * z * z).exp() / (y * self.s * (2.0 * PI).sqrt())
    }

    fn cdf(&self, y: f64) -> f64 {
        if !(y > 0.0) {
            return 0.0;
        }
        if y.is_infinite() {
            return 1.0;
        }
        normal_cdf(self.z(y))
    }

    fn mass_between(&self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return 0.0;
        }
        let (zl, zh) = (self.z(lo.max(0.0)), self.z(hi));
        if zl > 0.0 {
            normal_sf(zl) - normal_sf(zh)
        } else {
            normal_cdf(zh) - normal_cdf(zl)
        }
    }

    fn tail_mass(&self, base: Base, k: u32) -> f64 {
        let edge = k as f64 * base.ln();
        normal_cdf((-edge - self.m) / self.s) + normal_sf((edge - self.m) / self.s)
    }

    fn tail_density_bound(&self, base: Base, k: u32) -> f64 {
        // Neglected exponents satisfy |ln x + j ln b − M| >= d± + i·ln b, i = 0, 1, ...
        let l = base.ln();
        let kf = k as f64;
        let upper = gaussian_series_tail((kf + 1.0) * l - self.m, l, self.s);
        let lower = gaussian_series_tail(kf * l + self.m, l, self.s);
        (upper + lower) / (self.s * (2.0 * PI).sqrt())
    }
}

// ---------------------------------------------------------------------------
// Uniform patch
// ---------------------------------------------------------------------------

/// Uniform law on `[lo, hi] ⊂ (0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformSource {
    lo: f64,
    hi: f64,
}

impl UniformSource {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "uniform support must satisfy 0 < lo < hi < ∞, got [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }
}

impl SourceDensity for UniformSource {
    fn pdf(&self, y: f64) -> f64 {
        if (self.lo..=self.hi).contains(&y) {
            1.0 / (self.hi - self.lo)
        } else {
            0.0
        }
    }

    fn cdf(&self, y: f64) -> f64 {
        ((y - self.lo) / (self.hi - self.lo)).clamp(0.0, 1.0)
    }

    fn tail_mass(&self, base: Base, k: u32) -> f64 {
        let k = k.min(i32::MAX as u32) as i32;
        (1.0 - self.mass_between(base.pow(-k), base.pow(k))).max(0.0)
    }

    fn tail_density_bound(&self, base: Base, k: u32) -> f64 {
        // Term j is nonzero only where [b^j, b^(j+1)) meets [lo, hi], and is at most b^j/(hi − lo).
        let first = (self.lo.ln() / base.ln()).floor() as i64 - 1;
        let last = (self.hi.ln() / base.ln()).floor() as i64 + 1;
        let height = 1.0 / (self.hi - self.lo);
        (first..=last)
            .filter(|j| j.unsigned_abs() > k as u64)
            .map(|j| j as i32)
            .filter(|&j| base.pow(j) <= self.hi && base.pow(j + 1) > self.lo)
            .map(|j| base.pow(j) * height)
            .sum()
    }
}

// ---------------------------------------------------------------------------
// Mixtures
// ---------------------------------------------------------------------------

/// Finite mixture of log-normals.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureParams {
    components: Vec<(f64, LogNormalParams)>,
}

pub type Mixture = MixtureParams;

impl MixtureParams {
    pub fn new(components: Vec<(f64, LogNormalParams)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter(
                "mixture needs at least one component".into(),
            ));
        }
        if let Some((w, _)) = components
            .iter()
            .find(|(w, _)| !(*w >= 0.0) || !w.is_finite())
        {
            return Err(Error::InvalidParameter(format!(
                "mixture weights must be nonnegative, got {w}"
            )));
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "mixture weights must sum to 1, got {total}"
            )));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[(f64, LogNormalParams)] {
        &self.components
    }
}

impl SourceDensity for MixtureParams {
    fn pdf(&self, y: f64) -> f64 {
        self.components.iter().map(|(w, p)| w * p.pdf(y)).sum()
    }

    fn cdf(&self, y: f64) -> f64 {
        self.components.iter().map(|(w, p)| w * p.cdf(y)).sum()
    }

    fn mass_between(&self, lo: f64, hi: f64) -> f64 {
        self.components
            .iter()
            .map(|(w, p)| w * p.mass_between(lo, hi))
            .sum()
    }

    fn tail_mass(&self, base: Base, k: u32) -> f64 {
        self.components
            .iter()
            .map(|(w, p)| w * p.tail_mass(base, k))
            .sum()
    }

    fn tail_density_bound(&self, base: Base, k: u32) -> f64 {
        self.components
            .iter()
            .filter(|(w, _)| *w > 0.0)
            .map(|(w, p)| w * p.tail_density_bound(base, k))
            .sum()
    }
}

// ---------------------------------------------------------------------------
// Generic wrapping engine
// ---------------------------------------------------------------------------

/// A source density condensed onto `[1, b)`.
#[derive(Debug, Clone)]
pub struct WrappedDensity<S> {
    source: S,
    base: Base,
    truncation: u32,
    tol: f64,
    pdf_error: f64,
    cdf_error: f64,
}

impl<S: SourceDensity> WrappedDensity<S> {
    /// Picks the smallest `K <= K_MAX` whose tail mass and tail density
    /// bounds are both below `tol / 10`.
    pub fn new(source: S, base: Base, tol: f64) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "tol must be positive, got {tol}"
            )));
        }
        let target = tol / 10.0;
        let truncation = (0..=K_MAX)
            .find(|&k| {
                source.tail_mass(base, k) < target && source.tail_density_bound(base, k) < target
            })
            .ok_or(Error::Truncation {
                k_max: K_MAX,
                target,
            })?;
        spot_check_cdf(&source, base, truncation)?;
        let pdf_error = source.tail_density_bound(base, truncation);
        let cdf_error = source.tail_mass(base, truncation);
        Ok(Self {
            source,
            base,
            truncation,
            tol,
            pdf_error,
            cdf_error,
        })
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Certified bound on the pointwise error of [`pdf`](Self::pdf).
    pub fn truncation_error(&self) -> f64 {
        self.pdf_error
    }

    /// Certified bound on the error of [`cdf`](Self::cdf), the neglected mass.
    pub fn cdf_truncation_error(&self) -> f64 {
        self.cdf_error
    }

    /// `Σ_{k=-K}^{K} b^k ρ(x b^k)`, summed in increasing `k`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        check_half_open(x, self.base)?;
        let k = self.truncation as i32;
        let mut acc = KahanSum::new();
        for j in -k..=k {
            let scale = self.base.pow(j);
            let f = self.source.pdf(x * scale);
            if f != 0.0 {
                acc.add(scale * f);
            }
        }
        Ok(acc.value())
    }

    /// `Σ_{k=-K}^{K} F(x b^k) − F(b^k)`, summed in increasing `k`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        let b = self.base.as_f64();
        if !(1.0..=b).contains(&x) {
            return Err(Error::domain("x", x, format!("[1, {b}]")));
        }
        let k = self.truncation as i32;
        let mut acc = KahanSum::new();
        for j in -k..=k {
            let edge = self.base.pow(j);
            acc.add(self.source.mass_between(edge, x * edge));
        }
        Ok(acc.value())
    }
}

fn check_half_open(x: f64, base: Base) -> Result<()> {
    let b = base.as_f64();
    if (1.0..b).contains(&x) {
        Ok(())
    } else {
        Err(Error::domain("x", x, format!("[1, {b})")))
    }
}

// Grid check that the cdf is nondecreasing within [0, 1] across the window
// the series will touch.
fn spot_check_cdf<S: SourceDensity>(source: &S, base: Base, k: u32) -> Result<()> {
    const PER_DECADE: i64 = 8;
    let k = k.min(300) as i64 + 1;
    let lnb = base.ln();
    let mut prev = 0.0f64;
    for i in -k * PER_DECADE..=k * PER_DECADE {
        let y = (i as f64 / PER_DECADE as f64 * lnb).exp();
        let c = source.cdf(y);
        if !(-1e-12..=1.0 + 1e-12).contains(&c) || c < prev - 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "source cdf is not a nondecreasing map into [0, 1] near y = {y:e} (cdf = {c})"
            )));
        }
        prev = c.max(prev);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Closed-form wrapped log-normal
// ---------------------------------------------------------------------------

/// Smallest `K` for which the Gaussian terms more than `K` steps from the
/// nearest one sum below `tol`, uniformly in `x`.
fn lognormal_truncation(s: f64, base: Base, tol: f64) -> Result<u32> {
    let l = base.ln();
    let norm = 1.0 / (s * (2.0 * PI).sqrt());
    (0..=K_MAX)
        .find(|&k| 2.0 * norm * gaussian_series_tail((k as f64 + 0.5) * l, l, s) < tol)
        .ok_or(Error::Truncation {
            k_max: K_MAX,
            target: tol,
        })
}

/// Wrapped log-normal density
/// `(1/(x s √(2π))) Σ_k exp(−(ln x + k ln b − M)² / (2s²))`.
///
/// The window of `2K + 1` terms is centred on the largest term, and `K` is
/// chosen so the neglected terms sum below `tol`.
pub fn wrapped_lognormal_pdf(x: f64, p: &LogNormalParams, base: Base, tol: f64) -> Result<f64> {
    check_half_open(x, base)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tol must be positive, got {tol}"
        )));
    }
    let k = lognormal_truncation(p.s, base, tol)? as i64;
    let (u, l, m, s) = (x.ln(), base.ln(), p.m, p.s);
    let center = ((m - u) / l).round() as i64;
    let mut acc = KahanSum::new();
    for j in center - k..=center + k {
        let t = (u + j as f64 * l - m) / s;
        acc.add((-0.5 * t * t).exp());
    }
    Ok(acc.value() / (x * s * (2.0 * PI).sqrt()))
}

/// `Σ wᵢ · wrapped_lognormal_pdf(x, pᵢ)`.
pub fn wrap_mixture_pdf(x: f64, mix: &MixtureParams, base: Base, tol: f64) -> Result<f64> {
    let mut acc = KahanSum::new();
    for (w, p) in &mix.components {
        acc.add(w * wrapped_lognormal_pdf(x, p, base, tol)?);
    }
    Ok(acc.value())
}

/// Leading Euler–Maclaurin term of the wrapped log-normal series.
///
/// Replacing the sum over `k` by an integral over `k ln b` leaves a full
/// Gaussian integral, so the result is `1/(x ln b)` whatever `M` and `s` are.
pub fn euler_maclaurin_leading(x: f64, _p: &LogNormalParams, base: Base) -> Result<f64> {
    check_half_open(x, base)?;
    Ok(nb_density(x, base))
}

/// Sup and total-variation distance between a density on `[1, b)` and NB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NbDistance {
    pub sup: f64,
    pub tv: f64,
}

/// The `i`-th of `n` grid points, `b^((i + ½)/n)`.
pub fn log_grid_point(i: usize, n: usize, base: Base) -> f64 {
    base.as_f64()
        .powf((i as f64 + 0.5) / n as f64)
        .min(base.as_f64().next_down())
}

/// Distances from `pdf` to the NB density on the [`DISTANCE_GRID`]-point log grid.
///
/// TV is `½∫|pdf − nb| dx`, integrated by the midpoint rule in `u = log_b x`.
pub fn distance_pdf_to_nb<F>(pdf: F, base: Base) -> Result<NbDistance>
where
    F: Fn(f64) -> Result<f64>,
{
    let n = DISTANCE_GRID;
    let lnb = base.ln();
    let mut sup = 0.0f64;
    let mut tv = KahanSum::new();
    for i in 0..n {
        let x = log_grid_point(i, n, base);
        let diff = (pdf(x)? - nb_density(x, base)).abs();
        sup = sup.max(diff);
        tv.add(diff * x * lnb);
    }
    Ok(NbDistance {
        sup,
        tv: 0.5 * tv.value() / n as f64,
    })
}

/// How close the wrapped log-normal is to NB.
pub fn distance_to_nb(p: &LogNormalParams, base: Base, tol: f64) -> Result<NbDistance> {
    distance_pdf_to_nb(|x| wrapped_lognormal_pdf(x, p, base, tol), base)
}
