//! Empirical conformance to the Newcomb–Benford law.
//!
//! Data are reduced to first digits (for the histogram, Pearson chi-square
//! and total-variation distance) and to log-mapped significands (for the
//! Kolmogorov–Smirnov distance to the uniform law on `[0, 1)`). Entries that
//! are not positive finite reals are skipped and counted.
//!
//! Also here: seeded samplers for NB and log-normal data, and deterministic
//! sequences (powers of 2, factorials, Fibonacci numbers, geometric
//! progressions) generated in significand/exponent form so they never
//! overflow.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::nb::NbDistribution;
use crate::significand::{decompose, reduce_product, Base, SignificandDecomposition};
use crate::special::chi_square_sf;
use crate::wrapping::LogNormalParams;

/// Largest factorial sequence length accepted by [`gen_sequence`].
pub const FACTORIAL_MAX: usize = 10_000;

/// Entries left out of an analysis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SkipCounts {
    pub nonpositive: u64,
    pub nonfinite: u64,
}

impl SkipCounts {
    pub fn total(&self) -> u64 {
        self.nonpositive + self.nonfinite
    }
}

/// First-digit counts; `counts[d - 1]` is the number of entries with leading digit `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitHistogram {
    base: Base,
    counts: Vec<u64>,
    total: u64,
}

impl DigitHistogram {
    pub fn empty(base: Base) -> Self {
        Self {
            base,
            counts: vec![0; base.digits()],
            total: 0,
        }
    }

    pub fn from_counts(base: Base, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != base.digits() {
            return Err(Error::InvalidParameter(format!(
                "base {base} needs {} digit counts, got {}",
                base.digits(),
                counts.len()
            )));
        }
        let total = counts.iter().sum();
        Ok(Self {
            base,
            counts,
            total,
        })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, digit: u32) -> u64 {
        self.counts[digit as usize - 1]
    }

    pub fn add_digit(&mut self, digit: u32) {
        self.counts[digit as usize - 1] += 1;
        self.total += 1;
    }

    /// Adds another histogram's counts (same base) into this one.
    pub fn merge(&mut self, other: &DigitHistogram) {
        assert_eq!(
            self.base, other.base,
            "cannot merge histograms of different bases"
        );
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.total as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    /// `½ Σ_d |count_d/total − P(d)|`.
    pub fn tv_distance(&self) -> f64 {
        let probs = NbDistribution::new(self.base).digit_probabilities();
        0.5 * self
            .frequencies()
            .iter()
            .zip(&probs)
            .map(|(f, p)| (f - p).abs())
            .sum::<f64>()
    }
}

/// Positive finite entries, with the rest counted.
fn usable(data: &[f64]) -> (Vec<f64>, SkipCounts) {
    let mut skipped = SkipCounts::default();
    let mut kept = Vec::with_capacity(data.len());
    for &x in data {
        if !x.is_finite() {
            skipped.nonfinite += 1;
        } else if x <= 0.0 {
            skipped.nonpositive += 1;
        } else {
            kept.push(x);
        }
    }
    (kept, skipped)
}

/// Bins the positive finite entries of `data` by first digit.
pub fn digit_histogram(data: &[f64], base: Base) -> Result<(DigitHistogram, SkipCounts)> {
    let (kept, skipped) = usable(data);
    if kept.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut hist = DigitHistogram::empty(base);
    for x in kept {
        hist.add_digit(decompose(x, base)?.first_digit());
    }
    Ok((hist, skipped))
}

/// Histogram of already-decomposed values, e.g. from [`gen_sequence`].
pub fn histogram_of(terms: &[SignificandDecomposition], base: Base) -> Result<DigitHistogram> {
    if terms.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut hist = DigitHistogram::empty(base);
    for t in terms {
        hist.add_digit(t.first_digit());
    }
    Ok(hist)
}

/// Pearson goodness of fit against the NB digit probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub pvalue: f64,
    pub dof: u32,
}

/// Pearson chi-square of the histogram against NB, `b − 2` degrees of freedom.
///
/// Requires at least `5·(b − 1)` observations.
pub fn chi_square(hist: &DigitHistogram) -> Result<ChiSquare> {
    let required = 5 * hist.base.digits() as u64;
    if hist.total < required {
        return Err(Error::InsufficientData {
            total: hist.total,
            required,
        });
    }
    let observed: Vec<f64> = hist.counts.iter().map(|&c| c as f64).collect();
    chi_square_observed(&observed, hist.base)
}

/// Same statistic for real-valued (e.g. expected or weighted) counts.
pub fn chi_square_observed(observed: &[f64], base: Base) -> Result<ChiSquare> {
    if observed.len() != base.digits() {
        return Err(Error::InvalidParameter(format!(
            "base {base} needs {} observed counts, got {}",
            base.digits(),
            observed.len()
        )));
    }
    let total: f64 = observed.iter().sum();
    if !(total > 0.0) {
        return Err(Error::EmptyData);
    }
    let probs = NbDistribution::new(base).digit_probabilities();
    let statistic: f64 = observed
        .iter()
        .zip(&probs)
        .map(|(o, p)| {
            let e = total * p;
            (o - e) * (o - e) / e
        })
        .sum();
    let dof = base.get() - 2;
    Ok(ChiSquare {
        statistic,
        pvalue: chi_square_sf(statistic, dof),
        dof,
    })
}

/// Kolmogorov–Smirnov distance between the log-mapped significands of the
/// positive finite entries and the uniform law on `[0, 1)`.
pub fn ks_uniform(data: &[f64], base: Base) -> Result<f64> {
    let (kept, _) = usable(data);
    if kept.is_empty() {
        return Err(Error::EmptyData);
    }
    let lnb = base.ln();
    let mut u = kept
        .into_iter()
        .map(|x| decompose(x, base).map(|d| d.significand.ln() / lnb))
        .collect::<Result<Vec<_>>>()?;
    Ok(ks_sorted(&mut u))
}

fn ks_sorted(u: &mut [f64]) -> f64 {
    u.sort_unstable_by(f64::total_cmp);
    let n = u.len() as f64;
    u.iter().enumerate().fold(0.0f64, |acc, (i, &ui)| {
        let above = (i + 1) as f64 / n - ui;
        let below = ui - i as f64 / n;
        acc.max(above).max(below)
    })
}

/// Everything [`conformance_report`] measures about one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformanceReport {
    pub histogram: DigitHistogram,
    pub skipped: SkipCounts,
    /// `None` when there are fewer than `5·(b − 1)` usable entries.
    pub chi_square: Option<ChiSquare>,
    pub ks_stat: f64,
    pub tv_distance: f64,
}

pub fn conformance_report(data: &[f64], base: Base) -> Result<ConformanceReport> {
    let (histogram, skipped) = digit_histogram(data, base)?;
    let chi = match chi_square(&histogram) {
        Ok(c) => Some(c),
        Err(Error::InsufficientData { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(ConformanceReport {
        tv_distance: histogram.tv_distance(),
        ks_stat: ks_uniform(data, base)?,
        chi_square: chi,
        histogram,
        skipped,
    })
}

/// Report for a generated sequence; significands are used directly so
/// magnitudes beyond the range of `f64` are fine.
pub fn sequence_report(
    terms: &[SignificandDecomposition],
    base: Base,
) -> Result<ConformanceReport> {
    let histogram = histogram_of(terms, base)?;
    let chi = match chi_square(&histogram) {
        Ok(c) => Some(c),
        Err(Error::InsufficientData { .. }) => None,
        Err(e) => return Err(e),
    };
    let lnb = base.ln();
    let mut u: Vec<f64> = terms.iter().map(|t| t.significand.ln() / lnb).collect();
    Ok(ConformanceReport {
        tv_distance: histogram.tv_distance(),
        ks_stat: ks_sorted(&mut u),
        chi_square: chi,
        histogram,
        skipped: SkipCounts::default(),
    })
}

/// `n` NB-distributed significands by inverse-cdf sampling.
pub fn sample_nb(n: usize, base: Base, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = base.as_f64();
    let top = b.next_down();
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            b.powf(u).min(top)
        })
        .collect()
}

/// `n` draws of `exp(M + s·Z)`, `Z ~ N(0, 1)`.
pub fn sample_lognormal(n: usize, p: &LogNormalParams, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m, s) = (p.location(), p.scale());
    (0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            (m + s * z).exp()
        })
        .collect()
}

/// Deterministic sequences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SequenceKind {
    /// `2, 4, 8, ...`
    Pow2,
    /// `1!, 2!, 3!, ...`
    Factorial,
    /// `1, 1, 2, 3, 5, ...`
    Fibonacci,
    /// `r, r², r³, ...`
    Geometric(f64),
}

/// `(s, k) · (t, j)` with the product significand reduced into `[1, b)`.
fn mul(a: SignificandDecomposition, by: SignificandDecomposition) -> SignificandDecomposition {
    let base = a.base;
    let p = a.significand * by.significand;
    let carry = (p >= base.as_f64()) as i32;
    SignificandDecomposition {
        significand: reduce_product(p, base),
        exponent: a.exponent + by.exponent + carry,
        base,
    }
}

fn add(a: SignificandDecomposition, c: SignificandDecomposition) -> SignificandDecomposition {
    let base = a.base;
    let (hi, lo) = if a.exponent >= c.exponent {
        (a, c)
    } else {
        (c, a)
    };
    let shift = hi.exponent - lo.exponent;
    let mut s = hi.significand + lo.significand * base.pow(-shift);
    let mut k = hi.exponent;
    if s >= base.as_f64() {
        s /= base.as_f64();
        k += 1;
    }
    SignificandDecomposition {
        significand: s,
        exponent: k,
        base,
    }
}

/// First `n` terms of `kind` in base `base`, each carried as significand and exponent.
pub fn gen_sequence(
    kind: SequenceKind,
    n: usize,
    base: Base,
) -> Result<Vec<SignificandDecomposition>> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "sequence length must be at least 1".into(),
        ));
    }
    let one = SignificandDecomposition {
        significand: 1.0,
        exponent: 0,
        base,
    };
    let mut out = Vec::with_capacity(n);
    match kind {
        SequenceKind::Pow2 => geometric(&mut out, decompose(2.0, base)?, n),
        SequenceKind::Geometric(r) => {
            if !(r > 0.0) || !r.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "geometric ratio must be positive and finite, got {r}"
                )));
            }
            let step = decompose(r, base)?;
            if step.significand == 1.0 {
                return Err(Error::UnsupportedRatio(r));
            }
            geometric(&mut out, step, n);
        }
        SequenceKind::Factorial => {
            if n > FACTORIAL_MAX {
                return Err(Error::InvalidParameter(format!(
                    "factorial sequences are limited to {FACTORIAL_MAX} terms, got {n}"
                )));
            }
            let mut term = one;
            for i in 1..=n {
                term = mul(term, decompose(i as f64, base)?);
                out.push(term);
            }
        }
        SequenceKind::Fibonacci => {
            let (mut a, mut c) = (one, one);
            for _ in 0..n {
                out.push(a);
                let next = add(a, c);
                a = c;
                c = next;
            }
        }
    }
    Ok(out)
}

fn geometric(out: &mut Vec<SignificandDecomposition>, step: SignificandDecomposition, n: usize) {
    let mut term = step;
    out.push(term);
    for _ in 1..n {
        term = mul(term, step);
        out.push(term);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const D: Base = Base::DECIMAL;

    #[test]
    fn histogram_small() {
        let (h, s) = digit_histogram(&[1.0, 2.0, 3.0], D).unwrap();
        assert_eq!(h.counts(), &[1, 1, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(s, SkipCounts::default());
    }

    #[test]
    fn histogram_skips_junk() {
        let (h, s) = digit_histogram(&[-5.0, 0.0, f64::NAN, 10.0], D).unwrap();
        assert_eq!(h.counts(), &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(s.nonpositive, 2);
        assert_eq!(s.nonfinite, 1);
        assert_eq!(h.total() + s.total(), 4);
    }

    #[test]
    fn histogram_of_nothing() {
        assert_eq!(digit_histogram(&[0.0, -1.0], D), Err(Error::EmptyData));
        assert_eq!(digit_histogram(&[], D), Err(Error::EmptyData));
    }

    #[test]
    fn merge_is_addition() {
        let data: Vec<f64> = (1..500).map(|i| i as f64 * 1.37).collect();
        let (whole, _) = digit_histogram(&data, D).unwrap();
        let mut merged = DigitHistogram::empty(D);
        for chunk in data.chunks(37) {
            merged.merge(&digit_histogram(chunk, D).unwrap().0);
        }
        assert_eq!(whole, merged);
    }

    #[test]
    fn chi_square_of_expected_counts() {
        let probs = NbDistribution::new(D).digit_probabilities();
        let expected: Vec<f64> = probs.iter().map(|p| 1000.0 * p).collect();
        let c = chi_square_observed(&expected, D).unwrap();
        assert!(c.statistic < 1e-20);
        assert_relative_eq!(c.pvalue, 1.0, epsilon = 1e-12);
        assert_eq!(c.dof, 8);
    }

    #[test]
    fn chi_square_of_uniform_digits() {
        let h = DigitHistogram::from_counts(D, vec![1000; 9]).unwrap();
        let c = chi_square(&h).unwrap();
        assert!(c.statistic > 500.0, "{}", c.statistic);
        assert!(c.pvalue < 1e-100);
    }

    #[test]
    fn chi_square_needs_data() {
        let h = DigitHistogram::from_counts(D, vec![5, 5, 5, 5, 5, 5, 5, 5, 4]).unwrap();
        assert_eq!(
            chi_square(&h),
            Err(Error::InsufficientData {
                total: 44,
                required: 45
            })
        );
    }

    #[test]
    fn ks_stratified() {
        let n = 1000;
        let data: Vec<f64> = (1..=n)
            .map(|i| 10f64.powf((i as f64 - 0.5) / n as f64))
            .collect();
        assert_relative_eq!(
            ks_uniform(&data, D).unwrap(),
            0.5 / n as f64,
            epsilon = 1e-12
        );
    }

    #[test]
    fn ks_single_point() {
        let x: f64 = 3.0;
        let u = x.log10();
        let d = ks_uniform(&[x; 17], D).unwrap();
        assert!(d >= u.max(1.0 - u) - 1e-15);
    }

    #[test]
    fn ks_empty() {
        assert_eq!(ks_uniform(&[f64::NAN], D), Err(Error::EmptyData));
    }

    #[test]
    fn samplers_are_reproducible() {
        assert_eq!(sample_nb(1, D, 7), sample_nb(1, D, 7));
        assert_eq!(sample_nb(100, D, 7), sample_nb(100, D, 7));
        assert_ne!(sample_nb(100, D, 7), sample_nb(100, D, 8));
        let p = LogNormalParams::new(1.0, 2.0).unwrap();
        assert_eq!(sample_lognormal(100, &p, 3), sample_lognormal(100, &p, 3));
        assert!(sample_nb(1000, D, 1)
            .iter()
            .all(|x| (1.0..10.0).contains(x)));
    }

    #[test]
    fn pow2_first_terms() {
        let terms = gen_sequence(SequenceKind::Pow2, 5, D).unwrap();
        let s: Vec<f64> = terms.iter().map(|t| t.significand).collect();
        let expected = [2.0, 4.0, 8.0, 1.6, 3.2];
        for (a, e) in s.iter().zip(expected) {
            assert_relative_eq!(*a, e, epsilon = 1e-15);
        }
        assert_eq!(terms[4].exponent, 1);
    }

    #[test]
    fn factorial_and_fibonacci_first_terms() {
        let f = gen_sequence(SequenceKind::Factorial, 6, D).unwrap();
        let v: Vec<f64> = f.iter().map(|t| t.value()).collect();
        for (a, e) in v.iter().zip([1.0, 2.0, 6.0, 24.0, 120.0, 720.0]) {
            assert_relative_eq!(*a, e, max_relative = 1e-15);
        }
        let fib = gen_sequence(SequenceKind::Fibonacci, 12, D).unwrap();
        let v: Vec<f64> = fib.iter().map(|t| t.value()).collect();
        let expected = [
            1.0, 1.0, 2.0, 3.0, 5.0, 8.0, 13.0, 21.0, 34.0, 55.0, 89.0, 144.0,
        ];
        for (a, e) in v.iter().zip(expected) {
            assert_relative_eq!(*a, e, max_relative = 1e-15);
        }
    }

    #[test]
    fn geometric_rejections() {
        for r in [10.0, 100.0, 0.1, 1.0] {
            assert_eq!(
                gen_sequence(SequenceKind::Geometric(r), 3, D),
                Err(Error::UnsupportedRatio(r))
            );
        }
        assert!(gen_sequence(SequenceKind::Geometric(-2.0), 3, D).is_err());
        assert!(gen_sequence(SequenceKind::Geometric(3.0), 3, D).is_ok());
        assert!(gen_sequence(SequenceKind::Pow2, 0, D).is_err());
        assert!(gen_sequence(SequenceKind::Factorial, FACTORIAL_MAX + 1, D).is_err());
    }

    #[test]
    fn pow2_log_magnitude_tracks() {
        let terms = gen_sequence(SequenceKind::Pow2, 20_000, D).unwrap();
        for (i, t) in terms.iter().enumerate() {
            let n = (i + 1) as f64;
            assert!((t.log_magnitude() - n * 2f64.log10()).abs() <= 1e-9 * n);
        }
    }

    #[test]
    fn report_for_small_data_has_no_chi_square() {
        let r = conformance_report(&[1.0, 2.0, 3.0, -1.0], D).unwrap();
        assert!(r.chi_square.is_none());
        assert_eq!(r.skipped.nonpositive, 1);
        assert!((0.0..=1.0).contains(&r.tv_distance));
        assert!((0.0..=1.0).contains(&r.ks_stat));
    }
}
