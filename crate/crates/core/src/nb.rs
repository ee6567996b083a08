//! The Newcomb–Benford law on `[1, b)`.
//!
//! Density `1/(x ln b)`, cdf `log_b x`. Under the log map this is the uniform
//! law on `[0, 1)`, so the measure of an interval depends only on the ratio of
//! its endpoints and is unchanged by multiplication mod `b`.
//!
//! Interval convention: a [`SignificandInterval`] is the closed interval
//! `[lo, hi]`, except that `hi == b` denotes the right-open `[lo, b)`. Measures
//! never depend on the endpoints, so this only affects validation.

use crate::error::{Error, Result};
use crate::significand::Base;

/// The Newcomb–Benford distribution for one base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NbDistribution {
    base: Base,
}

impl NbDistribution {
    pub fn new(base: Base) -> Self {
        Self { base }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// `1 / (x ln b)` on `[1, b)`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.check_support(x)?;
        Ok(nb_density(x, self.base))
    }

    /// `ln x / ln b` on `[1, b]`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        let b = self.base.as_f64();
        if !(1.0..=b).contains(&x) {
            return Err(Error::domain("x", x, format!("[1, {b}]")));
        }
        Ok(x.ln() / self.base.ln())
    }

    /// Inverse cdf, `b^u`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::domain("u", u, "[0, 1]"));
        }
        Ok(self.base.as_f64().powf(u))
    }

    /// Probability that the leading digit equals `d`: `log_b(1 + 1/d)`.
    pub fn first_digit_prob(&self, d: u32) -> Result<f64> {
        if d < 1 || d >= self.base.get() {
            return Err(Error::domain(
                "digit",
                d as f64,
                format!("1..={}", self.base.get() - 1),
            ));
        }
        Ok(digit_prob(d, self.base))
    }

    /// `[P(1), ..., P(b-1)]`.
    pub fn digit_probabilities(&self) -> Vec<f64> {
        (1..self.base.get())
            .map(|d| digit_prob(d, self.base))
            .collect()
    }

    /// Probability that the significand starts with the digit block
    /// `d_1 d_2 ... d_n` (`d_1 >= 1`), i.e. `log_b(1 + 1/m)` with `m` the block
    /// read as a base-`b` integer.
    pub fn leading_block_prob(&self, block: &[u32]) -> Result<f64> {
        let b = self.base.get();
        let first = *block
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty digit block".into()))?;
        if first == 0 {
            return Err(Error::InvalidParameter(
                "leading digit of a block must be nonzero".into(),
            ));
        }
        let mut m = 0.0f64;
        for &d in block {
            if d >= b {
                return Err(Error::domain("digit", d as f64, format!("0..={}", b - 1)));
            }
            m = m * b as f64 + d as f64;
        }
        Ok((1.0 / m).ln_1p() / self.base.ln())
    }

    /// NB measure of `[lo, hi]`: `ln(hi/lo) / ln b`.
    pub fn interval_measure(&self, iv: &SignificandInterval) -> f64 {
        debug_assert_eq!(iv.base, self.base);
        (iv.hi / iv.lo).ln() / self.base.ln()
    }

    pub fn measure_of_set(&self, set: &IntervalSet) -> f64 {
        set.iter().map(|iv| self.interval_measure(iv)).sum()
    }

    fn check_support(&self, x: f64) -> Result<()> {
        let b = self.base.as_f64();
        if (1.0..b).contains(&x) {
            Ok(())
        } else {
            Err(Error::domain("x", x, format!("[1, {b})")))
        }
    }
}

#[inline]
pub(crate) fn nb_density(x: f64, base: Base) -> f64 {
    1.0 / (x * base.ln())
}

#[inline]
fn digit_prob(d: u32, base: Base) -> f64 {
    (1.0 / d as f64).ln_1p() / base.ln()
}

/// A subinterval of `[1, b]`; see the module docs for endpoint conventions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignificandInterval {
    lo: f64,
    hi: f64,
    base: Base,
}

impl SignificandInterval {
    pub fn new(lo: f64, hi: f64, base: Base) -> Result<Self> {
        let b = base.as_f64();
        if !(1.0..=b).contains(&lo) {
            return Err(Error::domain("lo", lo, format!("[1, {b}]")));
        }
        if !(lo..=b).contains(&hi) {
            return Err(Error::domain("hi", hi, format!("[{lo}, {b}]")));
        }
        Ok(Self { lo, hi, base })
    }

    /// `[1, b)`.
    pub fn full(base: Base) -> Self {
        Self {
            lo: 1.0,
            hi: base.as_f64(),
            base,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        if self.hi == self.base.as_f64() {
            self.lo <= x && x < self.hi
        } else {
            self.lo <= x && x <= self.hi
        }
    }
}

/// Up to two disjoint significand intervals, sorted by `lo`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<SignificandInterval>,
}

impl IntervalSet {
    pub fn new(mut intervals: Vec<SignificandInterval>) -> Result<Self> {
        if intervals.len() > 2 {
            return Err(Error::InvalidParameter(format!(
                "an interval set holds at most 2 intervals, got {}",
                intervals.len()
            )));
        }
        intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        if let [a, b] = intervals.as_slice() {
            if a.base != b.base {
                return Err(Error::InvalidParameter(
                    "intervals in different bases".into(),
                ));
            }
            // Touching at one endpoint is allowed: [1, λ] ∪ [λ, b) is the image of [1, b).
            if a.hi > b.lo {
                return Err(Error::InvalidParameter(format!(
                    "intervals [{}, {}] and [{}, {}] overlap",
                    a.lo, a.hi, b.lo, b.hi
                )));
            }
        }
        Ok(Self { intervals })
    }

    pub fn single(iv: SignificandInterval) -> Self {
        Self {
            intervals: vec![iv],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignificandInterval> {
        self.intervals.iter()
    }

    pub fn intervals(&self) -> &[SignificandInterval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(SignificandInterval::len).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }
}

/// Which of the three shapes `λ·[x₁, x₂] mod b` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScaleCase {
    /// `λx₂ <= b`: image is `[λx₁, λx₂]`.
    NoWrap,
    /// `λx₁ < b < λx₂`: image is `[1, λx₂/b] ∪ [λx₁, b)`.
    Straddle,
    /// `λx₁ >= b`: image is `[λx₁/b, λx₂/b]`.
    FullWrap,
}

pub fn classify_scaling(lambda: f64, iv: &SignificandInterval) -> ScaleCase {
    let b = iv.base.as_f64();
    if lambda * iv.hi <= b {
        ScaleCase::NoWrap
    } else if lambda * iv.lo >= b {
        ScaleCase::FullWrap
    } else {
        ScaleCase::Straddle
    }
}

/// Image of `iv` under multiplication by `lambda` mod `b`.
///
/// Pieces are never merged across the seam at `1`, so the straddling case
/// always yields two intervals.
pub fn scale_interval(lambda: f64, iv: &SignificandInterval) -> Result<IntervalSet> {
    let base = iv.base;
    let b = base.as_f64();
    if !(1.0..b).contains(&lambda) {
        return Err(Error::domain("lambda", lambda, format!("[1, {b})")));
    }
    let piece = |lo: f64, hi: f64| SignificandInterval {
        lo: lo.clamp(1.0, b),
        hi: hi.clamp(lo.clamp(1.0, b), b),
        base,
    };
    let intervals = match classify_scaling(lambda, iv) {
        ScaleCase::NoWrap => vec![piece(lambda * iv.lo, lambda * iv.hi)],
        ScaleCase::FullWrap => vec![piece(lambda * iv.lo / b, lambda * iv.hi / b)],
        ScaleCase::Straddle => vec![piece(1.0, lambda * iv.hi / b), piece(lambda * iv.lo, b)],
    };
    Ok(IntervalSet { intervals })
}
