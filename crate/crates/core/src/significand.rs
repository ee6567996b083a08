//! Significand/exponent decomposition in base `b`.
//!
//! Every positive real is written `x = s·b^k` with `s ∈ [1, b)`. The
//! significand is the representative of `x` in the quotient of the positive
//! reals by the subgroup `{b^k}`, and [`log_map`] carries that quotient onto
//! `[0, 1)` under addition mod 1.

use crate::error::{Error, Result};

/// Integer radix, at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Base(u32);

impl Base {
    pub const BINARY: Base = Base(2);
    pub const DECIMAL: Base = Base(10);

    pub fn new(b: u64) -> Result<Self> {
        if b < 2 || b > u32::MAX as u64 {
            return Err(Error::InvalidBase(b));
        }
        Ok(Base(b as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    /// Natural logarithm of the base.
    #[inline]
    pub fn ln(self) -> f64 {
        self.as_f64().ln()
    }

    /// Number of possible leading digits, `b - 1`.
    #[inline]
    pub fn digits(self) -> usize {
        self.0 as usize - 1
    }

    /// `b^k` as a double.
    ///
    /// Exact whenever `b^|k|` is representable; negative powers are the
    /// correctly rounded reciprocal of the positive power, so `pow(-3)` for
    /// base 10 is the same double as the literal `1e-3`.
    pub fn pow(self, k: i32) -> f64 {
        let b = self.as_f64();
        if k >= 0 {
            return b.powi(k);
        }
        let m = k.unsigned_abs();
        let p = b.powi(m as i32);
        if p.is_finite() {
            1.0 / p
        } else {
            let h = m / 2;
            (1.0 / b.powi(h as i32)) / b.powi((m - h) as i32)
        }
    }

    /// `value · b^m` for `m >= 0`, split in two factors when `b^m` overflows.
    fn scale_up(self, value: f64, m: u32) -> f64 {
        let b = self.as_f64();
        let p = b.powi(m as i32);
        if p.is_finite() {
            value * p
        } else {
            let h = m / 2;
            value * b.powi(h as i32) * b.powi((m - h) as i32)
        }
    }
}

impl std::fmt::Display for Base {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for Base {
    type Error = Error;

    fn try_from(b: u64) -> Result<Self> {
        Base::new(b)
    }
}

/// A positive real written as `significand · base^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignificandDecomposition {
    pub significand: f64,
    pub exponent: i32,
    pub base: Base,
}

impl SignificandDecomposition {
    /// Recombines `significand · base^exponent`.
    pub fn value(&self) -> f64 {
        if self.exponent >= 0 {
            self.significand * self.base.pow(self.exponent)
        } else {
            let m = self.exponent.unsigned_abs();
            let p = self.base.as_f64().powi(m as i32);
            if p.is_finite() {
                self.significand / p
            } else {
                self.significand * self.base.pow(self.exponent)
            }
        }
    }

    /// `log_b` of the represented value, computed without forming it.
    pub fn log_magnitude(&self) -> f64 {
        self.exponent as f64 + self.significand.ln() / self.base.ln()
    }

    pub fn first_digit(&self) -> u32 {
        digit_of(self.significand, self.base)
    }
}

#[inline]
fn digit_of(significand: f64, base: Base) -> u32 {
    (significand.floor() as u32).clamp(1, base.get() - 1)
}

#[inline]
pub(crate) fn check_positive(value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveInput(value))
    }
}

#[inline]
pub(crate) fn check_significand(s: f64, base: Base, what: &'static str) -> Result<()> {
    if (1.0..base.as_f64()).contains(&s) {
        Ok(())
    } else {
        Err(Error::domain(what, s, format!("[1, {base})")))
    }
}

/// Splits `value` into `(s, k)` with `s ∈ [1, b)` and `s·b^k ≈ value`.
///
/// The exponent starts from `floor(log_b value)` and is then corrected
/// against the decade edges `b^k`, `b^(k+1)` at most twice. Exact powers of
/// the base give significand exactly `1.0`. A significand that rounds up to
/// `b` is clamped to the largest double below `b`.
pub fn decompose(value: f64, base: Base) -> Result<SignificandDecomposition> {
    check_positive(value)?;

    let estimate = (value.ln() / base.ln()).floor();
    let mut k = estimate.clamp(i32::MIN as f64 / 2.0, i32::MAX as f64 / 2.0) as i32;
    for _ in 0..2 {
        if value < base.pow(k) {
            k -= 1;
        } else if value >= base.pow(k + 1) {
            k += 1;
        } else {
            break;
        }
    }

    let mut s = if value == base.pow(k) {
        1.0
    } else if k >= 0 {
        value / base.pow(k)
    } else {
        base.scale_up(value, k.unsigned_abs())
    };

    let b = base.as_f64();
    if s >= b {
        s = b.next_down();
    } else if s < 1.0 {
        s = 1.0;
    }

    Ok(SignificandDecomposition {
        significand: s,
        exponent: k,
        base,
    })
}

/// Leading digit of `value` in base `b`, in `1..=b-1`.
pub fn first_digit(value: f64, base: Base) -> Result<u32> {
    decompose(value, base).map(|d| d.first_digit())
}

/// The isomorphism `[1, b) → [0, 1)`, `s ↦ ln s / ln b`.
pub fn log_map(s: f64, base: Base) -> Result<f64> {
    check_significand(s, base, "significand")?;
    Ok(s.ln() / base.ln())
}

/// Product of two significands reduced mod `b`.
pub fn mul_mod_b(s1: f64, s2: f64, base: Base) -> Result<f64> {
    check_significand(s1, base, "s1")?;
    check_significand(s2, base, "s2")?;
    Ok(reduce_product(s1 * s2, base))
}

/// Reduces a product of two significands (`p ∈ [1, b²)`) back into `[1, b)`.
#[inline]
pub(crate) fn reduce_product(p: f64, base: Base) -> f64 {
    let b = base.as_f64();
    if p >= b {
        p / b
    } else {
        p
    }
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn base(b: u64) -> Base {
        Base::new(b).unwrap()
    }

    #[test]
    fn rejects_small_bases() {
        assert_eq!(Base::new(0), Err(Error::InvalidBase(0)));
        assert_eq!(Base::new(1), Err(Error::InvalidBase(1)));
        assert!(Base::new(2).is_ok());
    }

    #[test]
    fn decimal_examples() {
        let d = decompose(123.45, Base::DECIMAL).unwrap();
        assert_relative_eq!(d.significand, 1.2345, max_relative = 4.0 * f64::EPSILON);
        assert_eq!(d.exponent, 2);

        let d = decompose(0.002, Base::DECIMAL).unwrap();
        assert_eq!(d.significand, 2.0);
        assert_eq!(d.exponent, -3);

        let d = decompose(1.0, Base::DECIMAL).unwrap();
        assert_eq!((d.significand, d.exponent), (1.0, 0));
    }

    #[test]
    fn exact_power_of_two() {
        let d = decompose(8.0, Base::BINARY).unwrap();
        assert_eq!((d.significand, d.exponent), (1.0, 3));
    }

    #[test]
    fn decimal_literals_of_powers_are_exact() {
        let cases = [(1e-20, -20), (1e-7, -7), (1e-3, -3), (1e15, 15), (1e22, 22)];
        for (v, k) in cases {
            let d = decompose(v, Base::DECIMAL).unwrap();
            assert_eq!((d.significand, d.exponent), (1.0, k), "value {v}");
        }
    }

    #[test]
    fn just_below_a_power_stays_in_lower_decade() {
        let v = 1000.0f64.next_down();
        let d = decompose(v, Base::DECIMAL).unwrap();
        assert_eq!(d.exponent, 2);
        assert!(d.significand < 10.0);
        assert_eq!(d.first_digit(), 9);
    }

    #[test]
    fn rejects_junk() {
        for v in [0.0, -1.0, f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
            assert!(matches!(
                decompose(v, Base::DECIMAL),
                Err(Error::NonPositiveInput(_))
            ));
        }
    }

    #[test]
    fn extreme_magnitudes() {
        for v in [f64::MAX, f64::MIN_POSITIVE, 5e-324, 1e-310] {
            let d = decompose(v, Base::DECIMAL).unwrap();
            assert!((1.0..10.0).contains(&d.significand), "{v}: {d:?}");
            assert_relative_eq!(d.log_magnitude(), v.log10(), max_relative = 1e-12);
        }
    }

    #[test]
    fn first_digit_examples() {
        assert_eq!(first_digit(123.45, Base::DECIMAL).unwrap(), 1);
        assert_eq!(first_digit(0.002, Base::DECIMAL).unwrap(), 2);
        assert_eq!(first_digit(7.0, Base::BINARY).unwrap(), 1);
        assert_eq!(first_digit(0xA3 as f64, base(16)).unwrap(), 10);
    }

    #[test]
    fn log_map_examples() {
        assert_eq!(log_map(1.0, Base::DECIMAL).unwrap(), 0.0);
        assert_relative_eq!(
            log_map(2.0, Base::DECIMAL).unwrap(),
            0.30102999566,
            epsilon = 1e-11
        );
        assert_relative_eq!(
            log_map(10f64.sqrt(), Base::DECIMAL).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert!(log_map(10.0, Base::DECIMAL).is_err());
        assert!(log_map(0.5, Base::DECIMAL).is_err());
    }

    #[test]
    fn mul_mod_b_examples() {
        assert_eq!(mul_mod_b(2.0, 3.0, Base::DECIMAL).unwrap(), 6.0);
        assert_eq!(mul_mod_b(4.0, 5.0, Base::DECIMAL).unwrap(), 2.0);
        assert_eq!(mul_mod_b(7.25, 1.0, Base::DECIMAL).unwrap(), 7.25);
        assert!(mul_mod_b(10.0, 1.0, Base::DECIMAL).is_err());
    }
}
