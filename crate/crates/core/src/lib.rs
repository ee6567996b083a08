//! # benford
//!
//! Newcomb–Benford significand statistics in an arbitrary integer base.
//!
//! Positive reals are reduced to their significand in `[1, b)`, the
//! representative of the quotient of `(0, ∞)` by the integer powers of `b`.
//! On that interval the library provides:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`significand`] | decomposition `x = s·b^k`, first digit, the log map onto `[0, 1)`, multiplication mod `b` |
//! | [`nb`] | the Newcomb–Benford law: pdf `1/(x ln b)`, cdf `log_b x`, quantile, digit probabilities, interval measure and its invariance under scaling mod `b` |
//! | [`wrapping`] | condensation of densities on `(0, ∞)` onto `[1, b)`, with a closed form for log-normals and mixtures |
//! | [`entropy`] | differential entropy, the Gibbs bound against the NB reference and the mean-log constraint |
//! | [`conformance`] | digit histograms, chi-square / KS / TV statistics, seeded samplers and deterministic sequences |
//!
//! ```rust
//! use benford::{Base, NbDistribution};
//!
//! let nb = NbDistribution::new(Base::DECIMAL);
//! let p1 = nb.first_digit_prob(1).unwrap();
//! assert!((p1 - 0.301029995664).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conformance;
pub mod entropy;
pub mod nb;
pub mod quadrature;
pub mod significand;
pub mod special;
pub mod wrapping;

mod error;
mod sum;

pub use conformance::{
    chi_square, conformance_report, digit_histogram, gen_sequence, ks_uniform, sample_lognormal,
    sample_nb, ChiSquare, ConformanceReport, DigitHistogram, SequenceKind, SkipCounts,
};
pub use entropy::{analyze_entropy, entropy, mean_log, nb_entropy_closed, EntropyReport};
pub use error::{Error, Result};
pub use nb::{IntervalSet, NbDistribution, ScaleCase, SignificandInterval};
pub use significand::{decompose, first_digit, log_map, mul_mod_b, Base, SignificandDecomposition};
pub use wrapping::{
    distance_to_nb, euler_maclaurin_leading, wrap_mixture_pdf, wrapped_lognormal_pdf, LogNormal,
    LogNormalParams, Mixture, MixtureParams, NbDistance, SourceDensity, UniformSource,
    WrappedDensity,
};
