mod common;

use benford::conformance::{chi_square_observed, sequence_report};
use benford::special::{chi_square_sf, gamma_p, gamma_q};
use benford::{
    chi_square, conformance_report, digit_histogram, gen_sequence, ks_uniform, sample_lognormal,
    sample_nb, Base, DigitHistogram, LogNormalParams, NbDistribution, SequenceKind,
};
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use statrs::function::gamma::{gamma_lr, gamma_ur};

const D: Base = Base::DECIMAL;

#[test]
fn incomplete_gamma_matches_reference() {
    for &a in &[0.5, 1.0, 2.5, 4.0, 7.0, 12.5, 30.0] {
        for &x in &[1e-3, 0.2, 1.0, 3.3, 8.0, 15.5, 40.0, 90.0] {
            assert!(
                (gamma_p(a, x) - gamma_lr(a, x)).abs() < 1e-10,
                "P({a}, {x})"
            );
            assert!(
                (gamma_q(a, x) - gamma_ur(a, x)).abs() < 1e-10,
                "Q({a}, {x})"
            );
        }
    }
}

#[test]
fn chi_square_tail_matches_reference() {
    for dof in 1..=20u32 {
        let dist = ChiSquared::new(dof as f64).unwrap();
        for &x in &[0.1, 1.0, 5.0, 15.507, 30.0, 60.0] {
            assert!((chi_square_sf(x, dof) - dist.sf(x)).abs() < 1e-10);
        }
    }
    // 95th percentile of χ²(8).
    assert!((chi_square_sf(15.507, 8) - 0.05).abs() < 1e-4);
}

#[test]
fn chi_square_zero_iff_proportional() {
    let probs = NbDistribution::new(D).digit_probabilities();
    let exact: Vec<f64> = probs.iter().map(|p| 5000.0 * p).collect();
    let c = chi_square_observed(&exact, D).unwrap();
    assert!(c.statistic.abs() < 1e-20);
    assert!((c.pvalue - 1.0).abs() < 1e-12);

    let mut nudged = exact.clone();
    nudged[3] += 1.0;
    assert!(chi_square_observed(&nudged, D).unwrap().statistic > 0.0);
}

#[test]
fn uniform_digits_are_rejected() {
    let h = DigitHistogram::from_counts(D, vec![1000; 9]).unwrap();
    let c = chi_square(&h).unwrap();
    // Σ (1000 − 9000 p_d)² / (9000 p_d), evaluated directly.
    let probs = NbDistribution::new(D).digit_probabilities();
    let direct: f64 = probs
        .iter()
        .map(|p| (1000.0 - 9000.0 * p).powi(2) / (9000.0 * p))
        .sum();
    assert!((c.statistic - direct).abs() < 1e-9);
    assert!(c.statistic > 500.0);
}

#[test]
fn exact_nb_samples_conform() {
    let data = sample_nb(100_000, D, 20_241_018);
    let (h, skipped) = digit_histogram(&data, D).unwrap();
    assert_eq!(skipped.total(), 0);
    let nb = NbDistribution::new(D);
    for d in 1..=9 {
        let freq = h.count(d) as f64 / h.total() as f64;
        assert!(
            (freq - nb.first_digit_prob(d).unwrap()).abs() < 0.01,
            "digit {d}: {freq}"
        );
    }
    assert!(ks_uniform(&data, D).unwrap() < 0.006);
    assert!(chi_square(&h).unwrap().pvalue > 0.01);
}

#[test]
fn lognormal_samples_have_right_moments() {
    let n = 100_000;
    let (m, s) = (1.3, 0.7);
    let data = sample_lognormal(n, &LogNormalParams::new(m, s).unwrap(), 99);
    let logs: Vec<f64> = data.iter().map(|x| x.ln()).collect();
    let mean = logs.iter().sum::<f64>() / n as f64;
    let var = logs.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    assert!((mean - m).abs() < 3.0 * s / (n as f64).sqrt());
    // sd of the sample sd is about s/√(2n).
    assert!((var.sqrt() - s).abs() < 4.0 * s / (2.0 * n as f64).sqrt());
}

#[test]
fn wide_lognormal_samples_are_benford() {
    let data = sample_lognormal(100_000, &LogNormalParams::new(0.0, 4.0).unwrap(), 5);
    let r = conformance_report(&data, D).unwrap();
    assert!(r.tv_distance < 0.02, "{}", r.tv_distance);
}

#[test]
fn pow2_and_fibonacci_are_benford() {
    for kind in [SequenceKind::Pow2, SequenceKind::Fibonacci] {
        let terms = gen_sequence(kind, 100_000, D).unwrap();
        let r = sequence_report(&terms, D).unwrap();
        assert!(r.tv_distance < 0.005, "{kind:?}: {}", r.tv_distance);
    }
}

#[test]
fn fibonacci_tracks_binet() {
    let terms = gen_sequence(SequenceKind::Fibonacci, 5_000, D).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    for (i, t) in terms.iter().enumerate().skip(60) {
        let n = (i + 1) as f64;
        let expected = n * phi.log10() - 5f64.sqrt().log10();
        assert!(
            (t.log_magnitude() - expected).abs() < 1e-9 * n,
            "i={i} {} vs {expected}",
            t.log_magnitude()
        );
    }
}

#[test]
fn factorial_does_not_overflow() {
    let terms = gen_sequence(SequenceKind::Factorial, 10_000, D).unwrap();
    let last = terms.last().unwrap();
    // log10(10000!) = 35659.454...
    assert_eq!(last.exponent, 35_659);
    assert!(last.significand.is_finite());
    let expected = libm::lgamma(10_001.0) / 10f64.ln();
    assert!((last.log_magnitude() - expected).abs() < 1e-8);
}

#[test]
fn ks_for_stratified_data() {
    for n in [1usize, 10, 1000] {
        let data: Vec<f64> = (1..=n)
            .map(|i| 10f64.powf((i as f64 - 0.5) / n as f64))
            .collect();
        assert!((ks_uniform(&data, D).unwrap() - 0.5 / n as f64).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn skip_accounting(data in proptest::collection::vec(
        prop_oneof![
            -1e6f64..1e6,
            Just(0.0),
            Just(f64::NAN),
            Just(f64::INFINITY),
            Just(f64::NEG_INFINITY),
        ], 1..200)) {
        match digit_histogram(&data, D) {
            Ok((h, skipped)) => {
                prop_assert_eq!(h.total() + skipped.total(), data.len() as u64);
                prop_assert_eq!(h.counts().iter().sum::<u64>(), h.total());
                let r = conformance_report(&data, D).unwrap();
                prop_assert!((0.0..=1.0).contains(&r.tv_distance));
                prop_assert!((0.0..=1.0).contains(&r.ks_stat));
            }
            Err(e) => {
                prop_assert_eq!(e, benford::Error::EmptyData);
                prop_assert!(data.iter().all(|x| !(x.is_finite() && *x > 0.0)));
            }
        }
    }

    #[test]
    fn seeded_samplers_are_reproducible(seed in any::<u64>(), b in 2u64..40) {
        let base = Base::new(b).unwrap();
        prop_assert_eq!(sample_nb(64, base, seed), sample_nb(64, base, seed));
        let p = LogNormalParams::new(0.5, 1.5).unwrap();
        let a: Vec<u64> = sample_lognormal(64, &p, seed).iter().map(|x| x.to_bits()).collect();
        let c: Vec<u64> = sample_lognormal(64, &p, seed).iter().map(|x| x.to_bits()).collect();
        prop_assert_eq!(a, c);
    }
}
