//! Differential entropy on `[1, b)` and the Gibbs bound against NB.
//!
//! For any density `ρ` on `[1, b)`, taking the NB density as reference in
//! Gibbs' inequality gives
//!
//! ```text
//! H[ρ] <= −⟨ln ρ_NB⟩_ρ = ln(ln b) + ⟨ln x⟩_ρ
//! ```
//!
//! with equality only for NB itself, whose entropy is `ln(ln b) + ½ ln b`.
//! Hence NB has maximal entropy among densities with `⟨ln x⟩ <= ½ ln b`.
//! All values are in nats.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadConfig, Quadrature};
use crate::significand::Base;

/// Allowed deviation of `∫ρ` from 1.
pub const NORMALIZATION_TOL: f64 = 1e-6;

/// Slack on the mean-log constraint so quadrature noise cannot flip it.
pub const CONSTRAINT_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub entropy: f64,
    pub mean_log: f64,
    /// `ln(ln b) + mean_log`.
    pub gibbs_bound: f64,
    /// `mean_log <= ½ ln b` (with [`CONSTRAINT_SLACK`]).
    pub constraint_met: bool,
    pub quadrature_error_estimate: f64,
}

impl EntropyReport {
    /// `gibbs_bound − entropy`, the relative entropy to NB.
    pub fn gibbs_gap(&self) -> f64 {
        self.gibbs_bound - self.entropy
    }
}

/// `ln(ln b) + ½ ln b`.
pub fn nb_entropy_closed(base: Base) -> f64 {
    base.ln().ln() + 0.5 * base.ln()
}

/// `−∫₁ᵇ ρ ln ρ dx`, with `0 ln 0 = 0`.
pub fn entropy<F: Fn(f64) -> f64>(pdf: F, base: Base) -> Result<f64> {
    check_normalized(&pdf, base)?;
    Ok(entropy_quad(&pdf, base)?.value)
}

/// `∫₁ᵇ ρ(x) ln x dx`.
pub fn mean_log<F: Fn(f64) -> f64>(pdf: F, base: Base) -> Result<f64> {
    check_normalized(&pdf, base)?;
    Ok(mean_log_quad(&pdf, base)?.value)
}

pub fn analyze_entropy<F: Fn(f64) -> f64>(pdf: F, base: Base) -> Result<EntropyReport> {
    let norm = check_normalized(&pdf, base)?;
    let h = entropy_quad(&pdf, base)?;
    let ml = mean_log_quad(&pdf, base)?;
    let mean_log = ml.value;
    Ok(EntropyReport {
        entropy: h.value,
        mean_log,
        gibbs_bound: base.ln().ln() + mean_log,
        constraint_met: mean_log <= 0.5 * base.ln() + CONSTRAINT_SLACK,
        quadrature_error_estimate: h.error + ml.error + norm.error,
    })
}

// Integrals are taken in u = ln x, where every density in scope is smooth:
// ∫₁ᵇ g(x) dx = ∫₀^{ln b} g(eᵘ) eᵘ du.
fn integrate_on_support<G: Fn(f64) -> f64>(g: G, base: Base) -> Result<Quadrature> {
    let b = base.as_f64();
    integrate(
        |u: f64| {
            let x = u.exp().clamp(1.0, b.next_down());
            g(x) * x
        },
        0.0,
        base.ln(),
        &QuadConfig::default(),
    )
}

fn check_normalized<F: Fn(f64) -> f64>(pdf: &F, base: Base) -> Result<Quadrature> {
    let q = integrate_on_support(pdf, base)?;
    if (q.value - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { integral: q.value });
    }
    Ok(q)
}

fn entropy_quad<F: Fn(f64) -> f64>(pdf: &F, base: Base) -> Result<Quadrature> {
    integrate_on_support(
        |x| {
            let r = pdf(x);
            if r > 0.0 {
                -r * r.ln()
            } else {
                0.0
            }
        },
        base,
    )
}

fn mean_log_quad<F: Fn(f64) -> f64>(pdf: &F, base: Base) -> Result<Quadrature> {
    integrate_on_support(|x| pdf(x) * x.ln(), base)
}
