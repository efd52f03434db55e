//! Lower bounds for N(T,β)/N(T) below β = 1 from the minorant G with
//! Ĝ(α) = 1 − |α| + sin(2π|α|)/(2π), sharpened by a lower bound for
//! ∫₁^ξ (ξ − α)F(α) dα.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::numerics::{find_root, integrate_adaptive, Bracket, QuadratureSpec};
use crate::{Error, Result};

/// Left end of the range where the I(ξ) model is nontrivial: 1 + 1/√3.
pub const XI_NONTRIVIAL: f64 = 1.577_350_269_189_625_7;

const THRESHOLD_SCAN_STEP: f64 = 1e-3;
const THRESHOLD_TOL: f64 = 1e-6;

/// Ĝ(α); zero for |α| > 1.
pub fn g_hat(alpha: f64) -> f64 {
    let a = alpha.abs();
    if a > 1.0 {
        return 0.0;
    }
    if a < 0.5 {
        return 1.0 - a + libm::sin(2.0 * PI * a) / (2.0 * PI);
    }
    // near α = 1 write it in e = 1 − α so g(1) is exactly zero
    let e = 1.0 - a;
    e - libm::sin(2.0 * PI * e) / (2.0 * PI)
}

/// ξ²/2 − ξ + ⅓, the lower model for ∫₁^ξ (ξ − α)F(α) dα.
pub fn goldston_lower(xi: f64) -> f64 {
    xi * xi / 2.0 - xi + 1.0 / 3.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapBoundProfile {
    pub beta: f64,
    /// β − 1 + 2β∫₀¹ Ĝ(βα)α dα.
    pub base_term: f64,
    /// −4πβ³∫_{1+1/√3}^{1/β} sin(2πβα) I(α) dα with I = [`goldston_lower`].
    pub correction: f64,
    pub total: f64,
}

/// Closed form of β − 1 + 2β∫₀¹ Ĝ(βα)α dα.
pub fn base_term(beta: f64) -> f64 {
    let k = 2.0 * PI * beta;
    let osc = (libm::sin(k) / (k * k) - libm::cos(k) / k) / (2.0 * PI);
    beta - 1.0 + 2.0 * beta * (0.5 - beta / 3.0 + osc)
}

/// The same quantity by quadrature of Ĝ.
pub fn base_term_quadrature(beta: f64) -> Result<f64> {
    let spec = QuadratureSpec::default().with_tol(1e-14, 1e-13);
    let inner = integrate_adaptive(|a| g_hat(beta * a) * a, 0.0, 1.0, &spec)?;
    Ok(beta - 1.0 + 2.0 * beta * inner)
}

pub fn correction_term(beta: f64) -> Result<f64> {
    let hi = 1.0 / beta;
    if hi <= XI_NONTRIVIAL {
        return Ok(0.0);
    }
    let spec = QuadratureSpec::default().with_tol(1e-14, 1e-13);
    let k = 2.0 * PI * beta;
    let v = integrate_adaptive(|a| libm::sin(k * a) * goldston_lower(a), XI_NONTRIVIAL, hi, &spec)?;
    Ok(-4.0 * PI * beta * beta * beta * v)
}

pub fn lower_bound_profile(beta: f64) -> Result<GapBoundProfile> {
    if !(0.5..=1.0).contains(&beta) {
        return Err(Error::Domain("beta must lie in [1/2, 1]"));
    }
    let base = base_term(beta);
    let correction = correction_term(beta)?;
    Ok(GapBoundProfile { beta, base_term: base, correction, total: base + correction })
}

/// Smallest β ∈ [½, 1] where the bound turns positive.
pub fn solve_threshold(use_correction: bool) -> Result<f64> {
    solve_threshold_tol(use_correction, THRESHOLD_TOL * 1e-3)
}

/// [`solve_threshold`] with an explicit root tolerance.
pub fn solve_threshold_tol(use_correction: bool, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive"));
    }
    let f = |b: f64| -> f64 {
        let base = base_term(b);
        if use_correction {
            base + correction_term(b).unwrap_or(f64::NAN)
        } else {
            base
        }
    };
    let n = libm::round(0.5 / THRESHOLD_SCAN_STEP) as usize;
    let mut lo = 0.5;
    let mut f_lo = f(lo);
    for i in 1..=n {
        let hi = 0.5 + THRESHOLD_SCAN_STEP * i as f64;
        let f_hi = f(hi);
        if f_lo.is_nan() || f_hi.is_nan() {
            return Err(Error::NonConvergence { what: "gap bound evaluation", estimate: f64::NAN });
        }
        if f_lo <= 0.0 && f_hi > 0.0 {
            return Ok(find_root(f, Bracket::new(f, lo, hi)?, tol));
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::NoRoot { lo: 0.5, hi: 1.0 })
}

/// Points α ∈ [1+1/√3, 1/β] among `n` samples where sin(2πβα) > 0, i.e.
/// where the correction integrand would work against the bound.
pub fn correction_sign_report(beta: f64, n: usize) -> Vec<f64> {
    let hi = 1.0 / beta;
    if hi <= XI_NONTRIVIAL || n == 0 {
        return Vec::new();
    }
    let k = 2.0 * PI * beta;
    (0..=n)
        .map(|i| XI_NONTRIVIAL + (hi - XI_NONTRIVIAL) * i as f64 / n as f64)
        .filter(|&a| libm::sin(k * a) > 1e-15)
        .collect()
}
