//! Beurling–Selberg functions: H₀, H₁, H^± = H₀ ± H₁, the interval
//! majorant/minorant pair r_β^± and its dilates s_{Δ,β}^±(x) = r_{Δβ}^±(Δx),
//! with exact Fourier transforms.
//!
//! Fourier convention: f̂(t) = ∫ f(x) e^{−2πixt} dx, so a function of
//! exponential type 2πΔ has f̂ supported in [−Δ, Δ].

use alloc::string::String;
use alloc::sync::Arc;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::numerics::{sinc, trigamma};
use crate::{Error, Result, Sign};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real function of exponential type `type_bound` with a time-domain
/// evaluator and, when known in closed form, its Fourier transform.
#[derive(Clone)]
pub struct BandlimitedFunction {
    /// Exponential type in radians (2πΔ).
    pub type_bound: f64,
    pub label: String,
    /// Period of the oscillation on the real axis, used to size quadrature
    /// panels; `None` if unknown.
    pub period: Option<f64>,
    time: RealFn,
    freq: Option<RealFn>,
}

impl core::fmt::Debug for BandlimitedFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("BandlimitedFunction")
            .field("label", &self.label)
            .field("type_bound", &self.type_bound)
            .field("has_freq", &self.freq.is_some())
            .finish()
    }
}

impl BandlimitedFunction {
    pub fn new<F>(type_bound: f64, label: impl Into<String>, time: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        BandlimitedFunction { type_bound, label: label.into(), period: None, time: Arc::new(time), freq: None }
    }

    pub fn with_freq<F>(mut self, freq: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.freq = Some(Arc::new(freq));
        self
    }

    pub fn with_period(mut self, period: f64) -> Self {
        self.period = Some(period);
        self
    }

    /// Half-width Δ of the Fourier support.
    pub fn delta(&self) -> f64 {
        self.type_bound / (2.0 * PI)
    }

    pub fn time_eval(&self, x: f64) -> f64 {
        (self.time)(x)
    }

    /// f̂(t), exactly zero outside [−Δ, Δ]; `None` when no closed form exists.
    pub fn freq_eval(&self, t: f64) -> Option<f64> {
        let f = self.freq.as_ref()?;
        if t.abs() > self.delta() {
            Some(0.0)
        } else {
            Some(f(t))
        }
    }

    pub fn has_freq(&self) -> bool {
        self.freq.is_some()
    }
}

/// Majorant/minorant pair for χ_[−β,β] of exponential type 2πΔ.
#[derive(Clone, Debug)]
pub struct SelbergPair {
    pub beta: f64,
    pub delta: f64,
    pub minorant: BandlimitedFunction,
    pub majorant: BandlimitedFunction,
}

/// H₀(x) = (sin πx/π)² {Σ_m sgn(m)/(x−m)² + 2/x}.
///
/// The bilateral sum is summed in closed form: for x > 0 it equals
/// π²/sin²πx − 2ψ′(x) + 1/x² + 2/x, so
/// H₀(x) = 1 − (sin πx/π)² (2ψ′(x) − 1/x² − 2/x); H₀ is odd.
pub fn eval_h0(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ax = x.abs();
    let s = libm::sin(PI * ax) / PI;
    let s2 = s * s;
    let v = if ax < 1.0 {
        // 1/x² is pulled into sinc² to avoid cancellation near 0.
        let sc = sinc(ax);
        1.0 - sc * sc + s2 * (2.0 / ax - 2.0 * trigamma(1.0 + ax))
    } else if ax < 10.0 {
        1.0 - s2 * (2.0 * trigamma(ax) - 1.0 / (ax * ax) - 2.0 / ax)
    } else {
        // 2ψ′(x) − 1/x² − 2/x from the asymptotic series of ψ′.
        let y = 1.0 / ax;
        let y2 = y * y;
        let d = 2.0
            * y2
            * y
            * (1.0 / 6.0
                + y2 * (-1.0 / 30.0
                    + y2 * (1.0 / 42.0
                        + y2 * (-1.0 / 30.0 + y2 * (5.0 / 66.0 + y2 * (-691.0 / 2730.0 + y2 * 7.0 / 6.0))))));
        1.0 - s2 * d
    };
    v.copysign(x)
}

/// H₁(x) = (sin πx / πx)².
pub fn eval_h1(x: f64) -> f64 {
    let s = sinc(x);
    s * s
}

/// H^±(x) = H₀(x) ± H₁(x).
pub fn eval_h(sign: Sign, x: f64) -> f64 {
    eval_h0(x) + sign.as_f64() * eval_h1(x)
}

/// r_β^±(x) = ½{H^±(x+β) + H^±(β−x)}.
pub fn eval_r(beta: f64, sign: Sign, x: f64) -> f64 {
    0.5 * (eval_h(sign, x + beta) + eval_h(sign, beta - x))
}

/// χ_[−β,β] normalised to ½ at the endpoints.
pub fn chi(beta: f64, x: f64) -> f64 {
    let ax = x.abs();
    if ax < beta {
        1.0
    } else if ax == beta {
        0.5
    } else {
        0.0
    }
}

/// (1−|t|)(πt cot πt − 1) on |t| ≤ 1, with both endpoint limits.
fn w_core(t: f64) -> f64 {
    let at = t.abs();
    if at >= 1.0 {
        return -1.0;
    }
    let y = PI * at;
    if y < 1e-2 {
        // y cot y − 1 = −y²/3 − y⁴/45 − 2y⁶/945 − y⁸/4725
        let y2 = y * y;
        return (1.0 - at) * (-y2 * (1.0 / 3.0 + y2 * (1.0 / 45.0 + y2 * (2.0 / 945.0 + y2 / 4725.0))));
    }
    if at > 0.5 {
        // With u = 1−|t|: cot π|t| = −cot πu and u·cot πu is regular at u = 0.
        let u = 1.0 - at;
        let ucot = if u == 0.0 { 1.0 / PI } else { u * libm::cos(PI * u) / libm::sin(PI * u) };
        return -y * ucot - u;
    }
    (1.0 - at) * (y * libm::cos(y) / libm::sin(y) - 1.0)
}

/// Ŵ(t) for W = H₀ − sgn; purely imaginary.
pub fn ft_w(t: f64) -> Complex64 {
    if t == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    // (πit)^{-1}·X = −i X/(πt)
    Complex64::new(0.0, -w_core(t) / (PI * t))
}

/// r̂_β^±(t) as a real number, for |t| ≤ 1:
/// i sin(2πβt) Ŵ(t) + sin(2πβt)/(πt) ± (1−|t|) cos 2πβt
/// = 2β sinc(2βt)·(1 + X(t)) ± (1−|t|) cos 2πβt, X = (1−|t|)(πt cot πt − 1).
pub fn ft_r_real(beta: f64, sign: Sign, t: f64) -> f64 {
    let at = t.abs();
    if at > 1.0 {
        return 0.0;
    }
    2.0 * beta * sinc(2.0 * beta * t) * (1.0 + w_core(t)) + sign.as_f64() * (1.0 - at) * libm::cos(2.0 * PI * beta * t)
}

/// r̂_β^±(t), rejecting |t| > 1.
pub fn ft_r(beta: f64, sign: Sign, t: f64) -> Result<Complex64> {
    if !(t.abs() <= 1.0) {
        return Err(Error::Domain("r̂ is only defined on |t| ≤ 1"));
    }
    Ok(Complex64::new(ft_r_real(beta, sign, t), 0.0))
}

/// Empirical Lipschitz constant of r̂_β^± from `samples` uniform steps on [−1, 1].
pub fn ft_r_lipschitz(beta: f64, sign: Sign, samples: usize) -> f64 {
    let n = samples.max(2);
    let h = 2.0 / n as f64;
    let mut prev = ft_r_real(beta, sign, -1.0);
    let mut best: f64 = 0.0;
    for i in 1..=n {
        let t = -1.0 + h * i as f64;
        let v = ft_r_real(beta, sign, t.min(1.0));
        best = best.max((v - prev).abs() / h);
        prev = v;
    }
    best
}

/// The pair s_{Δ,β}^±(x) = r_{Δβ}^±(Δx), with ŝ(t) = Δ⁻¹ r̂_{Δβ}(t/Δ).
pub fn make_selberg_pair(beta: f64, delta: f64) -> Result<SelbergPair> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::Domain("beta must be positive"));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::Domain("delta must be positive"));
    }
    let build = |sign: Sign| {
        let b = delta * beta;
        let label = match sign {
            Sign::Plus => "s+",
            Sign::Minus => "s-",
        };
        BandlimitedFunction::new(2.0 * PI * delta, label, move |x| eval_r(b, sign, delta * x))
            .with_freq(move |t| ft_r_real(b, sign, t / delta) / delta)
            .with_period(1.0 / delta)
    };
    Ok(SelbergPair { beta, delta, minorant: build(Sign::Minus), majorant: build(Sign::Plus) })
}

/// H₁ = sinc² as a band-limited function (Ĥ₁(t) = (1−|t|)₊).
pub fn h1_function() -> BandlimitedFunction {
    BandlimitedFunction::new(2.0 * PI, "sinc^2", eval_h1).with_freq(|t| (1.0 - t.abs()).max(0.0)).with_period(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h0_branches_join() {
        for &x in &[1.0 - 1e-12, 1.0, 10.0 - 1e-12, 10.0] {
            let ax: f64 = x;
            let s = libm::sin(PI * ax) / PI;
            let direct = 1.0 - s * s * (2.0 * trigamma(ax) - 1.0 / (ax * ax) - 2.0 / ax);
            assert!((eval_h0(x) - direct).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn h0_is_odd_and_vanishes_at_zero() {
        assert_eq!(eval_h0(0.0), 0.0);
        for &x in &[0.1, 0.7, 3.3, 12.5] {
            assert_eq!(eval_h0(-x), -eval_h0(x));
        }
    }

    #[test]
    fn ft_w_examples() {
        assert_eq!(ft_w(0.0), Complex64::new(0.0, 0.0));
        assert!((ft_w(0.5) - Complex64::new(0.0, 1.0 / PI)).norm() < 1e-15);
        assert!((ft_w(1.0) - Complex64::new(0.0, 1.0 / PI)).norm() < 1e-15);
        // one-sided limit at t = 1 from inside
        assert!((ft_w(1.0 - 1e-9) - ft_w(1.0)).norm() < 1e-8);
    }

    #[test]
    fn ft_r_at_zero() {
        for &b in &[0.3, 1.0, 4.2] {
            assert!((ft_r_real(b, Sign::Plus, 0.0) - (2.0 * b + 1.0)).abs() < 1e-14);
            assert!((ft_r_real(b, Sign::Minus, 0.0) - (2.0 * b - 1.0)).abs() < 1e-14);
        }
        assert!(ft_r(1.0, Sign::Plus, 1.5).is_err());
    }
}
