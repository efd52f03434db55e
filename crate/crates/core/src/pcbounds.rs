//! The functional M(R) = ∫ R dμ, the closed form of ½M(s_{Δ,β}^±) through the
//! oscillatory series V_Δ^±(β), and the bound tables built from it.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::beurling::{make_selberg_pair, BandlimitedFunction};
use crate::kernel;
use crate::numerics::{
    find_root, hurwitz_zeta, integrate_adaptive, integrate_real_line, sinc, Bracket, QuadratureSpec,
};
use crate::{Error, Result, Sign};

/// Agreement required between the time-domain and Plancherel forms of M.
pub const FORM_AGREEMENT: f64 = 1e-7;

/// ½M(s_{Δ,β}^±) with its reference values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MEvaluation {
    pub beta: f64,
    pub delta: f64,
    pub sign: Sign,
    pub closed_form: f64,
    /// ½ × time-domain quadrature of s·dμ, when requested.
    pub quadrature_check: Option<f64>,
    /// β − ½ ± 1/(2Δ) + 1/(2π²β).
    pub asymptotic: f64,
}

/// One row of a bound table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundRow {
    pub beta: f64,
    /// ½M(r_β^−).
    pub lower: f64,
    /// ½M(r_β^+).
    pub upper: f64,
    pub nstar_ratio: f64,
    pub lower_adjusted: f64,
    pub upper_adjusted: f64,
    /// ∫₀^β {1 − sinc²}.
    pub conjecture: f64,
    /// Two-delta value 2/(K(β,β) + |K(β,−β)|).
    pub two_delta: f64,
    pub asymptotic_lower: f64,
    pub asymptotic_upper: f64,
}

/// dμ density 1 − sinc²(x).
#[inline]
pub fn mu_density(x: f64) -> f64 {
    let s = sinc(x);
    1.0 - s * s
}

/// Smallest common period of `p` and 1 (the period of the μ density).
pub fn common_period(p: Option<f64>) -> f64 {
    let Some(p) = p else { return 1.0 };
    for m in 1..=200u32 {
        let r = m as f64 / p;
        if (r - libm::round(r)).abs() < 1e-9 * r.max(1.0) {
            return m as f64;
        }
    }
    1.0
}

/// M(R) by quadrature of R·dμ over ℝ.
pub fn m_time(r: &BandlimitedFunction, spec: &QuadratureSpec) -> Result<f64> {
    let spec = spec.with_period(common_period(r.period));
    integrate_real_line(|x| r.time_eval(x) * mu_density(x), 2.0, &spec)
}

/// M(R) = R̂(0) − ∫_{−1}^{1} R̂(t)(1−|t|) dt; requires a closed-form R̂.
pub fn m_plancherel(r: &BandlimitedFunction, spec: &QuadratureSpec) -> Result<f64> {
    if !r.has_freq() {
        return Err(Error::Domain("Plancherel form needs a Fourier transform"));
    }
    let d = r.delta().min(1.0);
    let g = |t: f64| r.freq_eval(t).unwrap_or(0.0) * (1.0 - t.abs());
    let spec = QuadratureSpec { oscillation_period: None, ..*spec };
    let left = integrate_adaptive(g, -d, 0.0, &spec)?;
    let right = integrate_adaptive(g, 0.0, d, &spec)?;
    Ok(r.freq_eval(0.0).unwrap_or(0.0) - left - right)
}

/// M(R). When R has type ≤ 2π and a known transform, both forms are
/// evaluated and must agree to [`FORM_AGREEMENT`].
pub fn m_of(r: &BandlimitedFunction) -> Result<f64> {
    let spec = QuadratureSpec::default();
    let t = m_time(r, &spec)?;
    if r.has_freq() && r.delta() <= 1.0 + 1e-12 {
        let p = m_plancherel(r, &spec)?;
        if (p - t).abs() > FORM_AGREEMENT {
            return Err(Error::NonConvergence {
                what: "M(R): time and frequency forms disagree",
                estimate: (p - t).abs(),
            });
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// The V series

/// Below this |v| = |2πu/Δ| the summand is evaluated from its Taylor series.
pub const RESONANCE_V: f64 = 1.0;

/// f(u) = {(Δ+1) − (Δ−1) cos(2πu/Δ)}/u² − Δ sin(2πu/Δ)/(πu³), an even
/// entire function of u.
pub fn v_summand(delta: f64, u: f64) -> f64 {
    let v = 2.0 * PI * u / delta;
    let scale = (2.0 * PI / delta) * (2.0 * PI / delta);
    if v.abs() < RESONANCE_V {
        // g(v) = Σ_{k≥1} (−1)^{k+1} v^{2k−2} [(Δ−1)/(2k)! + 2/(2k+1)!]
        let v2 = v * v;
        let mut fact2k = 2.0; // (2k)!
        let mut pw = 1.0;
        let mut g = 0.0;
        for k in 1..=14 {
            let kk = k as f64;
            let fact2k1 = fact2k * (2.0 * kk + 1.0);
            let c = (delta - 1.0) / fact2k + 2.0 / fact2k1;
            g += if k % 2 == 1 { c * pw } else { -c * pw };
            pw *= v2;
            fact2k = fact2k1 * (2.0 * kk + 2.0);
        }
        return scale * g;
    }
    let (s, c) = (libm::sin(v), libm::cos(v));
    ((delta + 1.0) - (delta - 1.0) * c) / (u * u) - delta * s / (PI * u * u * u)
}

// Stirling numbers of the second kind times j!, row r, for the Eulerian
// expansion Σ_k k^r w^k = Σ_j S(r,j) j! w^j / (1−w)^{j+1}.
const EULER_TERMS: usize = 48;

/// Σ_{k≥0} e^{iθ(u0+k)} (u0+k)^{−s} for u0 large, s > 1.
pub fn lerch_tail(theta: f64, s: f64, u0: f64) -> Complex64 {
    let phi = theta - 2.0 * PI * libm::round(theta / (2.0 * PI));
    let phase = |u: f64| Complex64::from_polar(1.0, theta * u);
    if phi.abs() < 1e-12 {
        return phase(u0) * hurwitz_zeta(s, u0);
    }
    let w = Complex64::from_polar(1.0, phi);
    let one_minus_w = Complex64::new(1.0, 0.0) - w;
    let gap = one_minus_w.norm();
    // Sum directly until the Eulerian expansion converges well.
    let mut head = Complex64::new(0.0, 0.0);
    let mut u = u0;
    while u * gap < 40.0 {
        head += phase(u) * libm::pow(u, -s);
        u += 1.0;
    }
    // Σ_k w^k g(k), g(k) = (u+k)^{−s}: Σ_r g^{(r)}(0)/r! · P_r(w).
    let inv = Complex64::new(1.0, 0.0) / one_minus_w;
    let mut row = [0.0f64; EULER_TERMS + 1]; // S(r,j)·j!
    row[0] = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut coef = libm::pow(u, -s); // (−1)^r C(s+r−1, r) u^{−s−r}
    let mut last = f64::INFINITY;
    for r in 0..=EULER_TERMS {
        if r > 0 {
            // S(r,j) j! = j·S(r−1,j) j! + j·S(r−1,j−1)(j−1)!
            for j in (1..=r).rev() {
                row[j] = j as f64 * (row[j] + row[j - 1]);
            }
            row[0] = 0.0;
            coef *= -(s + r as f64 - 1.0) / (r as f64 * u);
        }
        let mut p = Complex64::new(0.0, 0.0);
        let mut wj_inv = inv; // w^j/(1−w)^{j+1}
        for (j, &sj) in row.iter().enumerate().take(r + 1) {
            if j > 0 {
                wj_inv = wj_inv * w * inv;
            }
            p += wj_inv * sj;
        }
        let term = p * coef;
        let tn = term.norm();
        sum += term;
        if tn < 1e-18 * sum.norm() || (tn > last && r > 4) {
            break;
        }
        last = tn;
    }
    head + phase(u) * sum
}

/// Σ_{k≥0} f(u0+k) with f = [`v_summand`], for u0 well past resonance.
fn v_tail(delta: f64, u0: f64) -> f64 {
    let theta = 2.0 * PI / delta;
    let smooth = (delta + 1.0) * hurwitz_zeta(2.0, u0);
    let l2 = lerch_tail(theta, 2.0, u0);
    let l3 = lerch_tail(theta, 3.0, u0);
    smooth - (delta - 1.0) * l2.re - delta / PI * l3.im
}

fn window(delta: f64, beta: f64) -> usize {
    let z = libm::ceil(delta * beta);
    (100.0 * z).max(1e4) as usize
}

/// (Σ_{n≥1} f(n−z), Σ_{m≥1} f(m+z)) with z = Δβ.
fn v_halves(delta: f64, beta: f64) -> (f64, f64) {
    let z = delta * beta;
    let n = window(delta, beta);
    let k_hi = libm::ceil(z) as usize + n;
    let mut s1 = 0.0;
    for k in 1..=k_hi {
        s1 += v_summand(delta, k as f64 - z);
    }
    s1 += v_tail(delta, (k_hi + 1) as f64 - z);
    let mut s2 = 0.0;
    for m in 1..=n {
        s2 += v_summand(delta, m as f64 + z);
    }
    s2 += v_tail(delta, (n + 1) as f64 + z);
    (s1, s2)
}

fn check_args(beta: f64, delta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::Domain("beta must be positive"));
    }
    if !(delta >= 1.0) || !delta.is_finite() {
        return Err(Error::Domain("delta must be at least 1"));
    }
    Ok(())
}

/// V_Δ^±(β) = (1/4π²) Σ_n sgn(n^±) f(Δβ − n), sgn(0^±) = ±1.
pub fn v_series(delta: f64, beta: f64, sign: Sign) -> Result<f64> {
    check_args(beta, delta)?;
    let z = delta * beta;
    let (s1, s2) = v_halves(delta, beta);
    let v = (sign.as_f64() * v_summand(delta, z) + s1 - s2) / (4.0 * PI * PI);
    if !v.is_finite() {
        return Err(Error::NonConvergence { what: "V series", estimate: f64::NAN });
    }
    Ok(v)
}

/// G_Δ(β) = (1/4π²) Σ_n f(Δβ − n); identically ½.
pub fn g_series(delta: f64, beta: f64) -> Result<f64> {
    check_args(beta, delta)?;
    let z = delta * beta;
    let (s1, s2) = v_halves(delta, beta);
    Ok((v_summand(delta, z) + s1 + s2) / (4.0 * PI * PI))
}

/// G_Δ(0) summed directly: f is even and f(0) = (2π/Δ)²(Δ/2 − 1/6), so
/// G_Δ(0) = 1/(2Δ) − 1/(6Δ²) + (1/2π²) Σ_{n≥1} f(n).
pub fn g_at_zero(delta: f64) -> f64 {
    let theta = 2.0 * PI / delta;
    let n = 10_000usize;
    let mut s = 0.0;
    for k in 1..=n {
        let x = k as f64;
        s += ((delta + 1.0) - (delta - 1.0) * libm::cos(theta * x)) / (x * x)
            - delta * libm::sin(theta * x) / (PI * x * x * x);
    }
    let u0 = (n + 1) as f64;
    s += (delta + 1.0) * hurwitz_zeta(2.0, u0)
        - (delta - 1.0) * lerch_tail(theta, 2.0, u0).re
        - delta / PI * lerch_tail(theta, 3.0, u0).im;
    1.0 / (2.0 * delta) - 1.0 / (6.0 * delta * delta) + s / (2.0 * PI * PI)
}

/// (x − sin x)/x² with a series near 0.
fn x_minus_sin_over_x2(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    } else {
        (x - libm::sin(x)) / (x * x)
    }
}

/// ½M(s_{Δ,β}^±) in closed form.
pub fn m_selberg(beta: f64, delta: f64, sign: Sign) -> Result<MEvaluation> {
    check_args(beta, delta)?;
    let v = v_series(delta, beta, sign)?;
    // 1/(2π²β) − sin 2πβ/(4π³β²) = (x − sin x)/(π x²) with x = 2πβ.
    let x = 2.0 * PI * beta;
    let b = x_minus_sin_over_x2(x) / PI;
    let s = sign.as_f64();
    let closed_form = beta + s / (2.0 * delta) - b / delta - v;
    let asymptotic = beta - 0.5 + s / (2.0 * delta) + 1.0 / (2.0 * PI * PI * beta);
    Ok(MEvaluation { beta, delta, sign, closed_form, quadrature_check: None, asymptotic })
}

/// [`m_selberg`] together with ½ × the time-domain integral of s·dμ.
pub fn m_selberg_checked(beta: f64, delta: f64, sign: Sign, spec: &QuadratureSpec) -> Result<MEvaluation> {
    let mut ev = m_selberg(beta, delta, sign)?;
    let pair = make_selberg_pair(beta, delta)?;
    let f = match sign {
        Sign::Plus => &pair.majorant,
        Sign::Minus => &pair.minorant,
    };
    ev.quadrature_check = Some(0.5 * m_time(f, spec)?);
    Ok(ev)
}

/// ∫₀^β {1 − sinc²}, the conjectured limit of N(T,β)/N(T).
pub fn conjecture_integral(beta: f64) -> Result<f64> {
    if beta <= 0.0 {
        return Ok(0.0);
    }
    let spec = QuadratureSpec::default().with_period(1.0);
    integrate_adaptive(mu_density, 0.0, beta, &spec)
}

/// Lower/upper bounds for N(T,β)/N(T) at one β, with the conjecture and
/// two-delta columns alongside.
pub fn bound_row(beta: f64, nstar_ratio: f64) -> Result<BoundRow> {
    if !(1.0..=4.0 / 3.0 + 1e-12).contains(&nstar_ratio) {
        return Err(Error::Domain("nstar ratio must lie in [1, 4/3]"));
    }
    let lo = m_selberg(beta, 1.0, Sign::Minus)?;
    let up = m_selberg(beta, 1.0, Sign::Plus)?;
    let adj = 0.5 * (1.0 - nstar_ratio);
    Ok(BoundRow {
        beta,
        lower: lo.closed_form,
        upper: up.closed_form,
        nstar_ratio,
        lower_adjusted: lo.closed_form + adj,
        upper_adjusted: up.closed_form + adj,
        conjecture: conjecture_integral(beta)?,
        two_delta: kernel::two_delta(beta)?.value,
        asymptotic_lower: lo.asymptotic,
        asymptotic_upper: up.asymptotic,
    })
}

/// [`bound_row`] over a grid.
pub fn bound_table(betas: &[f64], nstar_ratio: f64) -> Result<Vec<BoundRow>> {
    if betas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("betas must be ascending"));
    }
    betas.iter().map(|&b| bound_row(b, nstar_ratio)).collect()
}

/// (½M(s_{2−ε,β}^−), ½M(s_{2−ε,β}^+)).
pub fn q_aspect_bounds(beta: f64, epsilon: f64) -> Result<(f64, f64)> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain("epsilon must lie in (0, 1)"));
    }
    let d = 2.0 - epsilon;
    Ok((m_selberg(beta, d, Sign::Minus)?.closed_form, m_selberg(beta, d, Sign::Plus)?.closed_form))
}

/// Smallest β in (0, 3] with ½M(s_{Δ,β}^−) > 0.
pub fn minorant_threshold(delta: f64, tol: f64) -> Result<f64> {
    let f = |b: f64| m_selberg(b, delta, Sign::Minus).map(|e| e.closed_form).unwrap_or(f64::NAN);
    let step = 1e-2;
    let mut lo = step;
    let mut flo = f(lo);
    while lo < 3.0 {
        let hi = lo + step;
        let fhi = f(hi);
        if flo <= 0.0 && fhi > 0.0 {
            let br = Bracket::new(f, lo, hi)?;
            return Ok(find_root(f, br, tol));
        }
        lo = hi;
        flo = fhi;
    }
    Err(Error::NoRoot { lo: step, hi: 3.0 })
}
