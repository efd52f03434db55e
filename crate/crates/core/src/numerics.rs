//! Scalar machinery shared by every other module: adaptive Gauss–Kronrod
//! quadrature (finite and semi-infinite), bracketed root finding, series
//! summation with modelled tails, Hurwitz zeta / trigamma, and patches for
//! removable singularities.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerances and refinement limits for the adaptive integrators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections applied to any initial panel.
    pub max_depth: u32,
    /// Initial panels are laid out on this period when given; for
    /// semi-infinite integrals it is also the chunk length.
    pub oscillation_period: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { abs_tol: 1e-11, rel_tol: 1e-10, max_depth: 40, oscillation_period: None }
    }
}

impl QuadratureSpec {
    pub fn with_period(mut self, period: f64) -> Self {
        self.oscillation_period = Some(period);
        self
    }

    pub fn with_tol(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    fn validate(&self) -> Result<()> {
        let ok = self.abs_tol > 0.0
            && self.rel_tol > 0.0
            && self.max_depth >= 1
            && self.oscillation_period.is_none_or(|p| p > 0.0 && p.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::Domain("invalid quadrature spec"))
        }
    }
}

/// An interval on which a continuous function is certified to change sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo_sign: i8,
    pub f_hi_sign: i8,
}

impl Bracket {
    /// Evaluates `f` at both ends and certifies a strict sign change.
    pub fn new<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Bracket> {
        if !(lo < hi) {
            return Err(Error::Domain("bracket requires lo < hi"));
        }
        let (a, b) = (f(lo), f(hi));
        let (sa, sb) = (sign_of(a), sign_of(b));
        if sa == 0 || sb == 0 || sa == sb {
            return Err(Error::NoRoot { lo, hi });
        }
        Ok(Bracket { lo, hi, f_lo_sign: sa, f_hi_sign: sb })
    }
}

fn sign_of(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

// ---------------------------------------------------------------------------
// Gauss–Kronrod 10/21

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_931_582_120,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights belong to the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Nodes and weights of the 21-point rule on [−1, 1], for inspection.
pub fn kronrod21() -> ([f64; 11], [f64; 11], [f64; 5]) {
    (XGK, WGK, WG)
}

/// Values the integrators can accumulate: real or complex.
pub trait QuadValue: Copy + core::ops::Add<Output = Self> + core::ops::Sub<Output = Self> {
    fn zero() -> Self;
    fn scale(self, k: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
    resabs: f64,
    depth: u32,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, o: &Self) -> bool {
        self.err.total_cmp(&o.err) == Ordering::Equal
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

fn gk21<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> (T, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = fc.scale(WGK[10]);
    let mut rg = T::zero();
    let mut fv = [(T::zero(), T::zero()); 10];
    let mut resabs = WGK[10] * fc.magnitude();
    for j in 0..10 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        fv[j] = (f1, f2);
        rk = rk + (f1 + f2).scale(WGK[j]);
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            rg = rg + (f1 + f2).scale(WG[j / 2]);
        }
    }
    let mean = rk.scale(0.5);
    let mut resasc = WGK[10] * (fc - mean).magnitude();
    for j in 0..10 {
        resasc += WGK[j] * ((fv[j].0 - mean).magnitude() + (fv[j].1 - mean).magnitude());
    }
    let ah = h.abs();
    let (resabs, resasc) = (resabs * ah, resasc * ah);
    let mut err = (rk - rg).magnitude() * ah;
    if resasc != 0.0 && err != 0.0 {
        err = resasc * libm::pow(200.0 * err / resasc, 1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    if !rk.magnitude().is_finite() {
        err = f64::INFINITY;
    }
    (rk.scale(h), err, resabs)
}

const MAX_PANELS: usize = 200_000;

/// Global adaptive integration returning `(value, error_estimate)`.
pub fn integrate_adaptive_with_error<T, F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<(T, f64)>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    spec.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain("integration requires finite a < b"));
    }
    let n0 = match spec.oscillation_period {
        Some(p) => libm::ceil((b - a) / p).clamp(1.0, 4096.0) as usize,
        None => 1,
    };
    let mut heap = BinaryHeap::with_capacity(2 * n0 + 64);
    let mut done: Vec<Panel<T>> = Vec::new();
    let w = (b - a) / n0 as f64;
    for i in 0..n0 {
        let lo = a + w * i as f64;
        let hi = if i + 1 == n0 { b } else { a + w * (i + 1) as f64 };
        let (value, err, resabs) = gk21(&f, lo, hi);
        heap.push(Panel { a: lo, b: hi, value, err, resabs, depth: 0 });
    }
    let totals = |heap: &BinaryHeap<Panel<T>>, done: &[Panel<T>]| {
        let mut v = T::zero();
        let (mut e, mut ra) = (0.0, 0.0);
        for p in heap.iter().chain(done.iter()) {
            v = v + p.value;
            e += p.err;
            ra += p.resabs;
        }
        (v, e, ra)
    };
    let (mut value, mut err, mut resabs) = totals(&heap, &done);
    let mut iterations = 0usize;
    loop {
        let target = spec.abs_tol.max(spec.rel_tol * value.magnitude()).max(50.0 * f64::EPSILON * resabs);
        if err <= target {
            break;
        }
        let Some(p) = heap.pop() else {
            return Err(Error::NonConvergence { what: "adaptive quadrature", estimate: err });
        };
        if p.depth >= spec.max_depth || heap.len() + done.len() > MAX_PANELS {
            if heap.len() + done.len() > MAX_PANELS {
                return Err(Error::NonConvergence { what: "adaptive quadrature", estimate: err });
            }
            done.push(p);
            continue;
        }
        let m = 0.5 * (p.a + p.b);
        let (v1, e1, r1) = gk21(&f, p.a, m);
        let (v2, e2, r2) = gk21(&f, m, p.b);
        value = value - p.value + v1 + v2;
        err += e1 + e2 - p.err;
        resabs += r1 + r2 - p.resabs;
        heap.push(Panel { a: p.a, b: m, value: v1, err: e1, resabs: r1, depth: p.depth + 1 });
        heap.push(Panel { a: m, b: p.b, value: v2, err: e2, resabs: r2, depth: p.depth + 1 });
        iterations += 1;
        if iterations.is_multiple_of(64) {
            (value, err, resabs) = totals(&heap, &done);
        }
    }
    let (value, err, _) = totals(&heap, &done);
    if !value.magnitude().is_finite() {
        return Err(Error::NonConvergence { what: "adaptive quadrature (non-finite integrand)", estimate: err });
    }
    Ok((value, err))
}

/// ∫ₐᵇ f to `spec` accuracy.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_adaptive_with_error(f, a, b, spec).map(|(v, _)| v)
}

/// Complex-valued variant of [`integrate_adaptive`].
pub fn integrate_adaptive_complex<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    integrate_adaptive_with_error(f, a, b, spec).map(|(v, _)| v)
}

// ---------------------------------------------------------------------------
// Semi-infinite integrals

/// Number of period-length chunks integrated explicitly before the tail fit.
pub const TAIL_CHUNKS: usize = 320;
const FIT_TERMS: usize = 4;

#[allow(clippy::needless_range_loop)] // row ops read two rows of m
fn solve_small(mut m: [[f64; FIT_TERMS]; FIT_TERMS], mut rhs: [f64; FIT_TERMS]) -> [f64; FIT_TERMS] {
    for col in 0..FIT_TERMS {
        let piv = (col..FIT_TERMS).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap_or(col);
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in col + 1..FIT_TERMS {
            let k = m[row][col] / m[col][col];
            for c in col..FIT_TERMS {
                m[row][c] -= k * m[col][c];
            }
            rhs[row] -= k * rhs[col];
        }
    }
    let mut x = [0.0; FIT_TERMS];
    for row in (0..FIT_TERMS).rev() {
        let mut s = rhs[row];
        for c in row + 1..FIT_TERMS {
            s -= m[row][c] * x[c];
        }
        x[row] = s / m[row][row];
    }
    x
}

/// Fits `t(x) ≈ Σ_j c_j x^{−(p+j)}` through four samples and sums the model
/// over the equally spaced abscissae `x = L·(k + offset)`, `k ≥ 0`.
fn fitted_power_tail<T>(samples: [(f64, T); FIT_TERMS], p: f64, step: f64, offset: f64) -> T
where
    T: QuadValue + FitSolve,
{
    let mut m = [[0.0; FIT_TERMS]; FIT_TERMS];
    for (i, (x, _)) in samples.iter().enumerate() {
        for (j, mij) in m[i].iter_mut().enumerate() {
            *mij = libm::pow(*x, -(p + j as f64));
        }
    }
    let c = T::solve(m, [samples[0].1, samples[1].1, samples[2].1, samples[3].1]);
    let mut tail = T::zero();
    for (j, cj) in c.iter().enumerate() {
        let q = p + j as f64;
        tail = tail + cj.scale(libm::pow(step, -q) * hurwitz_zeta(q, offset));
    }
    tail
}

/// Tail Σ_{k>n} t_k of a sequence `terms = [t_1, …, t_n]` that decays like
/// `k^{−p}` with an asymptotic expansion in 1/k, and the disagreement of two
/// independent fits as its uncertainty.
pub fn fitted_tail_over_index(terms: &[f64], p: f64) -> (f64, f64) {
    let n = terms.len();
    if n < 4 * 8 {
        return (0.0, f64::INFINITY);
    }
    let sample = |shift: usize, stride: usize| -> [(f64, f64); FIT_TERMS] {
        core::array::from_fn(|i| {
            let k = n - shift - stride * i;
            (k as f64, terms[k - 1])
        })
    };
    let a = fitted_power_tail(sample(0, 8), p, 1.0, (n + 1) as f64);
    let b = fitted_power_tail(sample(1, 6), p, 1.0, (n + 1) as f64);
    (a, (a - b).abs())
}

/// Small linear solve, componentwise for complex right-hand sides.
pub trait FitSolve: QuadValue {
    fn solve(m: [[f64; FIT_TERMS]; FIT_TERMS], rhs: [Self; FIT_TERMS]) -> [Self; FIT_TERMS];
}

impl FitSolve for f64 {
    fn solve(m: [[f64; FIT_TERMS]; FIT_TERMS], rhs: [f64; FIT_TERMS]) -> [f64; FIT_TERMS] {
        solve_small(m, rhs)
    }
}

impl FitSolve for Complex64 {
    fn solve(m: [[f64; FIT_TERMS]; FIT_TERMS], rhs: [Complex64; FIT_TERMS]) -> [Complex64; FIT_TERMS] {
        let re = solve_small(m, rhs.map(|z| z.re));
        let im = solve_small(m, rhs.map(|z| z.im));
        core::array::from_fn(|i| Complex64::new(re[i], im[i]))
    }
}

/// ∫ₐ^∞ f for integrands decaying like `x^{−tail_exponent}`, returning the
/// value and an error estimate.
///
/// The range is cut into chunks of one oscillation period (default 1). The
/// first [`TAIL_CHUNKS`] are integrated adaptively; the remainder is summed
/// from a power-law model of the chunk integrals, fitted on two disjoint
/// sample sets whose disagreement enters the error estimate.
pub fn integrate_semi_infinite_with_error<T, F>(
    f: F,
    a: f64,
    tail_exponent: f64,
    spec: &QuadratureSpec,
) -> Result<(T, f64)>
where
    T: FitSolve,
    F: Fn(f64) -> T,
{
    spec.validate()?;
    if !(tail_exponent >= 2.0) {
        return Err(Error::TailTooFat { exponent: tail_exponent });
    }
    if !a.is_finite() {
        return Err(Error::Domain("semi-infinite integral needs finite lower limit"));
    }
    let l = spec.oscillation_period.unwrap_or(1.0);
    let n = TAIL_CHUNKS;
    let chunk_spec = QuadratureSpec {
        abs_tol: spec.abs_tol / n as f64,
        rel_tol: spec.rel_tol,
        max_depth: spec.max_depth,
        oscillation_period: None,
    };
    let mut chunks = Vec::with_capacity(n);
    let mut total = T::zero();
    let mut err = 0.0;
    for k in 0..n {
        let lo = a + l * k as f64;
        let (v, e) = integrate_adaptive_with_error(&f, lo, lo + l, &chunk_spec)?;
        chunks.push(v);
        total = total + v;
        err += e;
    }
    // Chunk k is centred at a + L(k + ½); the tail starts at k = n.
    let centre = |k: usize| a + l * (k as f64 + 0.5);
    let offset = n as f64 + 0.5 + a / l;
    let pick = |stride: usize, shift: usize| -> [(f64, T); FIT_TERMS] {
        core::array::from_fn(|i| {
            let k = n - 1 - shift - stride * i;
            (centre(k), chunks[k])
        })
    };
    let tail_a = fitted_power_tail(pick(n / 8, 0), tail_exponent, l, offset);
    let tail_b = fitted_power_tail(pick(n / 10, 1), tail_exponent, l, offset);
    let value = total + tail_a;
    err += (tail_a - tail_b).magnitude();
    let target = spec.abs_tol.max(spec.rel_tol * value.magnitude());
    if !(err <= 100.0 * target) || !value.magnitude().is_finite() {
        return Err(Error::NonConvergence { what: "semi-infinite tail fit", estimate: err });
    }
    Ok((value, err))
}

/// ∫ₐ^∞ f, see [`integrate_semi_infinite_with_error`].
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    tail_exponent: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    integrate_semi_infinite_with_error(f, a, tail_exponent, spec).map(|(v, _)| v)
}

/// ∫ℝ f by folding onto [0, ∞).
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, tail_exponent: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_semi_infinite(|x| f(x) + f(-x), 0.0, tail_exponent, spec)
}

/// Complex-valued variant of [`integrate_real_line`].
pub fn integrate_real_line_complex<F: Fn(f64) -> Complex64>(
    f: F,
    tail_exponent: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    integrate_semi_infinite_with_error(|x| f(x) + f(-x), 0.0, tail_exponent, spec).map(|(v, _)| v)
}

// ---------------------------------------------------------------------------
// Root finding

/// Hybrid bisection / Illinois false position. The iterate never leaves the
/// bracket; stops when the bracket is narrower than `tol` or `f` vanishes.
pub fn find_root<F: Fn(f64) -> f64>(f: F, bracket: Bracket, tol: f64) -> f64 {
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let (mut flo, mut fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    let tol = tol.max(4.0 * f64::EPSILON * lo.abs().max(hi.abs()));
    let mut side = 0i8;
    let mut iter = 0u32;
    while hi - lo > tol && iter < 400 {
        iter += 1;
        let width = hi - lo;
        // Every third step is a pure bisection to guarantee shrinkage.
        let mut x = if iter.is_multiple_of(3) { 0.5 * (lo + hi) } else { (lo * fhi - hi * flo) / (fhi - flo) };
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        // Keep secant steps a little away from the ends.
        let guard = 0.5 * tol.min(0.25 * width);
        x = x.clamp(lo + guard, hi - guard);
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if sign_of(fx) == sign_of(flo) {
            lo = x;
            flo = fx;
            if side == -1 {
                fhi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if side == 1 {
                flo *= 0.5;
            }
            side = 1;
        }
    }
    0.5 * (lo + hi)
}

/// Locates the first sign change of `f` on a uniform scan of `[lo, hi]` and
/// refines it; `None` if the scan sees no sign change.
pub fn first_root_by_scan<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, step: f64, tol: f64) -> Option<f64> {
    let n = libm::ceil((hi - lo) / step).max(1.0) as usize;
    let mut x0 = lo;
    let mut f0 = f(x0);
    if f0 == 0.0 {
        return Some(x0);
    }
    for i in 1..=n {
        let x1 = if i == n { hi } else { lo + step * i as f64 };
        let f1 = f(x1);
        if f1 == 0.0 {
            return Some(x1);
        }
        if sign_of(f0) != sign_of(f1) {
            let br = Bracket { lo: x0, hi: x1, f_lo_sign: sign_of(f0), f_hi_sign: sign_of(f1) };
            return Some(find_root(&f, br, tol));
        }
        x0 = x1;
        f0 = f1;
    }
    None
}

// ---------------------------------------------------------------------------
// Series

/// Asymptotic model for the terms of a series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TailModel {
    /// `term(n) ≈ Σ_j c_j n^{−(p+j)}`.
    PowerDecay(f64),
    /// `term(n) = (−1)ⁿ g(n)` with `g` smooth and `g(n) = O(n^{−p})`.
    AlternatingPower(f64),
}

const MAX_SERIES_TERMS: i64 = 1 << 22;

/// Σ_{n ≥ n0} term(n), partial sum plus modelled tail.
pub fn sum_with_tail<F: Fn(i64) -> f64>(term: F, n0: i64, model: TailModel, tol: f64) -> Result<f64> {
    match model {
        TailModel::PowerDecay(p) => sum_power_decay(&term, n0, p, tol),
        TailModel::AlternatingPower(_) => sum_alternating(&term, n0, tol),
    }
}

fn sum_power_decay<F: Fn(i64) -> f64>(term: &F, n0: i64, p: f64, tol: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::TailTooFat { exponent: p });
    }
    let mut partial = 0.0;
    let mut next = n0;
    let mut len = 256i64;
    let mut prev: Option<f64> = None;
    loop {
        let end = n0 + len;
        while next < end {
            partial += term(next);
            next += 1;
        }
        // Fit on terms spread over the last half of the window.
        let base = (end - n0) / 8;
        let sample = |shift: i64| -> [(f64, f64); FIT_TERMS] {
            core::array::from_fn(|i| {
                let k = end - 1 - shift - base * i as i64;
                (k as f64, term(k))
            })
        };
        let tail_a = fitted_power_tail(sample(0), p, 1.0, end as f64);
        let tail_b = fitted_power_tail(sample(1), p, 1.0, end as f64);
        let value = partial + tail_a;
        let spread = (tail_a - tail_b).abs();
        if let Some(pv) = prev {
            if (value - pv).abs() <= tol && spread <= tol {
                return Ok(value);
            }
        }
        if len >= MAX_SERIES_TERMS {
            return Err(Error::NonConvergence { what: "power-decay series", estimate: spread });
        }
        prev = Some(value);
        len *= 2;
    }
}

fn sum_alternating<F: Fn(i64) -> f64>(term: &F, n0: i64, tol: f64) -> Result<f64> {
    // Euler transform on the sequence of partial sums: repeated averaging of
    // neighbours cancels the smooth alternating remainder.
    const LEVELS: usize = 24;
    let mut start = 32i64;
    let mut prev: Option<f64> = None;
    loop {
        let mut s = 0.0;
        for n in n0..n0 + start {
            s += term(n);
        }
        let mut row = [0.0; LEVELS + 1];
        row[0] = s;
        for (i, r) in row.iter_mut().enumerate().skip(1) {
            s += term(n0 + start + i as i64 - 1);
            *r = s;
        }
        let mut len = LEVELS + 1;
        let mut last_two = (row[0], row[1]);
        while len > 1 {
            for i in 0..len - 1 {
                row[i] = 0.5 * (row[i] + row[i + 1]);
            }
            len -= 1;
            if len == 2 {
                last_two = (row[0], row[1]);
            }
        }
        let value = row[0];
        let spread = (last_two.0 - last_two.1).abs();
        if let Some(pv) = prev {
            if (value - pv).abs() <= tol && spread <= tol {
                return Ok(value);
            }
        }
        if start >= MAX_SERIES_TERMS {
            return Err(Error::NonConvergence { what: "alternating series", estimate: spread });
        }
        prev = Some(value);
        start *= 4;
    }
}

// ---------------------------------------------------------------------------
// Special functions

// B_{2k}/(2k)! for k = 1..=12.
const BERNOULLI_OVER_FACT: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
];

/// Hurwitz zeta ζ(s, a) = Σ_{k≥0} (k + a)^{−s} for real s > 1, a > 0.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    debug_assert!(s > 1.0 && a > 0.0);
    const SHIFT: f64 = 16.0;
    let mut head = 0.0;
    let mut a = a;
    while a < SHIFT {
        head += libm::pow(a, -s);
        a += 1.0;
    }
    let mut sum = libm::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * libm::pow(a, -s);
    // Rising factorial s(s+1)…(s+2k−2) times a^{−s−2k+1}.
    let mut fac = s * libm::pow(a, -s - 1.0);
    let a2 = a * a;
    for (k, b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        let t = b * fac;
        sum += t;
        if t.abs() < 1e-18 * sum.abs() {
            break;
        }
        let m = 2.0 * k as f64;
        fac *= (s + m + 1.0) * (s + m + 2.0) / a2;
    }
    head + sum
}

/// Trigamma ψ′(x) for real x not a nonpositive integer.
pub fn trigamma(x: f64) -> f64 {
    if x > 0.0 {
        hurwitz_zeta(2.0, x)
    } else {
        let s = libm::sin(PI * x);
        PI * PI / (s * s) - hurwitz_zeta(2.0, 1.0 - x)
    }
}

/// sin(πx)/(πx), with the removable point at 0.
pub fn sinc(x: f64) -> f64 {
    let y = PI * x;
    if y.abs() < 1e-3 {
        let y2 = y * y;
        1.0 - y2 / 6.0 * (1.0 - y2 / 20.0 * (1.0 - y2 / 42.0))
    } else {
        libm::sin(y) / y
    }
}

/// Complex sin(πz)/(πz).
pub fn sinc_complex(z: Complex64) -> Complex64 {
    let y = z * PI;
    if y.norm() < 1e-3 {
        let y2 = y * y;
        Complex64::new(1.0, 0.0)
            - y2 / 6.0 * (Complex64::new(1.0, 0.0) - y2 / 20.0 * (Complex64::new(1.0, 0.0) - y2 / 42.0))
    } else {
        y.sin() / y
    }
}

/// Radius of the averaging circle used by [`patch_removable`].
pub const PATCH_RADIUS: f64 = 1e-2;
/// Points within this distance of a removable singularity are patched.
pub const PATCH_WINDOW: f64 = 1e-3;
const PATCH_POINTS: usize = 16;

/// Evaluates `h(z)` for `h` holomorphic near `z` but numerically singular at
/// `z0`. Within [`PATCH_WINDOW`] of `z0` the value is replaced by the mean of
/// `h` over a circle of radius [`PATCH_RADIUS`] about `z` (mean-value
/// property), which never samples close to `z0`.
pub fn patch_removable<F: Fn(Complex64) -> Complex64>(h: F, z: Complex64, z0: Complex64) -> Complex64 {
    if (z - z0).norm() >= PATCH_WINDOW {
        return h(z);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..PATCH_POINTS {
        // Offset by half a step so no sample lies on the line through z0.
        let th = 2.0 * PI * (k as f64 + 0.5) / PATCH_POINTS as f64;
        acc += h(z + Complex64::from_polar(PATCH_RADIUS, th));
    }
    acc / PATCH_POINTS as f64
}
