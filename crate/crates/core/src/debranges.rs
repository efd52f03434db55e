//! De Branges structure of the pair-correlation space.
//!
//! E(z) = L(i,z)/L(i,i)^{1/2} with L(w,z) = 2πi(w̄ − z)K(w,z), companions
//! A = (E + E*)/2 and B = i(E − E*)/2, their interlaced real zeros, the
//! tilted functions E_β(z) = E(z)(γ_β − iz), and the node quadratures that
//! give the extremal values Λ^±(β).

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::beurling::{chi, BandlimitedFunction};
use crate::kernel::{kernel_eval, KernelRow};
use crate::numerics::{find_root, fitted_tail_over_index, patch_removable, Bracket, QuadratureSpec};
use crate::pcbounds::m_time;
use crate::{Error, Result};

/// Default extent of the cached zero lists.
pub const DEFAULT_X_MAX: f64 = 60.0;
/// Zero scan step for B.
pub const SCAN_STEP: f64 = 0.25;
/// Scan step for the tilted companions.
pub const TILT_SCAN_STEP: f64 = 0.125;
/// Finite-difference step for A′, B′.
pub const DIFF_STEP: f64 = 1e-3;
/// β within this distance of a zero of A or B is treated as that zero.
pub const NODE_TOL: f64 = 1e-9;
/// Node-sum tail uncertainty above which a truncation warning is raised.
pub const TRUNCATION_LIMIT: f64 = 1e-7;

const ROOT_TOL: f64 = 1e-14;

/// 6th-order central difference.
fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (45.0 * (f(x + h) - f(x - h)) - 9.0 * (f(x + 2.0 * h) - f(x - 2.0 * h)) + (f(x + 3.0 * h) - f(x - 3.0 * h)))
        / (60.0 * h)
}

/// The Hermite–Biehler function E with cached zeros of A and B.
#[derive(Clone, Debug)]
pub struct HermiteBiehler {
    row: KernelRow,
    norm: f64,
    /// Exponential type of E (π).
    pub type_bound: f64,
    /// Positive zeros a₁ < a₂ < … of A up to `x_max`.
    pub zeros_a: Vec<f64>,
    /// Nonnegative zeros 0 = b₀ < b₁ < … of B up to `x_max`.
    pub zeros_b: Vec<f64>,
    pub x_max: f64,
    /// Largest relative residual of L(w,z) = E(z)E*(w̄) − E*(z)E(w̄) over
    /// the construction-time sample.
    pub identity_residual: f64,
}

/// SplitMix64, for reproducible internal sampling.
#[derive(Clone, Debug)]
pub struct SampleStream(u64);

impl SampleStream {
    pub fn new(seed: u64) -> Self {
        SampleStream(seed)
    }
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    /// Uniform on [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }
}

impl HermiteBiehler {
    /// E(z).
    pub fn e(&self, z: Complex64) -> Complex64 {
        // L(i,z) = 2π(1 − iz)K(i,z)
        let one = Complex64::new(1.0, 0.0);
        (one - Complex64::i() * z) * self.row.eval(z) * (2.0 * PI / self.norm)
    }

    /// E*(z) = conj E(z̄).
    pub fn e_star(&self, z: Complex64) -> Complex64 {
        self.e(z.conj()).conj()
    }

    pub fn a(&self, z: Complex64) -> Complex64 {
        (self.e(z) + self.e_star(z)) * 0.5
    }

    pub fn b(&self, z: Complex64) -> Complex64 {
        (self.e(z) - self.e_star(z)) * Complex64::new(0.0, 0.5)
    }

    /// A(x) = Re E(x) on the real line.
    pub fn a_real(&self, x: f64) -> f64 {
        self.e(Complex64::new(x, 0.0)).re
    }

    /// B(x) = −Im E(x) on the real line.
    pub fn b_real(&self, x: f64) -> f64 {
        -self.e(Complex64::new(x, 0.0)).im
    }

    /// (A(x), B(x)) from a single evaluation of E.
    pub fn ab_real(&self, x: f64) -> (f64, f64) {
        let e = self.e(Complex64::new(x, 0.0));
        (e.re, -e.im)
    }

    pub fn a_prime(&self, x: f64) -> f64 {
        derivative(|t| self.a_real(t), x, DIFF_STEP)
    }

    pub fn b_prime(&self, x: f64) -> f64 {
        derivative(|t| self.b_real(t), x, DIFF_STEP)
    }

    /// K(x,x) = (B′A − A′B)(x)/π.
    pub fn k_diag(&self, x: f64) -> f64 {
        let (a, b) = self.ab_real(x);
        (self.b_prime(x) * a - self.a_prime(x) * b) / PI
    }

    /// L(w,z) = E(z)E*(w̄) − E*(z)E(w̄).
    pub fn l_from_e(&self, w: Complex64, z: Complex64) -> Complex64 {
        let wb = w.conj();
        self.e(z) * self.e_star(wb) - self.e_star(z) * self.e(wb)
    }
}

/// 2πi(w̄ − z)K(w,z).
pub fn l_from_kernel(w: Complex64, z: Complex64) -> Complex64 {
    Complex64::new(0.0, 2.0 * PI) * (w.conj() - z) * kernel_eval(w, z)
}

fn scan_roots<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, step: f64, out: &mut Vec<f64>) {
    let n = libm::ceil((hi - lo) / step).max(1.0) as usize;
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=n {
        let x1 = if i == n { hi } else { lo + step * i as f64 };
        let f1 = f(x1);
        if f0 == 0.0 {
            out.push(x0);
        } else if f0 * f1 < 0.0 {
            let br = Bracket { lo: x0, hi: x1, f_lo_sign: f0.signum() as i8, f_hi_sign: f1.signum() as i8 };
            out.push(find_root(f, br, ROOT_TOL));
        }
        x0 = x1;
        f0 = f1;
    }
}

/// Builds E with zeros of A and B cached on [0, `x_max`].
pub fn build_e(x_max: f64) -> Result<HermiteBiehler> {
    if !(x_max > 1.0) {
        return Err(Error::Domain("x_max must exceed 1"));
    }
    let i = Complex64::i();
    let row = KernelRow::new(i);
    let kii = row.eval(i).re;
    let norm = libm::sqrt(4.0 * PI * kii);
    let mut hb = HermiteBiehler {
        row,
        norm,
        type_bound: PI,
        zeros_a: Vec::new(),
        zeros_b: Vec::new(),
        x_max,
        identity_residual: 0.0,
    };
    let b = |x: f64| hb.b_real(x);
    let mut zb = Vec::new();
    zb.push(0.0);
    scan_roots(&b, SCAN_STEP, x_max, SCAN_STEP, &mut zb);
    let a = |x: f64| hb.a_real(x);
    let mut za = Vec::with_capacity(zb.len());
    for w in zb.windows(2) {
        let br = Bracket::new(a, w[0], w[1]).map_err(|_| Error::RootMiss { lo: w[0], hi: w[1] })?;
        za.push(find_root(a, br, ROOT_TOL));
    }
    // Interlacing: exactly one B zero strictly between consecutive A zeros.
    for (k, w) in za.windows(2).enumerate() {
        if !(w[0] < zb[k + 1] && zb[k + 1] < w[1]) {
            return Err(Error::RootMiss { lo: w[0], hi: w[1] });
        }
        if Bracket::new(b, w[0], w[1]).is_err() {
            return Err(Error::RootMiss { lo: w[0], hi: w[1] });
        }
    }
    hb.zeros_a = za;
    hb.zeros_b = zb;
    let mut rng = SampleStream::new(0x005E_EDDB);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let w = Complex64::new(rng.uniform(-5.0, 5.0), rng.uniform(-2.0, 2.0));
        let z = Complex64::new(rng.uniform(-5.0, 5.0), rng.uniform(-2.0, 2.0));
        let lhs = l_from_kernel(w, z);
        let rhs = hb.l_from_e(w, z);
        worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
    }
    hb.identity_residual = worst;
    if worst > 1e-6 {
        return Err(Error::NonConvergence { what: "E-function kernel identity", estimate: worst });
    }
    Ok(hb)
}

/// Which interlaced nodes β falls among.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// β = a_k.
    CaseAZero { k: usize },
    /// β = b_k.
    CaseBZero { k: usize },
    /// b_k < β < a_{k+1}: nodes are zeros of A_β.
    CaseBkAk1 { k: usize },
    /// a_k < β < b_k: nodes are zeros of B_β.
    CaseAkBk { k: usize },
}

/// E_β(z) = E(z)(γ_β − iz) together with its quadrature nodes and Λ^±(β).
#[derive(Clone, Debug)]
pub struct TiltedSpace<'a> {
    pub e: &'a HermiteBiehler,
    pub beta: f64,
    /// γ_β > 0 in the generic regimes, 0 in the exact-node regimes.
    pub gamma_beta: f64,
    pub regime: Regime,
    /// Quadrature nodes in [−x_max, x_max], ascending.
    pub nodes: Vec<f64>,
    /// Weight of each node: (ξ² + γ²)/K_β(ξ,ξ), or 1/K(ξ,ξ) untilted.
    pub weights: Vec<f64>,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl TiltedSpace<'_> {
    fn tilted(&self) -> bool {
        matches!(self.regime, Regime::CaseBkAk1 { .. } | Regime::CaseAkBk { .. })
    }

    /// A_β(z) = γA(z) − zB(z).
    pub fn a_beta(&self, z: Complex64) -> Complex64 {
        self.e.a(z) * self.gamma_beta - z * self.e.b(z)
    }

    /// B_β(z) = zA(z) + γB(z).
    pub fn b_beta(&self, z: Complex64) -> Complex64 {
        z * self.e.a(z) + self.e.b(z) * self.gamma_beta
    }

    pub fn a_beta_real(&self, x: f64) -> f64 {
        let (a, b) = self.e.ab_real(x);
        self.gamma_beta * a - x * b
    }

    pub fn b_beta_real(&self, x: f64) -> f64 {
        let (a, b) = self.e.ab_real(x);
        x * a + self.gamma_beta * b
    }

    /// A_β′(x) = γA′ − B − xB′.
    pub fn a_beta_prime(&self, x: f64) -> f64 {
        self.gamma_beta * self.e.a_prime(x) - self.e.b_real(x) - x * self.e.b_prime(x)
    }

    /// B_β′(x) = A + xA′ + γB′.
    pub fn b_beta_prime(&self, x: f64) -> f64 {
        self.e.a_real(x) + x * self.e.a_prime(x) + self.gamma_beta * self.e.b_prime(x)
    }

    /// K_β(x,x) = (B_β′A_β − A_β′B_β)(x)/π.
    pub fn k_beta_diag(&self, x: f64) -> f64 {
        let (a, b) = self.e.ab_real(x);
        let (ap, bp) = (self.e.a_prime(x), self.e.b_prime(x));
        let g = self.gamma_beta;
        let ab = g * a - x * b;
        let bb = x * a + g * b;
        let abp = g * ap - b - x * bp;
        let bbp = a + x * ap + g * bp;
        (bbp * ab - abp * bb) / PI
    }

    fn weight(&self, xi: f64) -> f64 {
        if self.tilted() {
            (xi * xi + self.gamma_beta * self.gamma_beta) / self.k_beta_diag(xi)
        } else {
            1.0 / self.e.k_diag(xi)
        }
    }
}

fn locate(e: &HermiteBiehler, beta: f64) -> Result<Regime> {
    for (k, &a) in e.zeros_a.iter().enumerate() {
        if (beta - a).abs() <= NODE_TOL {
            return Ok(Regime::CaseAZero { k: k + 1 });
        }
    }
    for (k, &b) in e.zeros_b.iter().enumerate().skip(1) {
        if (beta - b).abs() <= NODE_TOL {
            return Ok(Regime::CaseBZero { k });
        }
    }
    // 0 = b₀ < a₁ < b₁ < a₂ < …
    for k in 0..e.zeros_a.len() {
        let (bk, ak1) = (e.zeros_b[k], e.zeros_a[k]);
        if beta > bk && beta < ak1 {
            return Ok(Regime::CaseBkAk1 { k });
        }
        if let Some(&bk1) = e.zeros_b.get(k + 1) {
            if beta > ak1 && beta < bk1 {
                return Ok(Regime::CaseAkBk { k: k + 1 });
            }
        }
    }
    Err(Error::Domain("beta beyond the cached zero range; increase x_max"))
}

/// Roots of an even/odd real function on (0, x_max] with β inserted exactly.
fn tilted_roots<F: Fn(f64) -> f64>(f: &F, beta: f64, x_max: f64) -> Result<Vec<f64>> {
    const GAP: f64 = 1e-7;
    let mut pos = Vec::new();
    let start = (TILT_SCAN_STEP * 0.5).min(beta * 0.5);
    scan_roots(f, start, beta - GAP, TILT_SCAN_STEP, &mut pos);
    let (l, r) = (f(beta - GAP), f(beta + GAP));
    if l * r >= 0.0 {
        return Err(Error::RootMiss { lo: beta - GAP, hi: beta + GAP });
    }
    pos.push(beta);
    scan_roots(f, beta + GAP, x_max, TILT_SCAN_STEP, &mut pos);
    Ok(pos)
}

/// Regime classification, γ_β, nodes and Λ^±(β).
pub fn tilt(e: &HermiteBiehler, beta: f64) -> Result<TiltedSpace<'_>> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::Domain("beta must be positive"));
    }
    if beta >= e.x_max - 1.0 {
        return Err(Error::Domain("beta too close to x_max"));
    }
    let regime = locate(e, beta)?;
    let (a_b, b_b) = e.ab_real(beta);
    let gamma_beta = match regime {
        Regime::CaseBkAk1 { .. } => beta * b_b / a_b,
        Regime::CaseAkBk { .. } => -beta * a_b / b_b,
        _ => 0.0,
    };
    let mut ts = TiltedSpace {
        e,
        beta,
        gamma_beta,
        regime,
        nodes: Vec::new(),
        weights: Vec::new(),
        lambda_plus: 0.0,
        lambda_minus: 0.0,
    };
    let positive: Vec<f64> = match regime {
        Regime::CaseAZero { .. } => e.zeros_a.clone(),
        Regime::CaseBZero { .. } => e.zeros_b[1..].to_vec(),
        Regime::CaseBkAk1 { .. } => {
            let f = |x: f64| ts.a_beta_real(x);
            let roots = tilted_roots(&f, beta, e.x_max)?;
            // Interlacing with the zeros of B_β (odd, so 0 is one of them).
            let g = |x: f64| ts.b_beta_real(x);
            check_interlacing(&roots, &g)?;
            roots
        }
        Regime::CaseAkBk { .. } => {
            let f = |x: f64| ts.b_beta_real(x);
            let roots = tilted_roots(&f, beta, e.x_max)?;
            let g = |x: f64| ts.a_beta_real(x);
            check_interlacing(&roots, &g)?;
            roots
        }
    };
    let has_zero = matches!(regime, Regime::CaseBZero { .. } | Regime::CaseAkBk { .. });
    let mut nodes: Vec<f64> = positive.iter().rev().map(|&x| -x).collect();
    if has_zero {
        nodes.push(0.0);
    }
    nodes.extend(positive.iter().copied());
    let weights: Vec<f64> = nodes.iter().map(|&x| ts.weight(x)).collect();
    let (mut lp, mut lm) = (0.0, 0.0);
    for (&x, &w) in nodes.iter().zip(&weights) {
        let ax = x.abs();
        if ax <= beta + NODE_TOL {
            lp += w;
        }
        if ax < beta - NODE_TOL {
            lm += w;
        }
    }
    ts.nodes = nodes;
    ts.weights = weights;
    ts.lambda_plus = lp;
    ts.lambda_minus = lm;
    Ok(ts)
}

fn check_interlacing<F: Fn(f64) -> f64>(roots: &[f64], other: &F) -> Result<()> {
    // Between consecutive positive roots the companion changes sign exactly
    // once; before the first root it is nonzero only at 0 (odd companion) or
    // changes once (even companion), which the scan cannot distinguish
    // cheaply, so only the interior gaps are checked.
    for w in roots.windows(2) {
        let mut count = 0;
        let n = libm::ceil((w[1] - w[0]) / (TILT_SCAN_STEP * 0.25)).max(2.0) as usize;
        let h = (w[1] - w[0]) / n as f64;
        let mut prev = other(w[0] + 1e-9);
        for i in 1..=n {
            let x = if i == n { w[1] - 1e-9 } else { w[0] + h * i as f64 };
            let v = other(x);
            if prev * v < 0.0 {
                count += 1;
            }
            prev = v;
        }
        if count != 1 {
            return Err(Error::RootMiss { lo: w[0], hi: w[1] });
        }
    }
    Ok(())
}

/// (Λ^+(β), Λ^−(β)).
pub fn lambda_values(e: &HermiteBiehler, beta: f64) -> Result<(f64, f64)> {
    let t = tilt(e, beta)?;
    Ok((t.lambda_plus, t.lambda_minus))
}

/// Q_β(z) = C_β A_β(z)/(β² − z²) for 0 < β < a₁, with Q_β(±β) = 1.
#[derive(Clone, Debug)]
pub struct Case3Majorant<'a> {
    pub tilt: TiltedSpace<'a>,
    pub c_beta: f64,
}

impl Case3Majorant<'_> {
    fn q_raw(&self, z: Complex64) -> Complex64 {
        let b = self.tilt.beta;
        self.tilt.a_beta(z) * self.c_beta / (Complex64::new(b * b, 0.0) - z * z)
    }

    /// Q_β(z).
    pub fn q(&self, z: Complex64) -> Complex64 {
        let b = self.tilt.beta;
        let z0 = Complex64::new(if z.re >= 0.0 { b } else { -b }, 0.0);
        patch_removable(|u| self.q_raw(u), z, z0)
    }

    /// Q_β(x)², the extremal majorant.
    pub fn eval(&self, x: f64) -> f64 {
        let q = self.q(Complex64::new(x, 0.0)).re;
        q * q
    }
}

/// The explicit majorant Q_β² for β ∈ (0, a₁).
pub fn case3_majorant(e: &HermiteBiehler, beta: f64) -> Result<Case3Majorant<'_>> {
    let a1 = e.zeros_a.first().copied().unwrap_or(0.0);
    if !(beta > 0.0 && beta < a1) {
        return Err(Error::Domain("case-3 majorant needs 0 < beta < a1"));
    }
    let t = tilt(e, beta)?;
    let c_beta = -2.0 * beta / t.a_beta_prime(beta);
    Ok(Case3Majorant { tilt: t, c_beta })
}

/// Q_β² as a [`BandlimitedFunction`] of type 2π (needs an owned E).
pub fn case3_majorant_function(e: HermiteBiehler, beta: f64) -> Result<BandlimitedFunction> {
    let e = alloc::sync::Arc::new(e);
    // Validate and capture the constants; the closure rebuilds the tilt view.
    let (gamma, c_beta) = {
        let m = case3_majorant(&e, beta)?;
        (m.tilt.gamma_beta, m.c_beta)
    };
    let ee = e.clone();
    let q_raw = move |z: Complex64| {
        let a_b = ee.a(z) * gamma - z * ee.b(z);
        a_b * c_beta / (Complex64::new(beta * beta, 0.0) - z * z)
    };
    let f = move |x: f64| {
        let z = Complex64::new(x, 0.0);
        let z0 = Complex64::new(if x >= 0.0 { beta } else { -beta }, 0.0);
        let q = patch_removable(&q_raw, z, z0).re;
        q * q
    };
    Ok(BandlimitedFunction::new(2.0 * PI, "case-3 majorant", f).with_period(1.0))
}

/// Which node system a quadrature check uses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NodeSystem {
    ANodes,
    BNodes,
    ABetaNodes(f64),
    BBetaNodes(f64),
}

/// Outcome of comparing ∫F dμ with a node sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureCheck {
    pub integral: f64,
    /// Node sum including the modelled tail beyond the cached nodes.
    pub node_sum: f64,
    /// Modelled contribution of nodes beyond x_max.
    pub tail: f64,
    /// Uncertainty of `tail` exceeded [`TRUNCATION_LIMIT`].
    pub truncation_warning: bool,
}

fn nodes_for(e: &HermiteBiehler, which: NodeSystem) -> Result<(Vec<f64>, Vec<f64>)> {
    match which {
        NodeSystem::ANodes => {
            let mut n: Vec<f64> = e.zeros_a.iter().rev().map(|&x| -x).collect();
            n.extend(e.zeros_a.iter().copied());
            let w = n.iter().map(|&x| 1.0 / e.k_diag(x)).collect();
            Ok((n, w))
        }
        NodeSystem::BNodes => {
            let mut n: Vec<f64> = e.zeros_b[1..].iter().rev().map(|&x| -x).collect();
            n.extend(e.zeros_b.iter().copied());
            let w = n.iter().map(|&x| 1.0 / e.k_diag(x)).collect();
            Ok((n, w))
        }
        NodeSystem::ABetaNodes(beta) | NodeSystem::BBetaNodes(beta) => {
            let t = tilt(e, beta)?;
            match (which, t.regime) {
                (NodeSystem::ABetaNodes(_), Regime::CaseBkAk1 { .. })
                | (NodeSystem::BBetaNodes(_), Regime::CaseAkBk { .. }) => Ok((t.nodes, t.weights)),
                _ => Err(Error::Domain("beta lies outside the regime of the requested tilted nodes")),
            }
        }
    }
}

/// Compares M_E(F) = ∫F dμ with the node-sum quadrature for `which`.
pub fn quadrature_check(e: &HermiteBiehler, f: &BandlimitedFunction, which: NodeSystem) -> Result<QuadratureCheck> {
    let integral = m_time(f, &QuadratureSpec::default())?;
    let (nodes, weights) = nodes_for(e, which)?;
    let terms: Vec<f64> = nodes.iter().zip(&weights).map(|(&x, &w)| f.time_eval(x) * w).collect();
    let sum: f64 = terms.iter().sum();
    // Tails on each side, modelled as power series in the node index.
    let mid = nodes.iter().position(|&x| x >= 0.0).unwrap_or(0);
    let right: Vec<f64> = terms[mid..].to_vec();
    let left: Vec<f64> = terms[..mid].iter().rev().copied().collect();
    let (tr, er) = fitted_tail_over_index(&right, 2.0);
    let (tl, el) = fitted_tail_over_index(&left, 2.0);
    let tail = tr + tl;
    let node_sum = sum + tail;
    Ok(QuadratureCheck { integral, node_sum, tail, truncation_warning: er + el > TRUNCATION_LIMIT })
}

/// Findings of a Hermite–Biehler verification pass.
#[derive(Clone, Debug, PartialEq)]
pub struct HbReport {
    pub samples: usize,
    /// Points z ∈ ℂ⁺ where |E(z̄)| < |E(z)| failed.
    pub hb_violations: Vec<Complex64>,
    /// Points where L(z,z) = 4π Im z K(z,z) > 0 failed (sign or agreement).
    pub diagonal_violations: Vec<Complex64>,
    /// max |Im E(ix)| / max(1, |E(ix)|) over the real samples.
    pub max_imag_e_ix: f64,
}

impl HbReport {
    pub fn is_clean(&self) -> bool {
        self.hb_violations.is_empty() && self.diagonal_violations.is_empty() && self.max_imag_e_ix <= 1e-12
    }
}

/// Samples the Hermite–Biehler inequality, the diagonal identity and the
/// reality of E on the imaginary axis.
pub fn verify_hb(e: &HermiteBiehler, samples: usize) -> HbReport {
    let mut rng = SampleStream::new(0x4842_5645);
    let mut report =
        HbReport { samples, hb_violations: Vec::new(), diagonal_violations: Vec::new(), max_imag_e_ix: 0.0 };
    for _ in 0..samples {
        let z = Complex64::new(rng.uniform(-20.0, 20.0), rng.uniform(1e-3, 4.0));
        let (ez, ezb) = (e.e(z).norm(), e.e(z.conj()).norm());
        if !(ezb < ez) {
            report.hb_violations.push(z);
        }
        let lzz = e.l_from_e(z, z);
        let rhs = kernel_eval(z, z) * (4.0 * PI * z.im);
        if !(lzz.re > 0.0) || (lzz - rhs).norm() > 1e-9 * rhs.norm().max(1.0) {
            report.diagonal_violations.push(z);
        }
        let x = rng.uniform(-10.0, 10.0);
        let v = e.e(Complex64::new(0.0, x));
        report.max_imag_e_ix = report.max_imag_e_ix.max(v.im.abs() / v.norm().max(1.0));
    }
    report
}

/// Whether Q_β² ≥ χ_[−β,β] holds on `n` uniform samples of [−x, x]; returns
/// the smallest margin Q² − χ seen.
pub fn case3_min_margin(m: &Case3Majorant<'_>, x: f64, n: usize) -> f64 {
    let mut worst = f64::INFINITY;
    for i in 0..n {
        let t = -x + 2.0 * x * (i as f64 + 0.5) / n as f64;
        worst = worst.min(m.eval(t) - chi(m.tilt.beta, t));
    }
    worst
}
