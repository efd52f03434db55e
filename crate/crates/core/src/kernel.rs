//! Reproducing kernel of the space of entire functions of exponential type
//! ≤ π that are square integrable against dμ = {1 − sinc²(x)} dx.
//!
//! K(w, z) = κ(w̄, z) with κ(v, z) = f(v, z) + c(v) g(z) + d(v) h(z). The
//! pieces have removable singularities at v, z = ±1/(π√2); they are
//! evaluated through [`patch_removable`].

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64;

use crate::beurling::BandlimitedFunction;
use crate::numerics::{
    integrate_real_line_complex, patch_removable, sinc_complex, QuadratureSpec, PATCH_RADIUS, PATCH_WINDOW,
};
use crate::pcbounds::mu_density;
use crate::{Error, Result};

/// 1/(π√2): the zeros of 1 − 2π²z².
pub const SINGULAR_POINT: f64 = FRAC_1_SQRT_2 / PI;

/// Below this |K(β,−β)| the two-delta problem is treated as orthogonal.
pub const ORTHOGONAL_THRESHOLD: f64 = 1e-10;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn trig_s() -> (f64, f64) {
    (libm::sin(FRAC_1_SQRT_2), libm::cos(FRAC_1_SQRT_2))
}

fn nearest_singular(z: Complex64) -> Complex64 {
    Complex64::new(if z.re >= 0.0 { SINGULAR_POINT } else { -SINGULAR_POINT }, 0.0)
}

/// c(v); has poles at ±1/(π√2).
pub fn piece_c(v: Complex64) -> Complex64 {
    let (ss, cs) = trig_s();
    let pv = v * PI;
    (pv.cos() - pv * pv.sin()) / ((ONE - v * v * (2.0 * PI * PI)) * (cs - FRAC_1_SQRT_2 * ss))
}

/// d(v); has poles at ±1/(π√2).
pub fn piece_d(v: Complex64) -> Complex64 {
    let (_, cs) = trig_s();
    let pv = v * PI;
    pv * 2.0 * pv.cos() / ((ONE - v * v * (2.0 * PI * PI)) * (SQRT_2 * cs))
}

/// f(v, z) = 2π²v²/(2π²v² − 1) · sinc(z − v); has poles in v at ±1/(π√2).
pub fn piece_f(v: Complex64, z: Complex64) -> Complex64 {
    let a = v * v * (2.0 * PI * PI);
    a / (a - 1.0) * sinc_complex(z - v)
}

fn g_raw(z: Complex64) -> Complex64 {
    let (ss, cs) = trig_s();
    let pz = z * PI;
    (pz.cos() * (SQRT_2 * ss) - z * (2.0 * PI * cs) * pz.sin()) / (ONE - z * z * (2.0 * PI * PI))
}

fn h_raw(z: Complex64) -> Complex64 {
    let (ss, cs) = trig_s();
    let pz = z * PI;
    (z * (2.0 * PI * ss) * pz.cos() - pz.sin() * (SQRT_2 * cs)) / (ONE - z * z * (2.0 * PI * PI))
}

/// g(z) = ∫_{−½}^{½} e^{2πizt} cos(√2 t) dt; entire of type π.
pub fn piece_g(z: Complex64) -> Complex64 {
    patch_removable(g_raw, z, nearest_singular(z))
}

/// h(z) = −i ∫_{−½}^{½} e^{2πizt} sin(√2 t) dt; entire of type π.
pub fn piece_h(z: Complex64) -> Complex64 {
    patch_removable(h_raw, z, nearest_singular(z))
}

/// κ(v, ·) = K(v̄, ·) with the coefficients precomputed.
#[derive(Clone, Debug)]
pub struct KernelRow {
    // (v, f-prefactor, c(v), d(v)); several entries when v sits on a
    // removable singularity and is replaced by a circle average.
    parts: Vec<(Complex64, Complex64, Complex64, Complex64)>,
}

impl KernelRow {
    /// Row of K(w, ·).
    pub fn new(w: Complex64) -> Self {
        let v = w.conj();
        let make = |v: Complex64| {
            let a = v * v * (2.0 * PI * PI);
            (v, a / (a - 1.0), piece_c(v), piece_d(v))
        };
        let near = nearest_singular(v);
        let parts = if (v - near).norm() < PATCH_WINDOW {
            const M: usize = 16;
            (0..M)
                .map(|k| {
                    let th = 2.0 * PI * (k as f64 + 0.5) / M as f64;
                    make(v + Complex64::from_polar(PATCH_RADIUS, th))
                })
                .collect()
        } else {
            alloc::vec![make(v)]
        };
        KernelRow { parts }
    }

    /// K(w, z).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (g, h) = (piece_g(z), piece_h(z));
        let mut acc = Complex64::new(0.0, 0.0);
        for &(v, pref, c, d) in &self.parts {
            acc += pref * sinc_complex(z - v) + c * g + d * h;
        }
        acc / self.parts.len() as f64
    }

    /// K(w, x) for real x, real part (exact for real w).
    pub fn eval_real(&self, x: f64) -> f64 {
        self.eval(Complex64::new(x, 0.0)).re
    }
}

/// K(w, z).
pub fn kernel_eval(w: Complex64, z: Complex64) -> Complex64 {
    KernelRow::new(w).eval(z)
}

/// K(a, b) for real a, b (real-valued).
pub fn kernel_real(a: f64, b: f64) -> f64 {
    kernel_eval(Complex64::new(a, 0.0), Complex64::new(b, 0.0)).re
}

/// The kernel as an object, for code that wants to pass it around.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kernel;

impl Kernel {
    pub fn eval(&self, w: Complex64, z: Complex64) -> Complex64 {
        kernel_eval(w, z)
    }
    pub fn c(&self, w: Complex64) -> Complex64 {
        piece_c(w)
    }
    pub fn d(&self, w: Complex64) -> Complex64 {
        piece_d(w)
    }
    pub fn f(&self, w: Complex64, z: Complex64) -> Complex64 {
        piece_f(w, z)
    }
    pub fn g(&self, z: Complex64) -> Complex64 {
        piece_g(z)
    }
    pub fn h(&self, z: Complex64) -> Complex64 {
        piece_h(z)
    }
}

/// ⟨f, K(w,·)⟩ = ∫ f(x) conj K(w,x) dμ(x); equals f(w) for f in the space.
pub fn reproduce(f: &BandlimitedFunction, w: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    // conj K(w, x) = κ(w, x) for real x.
    let row = KernelRow::new(w.conj());
    let spec = spec.with_period(1.0);
    integrate_real_line_complex(|x| row.eval(Complex64::new(x, 0.0)) * (f.time_eval(x) * mu_density(x)), 2.0, &spec)
}

/// Solution of min ‖x‖ subject to |⟨x,v₁⟩| ≥ 1, |⟨x,v₂⟩| ≥ 1 with
/// ‖v₁‖² = ‖v₂‖² = `n11` and ⟨v₁,v₂⟩ = `n12`. Returns the minimal norm and
/// the coefficients (a₁, a₂) of an extremal x = a₁v₁ + a₂v₂.
pub fn min_norm_two_constraints(n11: f64, n12: Complex64) -> Result<(f64, (Complex64, Complex64))> {
    if !(n11 > 0.0) {
        return Err(Error::Domain("Gram diagonal must be positive"));
    }
    let m12 = n12.norm();
    if m12 > n11 * (1.0 + 1e-12) {
        return Err(Error::Domain("Gram entries violate Cauchy–Schwarz"));
    }
    let min = libm::sqrt(2.0 / (n11 + m12));
    let norm = libm::sqrt(2.0 * (n11 + m12));
    let k = min / norm;
    if m12 == 0.0 {
        return Ok((min, (Complex64::new(k, 0.0), Complex64::new(k, 0.0))));
    }
    // n12 = e^{−iα}|n12|
    let alpha = -n12.arg();
    Ok((min, (Complex64::from_polar(k, alpha), Complex64::new(k, 0.0))))
}

/// Classification of the two-delta problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoDeltaCase {
    /// K(β, −β) = 0.
    Orthogonal,
    Generic,
}

/// Solution of the two-delta problem at β.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoDeltaSolution {
    pub beta: f64,
    /// Δ(β) = 2/(K(β,β) + |K(β,−β)|).
    pub value: f64,
    pub k_bb: f64,
    pub k_bmb: f64,
    pub case: TwoDeltaCase,
}

impl TwoDeltaSolution {
    /// The extremal nonnegative R with R(±β) = 1 and M(R) = Δ(β).
    pub fn extremal_eval(&self, x: f64) -> f64 {
        let kp = kernel_real(self.beta, x);
        let km = kernel_real(-self.beta, x);
        match self.case {
            TwoDeltaCase::Orthogonal => {
                let t = (kp + km) / self.k_bb;
                t * t
            }
            TwoDeltaCase::Generic => {
                let t = (self.k_bmb.signum() * kp + km) / (self.k_bb + self.k_bmb.abs());
                t * t
            }
        }
    }

    /// The extremal function as a [`BandlimitedFunction`] of type 2π.
    pub fn extremal_function(&self) -> BandlimitedFunction {
        let s = *self;
        BandlimitedFunction::new(2.0 * PI, "two-delta extremal", move |x| s.extremal_eval(x)).with_period(1.0)
    }
}

/// Δ(β) and its extremal function.
pub fn two_delta(beta: f64) -> Result<TwoDeltaSolution> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::Domain("beta must be positive"));
    }
    let k_bb = kernel_real(beta, beta);
    let k_bmb = kernel_real(beta, -beta);
    let case = if k_bmb.abs() < ORTHOGONAL_THRESHOLD { TwoDeltaCase::Orthogonal } else { TwoDeltaCase::Generic };
    let value = 2.0 / (k_bb + k_bmb.abs());
    Ok(TwoDeltaSolution { beta, value, k_bb, k_bmb, case })
}

/// Upper bound 1/(K(β,β) + |K(β,−β)|) for U(β) − L(β): half of Δ(β).
pub fn u_minus_l_gap(beta: f64) -> Result<f64> {
    Ok(0.5 * two_delta(beta)?.value)
}

/// One-delta problem: min M(R) over R ≥ 0 of type 2π with R(0) = 1.
/// Returns 1/K(0,0) and the extremal K(0,z)²/K(0,0)².
pub fn one_delta() -> (f64, BandlimitedFunction) {
    let k00 = kernel_real(0.0, 0.0);
    let row = KernelRow::new(Complex64::new(0.0, 0.0));
    let extremal = BandlimitedFunction::new(2.0 * PI, "one-delta extremal", move |x| {
        let t = row.eval_real(x) / k00;
        t * t
    })
    .with_period(1.0);
    (1.0 / k00, extremal)
}

/// 2^{−1/2} cot(2^{−1/2}) − ½.
pub fn one_delta_closed_form() -> f64 {
    let (ss, cs) = trig_s();
    FRAC_1_SQRT_2 * cs / ss - 0.5
}

/// η from the norm-equivalence argument: η² = min_{|x| ≥ 1/8} {1 − sinc²x}
/// = 1 − sinc²(1/8), so that (η/2)‖f‖₂ ≤ ‖f‖_μ ≤ ‖f‖₂.
pub fn norm_equivalence_eta() -> f64 {
    libm::sqrt(mu_density(0.125))
}
