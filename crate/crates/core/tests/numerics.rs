use std::f64::consts::PI;

use paircorr::numerics::{
    find_root, first_root_by_scan, hurwitz_zeta, integrate_adaptive, integrate_semi_infinite, sinc, sum_with_tail,
    Bracket, QuadratureSpec, TailModel,
};
use paircorr::Error;
use proptest::prelude::*;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn constant_integrand() {
    assert!((integrate_adaptive(|_| 1.0, 0.0, 1.0, &spec()).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn sinc_squared_total_mass() {
    let inner = integrate_adaptive(|x| sinc(x).powi(2), -50.0, 50.0, &spec().with_period(1.0)).unwrap();
    let tail = integrate_semi_infinite(|x| sinc(x).powi(2), 50.0, 2.0, &spec()).unwrap();
    assert!((inner + 2.0 * tail - 1.0).abs() < 1e-9);
}

#[test]
fn inverse_square_tail() {
    let v = integrate_semi_infinite(|x| 1.0 / (x * x), 1.0, 2.0, &spec()).unwrap();
    assert!((v - 1.0).abs() < 1e-10);
}

#[test]
fn fat_tail_rejected() {
    assert!(matches!(integrate_semi_infinite(|x| 1.0 / x, 1.0, 1.0, &spec()), Err(Error::TailTooFat { .. })));
}

/// Half-period chunks of ∫₁₀^∞ sin x/x² alternate in sign; sum them with
/// repeated Richardson-style averaging of partial sums.
fn alternating_chunk_oracle() -> f64 {
    let s = QuadratureSpec::default().with_tol(1e-15, 1e-14);
    let k0 = (10.0 / PI).ceil() as i64;
    let head = integrate_adaptive(|x| x.sin() / (x * x), 10.0, k0 as f64 * PI, &s).unwrap();
    let chunk = |k: i64| integrate_adaptive(|x| x.sin() / (x * x), k as f64 * PI, (k + 1) as f64 * PI, &s).unwrap();
    let n = 400;
    let mut partial = Vec::with_capacity(n + 30);
    let mut acc = head;
    for k in 0..(n + 30) as i64 {
        acc += chunk(k0 + k);
        partial.push(acc);
    }
    let mut row: Vec<f64> = partial[n..].to_vec();
    while row.len() > 1 {
        row = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    row[0]
}

#[test]
fn oscillatory_tail_matches_alternating_oracle() {
    let v = integrate_semi_infinite(|x| x.sin() / (x * x), 10.0, 2.0, &spec().with_period(2.0 * PI)).unwrap();
    let oracle = alternating_chunk_oracle();
    assert!((v - oracle).abs() < 1e-10, "{v} vs {oracle}");
}

#[test]
fn sinc_squared_complement() {
    let outer = integrate_semi_infinite(|x| sinc(x).powi(2), 5.0, 2.0, &spec()).unwrap();
    let inner = integrate_adaptive(|x| sinc(x).powi(2), -5.0, 5.0, &spec().with_period(1.0)).unwrap();
    assert!((2.0 * outer - (1.0 - inner)).abs() < 1e-9);
}

#[test]
fn roots() {
    let f = |x: f64| (PI * x).cos();
    assert!((find_root(f, Bracket::new(f, 0.4, 0.6).unwrap(), 1e-14) - 0.5).abs() < 1e-13);
    let g = |x: f64| x * x - 2.0;
    assert!((find_root(g, Bracket::new(g, 1.0, 2.0).unwrap(), 1e-14) - 2f64.sqrt()).abs() < 1e-13);
    assert!(Bracket::new(g, 2.0, 3.0).is_err());
    let r = first_root_by_scan(|x: f64| x.sin(), 1.0, 10.0, 0.1, 1e-13).unwrap();
    assert!((r - PI).abs() < 1e-12);
}

#[test]
fn series() {
    let basel = sum_with_tail(|n| 1.0 / (n * n) as f64, 1, TailModel::PowerDecay(2.0), 1e-12).unwrap();
    assert!((basel - PI * PI / 6.0).abs() < 1e-10);
    let alt =
        sum_with_tail(|n| if n % 2 == 0 { 1.0 } else { -1.0 } / n as f64, 1, TailModel::AlternatingPower(1.0), 1e-12)
            .unwrap();
    assert!((alt + 2f64.ln()).abs() < 1e-10);
    for &p in &[2.0, 3.0, 4.5] {
        let v = sum_with_tail(|n| (n as f64).powf(-p), 1, TailModel::PowerDecay(p), 1e-12).unwrap();
        assert!((v - hurwitz_zeta(p, 1.0)).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadrature_is_linear(a in -2.0f64..2.0, c1 in -3.0f64..3.0, c2 in 0.1f64..4.0, c3 in -2.0f64..2.0) {
        let s = spec();
        let f = move |x: f64| (c1 * x).sin() + c3 * x * x;
        let g = move |x: f64| (-c2 * x * x).exp();
        let lhs = integrate_adaptive(|x| a * f(x) + g(x), -1.0, 2.0, &s).unwrap();
        let rhs = a * integrate_adaptive(f, -1.0, 2.0, &s).unwrap() + integrate_adaptive(g, -1.0, 2.0, &s).unwrap();
        prop_assert!((lhs - rhs).abs() <= 3.0 * s.abs_tol + 1e-10 * rhs.abs());
    }

    #[test]
    fn root_stays_in_bracket(lo in -3.0f64..0.0, hi in 0.1f64..3.0, shift in -0.05f64..0.05) {
        let f = move |x: f64| (x - shift).powi(3) + 0.1 * (x - shift);
        if let Ok(br) = Bracket::new(f, lo, hi) {
            let r = find_root(f, br, 1e-12);
            prop_assert!(r >= lo && r <= hi);
            prop_assert!((r - shift).abs() < 1e-10);
        }
    }
}
