use std::f64::consts::PI;

use paircorr::beurling::{chi, eval_h0, eval_h1, eval_r, ft_r, ft_r_lipschitz, ft_r_real, ft_w, make_selberg_pair};
use paircorr::numerics::{integrate_adaptive, integrate_real_line, QuadratureSpec};
use paircorr::{Complex64, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bilateral series Σ_{|m| ≤ N} sgn(m)/(x−m)² + 2/x, times (sin πx/π)².
fn h0_series(x: f64, n: i64) -> f64 {
    let mut s = 0.0;
    // pair m and −m so the sum is accumulated from small magnitudes
    for m in (1..=n).rev() {
        let m = m as f64;
        s += 1.0 / ((x - m) * (x - m)) - 1.0 / ((x + m) * (x + m));
    }
    let p = (PI * x).sin() / PI;
    p * p * (s + 2.0 / x)
}

#[test]
fn h0_against_brute_force_series() {
    for &x in &[0.5, 0.13, 1.7, 3.25, -2.4, 7.9] {
        let oracle = h0_series(x, 1_000_000);
        assert!((eval_h0(x) - oracle).abs() < 1e-9, "x={x}: {} vs {oracle}", eval_h0(x));
    }
}

#[test]
fn h0_examples() {
    assert_eq!(eval_h0(0.0), 0.0);
    assert!((eval_h0(10.25) - 1.0).abs() <= 0.01);
    assert!((eval_h0(-10.25) + 1.0).abs() <= 0.01);
    // H₀ − sgn = O(x⁻²)
    for &x in &[20.3, 40.3, 80.3] {
        assert!((eval_h0(x) - 1.0).abs() * x * x < 1.0);
    }
}

#[test]
fn h1_examples() {
    assert_eq!(eval_h1(0.0), 1.0);
    assert!(eval_h1(1.0).abs() < 1e-30);
    assert!((eval_h1(0.5) - 4.0 / (PI * PI)).abs() < 1e-15);
}

#[test]
fn ft_w_is_imaginary_with_known_values() {
    assert_eq!(ft_w(0.0), Complex64::new(0.0, 0.0));
    assert!((ft_w(0.5) - Complex64::new(0.0, 1.0 / PI)).norm() < 1e-15);
    assert!((ft_w(1.0) - Complex64::new(0.0, 1.0 / PI)).norm() < 1e-15);
    for i in 0..200 {
        let t = -2.0 + 0.02 * i as f64;
        assert_eq!(ft_w(t).re, 0.0);
    }
}

#[test]
fn selberg_pair_examples() {
    let p = make_selberg_pair(1.0, 1.0).unwrap();
    assert!(p.majorant.time_eval(0.0) >= 1.0);
    assert!(p.minorant.time_eval(0.0) <= 1.0);
    assert!((p.majorant.freq_eval(0.0).unwrap() - 3.0).abs() < 1e-14);
    assert!((p.minorant.freq_eval(0.0).unwrap() - 1.0).abs() < 1e-14);
    let q = make_selberg_pair(0.7, 2.0).unwrap();
    for &t in &[2.0001, 2.5, -3.0, 10.0] {
        assert_eq!(q.majorant.freq_eval(t), Some(0.0));
        assert_eq!(q.minorant.freq_eval(t), Some(0.0));
    }
    assert!(make_selberg_pair(0.0, 1.0).is_err());
    assert!(make_selberg_pair(-1.0, 1.0).is_err());
    assert!(ft_r(1.0, Sign::Minus, -1.2).is_err());
}

#[test]
fn sandwich_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for &beta in &[0.3, 0.5, 1.0, 2.7, 7.0] {
        for &delta in &[1.0, 2.0] {
            let p = make_selberg_pair(beta, delta).unwrap();
            for _ in 0..10_000 {
                let x: f64 = rng.gen_range(-5.0 * beta..5.0 * beta);
                let c = chi(beta, x);
                assert!(p.minorant.time_eval(x) <= c + 1e-12, "beta={beta} delta={delta} x={x}");
                assert!(p.majorant.time_eval(x) >= c - 1e-12, "beta={beta} delta={delta} x={x}");
            }
            for x in [-beta, beta] {
                assert!(p.minorant.time_eval(x) <= 0.5 + 1e-12 && p.majorant.time_eval(x) >= 0.5 - 1e-12);
            }
        }
    }
}

#[test]
fn interpolation_at_translated_integers() {
    for k in 1..=6 {
        let beta = 0.5 * k as f64;
        for n in -12i32..=12 {
            if n == 0 || n == -k {
                continue; // x = ±β
            }
            let x = beta + n as f64;
            let v = eval_r(beta, Sign::Plus, x);
            assert!((v - chi(beta, x)).abs() < 1e-9, "beta={beta} x={x}: {v}");
        }
    }
}

#[test]
fn fourier_inversion_matches_time_domain() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let spec = QuadratureSpec::default().with_tol(1e-13, 1e-12);
    for &(beta, delta) in &[(1.0, 1.0), (0.4, 1.0), (2.7, 2.0), (0.9, 1.5)] {
        let p = make_selberg_pair(beta, delta).unwrap();
        for _ in 0..25 {
            let x: f64 = rng.gen_range(-6.0..6.0);
            for f in [&p.majorant, &p.minorant] {
                // f̂ is even, so the inverse transform is a cosine integral.
                let g = |t: f64| f.freq_eval(t).unwrap() * (2.0 * PI * x * t).cos();
                let inv = 2.0 * integrate_adaptive(g, 0.0, delta, &spec).unwrap();
                assert!((inv - f.time_eval(x)).abs() < 1e-7, "beta={beta} delta={delta} x={x}");
            }
        }
    }
}

#[test]
fn integral_of_transform_is_value_at_zero() {
    let spec = QuadratureSpec::default().with_tol(1e-13, 1e-12);
    for sign in [Sign::Plus, Sign::Minus] {
        let v = 2.0 * integrate_adaptive(|t| ft_r_real(1.0, sign, t), 0.0, 1.0, &spec).unwrap();
        assert!((v - eval_r(1.0, sign, 0.0)).abs() < 1e-8);
    }
}

#[test]
fn l1_gap_is_two() {
    let spec = QuadratureSpec::default().with_period(1.0);
    for &beta in &[0.3, 1.0, 2.7] {
        let p = make_selberg_pair(beta, 1.0).unwrap();
        let d = integrate_real_line(|x| p.majorant.time_eval(x) - p.minorant.time_eval(x), 2.0, &spec).unwrap();
        assert!((d - 2.0).abs() < 1e-7, "beta={beta}: {d}");
    }
}

#[test]
fn lipschitz_estimate_scales_like_square() {
    let ratios: Vec<f64> = [1.0, 2.0, 4.0, 8.0, 16.0]
        .iter()
        .map(|&b| ft_r_lipschitz(b, Sign::Plus, 20_000).max(ft_r_lipschitz(b, Sign::Minus, 20_000)) / (1.0 + b).powi(2))
        .collect();
    for r in &ratios {
        assert!(r.is_finite() && *r < 50.0, "{ratios:?}");
    }
}
