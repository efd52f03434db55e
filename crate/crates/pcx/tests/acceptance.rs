//! Acceptance run: one PASS/FAIL line per criterion. Built with
//! `harness = false` so the lines are always printed; exits non-zero if any
//! criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use paircorr::beurling::{eval_h1, h1_function, BandlimitedFunction};
use paircorr::debranges::{
    build_e, case3_majorant, case3_majorant_function, case3_min_margin, lambda_values, quadrature_check, verify_hb,
    HermiteBiehler, NodeSystem, DEFAULT_X_MAX,
};
use paircorr::gaps::solve_threshold;
use paircorr::kernel::{kernel_eval, kernel_real, one_delta, reproduce, two_delta};
use paircorr::numerics::{sinc, sinc_complex, QuadratureSpec};
use paircorr::pcbounds::{g_series, m_of, m_selberg, m_selberg_checked, minorant_threshold};
use paircorr::zerodata::{count_pairs, count_pairs_bruteforce, empirical_f, empirical_table, parse_zeros, ZeroDataset};
use paircorr::{Complex64, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn zeros_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeta_zeros_10k.txt")
}

fn load_fixture() -> ZeroDataset {
    let text = std::fs::read_to_string(zeros_path()).expect("zero fixture present");
    parse_zeros(&text, "zeta_zeros_10k").expect("fixture parses")
}

fn c1_one_delta() -> Check {
    let t = Instant::now();
    let (v, _) = one_delta();
    let secs = t.elapsed().as_secs_f64();
    ensure((v - 0.3274992).abs() <= 1e-6, format!("one_delta = {v}"))?;
    ensure(secs < 1.0, format!("took {secs:.3}s"))?;
    Ok(format!("one_delta = {v:.10} in {secs:.3}s"))
}

fn c2_gap_thresholds() -> Check {
    let t = Instant::now();
    let with = solve_threshold(true).map_err(|e| e.to_string())?;
    let without = solve_threshold(false).map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    ensure((with - 0.606894).abs() <= 1e-4, format!("with correction {with}"))?;
    ensure((without - 0.607286).abs() <= 1e-4, format!("without correction {without}"))?;
    ensure(secs < 5.0, format!("took {secs:.3}s"))?;
    Ok(format!("{with:.7} / {without:.7} in {secs:.3}s"))
}

fn c3_minorant_threshold() -> Check {
    let t = Instant::now();
    let b = minorant_threshold(1.0, 1e-10).map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    ensure((b - 0.8163).abs() <= 5e-4, format!("threshold {b}"))?;
    ensure(secs < 10.0, format!("took {secs:.3}s"))?;
    Ok(format!("threshold {b:.7} in {secs:.3}s"))
}

fn c4_closed_vs_quadrature() -> Check {
    let t = Instant::now();
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for &beta in &[0.4, 0.9, 1.0, 1.5, 2.7, 5.0] {
        for &delta in &[1.0, 2.0] {
            for sign in [Sign::Plus, Sign::Minus] {
                let ev = m_selberg_checked(beta, delta, sign, &spec).map_err(|e| e.to_string())?;
                let q = ev.quadrature_check.ok_or("no quadrature value")?;
                let d = (ev.closed_form - q).abs();
                worst = worst.max(d);
                ensure(d <= 1e-7, format!("beta={beta} delta={delta} {sign:?}: diff {d:e}"))?;
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 120.0, format!("took {secs:.1}s"))?;
    Ok(format!("24 cases, max diff {worst:.2e}, {secs:.1}s"))
}

fn c5_asymptotic_residuals() -> Check {
    let betas = [10.0, 20.0, 40.0, 80.0];
    let mut report = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let s = sign.as_f64();
        let res: Vec<f64> = betas
            .iter()
            .map(|&b| {
                let m = m_selberg(b, 1.0, sign).unwrap().closed_form;
                (m - (b - 0.5 + 0.5 * s + 1.0 / (2.0 * PI * PI * b))).abs()
            })
            .collect();
        let scaled: Vec<f64> = res.iter().zip(&betas).map(|(r, b)| r * b * b).collect();
        ensure(scaled.iter().all(|&v| v < 1.0), format!("{sign:?}: beta²·residual {scaled:?}"))?;
        let slope = (res[3].ln() - res[0].ln()) / (80f64.ln() - 10f64.ln());
        ensure((-2.3..=-1.7).contains(&slope), format!("{sign:?}: slope {slope}"))?;
        report.push(format!("{sign:?} slope {slope:.3}"));
    }
    Ok(report.join(", "))
}

fn c6_g_constant() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for &delta in &[1.0, 1.5, 2.0] {
        for _ in 0..20 {
            let b: f64 = rng.gen_range(1.0..50.0);
            let d = (g_series(delta, b).map_err(|e| e.to_string())? - 0.5).abs();
            worst = worst.max(d);
            ensure(d <= 1e-7, format!("delta={delta} beta={b}: {d:e}"))?;
        }
    }
    Ok(format!("60 samples, max |G − ½| = {worst:.2e}"))
}

fn c7_reproducing() -> Check {
    let spec = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..25 {
        let a: f64 = rng.gen_range(-3.0..3.0);
        let u: f64 = rng.gen_range(-2.0..2.0);
        let s: f64 = rng.gen_range(0.2..2.0);
        let w = c(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0));
        let f = BandlimitedFunction::new(PI, "mix", move |x| s * sinc(x - a) + 0.5 * kernel_real(u, x));
        let expect = sinc_complex(w - a) * s + kernel_eval(c(u, 0.0), w) * 0.5;
        let got = reproduce(&f, w, &spec).map_err(|e| e.to_string())?;
        let d = (got - expect).norm();
        worst = worst.max(d);
        ensure(d < 1e-6, format!("a={a} u={u} w={w}: {got} vs {expect}"))?;
    }
    Ok(format!("25 pairs, max error {worst:.2e}"))
}

fn c8_kernel_symmetries() -> Check {
    let close = |a: Complex64, b: Complex64| (a - b).norm() <= 1e-12 * a.norm().max(b.norm()).max(1.0);
    let pts: Vec<Complex64> =
        (0..25).flat_map(|i| (0..9).map(move |j| c(-6.0 + 0.5 * i as f64, -2.0 + 0.5 * j as f64))).collect();
    for &w in &pts {
        let kww = kernel_eval(w, w);
        ensure(kww.re > 0.0 && kww.im.abs() <= 1e-12 * kww.re, format!("diagonal at {w}"))?;
        for &z in &pts {
            ensure(close(kernel_eval(w, z), kernel_eval(z, w).conj()), format!("hermitian {w} {z}"))?;
            ensure(close(kernel_eval(w.conj(), z.conj()), kernel_eval(w, z).conj()), format!("conjugation {w} {z}"))?;
        }
    }
    for i in 0..=4000 {
        let x = -20.0 + 0.01 * i as f64;
        ensure(kernel_real(x, x) > 0.0, format!("K({x},{x}) ≤ 0"))?;
    }
    Ok(format!("{} grid points, 4001 diagonal samples", pts.len()))
}

fn c9_two_delta(e: &HermiteBiehler) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    let mut worst: f64 = 0.0;
    while done < 10 {
        let b: f64 = rng.gen_range(0.05..12.0);
        if e.zeros_a.iter().chain(&e.zeros_b).any(|&z| (z - b).abs() < 1e-3) {
            continue;
        }
        let (lp, lm) = lambda_values(e, b).map_err(|e| e.to_string())?;
        let s = two_delta(b).map_err(|e| e.to_string())?;
        let direct = 2.0 / (kernel_real(b, b) + kernel_real(b, -b).abs());
        let d = (lp - lm - s.value).abs().max((s.value - direct).abs());
        worst = worst.max(d);
        ensure(d < 1e-8, format!("beta={b}: Λ⁺−Λ⁻={} Δ={}", lp - lm, s.value))?;
        done += 1;
    }
    let mut scaled = Vec::new();
    for &b in &[10.0, 20.0, 40.0] {
        let x: f64 = 2.0 * PI * b;
        let r = (two_delta(b).unwrap().value - 2.0 * (1.0 - (x.sin() / x).abs())).abs();
        scaled.push(r * b * b);
    }
    ensure(scaled.iter().all(|&v| v < 1.0), format!("beta²·residual {scaled:?}"))?;
    Ok(format!("10 β, max diff {worst:.2e}; β²·residual {scaled:.3?}"))
}

fn c10_cross_identity(e: &HermiteBiehler) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let b: f64 = rng.gen_range(0.05..15.0);
        let (a, bb) = e.ab_real(b);
        let d = (kernel_real(b, -b) - a * bb / (PI * b)).abs();
        worst = worst.max(d);
        ensure(d <= 1e-10, format!("beta={b}: diff {d:e}"))?;
    }
    Ok(format!("20 β, max diff {worst:.2e}"))
}

fn c11_node_quadrature(e: &HermiteBiehler) -> Check {
    let shifted = BandlimitedFunction::new(2.0 * PI, "shifted sinc²", |x| eval_h1(x - 1.3)).with_period(1.0);
    let extremal = two_delta(1.7).unwrap().extremal_function();
    let fns = [h1_function(), shifted, extremal];
    let mut worst: f64 = 0.0;
    for f in &fns {
        for which in [NodeSystem::ANodes, NodeSystem::BNodes] {
            let q = quadrature_check(e, f, which).map_err(|e| e.to_string())?;
            let d = (q.node_sum - q.integral).abs();
            worst = worst.max(d);
            ensure(d < 1e-6, format!("{} {which:?}: {q:?}", f.label))?;
        }
    }
    Ok(format!("3 functions × 2 node sets, max diff {worst:.2e}"))
}

fn c12_case3(e: &HermiteBiehler) -> Check {
    let mut report = Vec::new();
    for &b in &[0.1, 0.25, 0.4] {
        ensure(b < e.zeros_a[0], "beta not below a₁")?;
        let m = case3_majorant(e, b).map_err(|e| e.to_string())?;
        let margin = case3_min_margin(&m, 10.0, 10_000);
        ensure(margin >= -1e-12, format!("beta={b}: Q² − χ reaches {margin:e}"))?;
        for x in [b, -b] {
            ensure((m.eval(x) - 1.0).abs() < 1e-9, format!("beta={b}: Q²({x}) = {}", m.eval(x)))?;
        }
        let f = case3_majorant_function(e.clone(), b).map_err(|e| e.to_string())?;
        let mu = m_of(&f).map_err(|e| e.to_string())?;
        let (lp, _) = lambda_values(e, b).map_err(|e| e.to_string())?;
        ensure((mu - lp).abs() < 1e-6, format!("beta={b}: M(Q²)={mu} Λ⁺={lp}"))?;
        report.push(format!("β={b}: |M−Λ⁺|={:.1e}", (mu - lp).abs()));
    }
    Ok(report.join(", "))
}

fn c13_hermite_biehler(e: &HermiteBiehler) -> Check {
    let r = verify_hb(e, 1000);
    ensure(r.hb_violations.is_empty(), format!("{} inequality violations", r.hb_violations.len()))?;
    ensure(r.max_imag_e_ix <= 1e-12, format!("max |Im E(ix)| = {:e}", r.max_imag_e_ix))?;
    Ok(format!("1000 samples clean, max |Im E(ix)| = {:.1e}", r.max_imag_e_ix))
}

fn c14_empirical() -> Check {
    let ds = load_fixture();
    ensure(ds.len() >= 10_000, format!("only {} ordinates", ds.len()))?;
    for &t in &[ds.t_max, 5000.0] {
        for &b in &[0.1, 0.5, 1.0, 2.0, 3.0] {
            let fast = count_pairs(&ds, t, b).map_err(|e| e.to_string())?;
            let slow = count_pairs_bruteforce(&ds, t, b).map_err(|e| e.to_string())?;
            ensure(fast == slow, format!("T={t} beta={b}: {fast} vs {slow}"))?;
        }
    }
    for &a in &[0.0, 0.5, 1.0, 1.5] {
        let fp = empirical_f(&ds, ds.t_max, a).map_err(|e| e.to_string())?;
        let fm = empirical_f(&ds, ds.t_max, -a).map_err(|e| e.to_string())?;
        ensure(fp >= 0.0, format!("F({a}) = {fp}"))?;
        ensure((fp - fm).abs() <= 1e-12 * fp.max(1.0), format!("F({a}) − F(−{a}) = {:e}", fp - fm))?;
    }
    // the band comparison is report-only
    let betas: Vec<f64> = (0..=25).map(|i| 0.5 + 0.1 * i as f64).collect();
    let rows = empirical_table(&ds, ds.t_max, &betas, 1.0).map_err(|e| e.to_string())?;
    let outside: Vec<f64> =
        rows.iter().filter(|r| r.ratio < r.lower - 0.1 || r.ratio > r.upper + 0.1).map(|r| r.beta).collect();
    let band = if outside.is_empty() {
        "all 26 β inside band ± 0.1".to_string()
    } else {
        format!("report: {} of 26 β outside band ± 0.1 (β ≥ {:.1})", outside.len(), outside[0])
    };
    Ok(format!("{} zeros; pair counts exact; F ≥ 0 and even; {band}", ds.len()))
}

fn run_cli(args: &[&str], out: &std::path::Path, threads: &str) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_pcx"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("PCX_THREADS", threads)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), format!("pcx {args:?} exited with {status}"))?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn c15_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let zeros = zeros_path();
    let zeros = zeros.to_str().ok_or("non-utf8 path")?;
    let configs: Vec<Vec<&str>> = vec![
        vec!["bounds", "--beta", "0.1:3:0.01", "--nstar", "1"],
        vec!["twodelta", "--beta", "0.1:10:0.1"],
        vec!["gaps", "--profile"],
        vec!["empirical", "--zeros", zeros, "--beta", "0.5:3:0.1"],
        vec!["empirical", "--zeros", zeros, "--height", "2000", "--falpha", "0:1.5:0.05"],
    ];
    for (i, args) in configs.iter().enumerate() {
        let a = run_cli(args, &dir.path().join(format!("{i}a.csv")), "1")?;
        let b = run_cli(args, &dir.path().join(format!("{i}b.csv")), "1")?;
        let c = run_cli(args, &dir.path().join(format!("{i}c.csv")), "4")?;
        ensure(a == b && a == c, format!("pcx {args:?}: outputs differ"))?;
    }
    Ok(format!("{} configurations byte-identical across runs and thread counts", configs.len()))
}

fn main() {
    let e = build_e(DEFAULT_X_MAX).expect("E builds");
    let criteria: Vec<Criterion<'_>> = vec![
        ("one-delta constant", Box::new(c1_one_delta)),
        ("small-gap thresholds", Box::new(c2_gap_thresholds)),
        ("minorant positivity threshold", Box::new(c3_minorant_threshold)),
        ("closed form vs quadrature", Box::new(c4_closed_vs_quadrature)),
        ("asymptotic residuals", Box::new(c5_asymptotic_residuals)),
        ("G constancy", Box::new(c6_g_constant)),
        ("reproducing property", Box::new(c7_reproducing)),
        ("kernel symmetries", Box::new(c8_kernel_symmetries)),
        ("two-delta consistency", Box::new(|| c9_two_delta(&e))),
        ("K(β,−β) = A(β)B(β)/(πβ)", Box::new(|| c10_cross_identity(&e))),
        ("node quadrature identities", Box::new(|| c11_node_quadrature(&e))),
        ("case-3 majorant", Box::new(|| c12_case3(&e))),
        ("Hermite–Biehler checks", Box::new(|| c13_hermite_biehler(&e))),
        ("empirical pipeline", Box::new(c14_empirical)),
        ("CLI determinism", Box::new(c15_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail}", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
