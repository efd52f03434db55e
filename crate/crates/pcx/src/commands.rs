use std::f64::consts::PI;
use std::path::Path;

use paircorr::debranges::{build_e, tilt, verify_hb, Regime, DEFAULT_X_MAX};
use paircorr::gaps::{lower_bound_profile, solve_threshold_tol};
use paircorr::kernel::{one_delta, one_delta_closed_form, two_delta, TwoDeltaCase};
use paircorr::pcbounds::{bound_row, m_selberg, minorant_threshold, q_aspect_bounds};
use paircorr::zerodata::{
    empirical_f_raw_rows, empirical_row, f_normalisation, montgomery_f, parse_zeros, ZeroDataset,
};
use paircorr::Sign;
use rayon::prelude::*;

use crate::config::Cli;
use crate::error::CliError;
use crate::output::{Cell, Table};

/// What to plot if a gnuplot script is requested.
pub struct Plot {
    pub x: &'static str,
    pub series: Vec<&'static str>,
    pub title: &'static str,
}

pub type Outcome = (Table, Option<Plot>);

/// Band slack for the empirical comparison.
pub const BAND_SLACK: f64 = 0.1;

/// Fixed number of row blocks for F(α) sums, independent of the thread
/// count so results are bit-identical however many threads run.
const F_BLOCKS: usize = 64;

fn betas(cli: &Cli, default: &str) -> Vec<f64> {
    cli.beta.unwrap_or_else(|| default.parse().expect("valid default range")).grid()
}

fn par_rows<F>(xs: &[f64], f: F) -> Result<Vec<Vec<Cell>>, CliError>
where
    F: Fn(f64) -> Result<Vec<Cell>, CliError> + Sync,
{
    xs.par_iter().map(|&x| f(x)).collect()
}

pub fn bounds(cli: &Cli) -> Result<Outcome, CliError> {
    let mut cols = vec![
        "beta",
        "lower",
        "upper",
        "lower_adjusted",
        "upper_adjusted",
        "conjecture",
        "two_delta",
        "asymptotic_lower",
        "asymptotic_upper",
    ];
    let with_delta = cli.delta != 1.0;
    if with_delta {
        cols.extend(["lower_delta", "upper_delta"]);
    }
    if cli.epsilon.is_some() {
        cols.extend(["lower_q", "upper_q"]);
    }
    let grid = betas(cli, "0.1:3:0.01");
    let mut table = Table::new(&cols);
    table.rows = par_rows(&grid, |b| {
        let r = bound_row(b, cli.nstar)?;
        let mut row: Vec<Cell> = vec![
            b.into(),
            r.lower.into(),
            r.upper.into(),
            r.lower_adjusted.into(),
            r.upper_adjusted.into(),
            r.conjecture.into(),
            r.two_delta.into(),
            r.asymptotic_lower.into(),
            r.asymptotic_upper.into(),
        ];
        if with_delta {
            row.push(m_selberg(b, cli.delta, Sign::Minus)?.closed_form.into());
            row.push(m_selberg(b, cli.delta, Sign::Plus)?.closed_form.into());
        }
        if let Some(eps) = cli.epsilon {
            let (lo, up) = q_aspect_bounds(b, eps)?;
            row.extend([lo.into(), up.into()]);
        }
        Ok(row)
    })?;
    let lower: Vec<f64> = table.rows.iter().map(|r| num(&r[1])).collect();
    if let Some(i) = lower.windows(2).position(|w| w[0] <= 0.0 && w[1] > 0.0) {
        table.notes.push(format!("lower bound turns positive between beta={} and beta={}", grid[i], grid[i + 1]));
    }
    if grid.len() == 1 {
        let t = minorant_threshold(1.0, cli.tol())?;
        table.notes.push(format!("lower bound turns positive at beta={}", crate::output::sig10(t)));
    }
    if cli.epsilon.is_some() {
        table.notes.push("q columns use delta = 2 - epsilon".into());
    }
    let plot = Plot { x: "beta", series: vec!["lower", "upper", "conjecture"], title: "pair-correlation bounds" };
    Ok((table, Some(plot)))
}

fn num(c: &Cell) -> f64 {
    match c {
        Cell::Num(x) => *x,
        Cell::Int(n) => *n as f64,
        Cell::Text(_) => f64::NAN,
    }
}

pub fn twodelta(cli: &Cli) -> Result<Outcome, CliError> {
    if cli.one_delta {
        let mut table = Table::new(&["quantity", "value"]);
        table.push(vec!["one_delta".into(), one_delta().0.into()]);
        table.push(vec!["one_delta_closed_form".into(), one_delta_closed_form().into()]);
        return Ok((table, None));
    }
    let grid = betas(cli, "0.1:10:0.1");
    let mut table =
        Table::new(&["beta", "delta_beta", "u_minus_l_cap", "k_beta_beta", "k_beta_minus_beta", "case", "asymptotic"]);
    table.rows = par_rows(&grid, |b| {
        let s = two_delta(b)?;
        let x = 2.0 * PI * b;
        let case = match s.case {
            TwoDeltaCase::Orthogonal => "orthogonal",
            TwoDeltaCase::Generic => "generic",
        };
        Ok(vec![
            b.into(),
            s.value.into(),
            (0.5 * s.value).into(),
            s.k_bb.into(),
            s.k_bmb.into(),
            case.into(),
            (2.0 * (1.0 - (x.sin() / x).abs())).into(),
        ])
    })?;
    let plot = Plot { x: "beta", series: vec!["u_minus_l_cap"], title: "upper bound for U - L" };
    Ok((table, Some(plot)))
}

pub fn gaps(cli: &Cli) -> Result<Outcome, CliError> {
    if cli.profile {
        let grid = betas(cli, "0.5:1:0.005");
        let mut table = Table::new(&["beta", "base_term", "correction", "total"]);
        table.rows = par_rows(&grid, |b| {
            let p = lower_bound_profile(b)?;
            Ok(vec![b.into(), p.base_term.into(), p.correction.into(), p.total.into()])
        })?;
        let plot = Plot { x: "beta", series: vec!["base_term", "total"], title: "small-gap lower bound" };
        return Ok((table, Some(plot)));
    }
    let tol = cli.tol();
    let mut table = Table::new(&["method", "threshold"]);
    table.push(vec!["small_gaps_with_correction".into(), solve_threshold_tol(true, tol)?.into()]);
    table.push(vec!["small_gaps_without_correction".into(), solve_threshold_tol(false, tol)?.into()]);
    table.push(vec!["minorant_positivity".into(), minorant_threshold(1.0, tol)?.into()]);
    Ok((table, None))
}

pub fn load_zeros(path: &Path) -> Result<ZeroDataset, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_zeros(&text, path.display().to_string()).map_err(|source| CliError::Data { path: path.to_path_buf(), source })
}

/// F(α,T) with row blocks summed in parallel and combined in a fixed order.
pub fn empirical_f_par(ds: &ZeroDataset, t: f64, alpha: f64) -> Result<f64, CliError> {
    let n = ds.window(t)?.len();
    let blocks: Vec<f64> = (0..F_BLOCKS)
        .into_par_iter()
        .map(|k| empirical_f_raw_rows(ds, t, alpha, k * n / F_BLOCKS..(k + 1) * n / F_BLOCKS))
        .collect::<Result<_, _>>()?;
    Ok(f_normalisation(t) * blocks.iter().sum::<f64>())
}

pub fn empirical(cli: &Cli) -> Result<Outcome, CliError> {
    let path = cli.zeros.as_deref().ok_or_else(|| CliError::Config("empirical needs --zeros PATH".into()))?;
    let ds = load_zeros(path)?;
    let t = cli.height.unwrap_or(ds.t_max);
    let n_t = ds.window(t)?.len();
    if let Some(alphas) = cli.falpha {
        let grid = alphas.grid();
        let mut table = Table::new(&["alpha", "f_empirical", "f_empirical_neg", "f_model"]);
        table.rows = grid
            .iter()
            .map(|&a| {
                let fp = empirical_f_par(&ds, t, a)?;
                let fm = empirical_f_par(&ds, t, -a)?;
                Ok(vec![a.into(), fp.into(), fm.into(), montgomery_f(t, a).into()])
            })
            .collect::<Result<_, CliError>>()?;
        let asym = table.rows.iter().map(|r| (num(&r[1]) - num(&r[2])).abs()).fold(0.0, f64::max);
        let min_f = table.rows.iter().map(|r| num(&r[1]).min(num(&r[2]))).fold(f64::INFINITY, f64::min);
        table.notes.push(format!("zeros: {n_t} ordinates up to T={}", crate::output::sig10(t)));
        table.notes.push(format!("symmetry: max |F(a)-F(-a)| = {asym:e}"));
        table.notes.push(format!("nonnegativity: min F = {}", crate::output::sig10(min_f)));
        let plot = Plot { x: "alpha", series: vec!["f_empirical", "f_model"], title: "F(alpha, T)" };
        return Ok((table, Some(plot)));
    }
    let grid = betas(cli, "0.5:3:0.1");
    let mut table = Table::new(&["beta", "pairs", "ratio", "conjecture", "lower", "upper", "in_band"]);
    table.rows = par_rows(&grid, |b| {
        let r = empirical_row(&ds, t, b, cli.nstar)?;
        let inside = r.ratio >= r.lower - BAND_SLACK && r.ratio <= r.upper + BAND_SLACK;
        Ok(vec![
            b.into(),
            r.n_t_beta.into(),
            r.ratio.into(),
            r.conjecture.into(),
            r.lower.into(),
            r.upper.into(),
            if inside { "yes" } else { "no" }.into(),
        ])
    })?;
    let outside = table.rows.iter().filter(|r| r[6] == Cell::from("no")).count();
    table.notes.push(format!("zeros: {n_t} ordinates up to T={}", crate::output::sig10(t)));
    table.notes.push(format!("band check (slack {BAND_SLACK}): {outside} of {} rows outside", table.rows.len()));
    let plot =
        Plot { x: "beta", series: vec!["ratio", "conjecture", "lower", "upper"], title: "empirical N(T,beta)/N(T)" };
    Ok((table, Some(plot)))
}

fn regime_label(r: Regime) -> String {
    match r {
        Regime::CaseAZero { k } => format!("at_a{k}"),
        Regime::CaseBZero { k } => format!("at_b{k}"),
        Regime::CaseBkAk1 { k } => format!("b{k}_a{}", k + 1),
        Regime::CaseAkBk { k } => format!("a{k}_b{k}"),
    }
}

pub fn debranges(cli: &Cli) -> Result<Outcome, CliError> {
    let e = build_e(DEFAULT_X_MAX)?;
    let hb = verify_hb(&e, 1000);
    let mut table = if let Some(r) = cli.beta {
        let grid = r.grid();
        let mut table =
            Table::new(&["beta", "regime", "gamma_beta", "lambda_plus", "lambda_minus", "lambda_gap", "two_delta"]);
        table.rows = par_rows(&grid, |b| {
            let s = tilt(&e, b)?;
            Ok(vec![
                b.into(),
                regime_label(s.regime).into(),
                s.gamma_beta.into(),
                s.lambda_plus.into(),
                s.lambda_minus.into(),
                (s.lambda_plus - s.lambda_minus).into(),
                two_delta(b)?.value.into(),
            ])
        })?;
        table
    } else {
        let mut table = Table::new(&["k", "a_k", "b_k"]);
        let n = e.zeros_a.len().min(e.zeros_b.len() - 1);
        for k in 0..n {
            table.push(vec![(k as u64 + 1).into(), e.zeros_a[k].into(), e.zeros_b[k + 1].into()]);
        }
        table
    };
    table.notes.push(format!("zeros located on [0, {}]", e.x_max));
    table.notes.push(format!("identity residual: {:e}", e.identity_residual));
    table.notes.push(format!(
        "hermite-biehler: {} samples, {} inequality violations, {} diagonal violations, max |Im E(ix)|/|E| = {:e}",
        hb.samples,
        hb.hb_violations.len(),
        hb.diagonal_violations.len(),
        hb.max_imag_e_ix
    ));
    Ok((table, None))
}
