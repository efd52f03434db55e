//! Zero-ordinate datasets and the empirical pair statistics N(T), N(T,β),
//! weighted pair sums and F(α,T).
//!
//! Every routine that sums over pairs has a `_rows` variant restricted to a
//! range of first indices so callers can split the O(n²) work across threads
//! and add the partial results.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Range;

use crate::beurling::BandlimitedFunction;
use crate::pcbounds::{bound_row, conjecture_integral};
use crate::{Error, Result};

/// Ascending zero ordinates γ > 0, repeated according to multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroDataset {
    ordinates: Vec<f64>,
    pub source: String,
    pub t_max: f64,
}

impl ZeroDataset {
    /// Validates ascending, positive, finite ordinates.
    pub fn new(ordinates: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        if ordinates.is_empty() {
            return Err(Error::Parse { line: 0, msg: "no ordinates" });
        }
        for (i, &g) in ordinates.iter().enumerate() {
            if !(g > 0.0) || !g.is_finite() {
                return Err(Error::Parse { line: i + 1, msg: "ordinate must be positive and finite" });
            }
            if i > 0 && g < ordinates[i - 1] {
                return Err(Error::Monotonicity { line: i + 1 });
            }
        }
        let t_max = *ordinates.last().unwrap_or(&0.0);
        Ok(ZeroDataset { ordinates, source: source.into(), t_max })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// N(T): ordinates in (0, T].
    pub fn n_of_t(&self, t: f64) -> usize {
        self.ordinates.partition_point(|&g| g <= t)
    }

    /// The ordinates in (0, T], after checking T.
    pub fn window(&self, t: f64) -> Result<&[f64]> {
        if !(t > 1.0) {
            return Err(Error::Domain("T must exceed 1"));
        }
        if t > self.t_max {
            return Err(Error::Domain("T exceeds the largest ordinate in the dataset"));
        }
        Ok(&self.ordinates[..self.n_of_t(t)])
    }
}

/// Parses one ordinate per line; blank lines and `#` comments are skipped.
/// Line numbers in errors are 1-based.
pub fn parse_zeros(text: &str, source: impl Into<String>) -> Result<ZeroDataset> {
    let mut ordinates = Vec::new();
    let mut prev = 0.0;
    let mut lines = 0;
    for (i, raw) in text.lines().enumerate() {
        lines = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let g: f64 = body.parse().map_err(|_| Error::Parse { line: i + 1, msg: "not a number" })?;
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::Parse { line: i + 1, msg: "ordinate must be positive and finite" });
        }
        if g < prev {
            return Err(Error::Monotonicity { line: i + 1 });
        }
        prev = g;
        ordinates.push(g);
    }
    if ordinates.is_empty() {
        return Err(Error::Parse { line: lines.max(1), msg: "no ordinates" });
    }
    ZeroDataset::new(ordinates, source)
}

/// 2πβ/log T.
pub fn pair_window(t: f64, beta: f64) -> f64 {
    2.0 * PI * beta / libm::log(t)
}

/// w(x) = 4/(4 + x²).
pub fn weight(x: f64) -> f64 {
    4.0 / (4.0 + x * x)
}

/// N(T,β): pairs γ < γ′ ≤ T with γ′ − γ ≤ 2πβ/log T, by a two-pointer sweep.
pub fn count_pairs(ds: &ZeroDataset, t: f64, beta: f64) -> Result<u64> {
    if !(beta >= 0.0) {
        return Err(Error::Domain("beta must be nonnegative"));
    }
    let g = ds.window(t)?;
    let h = pair_window(t, beta);
    let mut count = 0u64;
    let (mut lo, mut hi) = (0usize, 0usize);
    for (i, &gi) in g.iter().enumerate() {
        // lo: first index with g[lo] − gi > 0; hi: first with g[hi] − gi > h.
        lo = lo.max(i);
        while lo < g.len() && g[lo] - gi <= 0.0 {
            lo += 1;
        }
        hi = hi.max(lo);
        while hi < g.len() && g[hi] - gi <= h {
            hi += 1;
        }
        count += (hi - lo) as u64;
    }
    Ok(count)
}

/// The O(n²) definition of N(T,β), as an oracle for [`count_pairs`].
pub fn count_pairs_bruteforce(ds: &ZeroDataset, t: f64, beta: f64) -> Result<u64> {
    let g = ds.window(t)?;
    let h = pair_window(t, beta);
    let mut count = 0u64;
    for &a in g {
        for &b in g {
            let d = b - a;
            if d > 0.0 && d <= h {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Σ_{γ,γ′ ≤ T} R((γ′ − γ) log T/2π) w(γ′ − γ), diagonal included.
pub fn weighted_pair_sum(ds: &ZeroDataset, t: f64, r: &BandlimitedFunction) -> Result<f64> {
    let n = ds.window(t)?.len();
    weighted_pair_sum_rows(ds, t, r, 0..n)
}

/// The terms of [`weighted_pair_sum`] whose first index lies in `rows`.
pub fn weighted_pair_sum_rows(ds: &ZeroDataset, t: f64, r: &BandlimitedFunction, rows: Range<usize>) -> Result<f64> {
    let g = ds.window(t)?;
    let scale = libm::log(t) / (2.0 * PI);
    let mut total = 0.0;
    for &a in &g[rows] {
        let mut row = 0.0;
        for &b in g {
            let d = b - a;
            row += r.time_eval(d * scale) * weight(d);
        }
        total += row;
    }
    Ok(total)
}

/// F(α,T) = (2π/(T log T)) Σ_{γ,γ′ ≤ T} T^{iα(γ′−γ)} w(γ′ − γ).
pub fn empirical_f(ds: &ZeroDataset, t: f64, alpha: f64) -> Result<f64> {
    let n = ds.window(t)?.len();
    Ok(f_normalisation(t) * empirical_f_raw_rows(ds, t, alpha, 0..n)?)
}

/// 2π/(T log T).
pub fn f_normalisation(t: f64) -> f64 {
    2.0 * PI / (t * libm::log(t))
}

/// Unnormalised F-sum over first indices in `rows`, pairing each γᵢ with
/// itself once and with every γⱼ, j > i, twice (the cosine is even).
pub fn empirical_f_raw_rows(ds: &ZeroDataset, t: f64, alpha: f64, rows: Range<usize>) -> Result<f64> {
    let g = ds.window(t)?;
    let k = alpha * libm::log(t);
    let mut total = 0.0;
    for i in rows {
        let a = g[i];
        let mut row = 0.0;
        for &b in &g[i + 1..] {
            let d = b - a;
            row += libm::cos(k * d) * weight(d);
        }
        total += 1.0 + 2.0 * row;
    }
    Ok(total)
}

/// Montgomery's asymptotic T^{−2|α|} log T + |α| for |α| ≤ 1, 1 beyond.
pub fn montgomery_f(t: f64, alpha: f64) -> f64 {
    let a = alpha.abs();
    if a >= 1.0 {
        1.0
    } else {
        libm::pow(t, -2.0 * a) * libm::log(t) + a
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmpiricalRow {
    pub beta: f64,
    pub n_t_beta: u64,
    /// N(T,β)/N(T).
    pub ratio: f64,
    pub conjecture: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn empirical_row(ds: &ZeroDataset, t: f64, beta: f64, nstar_ratio: f64) -> Result<EmpiricalRow> {
    let n_t = ds.window(t)?.len();
    let n_t_beta = count_pairs(ds, t, beta)?;
    let bounds = bound_row(beta, nstar_ratio)?;
    Ok(EmpiricalRow {
        beta,
        n_t_beta,
        ratio: n_t_beta as f64 / n_t as f64,
        conjecture: conjecture_integral(beta)?,
        lower: bounds.lower_adjusted,
        upper: bounds.upper_adjusted,
    })
}

pub fn empirical_table(ds: &ZeroDataset, t: f64, betas: &[f64], nstar_ratio: f64) -> Result<Vec<EmpiricalRow>> {
    betas.iter().map(|&b| empirical_row(ds, t, b, nstar_ratio)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parse_basic() {
        let ds = parse_zeros("# header\n14.134725\n21.022040\n\n25.010858 # third\n", "t").unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.t_max, 25.010858);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_zeros("", "t"), Err(Error::Parse { line: 1, msg: "no ordinates" }));
        assert_eq!(parse_zeros("# only\n", "t"), Err(Error::Parse { line: 1, msg: "no ordinates" }));
        assert!(matches!(parse_zeros("1\nx\n", "t"), Err(Error::Parse { line: 2, .. })));
        assert_eq!(parse_zeros("2\n1\n", "t"), Err(Error::Monotonicity { line: 2 }));
        assert!(parse_zeros("1\n1\n", "t").is_ok());
    }

    #[test]
    fn two_point_pair() {
        let ds = ZeroDataset::new(vec![1.0, 2.0], "s").unwrap();
        // window 2πβ/log 2 ≥ 1 ⇔ β ≥ log 2/(2π)
        assert_eq!(count_pairs(&ds, 2.0, 0.2).unwrap(), 1);
        assert_eq!(count_pairs(&ds, 2.0, 0.1).unwrap(), 0);
        assert_eq!(count_pairs(&ds, 2.0, 0.0).unwrap(), 0);
        assert!(count_pairs(&ds, 3.0, 0.2).is_err());
    }

    #[test]
    fn duplicates_are_not_pairs() {
        let ds = ZeroDataset::new(vec![1.5, 2.0, 2.0, 2.1, 5.0], "s").unwrap();
        for &b in &[0.05, 0.3, 1.0, 3.0] {
            assert_eq!(count_pairs(&ds, 5.0, b).unwrap(), count_pairs_bruteforce(&ds, 5.0, b).unwrap());
        }
    }
}
