use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Pair-correlation bound table with the conjecture column.
    Bounds,
    /// Two-delta values and the U − L cap.
    Twodelta,
    /// Small-gap thresholds or the bound profile.
    Gaps,
    /// Empirical pair counts (and F(α)) from a zero-ordinate file.
    Empirical,
    /// Hermite–Biehler diagnostics and tilted-space Λ values.
    Debranges,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bounds => "bounds",
            Command::Twodelta => "twodelta",
            Command::Gaps => "gaps",
            Command::Empirical => "empirical",
            Command::Debranges => "debranges",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
    Table,
}

/// `a:b:step` or a single value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Range {
    pub fn single(v: f64) -> Self {
        Range { min: v, max: v, step: 1.0 }
    }

    /// Grid points min, min+step, … ≤ max; values are rounded to 12
    /// decimals so that e.g. 0.1 + 2·0.1 prints as 0.3.
    pub fn grid(&self) -> Vec<f64> {
        if self.min == self.max {
            return vec![self.min];
        }
        let n = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| ((self.min + i as f64 * self.step) * 1e12).round() / 1e12).collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let r = match parts.as_slice() {
            [v] => Range::single(num(v)?),
            [a, b, st] => Range { min: num(a)?, max: num(b)?, step: num(st)? },
            _ => return Err(format!("expected a:b:step or a single value, got {s:?}")),
        };
        if !(r.min.is_finite() && r.max.is_finite() && r.step.is_finite()) {
            return Err("range values must be finite".into());
        }
        if parts.len() == 3 && !(r.step > 0.0 && r.min < r.max) {
            return Err("range needs step > 0 and min < max".into());
        }
        Ok(r)
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.min == self.max {
            write!(f, "{}", self.min)
        } else {
            write!(f, "{}:{}:{}", self.min, self.max, self.step)
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "pcx", version, about = "Pair-correlation bounds, kernels and zero statistics")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// β grid `a:b:step` or a single β.
    #[arg(long)]
    pub beta: Option<Range>,
    /// Fourier support Δ of the majorant/minorant pair.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// ε for the Δ = 2 − ε columns.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// N*(T)/N(T) ratio in [1, 4/3].
    #[arg(long, default_value_t = 1.0)]
    pub nstar: f64,
    /// Zero-ordinate file, one ordinate per line.
    #[arg(long)]
    pub zeros: Option<PathBuf>,
    /// Height T for empirical statistics (default: largest ordinate).
    #[arg(long)]
    pub height: Option<f64>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Root-finding tolerance for threshold searches.
    #[arg(long)]
    pub tol: Option<f64>,
    /// twodelta: report the one-delta constant instead.
    #[arg(long)]
    pub one_delta: bool,
    /// gaps: emit the β-profile of the bound instead of the thresholds.
    #[arg(long)]
    pub profile: bool,
    /// empirical: emit F(α) samples on this α grid instead of pair counts.
    #[arg(long)]
    pub falpha: Option<Range>,
    /// Also write a gnuplot script for the emitted data (requires --out).
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,
}

pub const DEFAULT_TOL: f64 = 1e-9;

impl Cli {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        if !(self.delta >= 1.0 && self.delta.is_finite()) {
            return bad("--delta must be ≥ 1");
        }
        if !(1.0..=4.0 / 3.0 + 1e-12).contains(&self.nstar) {
            return bad("--nstar must lie in [1, 4/3]");
        }
        if let Some(e) = self.epsilon {
            if !(e > 0.0 && e < 1.0) {
                return bad("--epsilon must lie in (0, 1)");
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t < 1e-2) {
                return bad("--tol must lie in (0, 0.01)");
            }
        }
        if let Some(h) = self.height {
            if !(h > 1.0 && h.is_finite()) {
                return bad("--height must exceed 1");
            }
        }
        if self.gnuplot.is_some() && self.out.is_none() {
            return bad("--gnuplot needs --out for the data file it plots");
        }
        Ok(())
    }

    pub fn tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }

    /// Deterministic echo of everything that affects the numbers; output
    /// paths are left out so runs written to different files compare equal.
    pub fn echo(&self) -> String {
        let opt = |o: Option<String>| o.unwrap_or_else(|| "-".into());
        format!(
            "beta={} delta={} epsilon={} nstar={} zeros={} height={} tol={} one_delta={} profile={} falpha={} format={:?}",
            opt(self.beta.map(|r| r.to_string())),
            self.delta,
            opt(self.epsilon.map(|e| e.to_string())),
            self.nstar,
            opt(self.zeros.as_ref().map(|p| p.display().to_string())),
            opt(self.height.map(|h| h.to_string())),
            opt(self.tol.map(|t| t.to_string())),
            self.one_delta,
            self.profile,
            opt(self.falpha.map(|r| r.to_string())),
            self.format,
        )
        .to_lowercase()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let r: Range = "0.1:3:0.01".parse().unwrap();
        let g = r.grid();
        assert_eq!(g.len(), 291);
        assert_eq!(g[0], 0.1);
        assert_eq!(g[290], 3.0);
        assert_eq!("0.5:2:0.1".parse::<Range>().unwrap().grid().len(), 16);
        assert_eq!("0.8163".parse::<Range>().unwrap().grid(), vec![0.8163]);
        assert!("1:0:0.1".parse::<Range>().is_err());
        assert!("0:1:0".parse::<Range>().is_err());
        assert!("0:1".parse::<Range>().is_err());
        assert!("x".parse::<Range>().is_err());
    }
}
