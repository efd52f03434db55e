//! Extremal band-limited majorants and minorants under the pair-correlation
//! measure `dμ = {1 − (sin πx/πx)²} dx`, the reproducing kernel of the
//! associated Paley–Wiener space, its de Branges structure, and the bounds
//! they imply for the pair-correlation counting function of zeta zeros.
//!
//! The crate is `no_std` (with `alloc`); file handling and the command-line
//! front end live in the `pcx` crate.

#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;

pub mod beurling;
pub mod debranges;
pub mod gaps;
pub mod kernel;
pub mod numerics;
pub mod pcbounds;
pub mod zerodata;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Sign selector for majorant (`Plus`) / minorant (`Minus`) quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}
