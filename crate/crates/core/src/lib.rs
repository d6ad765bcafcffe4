//! GF(2) permutation-module machinery for restriction problems of symmetric
//! and alternating groups.
//!
//! The crate is `no_std` with `alloc`. Everything is deterministic: the only
//! randomness (the irreducibility test) is driven by an explicit seed.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

use alloc::string::String;
use core::fmt;

pub mod classical;
pub mod field;
pub mod gf2;
pub mod modstruct;
pub mod orbits;
pub mod partitions;
pub mod permmod;
pub mod symgrp;

pub use gf2::{BitMatrix, BitVec, RowReducer, Subspace};
pub use partitions::{MullineuxSymbol, Partition};
pub use symgrp::Perm;

/// Errors raised by library operations.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    InvalidArgument(String),
    Parse(String),
    InvalidSymbol(String),
    AmbiguousSymbol(String),
    NotRegular { p: u32 },
    CapExceeded { cap: usize, reached: usize },
    LabelMismatch(String),
    IncompleteSimples { covered: usize, dim: usize },
    ClosureFailure(String),
    Inconclusive(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::InvalidSymbol(s) => write!(f, "invalid Mullineux symbol: {s}"),
            Error::AmbiguousSymbol(s) => write!(f, "ambiguous Mullineux symbol: {s}"),
            Error::NotRegular { p } => write!(f, "partition is not {p}-regular"),
            Error::CapExceeded { cap, reached } => write!(f, "cap {cap} exceeded (reached {reached})"),
            Error::LabelMismatch(s) => write!(f, "generator label mismatch: {s}"),
            Error::IncompleteSimples { covered, dim } => {
                write!(f, "simples do not exhaust the module: layers cover {covered} of {dim}")
            }
            Error::ClosureFailure(s) => write!(f, "generator closure failure: {s}"),
            Error::Inconclusive(s) => write!(f, "inconclusive: {s}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

/// Binomial coefficient, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Binomial coefficient with a signed top and bottom, zero when `k < 0` or `k > n`.
pub(crate) fn binom_i(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

pub(crate) fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}
