//! Certified signs of `f(d) = (p^d − 1) − log₂(d)·(p^{d/2} − 1) − 4d`.
//!
//! `f` bounds from below the number of points of GF(p^d) outside every
//! proper subfield, minus `4d`. Its sign is decided on exact rationals:
//! `log₂ d` is bracketed by dyadic rationals with [`LOG_BITS`] fractional
//! bits (comparing `d^{2^k}` with powers of two) and `p^{d/2}` by rationals
//! with [`SQRT_BITS`] fractional bits (integer square roots). A positive
//! lower bound certifies `f(d) > 0`; a non-positive upper bound certifies
//! `f(d) ≤ 0`.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::error::{Error, Result};

pub const LOG_BITS: u32 = 12;
pub const SQRT_BITS: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Positive,
    NonPositive,
    Uncertified,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Positive => "positive",
            Sign::NonPositive => "non-positive",
            Sign::Uncertified => "uncertified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FdRow {
    pub p: u64,
    pub d: u32,
    pub value: f64,
    pub sign: Sign,
}

/// `(lo, hi)` with `lo/2^k ≤ log₂ d ≤ hi/2^k`.
fn log2_bounds(d: u32, k: u32) -> (BigInt, BigInt) {
    let power = BigUint::from(d).pow(1u32 << k);
    let lo = power.bits() - 1;
    let exact = power == BigUint::from(1u8) << lo;
    let hi = if exact { lo } else { lo + 1 };
    (BigInt::from(lo), BigInt::from(hi))
}

/// `(lo, hi)` with `lo/2^m ≤ p^{d/2} ≤ hi/2^m`.
fn sqrt_bounds(p: u64, d: u32, m: u32) -> (BigInt, BigInt) {
    let scaled = BigUint::from(p).pow(d) << (2 * m);
    let lo = scaled.sqrt();
    let hi = if &lo * &lo == scaled { lo.clone() } else { &lo + 1u8 };
    (BigInt::from(lo), BigInt::from(hi))
}

/// Certified sign of `f(d)` for base `p`.
pub fn certify(p: u64, d: u32) -> Sign {
    let (k, m) = (LOG_BITS, SQRT_BITS);
    let base = BigInt::from(p).pow(d) - 1 - 4 * BigInt::from(d);
    let scale = BigInt::from(1u8) << (k + m);
    let one = BigInt::from(1u8) << m;
    let (log_lo, log_hi) = log2_bounds(d, k);
    let (root_lo, root_hi) = sqrt_bounds(p, d, m);
    // f ≥ base − log_hi·(root_hi − 1), scaled by 2^{k+m}
    let lower = &base * &scale - log_hi * (root_hi - &one);
    if lower > BigInt::from(0u8) {
        return Sign::Positive;
    }
    let upper = &base * &scale - log_lo * (root_lo - &one);
    if upper <= BigInt::from(0u8) {
        return Sign::NonPositive;
    }
    Sign::Uncertified
}

pub fn fd_value(p: u64, d: u32) -> f64 {
    let pd = (p as f64).powi(d as i32);
    (pd - 1.0) - (d as f64).log2() * ((p as f64).powf(d as f64 / 2.0) - 1.0) - 4.0 * d as f64
}

pub fn fd_scan(p: u64, ds: impl IntoIterator<Item = u32>) -> Result<Vec<FdRow>> {
    if p != 2 && p != 3 {
        return Err(Error::InvalidParameters(format!("f(d) is tabulated for p = 2 or 3, not {p}")));
    }
    ds.into_iter()
        .map(|d| {
            if d == 0 {
                return Err(Error::InvalidParameters("d must be at least 1".into()));
            }
            Ok(FdRow {
                p,
                d,
                value: fd_value(p, d),
                sign: certify(p, d),
            })
        })
        .collect()
}

/// CSV with header `d,f,sign`.
pub fn fd_csv(rows: &[FdRow]) -> String {
    let mut out = String::from("d,f,sign\n");
    for r in rows {
        let _ = writeln!(out, "{},{:.6},{}", r.d, r.value, r.sign.as_str());
    }
    out
}
