//! Upper bounds on the spectral radius from the two degree sequences, and
//! the threshold `B(e)` that separates twin-prime edge counts.
//!
//! For degree sequences `D` (of `X`) and `D'` (of `Y`), both nonincreasing,
//! and 1-based indices `s`, `t`:
//!
//! ```text
//! X_st = d_s d'_t + Σ_{i<s} (d_i - d_s) + Σ_{j<t} (d'_j - d'_t)
//! Y_st = Σ_{i<s} (d_i - d_s) · Σ_{j<t} (d'_j - d'_t)
//! φ_st = sqrt((X_st + sqrt(X_st² - 4 Y_st)) / 2)  >=  ρ(G)
//! ```
//!
//! On the canonical graph `G_D`, choosing a descent `s` and `t = d_s + 1`
//! collapses `X_st` to `e`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::spectral::ExactRadical;

/// Two floating values closer than this are treated as equal.
pub const EQUALITY_BAND: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub s: usize,
    pub t: usize,
    pub x: u64,
    pub y: u64,
    pub phi: f64,
}

impl BoundParams {
    fn new(s: usize, t: usize, x: u64, y: u64) -> Result<Self> {
        let disc = i128::from(x) * i128::from(x) - 4 * i128::from(y);
        if disc < 0 {
            return Err(Error::invalid(format!(
                "X^2 < 4Y (X={x}, Y={y}); degree sequences are not realizable together"
            )));
        }
        let phi = ((x as f64 + (disc as f64).sqrt()) / 2.0).sqrt();
        Ok(BoundParams { s, t, x, y, phi })
    }

    /// `φ` as an exact radical, when `X` is the edge count.
    pub fn as_radical(&self) -> Result<ExactRadical> {
        ExactRadical::from_defect(self.x, BigInt::from(self.y))
    }
}

fn excess(seq: &[usize], idx: usize) -> u64 {
    let pivot = seq[idx - 1];
    seq[..idx - 1].iter().map(|&d| (d - pivot) as u64).sum()
}

/// The bound `φ_st` for one `(s, t)` pair (1-based).
pub fn phi_bound(d: &Partition, dp: &Partition, s: usize, t: usize) -> Result<BoundParams> {
    if d.sum() != dp.sum() {
        return Err(Error::invalid(format!(
            "degree sequences sum to {} and {}; they must agree",
            d.sum(),
            dp.sum()
        )));
    }
    if !(1..=d.len()).contains(&s) || !(1..=dp.len()).contains(&t) {
        return Err(Error::invalid(format!(
            "need 1 <= s <= {} and 1 <= t <= {}, got s={s} t={t}",
            d.len(),
            dp.len()
        )));
    }
    let row = excess(d.parts(), s);
    let col = excess(dp.parts(), t);
    let x = (d.parts()[s - 1] * dp.parts()[t - 1]) as u64 + row + col;
    BoundParams::new(s, t, x, row * col)
}

/// The bound for `G_D` at a descent `s`, with `t = d_s + 1` and `X_st = e`.
pub fn simplified_bound(d: &Partition, s: usize) -> Result<BoundParams> {
    if !d.is_descent(s) {
        return Err(Error::DescentRequired { s, len: d.len() });
    }
    let parts = d.parts();
    let above = excess(parts, s);
    let rest: u64 = parts[s - 1..].iter().map(|&v| v as u64).sum();
    BoundParams::new(s, parts[s - 1] + 1, d.sum() as u64, above * rest)
}

/// Whether `Y_st` from [`simplified_bound`] equals both block-count forms
/// `(b12 + b13)(b21 + b31)` and `b11 + b12 b31 + b21 b13 + b13 b31`.
pub fn y_identity_check(d: &Partition, s: usize) -> Result<bool> {
    let blocks = d.block_counts(s)?;
    let y = simplified_bound(d, s)?.y;
    Ok(y == blocks.y_factored() as u64 && y == blocks.y_expanded() as u64)
}

/// Exact `ρ(G_D)` when `D` takes at most two distinct values (the bound is
/// tight there); `None` otherwise.
pub fn exact_for_partition(d: &Partition) -> Option<ExactRadical> {
    let e = d.sum() as u64;
    match d.distinct_values() {
        1 => ExactRadical::from_defect(e, BigInt::zero()).ok(),
        2 => {
            let s = d.descents().next()?;
            simplified_bound(d, s).ok()?.as_radical().ok()
        }
        _ => None,
    }
}

/// `B(e) = sqrt((e + sqrt(e² - 4(e - 1 - sqrt(e - 1)))) / 2)` for `e >= 1`.
pub fn twin_bound(e: u64) -> f64 {
    let e = e as f64;
    let inner = e - 1.0 - (e - 1.0).max(0.0).sqrt();
    ((e + (e * e - 4.0 * inner).sqrt()) / 2.0).sqrt()
}

/// Exact comparison of an [`ExactRadical`] with `B(e)` for its own `e`.
///
/// With `D = e² - R` and `A = 4(e-1) - D`, the radical exceeds `B(e)`
/// exactly when `A > 4 sqrt(e-1)`, decided on integers by squaring.
pub fn compare_with_twin_bound(r: &ExactRadical) -> Ordering {
    let e = BigInt::from(r.e());
    let em1: BigInt = &e - 1;
    let d: BigInt = &e * &e - BigInt::from(r.radicand().clone());
    let a: BigInt = BigInt::from(4) * &em1 - d;
    if a < BigInt::zero() {
        return Ordering::Less;
    }
    let lhs: BigUint = a.magnitude().pow(2);
    let rhs = BigUint::from(16u8) * em1.magnitude();
    lhs.cmp(&rhs)
}
