//! Spectral radius of a bipartite graph and closed forms for the named
//! families.
//!
//! For a biadjacency matrix `B` the adjacency spectrum is `±σ_i(B)`, so the
//! spectral radius is `sqrt(λ_max(B Bᵀ))`. We run power iteration on the
//! smaller of `B Bᵀ` and `Bᵀ B`, both symmetric and entrywise nonnegative.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 1_000_000;

/// Unit-norm Perron vectors of the two parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerronVector {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub rho: f64,
    /// `‖Mv − λv‖ / λ` at the last iterate, `M` the Gram matrix.
    pub residual: f64,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub perron: Option<PerronVector>,
}

pub fn spectral_radius(g: &BipartiteGraph, tol: f64) -> Result<SpectralResult> {
    power_iteration(g, tol, MAX_ITERATIONS, false)
}

/// Same as [`spectral_radius`] but also returns the Perron vectors.
pub fn spectral_radius_with_perron(g: &BipartiteGraph, tol: f64) -> Result<SpectralResult> {
    power_iteration(g, tol, MAX_ITERATIONS, true)
}

/// Power iteration with an explicit iteration cap.
pub fn power_iteration(g: &BipartiteGraph, tol: f64, max_iter: usize, want_perron: bool) -> Result<SpectralResult> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    let transposed = g.p() > g.q();
    let owned;
    let b = if transposed {
        owned = g.transpose();
        &owned
    } else {
        g
    };
    let n = b.p();
    let gram = gram_rows(b);

    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut w = vec![0.0; n];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        mat_vec(&gram, &v, &mut w);
        lambda = dot(&v, &w);
        if lambda <= 0.0 {
            // no edges
            lambda = 0.0;
            residual = 0.0;
            converged = true;
            break;
        }
        residual = w.iter().zip(&v).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt() / lambda;
        if residual <= tol {
            converged = true;
            break;
        }
        let norm = dot(&w, &w).sqrt();
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
    }
    let rho = lambda.sqrt();
    if !converged {
        return Err(Error::Convergence {
            best: rho,
            residual,
            iterations,
        });
    }

    let perron = want_perron.then(|| {
        let other = normalized(other_side(b, &v));
        let side = normalized(v);
        if transposed {
            PerronVector { x: other, y: side }
        } else {
            PerronVector { x: side, y: other }
        }
    });
    Ok(SpectralResult {
        rho,
        residual,
        iterations,
        perron,
    })
}

fn gram_rows(b: &BipartiteGraph) -> Vec<Vec<f64>> {
    let n = b.p();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in i..n {
            let c = b.common_row_neighbors(i, k) as f64;
            m[i][k] = c;
            m[k][i] = c;
        }
    }
    m
}

fn mat_vec(m: &[Vec<f64>], v: &[f64], out: &mut [f64]) {
    for (o, row) in out.iter_mut().zip(m) {
        *o = dot(row, v);
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `Bᵀ u` for the row-side vector `u`.
fn other_side(b: &BipartiteGraph, u: &[f64]) -> Vec<f64> {
    (0..b.q())
        .map(|j| (0..b.p()).filter(|&i| b.get(i, j)).map(|i| u[i]).sum())
        .collect()
}

fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let n = dot(&v, &v).sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    v
}

/// Indices sorted by nonincreasing entry; ties keep the smaller index first.
pub fn perron_order(entries: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..entries.len()).collect();
    idx.sort_by(|&a, &b| entries[b].total_cmp(&entries[a]).then(a.cmp(&b)));
    idx
}

/// The number `sqrt((e + sqrt(R)) / 2)` held exactly as the integer pair `(e, R)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "RadicalRepr", try_from = "RadicalRepr")]
pub struct ExactRadical {
    e: u64,
    radicand: BigUint,
}

#[derive(Serialize, Deserialize)]
struct RadicalRepr {
    e: u64,
    radicand: String,
    #[serde(default, skip_deserializing)]
    symbolic: String,
    #[serde(default, skip_deserializing)]
    value: f64,
}

impl From<ExactRadical> for RadicalRepr {
    fn from(r: ExactRadical) -> Self {
        RadicalRepr {
            e: r.e,
            radicand: r.radicand.to_string(),
            symbolic: r.to_string(),
            value: r.to_f64(),
        }
    }
}

impl TryFrom<RadicalRepr> for ExactRadical {
    type Error = Error;

    fn try_from(r: RadicalRepr) -> Result<Self> {
        let radicand = r
            .radicand
            .parse::<BigUint>()
            .map_err(|_| Error::Parse(format!("bad radicand {:?}", r.radicand)))?;
        ExactRadical::new(r.e, radicand)
    }
}

impl ExactRadical {
    pub fn new(e: u64, radicand: BigUint) -> Result<Self> {
        if radicand > BigUint::from(e).pow(2) {
            return Err(Error::invalid(format!("radicand {radicand} exceeds e^2 = {}", u128::from(e) * u128::from(e))));
        }
        Ok(ExactRadical { e, radicand })
    }

    /// `e^2 - 4y`, the shape every closed form here takes.
    pub(crate) fn from_defect(e: u64, y: BigInt) -> Result<Self> {
        let r = BigInt::from(e).pow(2) - BigInt::from(4) * y;
        let radicand = r
            .to_biguint()
            .ok_or_else(|| Error::invalid(format!("negative radicand for e={e}")))?;
        ExactRadical::new(e, radicand)
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    /// `(e^2 - R) / 4` when it is an integer.
    pub fn defect(&self) -> Option<BigUint> {
        let diff = BigUint::from(self.e).pow(2) - &self.radicand;
        let four = BigUint::from(4u8);
        (&diff % &four).is_zero().then(|| diff / four)
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.radicand.to_f64().unwrap_or(f64::INFINITY);
        ((self.e as f64 + r.sqrt()) / 2.0).sqrt()
    }
}

/// Ordered by value; only values with the same `e` are comparable exactly.
impl PartialOrd for ExactRadical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.e == other.e).then(|| self.radicand.cmp(&other.radicand))
    }
}

/// Splits `n` as `c^2 * r`. Square factors up to `10^6` are extracted by
/// trial division; a leftover perfect square is absorbed as well.
pub fn split_square(n: &BigUint) -> (BigUint, BigUint) {
    let mut rem = n.clone();
    let mut c = BigUint::from(1u8);
    if rem.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let mut d = 2u64;
    while d <= 1_000_000 {
        let sq = BigUint::from(d * d);
        if sq > rem {
            break;
        }
        while (&rem % &sq).is_zero() {
            rem /= &sq;
            c *= d;
        }
        d += 1;
    }
    let s = rem.sqrt();
    if &s * &s == rem {
        c *= s;
        rem = BigUint::from(1u8);
    }
    (c, rem)
}

fn surd(n: &BigUint) -> String {
    let (c, r) = split_square(n);
    let one = BigUint::from(1u8);
    if r == one || c.is_zero() {
        c.to_string()
    } else if c == one {
        format!("sqrt({r})")
    } else {
        format!("{c}*sqrt({r})")
    }
}

fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

impl fmt::Display for ExactRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = BigUint::from(self.e);
        let four = BigUint::from(4u8);
        if self.e.is_multiple_of(2) && (&self.radicand % &four).is_zero() {
            let half = &e / 2u8;
            let inner = &self.radicand / &four;
            match exact_sqrt(&inner) {
                Some(c) => write!(f, "sqrt({})", half + c),
                None => write!(f, "sqrt({half}+{})", surd(&inner)),
            }
        } else {
            match exact_sqrt(&self.radicand) {
                Some(c) if ((&e + &c) % 2u8).is_zero() => write!(f, "sqrt({})", (e + c) / 2u8),
                _ => write!(f, "sqrt(({e}+{})/2)", surd(&self.radicand)),
            }
        }
    }
}

fn to_u64(v: usize) -> u64 {
    v as u64
}

fn family_edges(p: usize, q: usize) -> Result<(u64, u64, u64)> {
    if !(2 <= p && p <= q) {
        return Err(Error::invalid(format!("closed forms need 2 <= p <= q, got p={p} q={q}")));
    }
    let (p, q) = (to_u64(p), to_u64(q));
    let pq = p
        .checked_mul(q)
        .filter(|&pq| pq < u64::MAX)
        .ok_or_else(|| Error::invalid("pq overflows"))?;
    Ok((p, q, pq))
}

/// `ρ(K^e_{p,q})`: `R = e^2 - 4k(q-1)(p-k)`, `k = pq - e < p`.
pub fn rho_k_sub_e(p: usize, q: usize, e: usize) -> Result<ExactRadical> {
    let (p, q, pq) = family_edges(p, q)?;
    let e = to_u64(e);
    let k = pq.checked_sub(e).filter(|&k| k < p).ok_or_else(|| {
        Error::invalid(format!("K^e needs 0 <= pq - e < p (p={p}, q={q}, e={e})"))
    })?;
    ExactRadical::from_defect(e, BigInt::from(k) * (q - 1) * (p - k))
}

/// `ρ(ᵉK_{p,q})`: `R = e^2 - 4k(p-1)(q-k)`, `k = pq - e < q`.
pub fn rho_e_sub_k(p: usize, q: usize, e: usize) -> Result<ExactRadical> {
    let (p, q, pq) = family_edges(p, q)?;
    let e = to_u64(e);
    let k = pq.checked_sub(e).filter(|&k| k < q).ok_or_else(|| {
        Error::invalid(format!("eK needs 0 <= pq - e < q (p={p}, q={q}, e={e})"))
    })?;
    ExactRadical::from_defect(e, BigInt::from(k) * (p - 1) * (q - k))
}

/// `ρ(K⁻_{p,q})`, `e = pq - 1`: `R = e^2 - 4(e - (p+q) + 2)`.
pub fn rho_k_minus(p: usize, q: usize) -> Result<ExactRadical> {
    let (p, q, pq) = family_edges(p, q)?;
    let e = pq - 1;
    ExactRadical::from_defect(e, BigInt::from(e) - BigInt::from(p + q) + 2)
}

/// `ρ(K⁺_{p,q})`, `e = pq + 1`: `R = e^2 - 4(e - 1 - q)`.
pub fn rho_k_plus(p: usize, q: usize) -> Result<ExactRadical> {
    let (_, q, pq) = family_edges(p, q)?;
    let e = pq + 1;
    ExactRadical::from_defect(e, BigInt::from(e) - 1 - BigInt::from(q))
}

/// `ρ(K_{p,q}) = sqrt(pq)` as an exact radical with `R = e^2`.
pub fn rho_complete(p: usize, q: usize) -> Result<ExactRadical> {
    let e = to_u64(p)
        .checked_mul(to_u64(q))
        .filter(|_| p >= 1 && q >= 1)
        .ok_or_else(|| Error::invalid(format!("bad complete graph K({p},{q})")))?;
    ExactRadical::from_defect(e, BigInt::zero())
}
