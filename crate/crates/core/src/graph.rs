//! Dense bipartite graphs stored as a biadjacency bit matrix.
//!
//! Rows are the `X` part (`x_1..x_p`), columns the `Y` part (`y_1..y_q`).
//! Every constructor here is deterministic so the same parameters always
//! produce the same matrix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    p: usize,
    q: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BipartiteGraph {
    /// Edgeless graph with part sizes `p` and `q`.
    pub fn empty(p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::invalid(format!("part sizes must be positive, got p={p} q={q}")));
        }
        let words = q.div_ceil(WORD);
        Ok(BipartiteGraph {
            p,
            q,
            words,
            bits: vec![0; p * words],
        })
    }

    pub fn from_fn(p: usize, q: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Self::empty(p, q)?;
        for i in 0..p {
            for j in 0..q {
                if edge(i, j) {
                    g.set(i, j, true);
                }
            }
        }
        Ok(g)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Whether `x_i y_j` is an edge (0-based).
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.p && j < self.q, "({i},{j}) outside {}x{}", self.p, self.q);
        self.bits[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, on: bool) {
        let w = &mut self.bits[i * self.words + j / WORD];
        let mask = 1u64 << (j % WORD);
        if on {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Number of common neighbours of `x_i` and `x_k`, i.e. entry `(i,k)` of `B Bᵀ`.
    pub fn common_row_neighbors(&self, i: usize, k: usize) -> usize {
        self.row_words(i)
            .iter()
            .zip(self.row_words(k))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Degrees of `x_1..x_p` in vertex order.
    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.p)
            .map(|i| self.row_words(i).iter().map(|w| w.count_ones() as usize).sum())
            .collect()
    }

    /// Degrees of `y_1..y_q` in vertex order.
    pub fn col_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.q];
        for i in 0..self.p {
            for (j, d) in deg.iter_mut().enumerate() {
                if self.get(i, j) {
                    *d += 1;
                }
            }
        }
        deg
    }

    pub fn has_isolated_vertices(&self) -> bool {
        self.row_degrees().contains(&0) || self.col_degrees().contains(&0)
    }

    /// Every `x` adjacent to every `y`.
    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.p * self.q
    }

    pub fn transpose(&self) -> BipartiteGraph {
        let mut t = Self::empty(self.q, self.p).expect("sizes already validated");
        for i in 0..self.p {
            for j in 0..self.q {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Sorted (nonincreasing) degree sequences of the `X` and `Y` parts.
    pub fn degree_sequences(&self) -> Result<(Partition, Partition)> {
        if self.has_isolated_vertices() {
            return Err(Error::invalid("graph has an isolated vertex; degree sequences must be positive"));
        }
        Ok((
            Partition::from_unsorted(self.row_degrees())?,
            Partition::from_unsorted(self.col_degrees())?,
        ))
    }

    /// All row degrees agree and all column degrees agree.
    pub fn is_biregular(&self) -> bool {
        let all_eq = |v: &[usize]| v.windows(2).all(|w| w[0] == w[1]);
        all_eq(&self.row_degrees()) && all_eq(&self.col_degrees())
    }

    /// Moves the edge `x_k y_j` to `x_k y_i` (0-based indices).
    ///
    /// When `y_i` precedes `y_j` in an ordering of `Y` by nonincreasing
    /// Perron-vector entries, the result has spectral radius at least that
    /// of `self`.
    pub fn edge_shift(&self, k: usize, i: usize, j: usize) -> Result<BipartiteGraph> {
        if k >= self.p || i >= self.q || j >= self.q {
            return Err(Error::invalid(format!(
                "edge shift indices (k={k}, i={i}, j={j}) out of range for {}x{}",
                self.p, self.q
            )));
        }
        if i == j {
            return Err(Error::invalid("edge shift needs two distinct Y-vertices"));
        }
        if !self.get(k, j) || self.get(k, i) {
            return Err(Error::invalid(format!(
                "edge shift needs x{k}y{j} present and x{k}y{i} absent"
            )));
        }
        let mut g = self.clone();
        g.set(k, j, false);
        g.set(k, i, true);
        Ok(g)
    }

    /// Block-diagonal union of two graphs.
    pub fn disjoint_union(&self, other: &BipartiteGraph) -> BipartiteGraph {
        Self::from_fn(self.p + other.p, self.q + other.q, |i, j| {
            match (i < self.p, j < self.q) {
                (true, true) => self.get(i, j),
                (false, false) => other.get(i - self.p, j - self.q),
                _ => false,
            }
        })
        .expect("sizes already validated")
    }

    /// Reads the text format: a `p q` header then `p` lines of `q` characters from `{0,1}`.
    pub fn read_file(path: impl AsRef<std::path::Path>) -> Result<BipartiteGraph> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        text.parse()
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartiteGraph {{\n{self}}}")
    }
}

/// Serializes in the text graph format.
impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.p, self.q)?;
        for i in 0..self.p {
            for j in 0..self.q {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for BipartiteGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim_end);
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [p, q] = dims[..] else {
            return Err(Error::Parse(format!("header must be `p q`, got {header:?}")));
        };
        let mut g = BipartiteGraph::empty(p, q).map_err(|e| Error::Parse(e.to_string()))?;
        for i in 0..p {
            let row = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {p} rows, found {i}")))?;
            if row.len() != q {
                return Err(Error::Parse(format!(
                    "row {} has {} characters, expected {q}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, c) in row.chars().enumerate() {
                match c {
                    '1' => g.set(i, j, true),
                    '0' => {}
                    other => {
                        return Err(Error::Parse(format!("row {}: unexpected character {other:?}", i + 1)))
                    }
                }
            }
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse(format!("more than {p} rows")));
        }
        Ok(g)
    }
}

/// `G_D`: row `i` is adjacent to the first `d_i` columns.
pub fn from_partition(d: &Partition) -> BipartiteGraph {
    let parts = d.parts();
    BipartiteGraph::from_fn(d.len(), d.largest(), |i, j| j < parts[i]).expect("partition is nonempty")
}

fn check_family_range(name: &str, p: usize, q: usize) -> Result<()> {
    if 2 <= p && p <= q {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} needs 2 <= p <= q, got p={p} q={q}")))
    }
}

/// `K_{p,q}`.
pub fn complete(p: usize, q: usize) -> Result<BipartiteGraph> {
    BipartiteGraph::from_fn(p, q, |_, _| true)
}

/// `K_{p,q}` with the `(p,q)` corner edge removed.
pub fn k_minus(p: usize, q: usize) -> Result<BipartiteGraph> {
    check_family_range("K-", p, q)?;
    BipartiteGraph::from_fn(p, q, |i, j| !(i == p - 1 && j == q - 1))
}

/// `K_{p,q}` plus a new `Y`-vertex joined to `x_1`; part sizes `(p, q+1)`.
pub fn k_plus(p: usize, q: usize) -> Result<BipartiteGraph> {
    check_family_range("K+", p, q)?;
    BipartiteGraph::from_fn(p, q + 1, |i, j| j < q || i == 0)
}

fn deletions(p: usize, q: usize, e: usize, bound: usize, name: &str) -> Result<usize> {
    check_family_range(name, p, q)?;
    let k = (p * q)
        .checked_sub(e)
        .ok_or_else(|| Error::invalid(format!("{name}: e={e} exceeds pq={}", p * q)))?;
    if k >= bound {
        return Err(Error::invalid(format!("{name}: k = pq - e = {k} must be < {bound}")));
    }
    Ok(k)
}

/// `K^e_{p,q}`: `k = pq - e < p` edges deleted at `y_q`.
pub fn k_sub_e(p: usize, q: usize, e: usize) -> Result<BipartiteGraph> {
    let k = deletions(p, q, e, p, "K^e")?;
    BipartiteGraph::from_fn(p, q, |i, j| !(j == q - 1 && i >= p - k))
}

/// `ᵉK_{p,q}`: `k = pq - e < q` edges deleted at `x_p`.
pub fn e_sub_k(p: usize, q: usize, e: usize) -> Result<BipartiteGraph> {
    let k = deletions(p, q, e, q, "eK")?;
    BipartiteGraph::from_fn(p, q, |i, j| !(i == p - 1 && j >= q - k))
}

/// `H + H'`: disjoint union plus every edge in `X×Y'` and `X'×Y`.
pub fn bipartite_sum(h: &BipartiteGraph, h2: &BipartiteGraph) -> BipartiteGraph {
    BipartiteGraph::from_fn(h.p + h2.p, h.q + h2.q, |i, j| match (i < h.p, j < h.q) {
        (true, true) => h.get(i, j),
        (false, false) => h2.get(i - h.p, j - h.q),
        _ => true,
    })
    .expect("sizes already validated")
}

/// A biregular graph with part sizes `e/a` and `e/b`, `X`-degree `a` and
/// `Y`-degree `b`, laid out cyclically.
pub fn cyclic_biregular(e: usize, a: usize, b: usize) -> Result<BipartiteGraph> {
    if a == 0 || b == 0 || !e.is_multiple_of(a) || !e.is_multiple_of(b) {
        return Err(Error::invalid(format!("degrees a={a}, b={b} must divide e={e}")));
    }
    let (p, q) = (e / a, e / b);
    if a > q {
        return Err(Error::invalid(format!("X-degree {a} exceeds |Y| = {q}")));
    }
    BipartiteGraph::from_fn(p, q, |i, j| (j + q - (i * a) % q) % q < a)
}

/// A named graph family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Complete { p: usize, q: usize },
    KMinus { p: usize, q: usize },
    KPlus { p: usize, q: usize },
    KSubE { p: usize, q: usize, e: usize },
    ESubK { p: usize, q: usize, e: usize },
    FromPartition { partition: Partition },
}

impl Family {
    pub fn build(&self) -> Result<BipartiteGraph> {
        match *self {
            Family::Complete { p, q } => complete(p, q),
            Family::KMinus { p, q } => k_minus(p, q),
            Family::KPlus { p, q } => k_plus(p, q),
            Family::KSubE { p, q, e } => k_sub_e(p, q, e),
            Family::ESubK { p, q, e } => e_sub_k(p, q, e),
            Family::FromPartition { ref partition } => Ok(from_partition(partition)),
        }
    }

    pub fn edge_count(&self) -> usize {
        match *self {
            Family::Complete { p, q } => p * q,
            Family::KMinus { p, q } => p * q - 1,
            Family::KPlus { p, q } => p * q + 1,
            Family::KSubE { e, .. } | Family::ESubK { e, .. } => e,
            Family::FromPartition { ref partition } => partition.sum(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete { p, q } => write!(f, "K({p},{q})"),
            Family::KMinus { p, q } => write!(f, "K-({p},{q})"),
            Family::KPlus { p, q } => write!(f, "K+({p},{q})"),
            Family::KSubE { p, q, e } => write!(f, "K^{e}({p},{q})"),
            Family::ESubK { p, q, e } => write!(f, "{e}^K({p},{q})"),
            Family::FromPartition { partition } => write!(f, "G[{partition}]"),
        }
    }
}
