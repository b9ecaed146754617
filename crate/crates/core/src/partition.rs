//! Integer partitions, conjugates and Ferrers-diagram block counts.
//!
//! A [`Partition`] is a nonincreasing sequence of positive integers
//! `d_1 >= d_2 >= ... >= d_p`. Its Ferrers diagram is the left-justified
//! array with `d_i` ones in row `i`; that diagram is exactly the
//! biadjacency matrix of the canonical graph built in [`crate::graph`].
//!
//! Row indices `s` accepted by [`Partition::block_counts`] are 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonincreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    sum: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("a partition needs at least one part"));
        }
        if let Some(pos) = parts.iter().position(|&d| d == 0) {
            return Err(Error::invalid(format!("part {} is zero; parts must be positive", pos + 1)));
        }
        if let Some(pos) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "parts must be nonincreasing (d_{} = {} < d_{} = {})",
                pos + 1,
                parts[pos],
                pos + 2,
                parts[pos + 1]
            )));
        }
        let sum = parts.iter().sum();
        Ok(Partition { parts, sum })
    }

    /// Sorts the given positive integers into nonincreasing order first.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        let sum = parts.iter().sum();
        Partition { parts, sum }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts; the edge count of the associated graph.
    pub fn sum(&self) -> usize {
        self.sum
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    pub fn smallest(&self) -> usize {
        self.parts[self.parts.len() - 1]
    }

    /// `d*_j = |{i : d_i >= j}|` for `j = 1..=d_1`.
    pub fn conjugate(&self) -> Partition {
        let mut conj = vec![0usize; self.largest()];
        for &d in &self.parts {
            for c in conj.iter_mut().take(d) {
                *c += 1;
            }
        }
        Partition::from_parts_unchecked(conj)
    }

    /// All parts equal, i.e. the Ferrers diagram is a full rectangle.
    pub fn is_rectangular(&self) -> bool {
        self.largest() == self.smallest()
    }

    pub fn distinct_values(&self) -> usize {
        1 + self.parts.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// 1-based indices `s` with `d_(s-1) > d_s`.
    pub fn descents(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 2)
    }

    pub fn is_descent(&self, s: usize) -> bool {
        s >= 2 && s <= self.len() && self.parts[s - 2] > self.parts[s - 1]
    }

    /// Ones of the Ferrers diagram counted in the 3x3 block split at row `s`
    /// and column `t = d_s + 1` (both 1-based).
    pub fn block_counts(&self, s: usize) -> Result<BlockCounts> {
        if !self.is_descent(s) {
            return Err(Error::DescentRequired { s, len: self.len() });
        }
        let ds = self.parts[s - 1];
        let above = &self.parts[..s - 1];
        let below = &self.parts[s..];
        let b11 = (s - 1) * ds;
        let b12 = s - 1;
        let b13 = above.iter().map(|&d| d - ds - 1).sum();
        let b21 = ds;
        let b31 = below.iter().sum();
        Ok(BlockCounts {
            b: [[b11, b12, b13], [b21, 0, 0], [b31, 0, 0]],
            s,
            t: ds + 1,
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition entry {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Counts of ones in the nine blocks of a Ferrers diagram cut by rows
/// `(s-1, 1, p-s)` and columns `(t-1, 1, q-t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCounts {
    /// `b[i][j]` is the count for block `(i+1, j+1)`.
    pub b: [[usize; 3]; 3],
    pub s: usize,
    pub t: usize,
}

impl BlockCounts {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.b[i - 1][j - 1]
    }

    pub fn total(&self) -> usize {
        self.b.iter().flatten().sum()
    }

    /// `(b12 + b13)(b21 + b31)`.
    pub fn y_factored(&self) -> usize {
        (self.get(1, 2) + self.get(1, 3)) * (self.get(2, 1) + self.get(3, 1))
    }

    /// `b11 + b12*b31 + b21*b13 + b13*b31`.
    pub fn y_expanded(&self) -> usize {
        let [[b11, b12, b13], [b21, _, _], [b31, _, _]] = self.b;
        b11 + b12 * b31 + b21 * b13 + b13 * b31
    }
}

/// Partitions in reverse-lexicographic order (largest first part first).
///
/// Built either over all partitions of `e` or over the sub-stream sharing a
/// fixed first part; the latter lets callers fan the enumeration out by
/// prefix.
#[derive(Clone, Debug)]
pub struct Partitions {
    current: Option<Vec<usize>>,
    pin_first: bool,
}

impl Partitions {
    /// Every partition of `e` whose largest part equals `first`.
    pub fn with_first_part(e: usize, first: usize) -> Result<Self> {
        if e == 0 {
            return Err(Error::invalid("cannot enumerate partitions of 0"));
        }
        if first == 0 || first > e {
            return Err(Error::invalid(format!("first part {first} out of range 1..={e}")));
        }
        let mut start = vec![first];
        greedy_fill(&mut start, e - first, first);
        Ok(Partitions {
            current: Some(start),
            pin_first: true,
        })
    }
}

fn greedy_fill(parts: &mut Vec<usize>, mut rem: usize, cap: usize) {
    while rem > 0 {
        let x = rem.min(cap);
        parts.push(x);
        rem -= x;
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        if let Some(k) = next.iter().rposition(|&d| d > 1) {
            if !(self.pin_first && k == 0) {
                let rem = next.len() - k;
                next[k] -= 1;
                let cap = next[k];
                next.truncate(k + 1);
                greedy_fill(&mut next, rem, cap);
                self.current = Some(next);
            }
        }
        Some(Partition::from_parts_unchecked(cur))
    }
}

/// All partitions of `e`, each exactly once, in reverse-lexicographic order.
pub fn enumerate_partitions(e: usize) -> Result<Partitions> {
    if e == 0 {
        return Err(Error::invalid("cannot enumerate partitions of 0"));
    }
    Ok(Partitions {
        current: Some(vec![e]),
        pin_first: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[4, 2, 2, 1, 1]).conjugate(), p(&[5, 3, 1, 1]));
        assert_eq!(p(&[7]).conjugate(), p(&[1; 7]));
        assert_eq!(p(&[3, 3]).conjugate(), p(&[2, 2, 2]));
        assert_eq!(p(&[1]).conjugate(), p(&[1]));
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!("4,x,1".parse::<Partition>().is_err());
    }

    #[test]
    fn parse_and_display() {
        let d: Partition = "4, 2,2,1,1".parse().unwrap();
        assert_eq!(d.to_string(), "4,2,2,1,1");
        assert_eq!(d.sum(), 10);
        assert_eq!(d.len(), 5);
    }

    #[test]
    fn rectangular() {
        assert!(p(&[3, 3, 3]).is_rectangular());
        assert!(!p(&[4, 2, 2, 1, 1]).is_rectangular());
        assert!(p(&[5]).is_rectangular());
    }

    #[test]
    fn small_enumeration_counts() {
        assert_eq!(enumerate_partitions(4).unwrap().count(), 5);
        assert_eq!(enumerate_partitions(6).unwrap().count(), 11);
        assert!(enumerate_partitions(0).is_err());
    }

    #[test]
    fn enumeration_order_is_reverse_lex() {
        let all: Vec<_> = enumerate_partitions(5).unwrap().map(|d| d.to_string()).collect();
        assert_eq!(all, ["5", "4,1", "3,2", "3,1,1", "2,2,1", "2,1,1,1", "1,1,1,1,1"]);
    }

    #[test]
    fn prefix_streams_cover_everything() {
        for e in 1..=15 {
            let whole: Vec<_> = enumerate_partitions(e).unwrap().collect();
            let split: Vec<_> = (1..=e)
                .rev()
                .flat_map(|m| Partitions::with_first_part(e, m).unwrap())
                .collect();
            assert_eq!(whole, split);
        }
    }

    #[test]
    fn descents_are_one_based() {
        let d = p(&[4, 2, 2, 1, 1]);
        assert_eq!(d.descents().collect::<Vec<_>>(), vec![2, 4]);
        assert!(p(&[3, 3]).descents().next().is_none());
    }

    /// Counts ones of the Ferrers diagram block by block.
    fn blocks_by_counting(d: &Partition, s: usize) -> [[usize; 3]; 3] {
        let t = d.parts()[s - 1] + 1;
        let q = d.largest();
        let band = |idx: usize, cut: usize| {
            if idx < cut {
                0
            } else if idx == cut {
                1
            } else {
                2
            }
        };
        let mut b = [[0; 3]; 3];
        for (i, &di) in d.parts().iter().enumerate() {
            for j in 1..=q {
                if j <= di {
                    b[band(i + 1, s)][band(j, t)] += 1;
                }
            }
        }
        b
    }

    #[test]
    fn block_counts_examples() {
        let d = p(&[4, 2, 2, 1, 1]);
        let bc = d.block_counts(2).unwrap();
        assert_eq!(bc.b, [[2, 1, 1], [2, 0, 0], [4, 0, 0]]);
        assert_eq!(bc.b, blocks_by_counting(&d, 2));
        assert_eq!(bc.total(), 10);
        assert_eq!(bc.t, 3);

        let bc = p(&[2, 1]).block_counts(2).unwrap();
        assert_eq!(bc.b, [[1, 1, 0], [1, 0, 0], [0, 0, 0]]);
    }

    #[test]
    fn block_counts_needs_descent() {
        let d = p(&[4, 2, 2, 1, 1]);
        assert!(matches!(d.block_counts(3), Err(Error::DescentRequired { s: 3, .. })));
        assert!(d.block_counts(1).is_err());
        assert!(d.block_counts(6).is_err());
    }

    #[test]
    fn block_counts_match_direct_count() {
        for e in 1..=14 {
            for d in enumerate_partitions(e).unwrap() {
                for s in d.descents() {
                    let bc = d.block_counts(s).unwrap();
                    assert_eq!(bc.b, blocks_by_counting(&d, s), "{d} s={s}");
                }
            }
        }
    }
}
