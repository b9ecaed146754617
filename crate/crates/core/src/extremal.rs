//! Which bipartite graph with `e` edges has the largest spectral radius
//! among those that are not complete bipartite.
//!
//! [`extremal_graph`] answers from the arithmetic of `e - 1` and `e + 1`
//! alone. [`rho_e_oracle`] computes the same maximum by brute force so the
//! two can be checked against each other, and [`verify_twin_characterization`]
//! checks that `ρ(e)` drops strictly below [`twin_bound`] exactly at
//! twin-prime edge counts.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{twin_bound, EQUALITY_BAND};
use crate::error::{Error, Result};
use crate::graph::{cyclic_biregular, from_partition, BipartiteGraph, Family};
use crate::partition::{Partition, Partitions};
use crate::primes::{is_prime, is_twin_prime_pair, smallest_divisor_ge2};
use crate::spectral::{rho_k_minus, rho_k_plus, spectral_radius, ExactRadical, DEFAULT_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    /// `e` odd.
    Odd,
    /// `e` even, `e - 1` prime, `e + 1` composite.
    LowerPrime,
    /// `e` even, `e - 1` composite, `e + 1` prime.
    UpperPrime,
    /// `e` even, both neighbours composite.
    BothComposite,
    /// `e - 1` and `e + 1` both prime.
    TwinPrime,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseLabel::Odd => "i",
            CaseLabel::LowerPrime => "ii",
            CaseLabel::UpperPrime => "iii",
            CaseLabel::BothComposite => "iv",
            CaseLabel::TwinPrime => "twin-prime",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub family: Family,
    pub radical: ExactRadical,
}

impl Candidate {
    fn k_minus(p: usize, q: usize) -> Result<Self> {
        Ok(Candidate {
            family: Family::KMinus { p, q },
            radical: rho_k_minus(p, q)?,
        })
    }

    fn k_plus(p: usize, q: usize) -> Result<Self> {
        Ok(Candidate {
            family: Family::KPlus { p, q },
            radical: rho_k_plus(p, q)?,
        })
    }

    /// `Family=radical`, e.g. `K-(3,9)=sqrt(13+3*sqrt(17))`.
    pub fn label(&self) -> String {
        format!("{}={}", self.family, self.radical)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "index")]
pub enum Winner {
    Candidate(usize),
    Tie,
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalVerdict {
    pub e: u64,
    pub case: CaseLabel,
    pub candidates: Vec<Candidate>,
    pub winner: Winner,
    /// Spectral radius of the winner (of either candidate on a tie).
    pub rho: Option<f64>,
}

impl ExtremalVerdict {
    pub fn winning_candidate(&self) -> Option<&Candidate> {
        match self.winner {
            Winner::Candidate(i) => self.candidates.get(i),
            Winner::Tie => self.candidates.first(),
            Winner::Unresolved => None,
        }
    }
}

/// Outcome of comparing `K⁻_{p',q'}` with `K⁺_{p'',q''}` at the same `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseIvWinner {
    KMinus,
    KPlus,
    Tie,
}

impl CaseIvWinner {
    pub fn sign(&self) -> &'static str {
        match self {
            CaseIvWinner::KMinus => "-",
            CaseIvWinner::KPlus => "+",
            CaseIvWinner::Tie => "tie",
        }
    }
}

fn to_usize(v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::invalid(format!("{v} does not fit in usize")))
}

/// `(p', q')` minimizing `p'` with `e = p'q' - 1`, `2 <= p' <= q'`, `(p',q') != (2,2)`.
pub fn minus_realization(e: u64) -> Result<Option<(usize, usize)>> {
    let n = e.checked_add(1).ok_or_else(|| Error::invalid("e + 1 overflows"))?;
    if n <= 4 {
        return Ok(None);
    }
    let p = smallest_divisor_ge2(n)?;
    if p == n {
        return Ok(None);
    }
    Ok(Some((to_usize(p)?, to_usize(n / p)?)))
}

/// `(p'', q'')` minimizing `p''` with `e = p''q'' + 1`, `2 <= p'' <= q''`.
pub fn plus_realization(e: u64) -> Result<Option<(usize, usize)>> {
    if e < 5 {
        return Ok(None);
    }
    let n = e - 1;
    let p = smallest_divisor_ge2(n)?;
    if p == n {
        return Ok(None);
    }
    Ok(Some((to_usize(p)?, to_usize(n / p)?)))
}

/// Extremal graph for `e >= 4` edges from the primality of `e ± 1`.
pub fn extremal_graph(e: u64) -> Result<ExtremalVerdict> {
    if e < 4 {
        return Err(Error::Domain(format!("the case analysis needs e >= 4, got {e}")));
    }
    if e == u64::MAX {
        return Err(Error::invalid("e + 1 overflows"));
    }
    let verdict = |case, candidates: Vec<Candidate>, winner| {
        let rho = match winner {
            Winner::Candidate(i) => Some(candidates[i].radical.to_f64()),
            Winner::Tie => Some(candidates[0].radical.to_f64()),
            Winner::Unresolved => None,
        };
        ExtremalVerdict {
            e,
            case,
            candidates,
            winner,
            rho,
        }
    };
    if e % 2 == 1 {
        let q = to_usize(e.div_ceil(2))?;
        return Ok(verdict(CaseLabel::Odd, vec![Candidate::k_minus(2, q)?], Winner::Candidate(0)));
    }
    let minus = minus_realization(e)?;
    let plus = plus_realization(e)?;
    Ok(match (minus, plus) {
        (None, None) => verdict(CaseLabel::TwinPrime, vec![], Winner::Unresolved),
        (Some((p, q)), None) => verdict(CaseLabel::LowerPrime, vec![Candidate::k_minus(p, q)?], Winner::Candidate(0)),
        (None, Some((p, q))) => verdict(CaseLabel::UpperPrime, vec![Candidate::k_plus(p, q)?], Winner::Candidate(0)),
        (Some((p1, q1)), Some((p2, q2))) => {
            let cands = vec![Candidate::k_minus(p1, q1)?, Candidate::k_plus(p2, q2)?];
            let winner = match cands[0].radical.partial_cmp(&cands[1].radical) {
                Some(Ordering::Greater) => Winner::Candidate(0),
                Some(Ordering::Less) => Winner::Candidate(1),
                _ => Winner::Tie,
            };
            verdict(CaseLabel::BothComposite, cands, winner)
        }
    })
}

/// Decides the even, both-composite case by comparing radicands.
pub fn winner_case_iv(e: u64) -> Result<CaseIvWinner> {
    if !e.is_multiple_of(2) || e < 4 {
        return Err(Error::invalid(format!("e={e} must be even and at least 4")));
    }
    let v = extremal_graph(e)?;
    if v.case != CaseLabel::BothComposite {
        return Err(Error::invalid(format!("e={e}: e-1 and e+1 are not both composite")));
    }
    Ok(match v.winner {
        Winner::Candidate(0) => CaseIvWinner::KMinus,
        Winner::Candidate(_) => CaseIvWinner::KPlus,
        _ => CaseIvWinner::Tie,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    /// Canonical graphs `G_D` of non-rectangular partitions, plus biregular
    /// non-complete graphs.
    PartitionLevel,
    /// Every isolated-free, non-complete 0/1 matrix with `e` ones up to
    /// row and column permutation.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub partition_max_e: u64,
    pub exhaustive_max_e: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            partition_max_e: 60,
            exhaustive_max_e: 8,
        }
    }
}

impl OracleLimits {
    /// Same cap for both modes.
    pub fn uniform(max_e: u64) -> Self {
        OracleLimits {
            partition_max_e: max_e,
            exhaustive_max_e: max_e,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    Partition { partition: Partition },
    /// Every `x` has degree `x_degree`, every `y` has degree `y_degree`.
    Biregular { x_degree: usize, y_degree: usize, graph: String },
    Graph { graph: String },
}

impl Witness {
    pub fn graph(&self) -> Result<BipartiteGraph> {
        match self {
            Witness::Partition { partition } => Ok(from_partition(partition)),
            Witness::Biregular { graph, .. } | Witness::Graph { graph } => graph.parse(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Partition { partition } => write!(f, "G[{partition}]"),
            Witness::Biregular { x_degree, y_degree, graph } => {
                let dims = graph.lines().next().unwrap_or_default();
                write!(f, "biregular({x_degree},{y_degree}) on {dims}")
            }
            Witness::Graph { graph } => {
                let g: BipartiteGraph = graph.parse().map_err(|_| fmt::Error)?;
                let rows: Vec<String> = (0..g.p())
                    .map(|i| (0..g.q()).map(|j| if g.get(i, j) { '1' } else { '0' }).collect())
                    .collect();
                write!(f, "[{}]", rows.join("/"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub e: u64,
    pub mode: OracleMode,
    pub rho: f64,
    pub witness: Witness,
    /// Number of graphs whose spectral radius was computed.
    pub examined: usize,
}

/// Best-so-far tracker; keeps the earliest witness on exact ties.
struct Best<W> {
    rho: f64,
    witness: Option<W>,
    examined: usize,
}

impl<W> Best<W> {
    fn new() -> Self {
        Best {
            rho: f64::NEG_INFINITY,
            witness: None,
            examined: 0,
        }
    }

    fn offer(&mut self, rho: f64, witness: impl FnOnce() -> W) {
        self.examined += 1;
        if rho > self.rho {
            self.rho = rho;
            self.witness = Some(witness());
        }
    }

    fn merge(mut self, later: Best<W>) -> Self {
        self.examined += later.examined;
        if later.rho > self.rho {
            self.rho = later.rho;
            self.witness = later.witness;
        }
        self
    }
}

/// `ρ(e)` by brute force.
pub fn rho_e_oracle(e: u64, mode: OracleMode, limits: OracleLimits) -> Result<OracleResult> {
    if e < 2 {
        return Err(Error::Domain(format!(
            "every bipartite graph with e={e} edges and no isolated vertices is complete"
        )));
    }
    let cap = match mode {
        OracleMode::PartitionLevel => limits.partition_max_e,
        OracleMode::Exhaustive => limits.exhaustive_max_e,
    };
    if e > cap {
        return Err(Error::ResourceCap(format!(
            "oracle refuses e={e} in {mode:?} mode (cap {cap}; raise it with SPECTRAL_MAX_E)"
        )));
    }
    let n = to_usize(e)?;
    let best = match mode {
        OracleMode::PartitionLevel => partition_level(n)?,
        OracleMode::Exhaustive => exhaustive(n)?,
    };
    let witness = best
        .witness
        .ok_or_else(|| Error::Domain(format!("no non-complete graph with e={e} edges")))?;
    Ok(OracleResult {
        e,
        mode,
        rho: best.rho,
        witness,
        examined: best.examined,
    })
}

fn partition_level(e: usize) -> Result<Best<Witness>> {
    // One sub-stream per largest part, in reverse-lexicographic order.
    let per_prefix: Vec<Result<Best<Partition>>> = (1..=e)
        .rev()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|first| {
            let mut best = Best::new();
            for d in Partitions::with_first_part(e, first)? {
                if d.is_rectangular() {
                    continue;
                }
                // G_D and G_{D*} are transposes
                if d.conjugate() > d {
                    continue;
                }
                let rho = spectral_radius(&from_partition(&d), DEFAULT_TOL)?.rho;
                best.offer(rho, || d);
            }
            Ok(best)
        })
        .collect();

    let mut best: Best<Witness> = Best::new();
    for sub in per_prefix {
        let sub = sub?;
        let mapped = Best {
            rho: sub.rho,
            examined: sub.examined,
            witness: sub.witness.map(|partition| Witness::Partition { partition }),
        };
        best = best.merge(mapped);
    }

    // Both degree sequences rectangular: biregular, not reached through G_D.
    for a in (1..=e).filter(|a| e.is_multiple_of(*a)) {
        for b in (1..=e).filter(|b| e.is_multiple_of(*b)) {
            let (p, q) = (e / a, e / b);
            if a >= q || b >= p {
                continue;
            }
            let g = cyclic_biregular(e, a, b)?;
            let rho = spectral_radius(&g, DEFAULT_TOL)?.rho;
            best.offer(rho, || Witness::Biregular {
                x_degree: a,
                y_degree: b,
                graph: g.to_string(),
            });
        }
    }
    Ok(best)
}

/// Rows are bit masks with column 0 in the most significant position, so
/// integer order on masks is lexicographic order on rows.
fn exhaustive(e: usize) -> Result<Best<Witness>> {
    if e > 63 {
        return Err(Error::ResourceCap(format!("exhaustive search supports e <= 63, got {e}")));
    }
    let mut best = Best::new();
    for p in 1..=e {
        for q in p..=e {
            if p * q < e {
                continue;
            }
            let mut rows = Vec::with_capacity(p);
            let mut ctx = Search { p, q, e, best: &mut best };
            ctx.extend(&mut rows, (1u64 << q) - 1, e)?;
        }
    }
    Ok(best)
}

struct Search<'a> {
    p: usize,
    q: usize,
    e: usize,
    best: &'a mut Best<Witness>,
}

impl Search<'_> {
    fn extend(&mut self, rows: &mut Vec<u64>, max_mask: u64, budget: usize) -> Result<()> {
        let left = self.p - rows.len();
        if left == 0 {
            if budget == 0 {
                self.visit(rows)?;
            }
            return Ok(());
        }
        if budget < left || budget > left * self.q {
            return Ok(());
        }
        let mut mask = max_mask;
        while mask > 0 {
            let ones = mask.count_ones() as usize;
            if ones <= budget && budget - ones >= left - 1 {
                rows.push(mask);
                self.extend(rows, mask, budget - ones)?;
                rows.pop();
            }
            mask -= 1;
        }
        Ok(())
    }

    fn visit(&mut self, rows: &[u64]) -> Result<()> {
        let (p, q) = (self.p, self.q);
        let full = (1u64 << q) - 1;
        if rows.iter().fold(0, |acc, r| acc | r) != full {
            return Ok(()); // isolated column
        }
        if self.e == p * q {
            return Ok(()); // complete
        }
        // columns, read top to bottom, must also be nonincreasing
        let column = |j: usize| {
            rows.iter()
                .fold(0u64, |acc, r| (acc << 1) | ((r >> (q - 1 - j)) & 1))
        };
        if (1..q).any(|j| column(j - 1) < column(j)) {
            return Ok(());
        }
        let g = BipartiteGraph::from_fn(p, q, |i, j| rows[i] >> (q - 1 - j) & 1 == 1)?;
        let rho = spectral_radius(&g, DEFAULT_TOL)?.rho;
        self.best.offer(rho, || Witness::Graph { graph: g.to_string() });
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwinCheck {
    pub e: u64,
    pub twin_prime: bool,
    pub rho: f64,
    pub bound: f64,
    /// `rho - bound`.
    pub margin: f64,
    /// `bound - rho > EQUALITY_BAND`.
    pub strictly_below: bool,
    pub pass: bool,
    pub verdict: ExtremalVerdict,
    pub witness: Witness,
}

/// Checks, for every `e` in `lo..=hi`, that `ρ(e) < B(e)` holds strictly
/// exactly when `(e-1, e+1)` is a twin-prime pair.
pub fn verify_twin_characterization(lo: u64, hi: u64, limits: OracleLimits) -> Result<Vec<TwinCheck>> {
    if lo < 4 || lo > hi {
        return Err(Error::invalid(format!("need 4 <= from <= to, got {lo}..={hi}")));
    }
    if hi > limits.partition_max_e {
        return Err(Error::ResourceCap(format!(
            "verification up to e={hi} exceeds the oracle cap {}",
            limits.partition_max_e
        )));
    }
    (lo..=hi)
        .map(|e| {
            let oracle = rho_e_oracle(e, OracleMode::PartitionLevel, limits)?;
            let bound = twin_bound(e);
            let twin_prime = is_twin_prime_pair(e);
            let strictly_below = bound - oracle.rho > EQUALITY_BAND;
            Ok(TwinCheck {
                e,
                twin_prime,
                rho: oracle.rho,
                bound,
                margin: oracle.rho - bound,
                strictly_below,
                pass: strictly_below == twin_prime,
                verdict: extremal_graph(e)?,
                witness: oracle.witness,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub e: u64,
    pub minus: Candidate,
    pub plus: Candidate,
    pub winner: CaseIvWinner,
}

/// One row per even `e <= e_max` with `e - 1` and `e + 1` both composite.
pub fn reproduce_table(e_max: u64) -> Result<Vec<TableRow>> {
    (4..=e_max)
        .step_by(2)
        .filter(|&e| !is_prime(e - 1) && !is_prime(e + 1))
        .map(|e| {
            let v = extremal_graph(e)?;
            let winner = match v.winner {
                Winner::Candidate(0) => CaseIvWinner::KMinus,
                Winner::Candidate(_) => CaseIvWinner::KPlus,
                _ => CaseIvWinner::Tie,
            };
            let mut c = v.candidates.into_iter();
            Ok(TableRow {
                e,
                minus: c.next().expect("two candidates"),
                plus: c.next().expect("two candidates"),
                winner,
            })
        })
        .collect()
}
