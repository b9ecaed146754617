//! Text, CSV and JSON renderings of command results.
//!
//! Every document type here is `Serialize + Deserialize`, and the text
//! renderers read only fields that survive a JSON round trip, so
//! `render_text(from_json(to_json(x))) == render_text(x)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::{twin_bound, BoundParams};
use crate::error::{Error, Result};
use crate::extremal::{CaseLabel, ExtremalVerdict, OracleResult, TableRow, TwinCheck, Winner};
use crate::graph::Family;
use crate::partition::Partition;
use crate::spectral::ExactRadical;

/// `x` with 10 significant digits.
pub fn sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (9 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// One CSV record: `e,case,candidate_minus,candidate_plus,winner,rho,bound,margin`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub e: u64,
    pub case: String,
    pub candidate_minus: String,
    pub candidate_plus: String,
    pub winner: String,
    pub rho: String,
    pub bound: String,
    pub margin: String,
}

fn split_candidates(v: &ExtremalVerdict) -> (String, String, String) {
    let mut minus = String::new();
    let mut plus = String::new();
    for c in &v.candidates {
        match c.family {
            Family::KPlus { .. } => plus = c.label(),
            _ => minus = c.label(),
        }
    }
    let winner = match v.winner {
        Winner::Candidate(i) => match v.candidates[i].family {
            Family::KPlus { .. } => "+".to_string(),
            _ => "-".to_string(),
        },
        Winner::Tie => "tie".to_string(),
        Winner::Unresolved => String::new(),
    };
    (minus, plus, winner)
}

impl From<&ExtremalVerdict> for ReportRow {
    fn from(v: &ExtremalVerdict) -> Self {
        let (candidate_minus, candidate_plus, winner) = split_candidates(v);
        let bound = twin_bound(v.e);
        ReportRow {
            e: v.e,
            case: v.case.to_string(),
            candidate_minus,
            candidate_plus,
            winner,
            rho: v.rho.map(sig10).unwrap_or_default(),
            bound: sig10(bound),
            margin: v.rho.map(|r| sig10(r - bound)).unwrap_or_default(),
        }
    }
}

impl From<&TableRow> for ReportRow {
    fn from(r: &TableRow) -> Self {
        let rho = match r.winner {
            crate::extremal::CaseIvWinner::KPlus => r.plus.radical.to_f64(),
            _ => r.minus.radical.to_f64(),
        };
        let bound = twin_bound(r.e);
        ReportRow {
            e: r.e,
            case: CaseLabel::BothComposite.to_string(),
            candidate_minus: r.minus.label(),
            candidate_plus: r.plus.label(),
            winner: r.winner.sign().to_string(),
            rho: sig10(rho),
            bound: sig10(bound),
            margin: sig10(rho - bound),
        }
    }
}

impl From<&TwinCheck> for ReportRow {
    fn from(c: &TwinCheck) -> Self {
        let (candidate_minus, candidate_plus, winner) = split_candidates(&c.verdict);
        ReportRow {
            e: c.e,
            case: c.verdict.case.to_string(),
            candidate_minus,
            candidate_plus,
            winner,
            rho: sig10(c.rho),
            bound: sig10(c.bound),
            margin: sig10(c.margin),
        }
    }
}

pub fn to_csv<T: Serialize>(records: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).map_err(|e| Error::invalid(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::invalid(format!("csv: {e}")))
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    serde_json::to_string_pretty(doc).map_err(|e| Error::invalid(format!("json: {e}")))
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("json: {e}")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoReport {
    pub source: String,
    pub p: usize,
    pub q: usize,
    pub edges: usize,
    pub isolated_vertices: bool,
    pub rho: f64,
    pub residual: f64,
    pub iterations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactRadical>,
}

#[derive(Serialize)]
struct RhoCsv<'a> {
    source: &'a str,
    p: usize,
    q: usize,
    edges: usize,
    rho: String,
    residual: String,
    iterations: usize,
    exact: String,
}

impl RhoReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "source:     {}", self.source);
        let _ = writeln!(out, "parts:      {} x {}", self.p, self.q);
        let _ = writeln!(out, "edges:      {}", self.edges);
        if self.isolated_vertices {
            let _ = writeln!(out, "warning:    graph has isolated vertices");
        }
        let _ = writeln!(out, "rho:        {}", sig10(self.rho));
        let _ = writeln!(out, "residual:   {:.3e}", self.residual);
        let _ = writeln!(out, "iterations: {}", self.iterations);
        if let Some(x) = &self.exact {
            let _ = writeln!(out, "exact:      {x}");
        }
        out
    }

    pub fn csv(&self) -> Result<String> {
        to_csv([RhoCsv {
            source: &self.source,
            p: self.p,
            q: self.q,
            edges: self.edges,
            rho: sig10(self.rho),
            residual: format!("{:.3e}", self.residual),
            iterations: self.iterations,
            exact: self.exact.as_ref().map(ToString::to_string).unwrap_or_default(),
        }])
    }
}

pub fn extremal_text(v: &ExtremalVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "e:         {}", v.e);
    let _ = writeln!(out, "case:      {}", v.case);
    if v.case == CaseLabel::TwinPrime {
        let _ = writeln!(out, "twin-prime: extremal graph unresolved by the case analysis; run oracle");
        return out;
    }
    for c in &v.candidates {
        let _ = writeln!(out, "candidate: {} {} {}", c.family, c.radical, sig10(c.radical.to_f64()));
    }
    match v.winner {
        Winner::Candidate(i) => {
            let c = &v.candidates[i];
            let _ = writeln!(out, "winner:    {} {}", c.family, c.radical);
        }
        Winner::Tie => {
            let _ = writeln!(out, "winner:    tie");
        }
        Winner::Unresolved => {}
    }
    if let Some(rho) = v.rho {
        let _ = writeln!(out, "rho:       {}", sig10(rho));
    }
    out
}

pub fn table_text(rows: &[TableRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4}  {:<10} {:<22} {:<10} {:<22} winner",
        "e", "K-", "rho(K-)", "K+", "rho(K+)"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>4}  {:<10} {:<22} {:<10} {:<22} {}",
            r.e,
            r.minus.family.to_string(),
            r.minus.radical.to_string(),
            r.plus.family.to_string(),
            r.plus.radical.to_string(),
            r.winner.sign()
        );
    }
    out
}

pub fn verify_text(rows: &[TwinCheck]) -> String {
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(
            out,
            "e={:<4} {:<9} rho={:<13} B={:<13} margin={:<14} {} {}",
            r.e,
            if r.twin_prime { "twin" } else { "non-twin" },
            sig10(r.rho),
            sig10(r.bound),
            sig10(r.margin),
            if r.strictly_below { "below" } else { "at-or-above" },
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    let failures = rows.iter().filter(|r| !r.pass).count();
    let _ = writeln!(out, "checked {} values, {} failures", rows.len(), failures);
    out
}

#[derive(Serialize)]
struct OracleCsv<'a> {
    e: u64,
    mode: &'a str,
    rho: String,
    witness: String,
    examined: usize,
}

fn mode_name(r: &OracleResult) -> &'static str {
    match r.mode {
        crate::extremal::OracleMode::PartitionLevel => "partition",
        crate::extremal::OracleMode::Exhaustive => "exhaustive",
    }
}

pub fn oracle_text(r: &OracleResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "e:        {}", r.e);
    let _ = writeln!(out, "mode:     {}", mode_name(r));
    let _ = writeln!(out, "rho:      {}", sig10(r.rho));
    let _ = writeln!(out, "witness:  {}", r.witness);
    let _ = writeln!(out, "examined: {}", r.examined);
    out
}

pub fn oracle_csv(r: &OracleResult) -> Result<String> {
    to_csv([OracleCsv {
        e: r.e,
        mode: mode_name(r),
        rho: sig10(r.rho),
        witness: r.witness.to_string(),
        examined: r.examined,
    }])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub partition: Partition,
    pub bound: BoundParams,
    pub rho: f64,
    /// `|phi - rho|` within the equality band.
    pub equality: bool,
    pub distinct_values: usize,
}

#[derive(Serialize)]
struct BoundCsv {
    partition: String,
    s: usize,
    t: usize,
    x: u64,
    y: u64,
    phi: String,
    rho: String,
    equality: bool,
}

impl BoundReport {
    pub fn text(&self) -> String {
        let b = &self.bound;
        let mut out = String::new();
        let _ = writeln!(out, "partition: {}", self.partition);
        let _ = writeln!(out, "s, t:      {}, {}", b.s, b.t);
        let _ = writeln!(out, "X, Y:      {}, {}", b.x, b.y);
        let _ = writeln!(out, "phi:       {}", sig10(b.phi));
        let _ = writeln!(out, "rho:       {}", sig10(self.rho));
        let _ = writeln!(out, "equality:  {}", if self.equality { "yes" } else { "no" });
        out
    }

    pub fn csv(&self) -> Result<String> {
        let b = &self.bound;
        to_csv([BoundCsv {
            partition: self.partition.to_string(),
            s: b.s,
            t: b.t,
            x: b.x,
            y: b.y,
            phi: sig10(b.phi),
            rho: sig10(self.rho),
            equality: self.equality,
        }])
    }
}
