//! HK series, classifier/oracle verification reports and their output formats.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use log::{debug, info};
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{box_decode, DeglexDescending, Trinomial};
use crate::classifier::{classify, Branch, MembershipDecision, Verdict};
use crate::error::HkError;
use crate::oracle::{self, prime_power, DEFAULT_BUDGET};

/// Default cap on `q^m` for classifier enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 36;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classifier,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `q^m` the oracle may touch.
    pub oracle_budget: u64,
    /// Largest `q^m` the classifier may enumerate.
    pub enumeration: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            oracle_budget: DEFAULT_BUDGET,
            enumeration: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HkPoint {
    pub n: u32,
    pub q: u64,
    pub hk: u64,
    pub mult_num: u64,
    pub mult_den: u64,
}

impl HkPoint {
    pub fn multiplicity(&self) -> Ratio<u64> {
        Ratio::new(self.mult_num, self.mult_den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HkSeries {
    pub p: u32,
    pub poly: String,
    pub points: Vec<HkPoint>,
    /// Monomials, summed over all points, decided by a rank test.
    pub rank_test_count: u64,
}

impl HkSeries {
    pub fn to_json(&self) -> Result<String, HkError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// `n;q;hk;mult_num;mult_den` rows.
    pub fn to_csv_string(&self) -> Result<String, HkError> {
        let mut w = csv::WriterBuilder::new().delimiter(b';').from_writer(Vec::new());
        w.write_record(["n", "q", "hk", "mult_num", "mult_den"])?;
        for pt in &self.points {
            w.write_record([
                pt.n.to_string(),
                pt.q.to_string(),
                pt.hk.to_string(),
                pt.mult_num.to_string(),
                pt.mult_den.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| HkError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "f = {}  p = {}", self.poly, self.p);
        let _ = writeln!(out, "n q hk hk/q^(m-1)");
        for (pt, m) in self.points.iter().zip(multiplicity_estimate(self)) {
            let _ = writeln!(
                out,
                "{} {} {} {} ({:.6})",
                pt.n, pt.q, pt.hk, m.exact, m.decimal
            );
        }
        let _ = writeln!(out, "rank-test monomials: {}", self.rank_test_count);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Multiplicity {
    pub exact: Ratio<u64>,
    pub decimal: f64,
}

/// `hk / q^(m-1)` for each point.
pub fn multiplicity_estimate(series: &HkSeries) -> Vec<Multiplicity> {
    series
        .points
        .iter()
        .map(|pt| {
            let exact = pt.multiplicity();
            Multiplicity {
                exact,
                decimal: *exact.numer() as f64 / *exact.denom() as f64,
            }
        })
        .collect()
}

fn multiplicity_parts(hk: u64, q: u64, nvars: usize) -> (u64, u64) {
    let den = (q as u128).pow(nvars.saturating_sub(1) as u32);
    let r = Ratio::new(u128::from(hk), den);
    (*r.numer() as u64, *r.denom() as u64)
}

/// Branch counts of a classifier sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassifierCounts {
    pub non_members: u64,
    pub rank_tests: u64,
    pub histogram: BTreeMap<Branch, u64>,
}

impl ClassifierCounts {
    fn add(&mut self, d: &MembershipDecision) {
        if !d.verdict.is_member() {
            self.non_members += 1;
        }
        if d.branch.is_rank_test() {
            self.rank_tests += 1;
        }
        *self.histogram.entry(d.branch).or_default() += 1;
    }

    fn merge(mut self, other: ClassifierCounts) -> ClassifierCounts {
        self.non_members += other.non_members;
        self.rank_tests += other.rank_tests;
        for (b, c) in other.histogram {
            *self.histogram.entry(b).or_default() += c;
        }
        self
    }
}

fn check_enumeration(q: u64, nvars: usize, limit: u64) -> Result<u64, HkError> {
    let required = (q as u128).checked_pow(nvars as u32).unwrap_or(u128::MAX);
    if required > u128::from(limit) {
        return Err(HkError::EnumerationLimit { required, limit });
    }
    Ok(required as u64)
}

/// Classifies every monomial of 𝔐 in parallel. Counts do not depend on the
/// number of worker threads.
pub fn classifier_counts(f: &Trinomial, q: u64, limit: u64) -> Result<ClassifierCounts, HkError> {
    let size = check_enumeration(q, f.nvars(), limit)?;
    let m = f.nvars();
    const CHUNK: u64 = 4096;
    let chunks = size.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = ClassifierCounts::default();
            for code in c * CHUNK..((c + 1) * CHUNK).min(size) {
                let a = box_decode(code, q, m);
                acc.add(&classify(&a, f, q));
            }
            acc
        })
        .reduce(ClassifierCounts::default, ClassifierCounts::merge);
    Ok(counts)
}

/// `HK(p^n)` for `n = 1..=n_max`.
pub fn hk_function(
    f: &Trinomial,
    n_max: u32,
    mode: Mode,
    limits: &Limits,
) -> Result<HkSeries, HkError> {
    if n_max == 0 {
        return Err(HkError::ZeroExponent);
    }
    let p = f.prime().get();
    let mut points = Vec::with_capacity(n_max as usize);
    let mut rank_test_count = 0;
    for n in 1..=n_max {
        let q = prime_power(p, n);
        let hk = match mode {
            Mode::Classifier => {
                let c = classifier_counts(f, q, limits.enumeration)?;
                rank_test_count += c.rank_tests;
                c.non_members
            }
            Mode::Oracle => {
                let d = oracle::global_dimension_q(f, q, limits.oracle_budget)?;
                rank_test_count += classifier_counts(f, q, limits.enumeration)?.rank_tests;
                d
            }
        };
        info!("n={n} q={q} hk={hk} ({mode:?})");
        let (mult_num, mult_den) = multiplicity_parts(hk, q, f.nvars());
        points.push(HkPoint {
            n,
            q,
            hk,
            mult_num,
            mult_den,
        });
    }
    Ok(HkSeries {
        p,
        poly: f.to_string(),
        points,
        rank_test_count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRecord {
    pub exponents: Vec<u32>,
    pub decision: MembershipDecision,
    pub oracle: Verdict,
}

impl VerifyRecord {
    pub fn agrees(&self) -> bool {
        self.decision.verdict == self.oracle
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BranchTally {
    pub count: u64,
    pub agree: u64,
    pub disagree: u64,
}

/// Per-monomial comparison of classifier and oracle at one `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub p: u32,
    pub poly: String,
    pub n: u32,
    pub q: u64,
    pub nvars: usize,
    /// All of 𝔐 in decreasing deglex order.
    pub records: Vec<VerifyRecord>,
    pub histogram: BTreeMap<Branch, BranchTally>,
    /// Indices into `records`.
    pub disagreements: Vec<usize>,
    /// Indices into `records` whose rank test was clamped.
    pub clamps: Vec<usize>,
    pub classifier_hk: u64,
    pub oracle_hk: u64,
    pub global_dimension: u64,
}

/// Runs classifier and oracle on every monomial of 𝔐 at `q = p^n`.
pub fn verify(f: &Trinomial, n: u32, budget: u64) -> Result<VerifyReport, HkError> {
    if n == 0 {
        return Err(HkError::ZeroExponent);
    }
    let q = prime_power(f.prime().get(), n);
    let members = oracle::member_set(f, q, budget)?;
    let global_dimension = oracle::global_dimension_q(f, q, budget)?;
    let monos: Vec<Vec<u32>> = DeglexDescending::new(q as u32, f.nvars())
        .map(|m| m.exponents().to_vec())
        .collect();
    let records: Vec<VerifyRecord> = monos
        .into_par_iter()
        .map(|a| {
            let decision = classify(&a, f, q);
            let oracle = Verdict::from_bool(members.member(&a));
            VerifyRecord {
                exponents: a,
                decision,
                oracle,
            }
        })
        .collect();
    let mut histogram: BTreeMap<Branch, BranchTally> = BTreeMap::new();
    let mut disagreements = Vec::new();
    let mut clamps = Vec::new();
    let mut classifier_hk = 0;
    for (i, r) in records.iter().enumerate() {
        let t = histogram.entry(r.decision.branch).or_default();
        t.count += 1;
        if r.agrees() {
            t.agree += 1;
        } else {
            t.disagree += 1;
            disagreements.push(i);
        }
        if r.decision.rank_witness.is_some_and(|w| w.clamp.is_some()) {
            debug!("clamped rank test at {:?}", r.exponents);
            clamps.push(i);
        }
        if !r.decision.verdict.is_member() {
            classifier_hk += 1;
        }
    }
    Ok(VerifyReport {
        p: f.prime().get(),
        poly: f.to_string(),
        n,
        q,
        nvars: f.nvars(),
        records,
        histogram,
        disagreements,
        clamps,
        classifier_hk,
        oracle_hk: members.non_member_count(),
        global_dimension,
    })
}

impl VerifyReport {
    pub fn total(&self) -> u64 {
        self.histogram.values().map(|t| t.count).sum()
    }

    /// Semicolon-separated rows, one per monomial, exponents comma-joined.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), HkError> {
        let mut out = csv::WriterBuilder::new().delimiter(b';').from_writer(w);
        out.write_record([
            "exponents",
            "branch",
            "classifier_verdict",
            "oracle_verdict",
            "rankC",
            "rankCe",
        ])?;
        for r in &self.records {
            let exps: Vec<String> = r.exponents.iter().map(u32::to_string).collect();
            let (rc, rce) = match r.decision.rank_witness {
                Some(w) => (w.rank_c.to_string(), w.rank_ce.to_string()),
                None => (String::new(), String::new()),
            };
            out.write_record([
                exps.join(","),
                r.decision.branch.to_string(),
                r.decision.verdict.to_string(),
                r.oracle.to_string(),
                rc,
                rce,
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String, HkError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> Result<String, HkError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "f = {}  p = {}  n = {}  q = {}  |M| = {}",
            self.poly,
            self.p,
            self.n,
            self.q,
            self.total()
        );
        let _ = writeln!(
            out,
            "hk: classifier {}  oracle sweep {}  oracle rank {}",
            self.classifier_hk, self.oracle_hk, self.global_dimension
        );
        let _ = writeln!(out, "{:<22} {:>8} {:>8} {:>8}", "branch", "count", "agree", "disagree");
        for (b, t) in &self.histogram {
            let _ = writeln!(out, "{:<22} {:>8} {:>8} {:>8}", b.name(), t.count, t.agree, t.disagree);
        }
        let _ = writeln!(out, "clamped rank tests: {}", self.clamps.len());
        let _ = writeln!(out, "disagreements: {}", self.disagreements.len());
        for &i in &self.disagreements {
            let r = &self.records[i];
            let inv = r.decision.invariants;
            let _ = writeln!(
                out,
                "  {:?} {} classifier={} oracle={} inv=({}, {}, {}, {}) witness={:?}",
                r.exponents,
                r.decision.branch,
                r.decision.verdict,
                r.oracle,
                inv.one_min,
                inv.two_min,
                inv.neg2_max,
                inv.neg3_max,
                r.decision.rank_witness
            );
        }
        out
    }
}
