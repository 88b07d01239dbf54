//! JSONL record helpers and the pass/fail/skip tally.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

/// Record emitted for grid points excluded by a verifier's hypotheses.
#[derive(Clone, Debug, Serialize)]
pub struct SkippedRecord {
    pub claim: String,
    pub s: u32,
    pub d: usize,
    pub status: String,
}

impl SkippedRecord {
    pub fn excluded(claim: &str, s: u32, d: usize) -> SkippedRecord {
        SkippedRecord {
            claim: claim.to_string(),
            s,
            d,
            status: "skipped: excluded case".to_string(),
        }
    }
}

/// Summary record for one limit-ideal verification.
#[derive(Clone, Debug, Serialize)]
pub struct LimitRecord {
    pub claim: String,
    pub d: usize,
    pub points: usize,
    pub delta: Vec<i64>,
    pub lines: usize,
    pub pass: bool,
}

#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct Counts {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
}

/// Per-claim tally of a JSONL record stream.
#[derive(Default, Debug)]
pub struct Tally {
    pub per_claim: BTreeMap<String, Counts>,
}

impl Tally {
    pub fn total(&self) -> Counts {
        let mut total = Counts::default();
        for c in self.per_claim.values() {
            total.pass += c.pass;
            total.fail += c.fail;
            total.skip += c.skip;
        }
        total
    }

    pub fn has_failures(&self) -> bool {
        self.total().fail > 0
    }
}

/// Tallies a JSONL stream. Records carry either an explicit `claim` or the
/// chain-report shape (recognized by its `provenance` field); a `status`
/// beginning with `skipped` marks a skip, otherwise the boolean `pass` field
/// decides.
pub fn tally_jsonl(text: &str) -> Result<Tally> {
    let mut tally = Tally::default();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(line)?;
        let claim = value
            .get("claim")
            .and_then(Value::as_str)
            .map(str::to_string)
            .unwrap_or_else(|| {
                if value.get("provenance").is_some() {
                    "key-lemma".to_string()
                } else {
                    "unknown".to_string()
                }
            });
        let counts = tally.per_claim.entry(claim).or_default();
        if value
            .get("status")
            .and_then(Value::as_str)
            .is_some_and(|s| s.starts_with("skipped"))
        {
            counts.skip += 1;
        } else if value.get("pass").and_then(Value::as_bool) == Some(true) {
            counts.pass += 1;
        } else {
            counts.fail += 1;
        }
    }
    Ok(tally)
}

/// Renders the tally as an aligned text table.
pub fn render_table(tally: &Tally) -> String {
    let mut out = String::new();
    if tally.per_claim.is_empty() {
        let _ = writeln!(out, "no records");
        return out;
    }
    let width = tally
        .per_claim
        .keys()
        .map(String::len)
        .max()
        .unwrap_or(5)
        .max("claim".len());
    let _ = writeln!(out, "{:width$}  {:>6} {:>6} {:>6}", "claim", "pass", "fail", "skip");
    for (claim, c) in &tally.per_claim {
        let _ = writeln!(out, "{claim:width$}  {:>6} {:>6} {:>6}", c.pass, c.fail, c.skip);
    }
    let t = tally.total();
    let _ = writeln!(out, "{:width$}  {:>6} {:>6} {:>6}", "total", t.pass, t.fail, t.skip);
    out
}
