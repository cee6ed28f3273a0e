//! Campaign aggregation and emission.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ExperimentConfig, TrialOutcome};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::verify::{Status, TheoremId, TheoremReport};

/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

const DIGITS: u32 = 6;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CampaignInfo {
    pub group: String,
    pub generator: String,
    pub seed: u64,
    pub trials: u64,
    pub theorems: Vec<TheoremId>,
    pub mutation: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TheoremStats {
    pub runs: u64,
    pub pass: u64,
    pub fail: u64,
    pub hypothesis_not_met: u64,
    pub skipped: u64,
    /// Over passing reports.
    pub min_slack: Option<Rational>,
    pub median_slack: Option<Rational>,
    pub min_slack_decimal: Option<String>,
    pub median_slack_decimal: Option<String>,
    pub max_actual: Option<u64>,
}

/// One report, reduced to a row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub theorem: TheoremId,
    /// Parameters that distinguish reports of one theorem (`h=3`, `k=2,l=1`, ...).
    pub label: String,
    pub status: Status,
    pub actual: u64,
    pub bound: Rational,
    pub slack: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub results: Vec<ResultRow>,
    pub skipped: u64,
}

/// A report that failed, with the sets that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: u64,
    pub seed: u64,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub report: TheoremReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: u64,
    pub theorem: TheoremId,
    pub label: String,
    pub actual: u64,
    pub slack: Rational,
    pub slack_decimal: String,
}

/// A trial step that raised an error; `theorem` is absent for set generation
/// and the covering or oracle checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub trial: u64,
    pub theorem: Option<TheoremId>,
    pub error: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckStats {
    pub checked: u64,
    pub failed: u64,
    /// Trials of the first failures.
    pub failed_trials: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub schema_version: u32,
    pub config: CampaignInfo,
    pub stats: BTreeMap<TheoremId, TheoremStats>,
    pub violations: Vec<Violation>,
    pub near_tight: Vec<Witness>,
    pub skips: Vec<Skip>,
    pub cover: CheckStats,
    pub oracle: CheckStats,
    pub records: Vec<TrialRecord>,
}

impl CampaignSummary {
    /// A campaign with no trials.
    pub fn empty() -> Self {
        CampaignSummary { schema_version: SCHEMA_VERSION, ..CampaignSummary::default() }
    }

    /// Failed reports plus failed covering and oracle checks.
    pub fn violation_count(&self) -> u64 {
        self.violations.len() as u64 + self.cover.failed + self.oracle.failed
    }
}

fn label(r: &TheoremReport) -> String {
    ["instance", "h", "k", "l", "signs"]
        .iter()
        .filter_map(|k| {
            r.params.get(*k).map(|v| match v {
                serde_json::Value::String(s) => format!("{k}={s}"),
                v => format!("{k}={v}"),
            })
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn strings(o: &TrialOutcome) -> [Vec<String>; 3] {
    match &o.sets {
        Some(s) => [s.a.to_strings(), s.b.to_strings(), s.c.to_strings()],
        None => Default::default(),
    }
}

const MAX_LISTED_FAILURES: usize = 20;

/// Aggregates outcomes given in trial order.
pub fn summarize(config: &ExperimentConfig, outcomes: &[TrialOutcome]) -> CampaignSummary {
    let mut s = CampaignSummary::empty();
    s.config = CampaignInfo {
        group: config.group.spec().to_string(),
        generator: config.generator.to_string(),
        seed: config.seed,
        trials: config.trials,
        theorems: config.theorems.clone(),
        mutation: config.mutation,
    };
    let mut slacks: BTreeMap<TheoremId, Vec<Rational>> = BTreeMap::new();
    let mut witnesses: BTreeMap<TheoremId, usize> = BTreeMap::new();
    for &t in &config.theorems {
        s.stats.entry(t).or_default();
    }
    for o in outcomes {
        let [a, b, c] = strings(o);
        let mut results = Vec::with_capacity(o.reports.len());
        for r in &o.reports {
            let st = s.stats.entry(r.theorem).or_default();
            st.runs += 1;
            st.max_actual = Some(st.max_actual.unwrap_or(0).max(r.actual));
            match r.status {
                Status::Pass => {
                    st.pass += 1;
                    slacks.entry(r.theorem).or_default().push(r.slack.clone());
                    let listed = witnesses.entry(r.theorem).or_default();
                    if r.slack.to_f64() <= config.near_tight && *listed < config.near_tight_limit {
                        *listed += 1;
                        s.near_tight.push(Witness {
                            trial: o.trial,
                            theorem: r.theorem,
                            label: label(r),
                            actual: r.actual,
                            slack: r.slack.clone(),
                            slack_decimal: r.slack.to_sig_string(DIGITS),
                        });
                    }
                }
                Status::Fail => {
                    st.fail += 1;
                    s.violations.push(Violation {
                        trial: o.trial,
                        seed: o.seed,
                        a: a.clone(),
                        b: b.clone(),
                        c: c.clone(),
                        report: r.clone(),
                    });
                }
                Status::HypothesisNotMet => st.hypothesis_not_met += 1,
            }
            results.push(ResultRow {
                theorem: r.theorem,
                label: label(r),
                status: r.status,
                actual: r.actual,
                bound: r.bound.clone(),
                slack: r.slack.clone(),
            });
        }
        for sk in &o.skips {
            if let Some(t) = sk.theorem {
                let st = s.stats.entry(t).or_default();
                st.runs += 1;
                st.skipped += 1;
            }
            s.skips.push(sk.clone());
        }
        if let Some(cv) = &o.cover {
            s.cover.checked += 1;
            if !(cv.valid && cv.reverse_valid) {
                s.cover.failed += 1;
                if s.cover.failed_trials.len() < MAX_LISTED_FAILURES {
                    s.cover.failed_trials.push(o.trial);
                }
            }
        }
        if let Some(or) = &o.oracle {
            s.oracle.checked += 1;
            if or.flow != or.brute {
                s.oracle.failed += 1;
                if s.oracle.failed_trials.len() < MAX_LISTED_FAILURES {
                    s.oracle.failed_trials.push(o.trial);
                }
            }
        }
        s.records.push(TrialRecord {
            trial: o.trial,
            seed: o.seed,
            a,
            b,
            c,
            results,
            skipped: o.skips.len() as u64,
        });
    }
    for (t, mut v) in slacks {
        v.sort();
        let st = s.stats.entry(t).or_default();
        st.min_slack = v.first().cloned();
        st.median_slack = v.get((v.len() - 1) / 2).cloned();
        st.min_slack_decimal = st.min_slack.as_ref().map(|r| r.to_sig_string(DIGITS));
        st.median_slack_decimal = st.median_slack.as_ref().map(|r| r.to_sig_string(DIGITS));
    }
    s
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Config(format!("unknown format `{s}` (json, csv, text)"))),
        }
    }
}

pub fn emit_report(summary: &CampaignSummary, format: Format) -> Result<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(summary).map_err(|e| Error::Config(e.to_string())),
        Format::Csv => emit_csv(summary),
        Format::Text => Ok(emit_text(summary)),
    }
}

fn emit_csv(summary: &CampaignSummary) -> Result<String> {
    let err = |e: csv::Error| Error::Config(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["trial", "seed", "theorem", "label", "status", "actual", "bound", "slack", "slack_decimal"])
        .map_err(err)?;
    for rec in &summary.records {
        for r in &rec.results {
            let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            w.write_record([
                rec.trial.to_string(),
                rec.seed.to_string(),
                r.theorem.to_string(),
                r.label.clone(),
                status,
                r.actual.to_string(),
                r.bound.to_string(),
                r.slack.to_string(),
                r.slack.to_sig_string(DIGITS),
            ])
            .map_err(err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

fn emit_text(s: &CampaignSummary) -> String {
    let mut out = String::new();
    let c = &s.config;
    let _ = writeln!(out, "group {}  generator {}  seed {}  trials {}", c.group, c.generator, c.seed, c.trials);
    let _ = writeln!(
        out,
        "{:<24} {:>7} {:>7} {:>5} {:>8} {:>8} {:>12} {:>12} {:>10}",
        "theorem", "runs", "pass", "fail", "not_met", "skipped", "min_slack", "median_slack", "max_actual"
    );
    for (t, st) in &s.stats {
        let dash = || "-".to_string();
        let _ = writeln!(
            out,
            "{:<24} {:>7} {:>7} {:>5} {:>8} {:>8} {:>12} {:>12} {:>10}",
            t.as_str(),
            st.runs,
            st.pass,
            st.fail,
            st.hypothesis_not_met,
            st.skipped,
            st.min_slack_decimal.clone().unwrap_or_else(dash),
            st.median_slack_decimal.clone().unwrap_or_else(dash),
            st.max_actual.map(|a| a.to_string()).unwrap_or_else(dash),
        );
    }
    let _ = writeln!(out, "cover checks: {} checked, {} failed", s.cover.checked, s.cover.failed);
    if s.oracle.checked > 0 {
        let _ = writeln!(out, "oracle checks: {} checked, {} failed", s.oracle.checked, s.oracle.failed);
    }
    let _ = writeln!(out, "near-tight witnesses: {}", s.near_tight.len());
    let _ = writeln!(out, "skips: {}", s.skips.len());
    let _ = writeln!(out, "violations: {}", s.violation_count());
    for v in s.violations.iter().take(MAX_LISTED_FAILURES) {
        let failed: Vec<_> = v.report.failed_steps().map(|st| st.label.as_str()).collect();
        let _ = writeln!(
            out,
            "  trial {} {} {}: actual {} vs bound {}; failed steps: {}",
            v.trial,
            v.report.theorem,
            label(&v.report),
            v.report.actual,
            v.report.bound,
            if failed.is_empty() { "-".to_string() } else { failed.join("; ") }
        );
    }
    out
}
