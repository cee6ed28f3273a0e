//! Seeded fuzz campaigns over the verifiers.
//!
//! Every trial draws its sets from a ChaCha stream seeded by
//! [`trial_seed`]`(seed, trial)`, so a trial's outcome depends only on the
//! config and its index; trials run on any number of workers and are merged
//! by index.

mod config;
mod report;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use config::{ExperimentConfig, Generator, Overrides};
pub use report::{
    emit_report, summarize, CampaignInfo, CampaignSummary, CheckStats, Format, ResultRow, Skip, TheoremStats,
    TrialRecord, Violation, Witness, SCHEMA_VERSION,
};

use crate::covering::{ruzsa_cover_with_order, ScanOrder};
use crate::error::{Error, Result};
use crate::group::Element;
use crate::magnification::{magnification, magnification_brute, MagnificationCertificate, BRUTE_FORCE_CAP};
use crate::rational::Rational;
use crate::setops::{left_translate, GSet};
use crate::verify::{Instance, TheoremId, TheoremReport, Verifier};

/// The sets drawn for one trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialSets {
    pub a: GSet,
    pub b: GSet,
    pub c: GSet,
}

/// Covering certificates for `(A, B)` in both scan orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCheck {
    pub t_size: usize,
    pub valid: bool,
    pub reverse_valid: bool,
}

/// Flow against brute-force magnification ratio on `(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub flow: Rational,
    pub brute: Rational,
}

#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub trial: u64,
    pub seed: u64,
    pub sets: Option<TrialSets>,
    pub reports: Vec<TheoremReport>,
    pub skips: Vec<Skip>,
    pub cover: Option<CoverCheck>,
    pub oracle: Option<OracleCheck>,
    /// Not part of any emitted report.
    pub wall_time: Duration,
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ trial)
}

/// Distinct random elements until `size` are found or the draws run out
/// (small groups, or words colliding).
fn distinct(size: usize, mut draw: impl FnMut() -> Element) -> Vec<Element> {
    let mut seen = BTreeSet::new();
    let mut attempts = 0;
    while seen.len() < size && attempts < 64 * size + 64 {
        seen.insert(draw());
        attempts += 1;
    }
    seen.into_iter().collect()
}

fn draw_set(config: &ExperimentConfig, rng: &mut ChaCha8Rng, role: usize) -> Result<GSet> {
    use rand::Rng;
    let g = &config.group;
    let spec = g.spec();
    let order = spec.finite_order().map(|n| n as usize).unwrap_or(usize::MAX);
    match &config.generator {
        Generator::Uniform { min, max } => {
            let size = rng.gen_range(*min..=*max).min(order);
            GSet::from_elements(g, distinct(size, || spec.random_element(rng)))
        }
        Generator::SubgroupPlusPoints { extra, .. } => {
            let h = GSet::subgroup(g, &config.generator.subgroup_generators(g)?)?;
            let points = distinct(*extra, || loop {
                let e = spec.random_element(rng);
                if !h.contains(&e) || h.len() == order {
                    break e;
                }
            });
            h.union(&GSet::from_elements(g, points)?)
        }
        Generator::CosetUnion { count } => {
            let h = GSet::subgroup(g, &[spec.random_element(rng)])?;
            let mut out = GSet::empty(g);
            let mut attempts = 0;
            while out.len() < count * h.len() && out.len() < order && attempts < 64 * count {
                out = out.union(&left_translate(&spec.random_element(rng), &h)?)?;
                attempts += 1;
            }
            Ok(out)
        }
        Generator::Progression { start, step, len } => {
            let step = g.parse_element(step)?;
            let mut x = if role == 0 { g.parse_element(start)? } else { spec.random_element(rng) };
            let mut els = Vec::with_capacity(*len);
            for _ in 0..*len {
                els.push(x.clone());
                x = g.mul(&x, &step)?;
            }
            GSet::from_elements(g, els)
        }
        Generator::RandomWords { size, max_len } => {
            GSet::from_elements(g, distinct(*size, || spec.random_word_or_element(rng, Some(*max_len))))
        }
    }
}

/// The sets for trial `trial`: a deterministic function of `(config.seed, trial)`.
pub fn generate_sets(config: &ExperimentConfig, trial: u64) -> Result<TrialSets> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.seed, trial));
    let a = draw_set(config, &mut rng, 0)?;
    let b = draw_set(config, &mut rng, 1)?;
    let c = draw_set(config, &mut rng, 2)?;
    for s in [&a, &b, &c] {
        if s.is_empty() {
            return Err(Error::EmptySet("generated set"));
        }
    }
    Ok(TrialSets { a, b, c })
}

/// Lazily computed minimizers shared by the theorems of one trial.
struct Minimizers<'s> {
    sets: &'s TrialSets,
    ab: Option<MagnificationCertificate>,
    bb: Option<MagnificationCertificate>,
}

impl Minimizers<'_> {
    fn of_a(&mut self) -> Result<GSet> {
        if self.ab.is_none() {
            self.ab = Some(magnification(&self.sets.a, &self.sets.b)?);
        }
        Ok(self.ab.as_ref().expect("just set").x.clone())
    }

    fn of_b(&mut self) -> Result<GSet> {
        if self.bb.is_none() {
            self.bb = Some(magnification(&self.sets.b, &self.sets.b)?);
        }
        Ok(self.bb.as_ref().expect("just set").x.clone())
    }
}

/// The instance a theorem is run on. `stronger_middle` and `s_chain` get the
/// minimizer of `A` (their hypothesis), `b_inv_chain` gets the minimizer of
/// `B` inside `B` as its `A`.
fn instance_for(theorem: TheoremId, mins: &mut Minimizers) -> Result<Instance> {
    let s = mins.sets;
    let full = |a: GSet| Instance { a: Some(a), b: Some(s.b.clone()), c: Some(s.c.clone()) };
    Ok(match theorem {
        TheoremId::StrongerMiddle | TheoremId::SChain => full(mins.of_a()?),
        TheoremId::BInvChain => full(mins.of_b()?),
        _ => full(s.a.clone()),
    })
}

fn skip(trial: u64, theorem: Option<TheoremId>, e: &Error) -> Skip {
    Skip { trial, theorem, error: e.to_string() }
}

pub fn run_trial(config: &ExperimentConfig, trial: u64) -> TrialOutcome {
    let start = Instant::now();
    let seed = trial_seed(config.seed, trial);
    let mut out = TrialOutcome {
        trial,
        seed,
        sets: None,
        reports: Vec::new(),
        skips: Vec::new(),
        cover: None,
        oracle: None,
        wall_time: Duration::ZERO,
    };
    let sets = match generate_sets(config, trial) {
        Ok(s) => s,
        Err(e) => {
            out.skips.push(skip(trial, None, &e));
            out.wall_time = start.elapsed();
            return out;
        }
    };
    let verifier = Verifier { allow_large: config.allow_large, mutation: config.mutation, ..Verifier::default() };
    let mut mins = Minimizers { sets: &sets, ab: None, bb: None };
    for &theorem in &config.theorems {
        let inst = match instance_for(theorem, &mut mins) {
            Ok(i) => i,
            Err(e) => {
                out.skips.push(skip(trial, Some(theorem), &e));
                continue;
            }
        };
        for params in config.runs(theorem) {
            match verifier.run(theorem, &inst, &params) {
                Ok(reports) => out.reports.extend(reports.into_iter().filter(|r| {
                    let multi = matches!(theorem, TheoremId::PlunneckeH | TheoremId::GallerySharpness);
                    !multi || r.params.get("h").and_then(|h| h.as_u64()).is_none_or(|h| config.keeps_h(h as u32))
                })),
                Err(e) => out.skips.push(skip(trial, Some(theorem), &e)),
            }
        }
    }
    if config.cover {
        let cert = ruzsa_cover_with_order(&sets.a, &sets.b, ScanOrder::Canonical);
        let rev = ruzsa_cover_with_order(&sets.a, &sets.b, ScanOrder::Reverse);
        match (cert, rev) {
            (Ok(c), Ok(r)) => {
                out.cover = Some(CoverCheck { t_size: c.t.len(), valid: c.is_valid(), reverse_valid: r.is_valid() })
            }
            (Err(e), _) | (_, Err(e)) => out.skips.push(skip(trial, None, &e)),
        }
    }
    if config.oracle && sets.a.len() <= BRUTE_FORCE_CAP {
        let flow = crate::magnification::magnification_flow(&sets.a, &sets.b);
        let brute = magnification_brute(&sets.a, &sets.b);
        match (flow, brute) {
            (Ok(f), Ok(b)) => out.oracle = Some(OracleCheck { flow: f.k, brute: b.k }),
            (Err(e), _) | (_, Err(e)) => out.skips.push(skip(trial, None, &e)),
        }
    }
    out.sets = Some(sets);
    out.wall_time = start.elapsed();
    out
}

/// Every trial of the campaign, in trial order.
pub fn run_trials(config: &ExperimentConfig) -> Result<Vec<TrialOutcome>> {
    config.validate()?;
    run_parallel(config)
}

#[cfg(feature = "parallel")]
fn run_parallel(config: &ExperimentConfig) -> Result<Vec<TrialOutcome>> {
    use rayon::prelude::*;
    let work = || (0..config.trials).into_par_iter().map(|t| run_trial(config, t)).collect::<Vec<_>>();
    match config.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Config(format!("cannot start {jobs} workers: {e}")))?;
            Ok(pool.install(work))
        }
        None => Ok(work()),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(config: &ExperimentConfig) -> Result<Vec<TrialOutcome>> {
    Ok((0..config.trials).map(|t| run_trial(config, t)).collect())
}

/// Runs the campaign and aggregates it.
pub fn run_fuzz(config: &ExperimentConfig) -> Result<CampaignSummary> {
    let outcomes = run_trials(config)?;
    Ok(summarize(config, &outcomes))
}
