//! Flat TOML experiment configuration.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupSpec};
use crate::setops::{split_top_level, Sign};
use crate::verify::TheoremId;

/// Structured random set families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Uniform random sets with size drawn from `min..=max`.
    Uniform { min: usize, max: usize },
    /// A fixed subgroup together with `extra` random points outside it.
    SubgroupPlusPoints { generators: Vec<String>, extra: usize },
    /// The union of `count` random left cosets of a random cyclic subgroup.
    CosetUnion { count: usize },
    /// `A = {start + i step}`; `B` and `C` use the same step from random starts.
    Progression { start: String, step: String, len: usize },
    /// Random reduced words of length at most `max_len`.
    RandomWords { size: usize, max_len: usize },
}

impl Generator {
    pub fn parse(s: &str) -> Result<Generator> {
        let s = s.trim();
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let count = |t: &str, what: &str| -> Result<usize> {
            t.trim().parse().map_err(|_| cfg(format!("generator `{kind}`: bad {what} `{t}`")))
        };
        let g = match kind {
            "uniform" => {
                let (min, max) = match rest.split_once(',') {
                    Some((a, b)) => (count(a, "size")?, count(b, "size")?),
                    None => (count(rest, "size")?, count(rest, "size")?),
                };
                if min == 0 || min > max {
                    return Err(cfg(format!("uniform sizes must satisfy 1 <= min <= max, got {min},{max}")));
                }
                Generator::Uniform { min, max }
            }
            "subgroup-plus-points" => {
                let (gens, extra) =
                    rest.rsplit_once(':').ok_or_else(|| cfg("expected `subgroup-plus-points:<g1>;<g2>:<extra>`"))?;
                Generator::SubgroupPlusPoints {
                    generators: gens.split(';').map(|g| g.trim().to_string()).filter(|g| !g.is_empty()).collect(),
                    extra: count(extra, "extra count")?,
                }
            }
            "coset-union" => {
                let count = count(rest, "count")?;
                if count == 0 {
                    return Err(cfg("coset-union needs at least one coset"));
                }
                Generator::CosetUnion { count }
            }
            "progression" => match split_top_level(rest, ',').as_slice() {
                [start, step, len] => {
                    let len = count(len, "length")?;
                    if len == 0 {
                        return Err(cfg("progression length must be positive"));
                    }
                    Generator::Progression { start: start.trim().into(), step: step.trim().into(), len }
                }
                _ => return Err(cfg("expected `progression:<start>,<step>,<length>`")),
            },
            "random-words" => {
                let (size, len) = rest.split_once(',').ok_or_else(|| cfg("expected `random-words:<size>,<max length>`"))?;
                let size = count(size, "size")?;
                if size == 0 {
                    return Err(cfg("random-words size must be positive"));
                }
                Generator::RandomWords { size, max_len: count(len, "max length")? }
            }
            _ => return Err(cfg(format!("unknown generator `{kind}`"))),
        };
        Ok(g)
    }

    fn check(&self, group: &Group) -> Result<()> {
        let free = matches!(group.spec(), GroupSpec::Free { .. });
        match self {
            Generator::Progression { start, step, .. } => {
                if !group.is_abelian() {
                    return Err(cfg(format!("progression needs an abelian group, got {}", group.spec())));
                }
                group.parse_element(start).map_err(|e| cfg(format!("progression start: {e}")))?;
                group.parse_element(step).map_err(|e| cfg(format!("progression step: {e}")))?;
            }
            Generator::RandomWords { max_len, .. } => match group.spec() {
                GroupSpec::Free { max_len: cap, .. } if max_len <= cap => {}
                GroupSpec::Free { max_len: cap, .. } => {
                    return Err(cfg(format!("random-words length {max_len} exceeds the group's word cap {cap}")))
                }
                _ => return Err(cfg(format!("random-words needs a free group, got {}", group.spec()))),
            },
            Generator::SubgroupPlusPoints { generators, .. } => {
                if free {
                    return Err(cfg("subgroup-plus-points needs a finite group"));
                }
                for g in generators {
                    group.parse_element(g).map_err(|e| cfg(format!("subgroup generator: {e}")))?;
                }
            }
            Generator::CosetUnion { .. } if free => return Err(cfg("coset-union needs a finite group")),
            Generator::CosetUnion { .. } | Generator::Uniform { .. } => {}
        }
        Ok(())
    }

    pub(crate) fn subgroup_generators(&self, group: &Group) -> Result<Vec<Element>> {
        match self {
            Generator::SubgroupPlusPoints { generators, .. } => {
                generators.iter().map(|g| group.parse_element(g)).collect()
            }
            _ => Ok(Vec::new()),
        }
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::Uniform { min, max } if min == max => write!(f, "uniform:{min}"),
            Generator::Uniform { min, max } => write!(f, "uniform:{min},{max}"),
            Generator::SubgroupPlusPoints { generators, extra } => {
                write!(f, "subgroup-plus-points:{}:{extra}", generators.join(";"))
            }
            Generator::CosetUnion { count } => write!(f, "coset-union:{count}"),
            Generator::Progression { start, step, len } => write!(f, "progression:{start},{step},{len}"),
            Generator::RandomWords { size, max_len } => write!(f, "random-words:{size},{max_len}"),
        }
    }
}

fn cfg(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// A fuzz campaign: one group, one generator, and the theorems to run on
/// every trial.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub group: Arc<Group>,
    pub generator: Generator,
    pub trials: u64,
    pub seed: u64,
    pub theorems: Vec<TheoremId>,
    /// `h` values; each theorem keeps the values in its domain (`plunnecke_h`
    /// and `gallery_sharpness` run `1..=max`).
    pub h: Option<Vec<u32>>,
    pub k: Option<Vec<u32>>,
    pub l: Option<Vec<u32>>,
    pub signs: Option<Vec<Vec<Sign>>>,
    /// Worker threads; `None` uses the default pool. Never affects output.
    pub jobs: Option<usize>,
    /// Passing reports with slack at most this are listed as near-tight.
    pub near_tight: f64,
    /// Most near-tight witnesses kept per theorem (lowest trial indices).
    pub near_tight_limit: usize,
    /// Check both Ruzsa covering scan orders on `(A, B)` every trial.
    pub cover: bool,
    /// Compare the flow and brute-force magnification ratios every trial
    /// (brute force is skipped above its size cap).
    pub oracle: bool,
    pub allow_large: bool,
    /// Test hook: run every verifier with off-by-one product cardinalities.
    pub mutation: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Ints {
    One(u32),
    Text(String),
    List(Vec<u32>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Names {
    Text(String),
    List(Vec<String>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Float(f64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    group: String,
    generator: String,
    trials: Option<u64>,
    seed: Option<u64>,
    theorems: Names,
    h: Option<Ints>,
    k: Option<Ints>,
    l: Option<Ints>,
    signs: Option<Names>,
    jobs: Option<usize>,
    near_tight: Option<Number>,
    near_tight_limit: Option<usize>,
    cover: Option<bool>,
    oracle: Option<bool>,
    allow_large: Option<bool>,
    mutation: Option<bool>,
}

/// `3`, `"3"`, `"1..5"` (inclusive) or `[1, 2, 5]`.
fn ints(v: Ints, key: &str) -> Result<Vec<u32>> {
    let out = match v {
        Ints::One(n) => vec![n],
        Ints::List(v) => v,
        Ints::Text(t) => {
            let num = |s: &str| s.trim().parse::<u32>().map_err(|_| cfg(format!("`{key}`: bad integer `{s}`")));
            match t.split_once("..") {
                Some((a, b)) => {
                    let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                    if a > b {
                        return Err(cfg(format!("`{key}`: empty range {t}")));
                    }
                    (a..=b).collect()
                }
                None => vec![num(&t)?],
            }
        }
    };
    if out.is_empty() {
        return Err(cfg(format!("`{key}` is empty")));
    }
    Ok(out)
}

impl ExperimentConfig {
    /// A campaign with default options.
    pub fn new(group: Arc<Group>, generator: Generator, trials: u64, seed: u64, theorems: Vec<TheoremId>) -> Self {
        ExperimentConfig {
            group,
            generator,
            trials,
            seed,
            theorems,
            h: None,
            k: None,
            l: None,
            signs: None,
            jobs: None,
            near_tight: 2.0,
            near_tight_limit: 20,
            cover: true,
            oracle: false,
            allow_large: false,
            mutation: false,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| cfg(e.to_string()))?;
        let group = Group::parse(&raw.group).map_err(|e| cfg(e.to_string()))?;
        let generator = Generator::parse(&raw.generator)?;
        let theorems = match raw.theorems {
            Names::Text(t) => t.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            Names::List(v) => v,
        };
        let theorems = theorems
            .iter()
            .map(|t| t.parse::<TheoremId>().map_err(|e| cfg(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let signs = match raw.signs {
            None => None,
            Some(Names::Text(t)) => Some(vec![Sign::parse_list(&t).map_err(|e| cfg(e.to_string()))?]),
            Some(Names::List(v)) => Some(
                v.iter().map(|t| Sign::parse_list(t).map_err(|e| cfg(e.to_string()))).collect::<Result<Vec<_>>>()?,
            ),
        };
        let mut c = ExperimentConfig::new(group, generator, raw.trials.unwrap_or(100), raw.seed.unwrap_or(0), theorems);
        c.h = raw.h.map(|v| ints(v, "h")).transpose()?;
        c.k = raw.k.map(|v| ints(v, "k")).transpose()?;
        c.l = raw.l.map(|v| ints(v, "l")).transpose()?;
        c.signs = signs;
        c.jobs = raw.jobs;
        c.near_tight = match raw.near_tight {
            Some(Number::Int(n)) => n as f64,
            Some(Number::Float(x)) => x,
            None => c.near_tight,
        };
        c.near_tight_limit = raw.near_tight_limit.unwrap_or(c.near_tight_limit);
        c.cover = raw.cover.unwrap_or(c.cover);
        c.oracle = raw.oracle.unwrap_or(c.oracle);
        c.allow_large = raw.allow_large.unwrap_or(false);
        c.mutation = raw.mutation.unwrap_or(false);
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(cfg("trials must be at least 1"));
        }
        if self.jobs == Some(0) {
            return Err(cfg("jobs must be at least 1"));
        }
        self.generator.check(&self.group)?;
        for t in &self.theorems {
            if t.needs_abelian() && !self.group.is_abelian() {
                return Err(cfg(format!("{t} needs an abelian group, got {}", self.group.spec())));
            }
        }
        for t in &self.theorems {
            let runs = self.runs(*t);
            if runs.is_empty() {
                return Err(cfg(format!("no parameter values in range for {t}")));
            }
            for p in &runs {
                let too_big_h = p.h.is_some_and(|h| h > crate::verify::MAX_DEFAULT_H);
                let too_big_kl = p.k.is_some_and(|k| k > crate::verify::MAX_DEFAULT_KL)
                    || p.l.is_some_and(|l| l > crate::verify::MAX_DEFAULT_KL);
                let too_long = p.signs.as_ref().is_some_and(|s| s.len() as u32 > crate::verify::MAX_DEFAULT_H);
                if (too_big_h || too_big_kl || too_long) && !self.allow_large {
                    return Err(cfg(format!("parameters for {t} exceed the default caps; set allow_large")));
                }
            }
        }
        Ok(())
    }

    /// Parameter sets run for `theorem` on every trial.
    pub fn runs(&self, theorem: TheoremId) -> Vec<crate::verify::TheoremParams> {
        use crate::verify::TheoremParams as P;
        let hs = |default: u32, min: u32| -> Vec<u32> {
            self.h.clone().unwrap_or_else(|| vec![default]).into_iter().filter(|&h| h >= min).collect()
        };
        match theorem {
            // One report per h in 1..=max; the lower values are filtered afterwards.
            TheoremId::PlunneckeH | TheoremId::GallerySharpness => {
                let max = hs(3, 1).into_iter().max();
                max.map(|h| vec![P { h: Some(h), ..P::default() }]).unwrap_or_default()
            }
            TheoremId::TaoPower => hs(3, 3).into_iter().map(|h| P { h: Some(h), ..P::default() }).collect(),
            TheoremId::SbH => hs(2, 2).into_iter().map(|h| P { h: Some(h), ..P::default() }).collect(),
            TheoremId::RuzsaKl => {
                let ks = self.k.clone().unwrap_or_else(|| vec![2]);
                let ls = self.l.clone().unwrap_or_else(|| vec![1]);
                let mut out = Vec::new();
                for &k in &ks {
                    for &l in &ls {
                        if k + l > 1 {
                            out.push(P { k: Some(k), l: Some(l), ..P::default() });
                        }
                    }
                }
                out
            }
            TheoremId::Alternating => self
                .signs
                .clone()
                .unwrap_or_else(|| vec![vec![Sign::Plus, Sign::Minus]])
                .into_iter()
                .filter(|s| !s.is_empty())
                .map(|s| P { signs: Some(s), ..P::default() })
                .collect(),
            _ => vec![P::default()],
        }
    }

    /// `h` values kept from a multi-report theorem.
    pub(crate) fn keeps_h(&self, h: u32) -> bool {
        self.h.as_ref().is_none_or(|hs| hs.contains(&h))
    }
}

/// Flags layered over a config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub jobs: Option<usize>,
}

impl ExperimentConfig {
    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(t) = o.trials {
            self.trials = t;
        }
        if let Some(j) = o.jobs {
            self.jobs = Some(j);
        }
        self.validate()
    }

    /// The config as flat key/value pairs (echoed into reports).
    pub fn describe(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("group".into(), self.group.spec().to_string());
        m.insert("generator".into(), self.generator.to_string());
        m.insert("theorems".into(), self.theorems.iter().map(|t| t.as_str()).collect::<Vec<_>>().join(","));
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_file() {
        let c = ExperimentConfig::from_toml(
            r#"
group = "zn:30"
generator = "uniform:1,8"
trials = 50
seed = 7
theorems = ["triangle", "plunnecke", "ruzsa_kl"]
h = "1..5"
k = [0, 1, 2]
l = "0..2"
near_tight = 3
"#,
        )
        .unwrap();
        assert_eq!(c.trials, 50);
        assert_eq!(c.theorems, [TheoremId::Triangle, TheoremId::PlunneckeH, TheoremId::RuzsaKl]);
        assert_eq!(c.h.as_deref(), Some(&[1, 2, 3, 4, 5][..]));
        assert_eq!(c.runs(TheoremId::RuzsaKl).len(), 6);
        assert_eq!(c.generator, Generator::Uniform { min: 1, max: 8 });
        assert_eq!(c.near_tight, 3.0);
    }

    #[test]
    fn generator_group_mismatch_is_a_config_error() {
        let bad = r#"
group = "sym:4"
generator = "progression:0,1,3"
theorems = "triangle"
"#;
        assert!(matches!(ExperimentConfig::from_toml(bad), Err(Error::Config(_))));
        let bad = r#"
group = "dihedral:5"
generator = "uniform:2"
theorems = "plunnecke_h"
"#;
        assert!(matches!(ExperimentConfig::from_toml(bad), Err(Error::Config(_))));
        let bad = r#"
group = "zn:5"
generator = "uniform:2"
theorems = "triangle"
trials = 0
"#;
        assert!(matches!(ExperimentConfig::from_toml(bad), Err(Error::Config(_))));
        assert!(ExperimentConfig::from_toml("group = \"zn:5\"\nbogus = 1").is_err());
    }

    #[test]
    fn generator_grammar() {
        assert_eq!(
            Generator::parse("subgroup-plus-points:(1 2 3);(1 2):1").unwrap(),
            Generator::SubgroupPlusPoints { generators: vec!["(1 2 3)".into(), "(1 2)".into()], extra: 1 }
        );
        assert_eq!(
            Generator::parse("progression:(0,1),(1,1),4").unwrap(),
            Generator::Progression { start: "(0,1)".into(), step: "(1,1)".into(), len: 4 }
        );
        assert_eq!(Generator::parse("random-words:3,4").unwrap(), Generator::RandomWords { size: 3, max_len: 4 });
        assert!(Generator::parse("uniform:0").is_err());
        assert!(Generator::parse("spiral:3").is_err());
    }
}
