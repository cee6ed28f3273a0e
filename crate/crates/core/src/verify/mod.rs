//! Certificate-emitting verifiers for product-set inequalities.
//!
//! Every verifier evaluates one inequality on concrete sets and returns a
//! [`TheoremReport`]: the hypothesis constants (computed tight from the
//! inputs unless overridden upward), the bound, the observed cardinality, and
//! a ledger with one [`Step`] per inequality used along the proof. Each step
//! is an exact comparison of an integer left side with a rational right side.

mod abelian;
pub mod bounds;
mod gallery;
mod nonabelian;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::Element;
use crate::rational::Rational;
use crate::setops::{product, GSet, Sign};

pub use gallery::{counterexample_sets, sharpness_instances, SharpnessInstance};

/// Largest default `h` accepted without [`Verifier::allow_large`].
pub const MAX_DEFAULT_H: u32 = 6;
/// Largest default `k` and `l` accepted without [`Verifier::allow_large`].
pub const MAX_DEFAULT_KL: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    PlunneckeH,
    RuzsaKl,
    StrongerMiddle,
    Middle,
    BInvChain,
    Triple,
    TaoPower,
    Alternating,
    SChain,
    Sbb,
    SbH,
    Triangle,
    TriangleAbelian,
    GalleryCounterexample,
    GallerySharpness,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::PlunneckeH,
        TheoremId::RuzsaKl,
        TheoremId::StrongerMiddle,
        TheoremId::Middle,
        TheoremId::BInvChain,
        TheoremId::Triple,
        TheoremId::TaoPower,
        TheoremId::Alternating,
        TheoremId::SChain,
        TheoremId::Sbb,
        TheoremId::SbH,
        TheoremId::Triangle,
        TheoremId::TriangleAbelian,
        TheoremId::GalleryCounterexample,
        TheoremId::GallerySharpness,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::PlunneckeH => "plunnecke_h",
            TheoremId::RuzsaKl => "ruzsa_kl",
            TheoremId::StrongerMiddle => "stronger_middle",
            TheoremId::Middle => "middle",
            TheoremId::BInvChain => "b_inv_chain",
            TheoremId::Triple => "triple",
            TheoremId::TaoPower => "tao_power",
            TheoremId::Alternating => "alternating",
            TheoremId::SChain => "s_chain",
            TheoremId::Sbb => "sbb",
            TheoremId::SbH => "sb_h",
            TheoremId::Triangle => "triangle",
            TheoremId::TriangleAbelian => "triangle_abelian",
            TheoremId::GalleryCounterexample => "gallery_counterexample",
            TheoremId::GallerySharpness => "gallery_sharpness",
        }
    }

    /// Only meaningful in abelian groups.
    pub fn needs_abelian(&self) -> bool {
        matches!(self, TheoremId::PlunneckeH | TheoremId::RuzsaKl | TheoremId::TriangleAbelian)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s || (s == "plunnecke" && *t == TheoremId::PlunneckeH))
            .ok_or_else(|| Error::Parse(format!("unknown theorem id `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The inputs do not satisfy the statement's hypotheses; nothing was claimed.
    HypothesisNotMet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn holds(&self, lhs: u64, rhs: &Rational) -> bool {
        let l = Rational::from_integer(lhs);
        match self {
            Relation::Le => l <= *rhs,
            Relation::Eq => l == *rhs,
            Relation::Ge => l >= *rhs,
        }
    }
}

/// Whether the statement bounds the observed cardinality from above or below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Upper,
    Lower,
}

/// One exact comparison `lhs (<=|=|>=) rhs` used along a proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub label: String,
    pub lhs: u64,
    pub relation: Relation,
    pub rhs: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub group: String,
    pub status: Status,
    /// `actual` satisfies the bound and every step holds.
    pub pass: bool,
    /// `actual` satisfies the bound, whatever the intermediate steps did.
    pub bound_holds: bool,
    pub direction: Direction,
    pub hypothesis: BTreeMap<String, Rational>,
    pub params: BTreeMap<String, Value>,
    /// The full bound, including the size factor (e.g. `alpha^7 beta |B|`).
    pub bound: Rational,
    pub actual: u64,
    /// The size factor in the bound (`|B|`, `|X|`, `|S|`, ...).
    pub reference_size: u64,
    /// `bound / actual` for upper bounds, `actual / bound` for lower bounds;
    /// at least 1 exactly when the bound holds.
    pub slack: Rational,
    pub steps: Vec<Step>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn failed_steps(&self) -> impl Iterator<Item = &Step> {
        self.steps.iter().filter(|s| !s.holds)
    }
}

/// Sets handed to [`Verifier::run`]. Which of them are read depends on the theorem.
#[derive(Clone, Debug, Default)]
pub struct Instance {
    pub a: Option<GSet>,
    pub b: Option<GSet>,
    pub c: Option<GSet>,
}

/// Integer parameters handed to [`Verifier::run`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremParams {
    pub h: Option<u32>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub signs: Option<Vec<Sign>>,
}

/// Verifier configuration.
#[derive(Clone, Debug, Default)]
pub struct Verifier {
    /// Replaces the tight alpha; must not be smaller than it.
    pub alpha: Option<Rational>,
    pub beta: Option<Rational>,
    pub gamma: Option<Rational>,
    /// Accept `h > 6`, `k > 3`, `l > 3`.
    pub allow_large: bool,
    /// Test hook: every measured product cardinality is reported one too
    /// large, as a deliberately broken product would. Used to show the
    /// verifiers are not vacuous.
    pub mutation: bool,
}

pub(crate) fn size(s: &GSet) -> u64 {
    s.len() as u64
}

pub(crate) fn int(n: u64) -> Rational {
    Rational::from_integer(n)
}

/// Report under construction.
pub(crate) struct Draft<'v> {
    v: &'v Verifier,
    theorem: TheoremId,
    group: String,
    direction: Direction,
    hypothesis: BTreeMap<String, Rational>,
    params: BTreeMap<String, Value>,
    steps: Vec<Step>,
    notes: Vec<String>,
    hypothesis_met: bool,
    scope: String,
}

impl<'v> Draft<'v> {
    pub(crate) fn new(v: &'v Verifier, theorem: TheoremId, group: &GSet) -> Self {
        Draft {
            v,
            theorem,
            group: group.group().spec().to_string(),
            direction: Direction::Upper,
            hypothesis: BTreeMap::new(),
            params: BTreeMap::new(),
            steps: Vec::new(),
            notes: Vec::new(),
            hypothesis_met: true,
            scope: String::new(),
        }
    }

    /// Prefix for the labels of subsequent steps (e.g. `h=3`).
    pub(crate) fn scope(&mut self, scope: impl Into<String>) {
        let scope = scope.into();
        self.scope = if scope.is_empty() { scope } else { format!("[{scope}] ") };
    }

    /// Cardinality of a set on the measured (left) side of a comparison.
    pub(crate) fn m(&self, s: &GSet) -> u64 {
        s.len() as u64 + self.v.mutation as u64
    }

    pub(crate) fn hyp(&mut self, name: &str, value: &Rational) {
        self.hypothesis.insert(name.to_string(), value.clone());
    }

    pub(crate) fn param(&mut self, name: &str, value: impl Into<Value>) {
        self.params.insert(name.to_string(), value.into());
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub(crate) fn lower(&mut self) {
        self.direction = Direction::Lower;
    }

    pub(crate) fn hypothesis_not_met(&mut self, why: impl Into<String>) {
        self.hypothesis_met = false;
        self.notes.push(why.into());
    }

    fn push(&mut self, label: impl Into<String>, lhs: u64, relation: Relation, rhs: Rational) -> bool {
        let holds = relation.holds(lhs, &rhs);
        let label = format!("{}{}", self.scope, label.into());
        self.steps.push(Step { label, lhs, relation, rhs, holds });
        holds
    }

    pub(crate) fn le(&mut self, label: impl Into<String>, lhs: u64, rhs: Rational) -> bool {
        self.push(label, lhs, Relation::Le, rhs)
    }

    pub(crate) fn eq(&mut self, label: impl Into<String>, lhs: u64, rhs: Rational) -> bool {
        self.push(label, lhs, Relation::Eq, rhs)
    }

    pub(crate) fn ge(&mut self, label: impl Into<String>, lhs: u64, rhs: Rational) -> bool {
        self.push(label, lhs, Relation::Ge, rhs)
    }

    /// `sub` is contained in `sup`, recorded as `|sub n sup| = |sub|`.
    pub(crate) fn contained(&mut self, label: impl Into<String>, sub: &GSet, sup: &GSet) -> Result<bool> {
        let inter = sub.intersection(sup)?;
        Ok(self.eq(label, size(&inter), int(size(sub))))
    }

    pub(crate) fn finish(self, bound: Rational, actual: u64, reference_size: u64) -> TheoremReport {
        let (bound_holds, slack) = match self.direction {
            Direction::Upper => (Rational::from_integer(actual) <= bound, &bound / actual.max(1)),
            Direction::Lower => (
                Rational::from_integer(actual) >= bound,
                bound.recip().map(|r| r * actual).unwrap_or_else(|| Rational::from_integer(actual)),
            ),
        };
        let steps_hold = self.steps.iter().all(|s| s.holds);
        let pass = self.hypothesis_met && bound_holds && steps_hold;
        let status = if !self.hypothesis_met {
            Status::HypothesisNotMet
        } else if pass {
            Status::Pass
        } else {
            Status::Fail
        };
        TheoremReport {
            theorem: self.theorem,
            group: self.group,
            status,
            pass,
            bound_holds,
            direction: self.direction,
            hypothesis: self.hypothesis,
            params: self.params,
            bound,
            actual,
            reference_size,
            slack,
            steps: self.steps,
            notes: self.notes,
        }
    }
}

impl Verifier {
    pub fn new() -> Self {
        Verifier::default()
    }

    /// The tight constant, or the override when one is set.
    pub(crate) fn constant(&self, name: &str, tight: Rational, chosen: &Option<Rational>) -> Result<Rational> {
        match chosen {
            None => Ok(tight),
            Some(c) if *c >= tight => Ok(c.clone()),
            Some(c) => Err(Error::Domain(format!("{name} = {c} is below the tight value {tight}"))),
        }
    }

    fn check_h(&self, h: u32) -> Result<()> {
        if h > MAX_DEFAULT_H && !self.allow_large {
            return Err(Error::Domain(format!("h = {h} exceeds {MAX_DEFAULT_H}; pass the large-parameter override")));
        }
        Ok(())
    }

    fn check_kl(&self, k: u32, l: u32) -> Result<()> {
        if (k > MAX_DEFAULT_KL || l > MAX_DEFAULT_KL) && !self.allow_large {
            return Err(Error::Domain(format!(
                "k = {k}, l = {l} exceed {MAX_DEFAULT_KL}; pass the large-parameter override"
            )));
        }
        Ok(())
    }

    /// Runs one theorem on an instance; most theorems give one report,
    /// `plunnecke_h` and `gallery_sharpness` give one per `h`.
    ///
    /// Sets by theorem: `X = a` for `stronger_middle`, `S = a` for `s_chain`,
    /// `(X, Y, Z) = (a, b, c)` for the triangle forms, `B = b` for the
    /// theorems about a single set, `(A, B, C) = (a, b, c)` otherwise.
    pub fn run(&self, theorem: TheoremId, inst: &Instance, params: &TheoremParams) -> Result<Vec<TheoremReport>> {
        let need = |s: &Option<GSet>, name: &'static str| s.clone().ok_or(Error::EmptySet(name));
        let a = || need(&inst.a, "set --a is required");
        let b = || need(&inst.b, "set --b is required");
        let c = || need(&inst.c, "set --c is required");
        let h = params.h;
        Ok(match theorem {
            TheoremId::PlunneckeH => {
                let h = h.unwrap_or(3);
                self.check_h(h)?;
                self.verify_plunnecke(&a()?, &b()?, h)?
            }
            TheoremId::RuzsaKl => {
                let (k, l) = (params.k.unwrap_or(2), params.l.unwrap_or(1));
                self.check_kl(k, l)?;
                vec![self.verify_ruzsa_kl(&a()?, &b()?, k, l)?]
            }
            TheoremId::StrongerMiddle => vec![self.verify_stronger_middle(&a()?, &b()?, &c()?)?],
            TheoremId::Middle => vec![self.verify_middle(&a()?, &b()?, &c()?)?],
            TheoremId::BInvChain => vec![self.verify_b_inv_chain(&a()?, &b()?)?],
            TheoremId::Triple => vec![self.verify_triple(&b()?)?],
            TheoremId::TaoPower => {
                let h = h.unwrap_or(3);
                self.check_h(h)?;
                vec![self.verify_tao_power(&b()?, h)?]
            }
            TheoremId::Alternating => {
                let signs = params.signs.clone().unwrap_or_else(|| vec![Sign::Plus, Sign::Minus]);
                self.check_h(signs.len() as u32)?;
                vec![self.verify_alternating(&b()?, &signs)?]
            }
            TheoremId::SChain => vec![self.verify_s_chain(&a()?, &b()?)?],
            TheoremId::Sbb => vec![self.verify_sbb(&a()?, &b()?)?],
            TheoremId::SbH => {
                let h = h.unwrap_or(2);
                self.check_h(h)?;
                vec![self.verify_sb_h(&a()?, &b()?, h)?]
            }
            TheoremId::Triangle => vec![self.verify_triangle(&a()?, &b()?, &c()?)?],
            TheoremId::TriangleAbelian => vec![self.verify_triangle_abelian(&a()?, &b()?, &c()?)?],
            TheoremId::GalleryCounterexample => vec![self.gallery_counterexample()?],
            TheoremId::GallerySharpness => {
                let h = h.unwrap_or(3);
                self.check_h(h)?;
                self.gallery_sharpness(h)?
            }
        })
    }
}

/// The sets `X_i` of the prefix decomposition of `CX`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Elements of `C` in the order used (canonical).
    pub order: Vec<Element>,
    /// `parts[i] = { x in X : c_i x not in {c_1..c_{i-1}} X }`; `parts[0] = X`.
    pub parts: Vec<GSet>,
}

impl Decomposition {
    /// `sum_{i <= j} |X_i|` for every prefix `j`.
    pub fn prefix_sums(&self) -> Vec<u64> {
        self.parts
            .iter()
            .scan(0u64, |acc, p| {
                *acc += p.len() as u64;
                Some(*acc)
            })
            .collect()
    }
}

pub fn decompose_cx(c: &GSet, x: &GSet) -> Result<Decomposition> {
    if c.is_empty() || x.is_empty() {
        return Err(Error::EmptySet("decomposition sets C and X"));
    }
    let group = x.group();
    let mut covered = GSet::empty(group);
    let mut order = Vec::with_capacity(c.len());
    let mut parts = Vec::with_capacity(c.len());
    for ci in c.iter() {
        let single = GSet::singleton(group, ci.clone())?;
        let cx = product(&single, x)?;
        let mut part = Vec::new();
        for xe in x.iter() {
            if !covered.contains(&group.mul(&ci, &xe)?) {
                part.push(xe);
            }
        }
        parts.push(GSet::from_elements(group, part)?);
        covered = covered.union(&cx)?;
        order.push(ci);
    }
    Ok(Decomposition { order, parts })
}

/// Convenience wrappers using the default (tight, unmutated) verifier.
macro_rules! default_wrappers {
    ($( $name:ident ( $($arg:ident : $ty:ty),* ) -> $out:ty; )*) => {
        $(
            pub fn $name($($arg: $ty),*) -> Result<$out> {
                Verifier::default().$name($($arg),*)
            }
        )*
    };
}

default_wrappers! {
    verify_stronger_middle(x: &GSet, b: &GSet, c: &GSet) -> TheoremReport;
    verify_middle(a: &GSet, b: &GSet, c: &GSet) -> TheoremReport;
    verify_plunnecke(a: &GSet, b: &GSet, h_max: u32) -> Vec<TheoremReport>;
    verify_ruzsa_kl(a: &GSet, b: &GSet, k: u32, l: u32) -> TheoremReport;
    verify_triangle(x: &GSet, y: &GSet, z: &GSet) -> TheoremReport;
    verify_triangle_abelian(x: &GSet, y: &GSet, z: &GSet) -> TheoremReport;
    verify_b_inv_chain(a: &GSet, b: &GSet) -> TheoremReport;
    verify_triple(b: &GSet) -> TheoremReport;
    verify_tao_power(b: &GSet, h: u32) -> TheoremReport;
    verify_alternating(b: &GSet, signs: &[Sign]) -> TheoremReport;
    verify_s_chain(s: &GSet, b: &GSet) -> TheoremReport;
    verify_sbb(a: &GSet, b: &GSet) -> TheoremReport;
    verify_sb_h(a: &GSet, b: &GSet, h: u32) -> TheoremReport;
    gallery_counterexample() -> TheoremReport;
    gallery_sharpness(h_max: u32) -> Vec<TheoremReport>;
}
