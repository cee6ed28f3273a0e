//! Concrete groups with canonical element encodings.
//!
//! A [`GroupSpec`] describes one of the supported families and provides the
//! raw arithmetic as pure functions. [`Group`] wraps a spec together with an
//! enumeration index (for finite groups of order at most [`DENSE_LIMIT`]) so
//! that sets can be stored as bit vectors over enumeration ranks.
//!
//! Permutations compose right-to-left: `(a * b)(i) = a(b(i))`.

mod element;
mod parse;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use element::{Element, Perm, Word, MAX_PERM_DEGREE};

use crate::error::{Error, Result};

/// Finite groups up to this order use the dense (bit vector) set representation.
pub const DENSE_LIMIT: u64 = 1 << 16;
/// Finite groups up to this order get a precomputed multiplication table.
pub const TABLE_LIMIT: u64 = 1024;
/// Largest group that [`GroupSpec::enumerate`] will list.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;
/// Largest prime accepted for `gl2`.
pub const MAX_GL2_PRIME: u32 = 31;

/// Descriptor of a concrete group.
///
/// String form (used by the CLI and config files): `zn:30`, `zprod:2,3,5`,
/// `dihedral:8`, `sym:5`, `gl2:7`, `free:2:12`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum GroupSpec {
    /// Z_n.
    Cyclic { n: u64 },
    /// Z_{m_1} x ... x Z_{m_k}.
    ProductOfCyclic { moduli: Vec<u64> },
    /// Symmetries of the regular n-gon, order 2n.
    Dihedral { n: u64 },
    /// S_n for n in 1..=8.
    Symmetric { n: u8 },
    /// GL_2(F_p) for prime p <= 31.
    GeneralLinear2 { p: u32 },
    /// Free group on `rank` generators, restricted to words of length <= `max_len`.
    Free { rank: u32, max_len: usize },
}

/// Group order, or `Unbounded` for the free variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupOrder {
    Finite(u64),
    Unbounded,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl GroupSpec {
    pub fn cyclic(n: u64) -> Result<Self> {
        GroupSpec::Cyclic { n }.validated()
    }

    pub fn product_of_cyclic(moduli: Vec<u64>) -> Result<Self> {
        GroupSpec::ProductOfCyclic { moduli }.validated()
    }

    pub fn dihedral(n: u64) -> Result<Self> {
        GroupSpec::Dihedral { n }.validated()
    }

    pub fn symmetric(n: u8) -> Result<Self> {
        GroupSpec::Symmetric { n }.validated()
    }

    pub fn general_linear2(p: u32) -> Result<Self> {
        GroupSpec::GeneralLinear2 { p }.validated()
    }

    pub fn free(rank: u32, max_len: usize) -> Result<Self> {
        GroupSpec::Free { rank, max_len }.validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Checks all parameters are within their supported ranges.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        match self {
            GroupSpec::Cyclic { n } => {
                if *n == 0 || *n > u32::MAX as u64 {
                    return bad(format!("cyclic modulus must be in 1..=2^32-1, got {n}"));
                }
            }
            GroupSpec::ProductOfCyclic { moduli } => {
                if moduli.is_empty() {
                    return bad("product of cyclic groups needs at least one modulus".into());
                }
                let mut order: u64 = 1;
                for &m in moduli {
                    if m == 0 || m > u32::MAX as u64 {
                        return bad(format!("modulus must be in 1..=2^32-1, got {m}"));
                    }
                    order = order
                        .checked_mul(m)
                        .filter(|o| *o <= 1 << 62)
                        .ok_or_else(|| Error::InvalidSpec("group order too large".into()))?;
                }
            }
            GroupSpec::Dihedral { n } => {
                if *n < 3 || *n > u32::MAX as u64 {
                    return bad(format!("dihedral parameter must be in 3..=2^32-1, got {n}"));
                }
            }
            GroupSpec::Symmetric { n } => {
                if *n == 0 || *n as usize > MAX_PERM_DEGREE {
                    return bad(format!("symmetric degree must be in 1..=8, got {n}"));
                }
            }
            GroupSpec::GeneralLinear2 { p } => {
                if !is_prime(*p) || *p > MAX_GL2_PRIME {
                    return bad(format!("gl2 needs a prime p <= {MAX_GL2_PRIME}, got {p}"));
                }
            }
            GroupSpec::Free { rank, max_len } => {
                if *rank == 0 || *rank > 64 {
                    return bad(format!("free rank must be in 1..=64, got {rank}"));
                }
                if *max_len == 0 {
                    return bad("free max word length must be at least 1".into());
                }
            }
        }
        Ok(())
    }

    /// Exactly true for commutative groups.
    pub fn is_abelian(&self) -> bool {
        match self {
            GroupSpec::Cyclic { .. } | GroupSpec::ProductOfCyclic { .. } => true,
            GroupSpec::Dihedral { .. } | GroupSpec::GeneralLinear2 { .. } => false,
            GroupSpec::Symmetric { n } => *n <= 2,
            GroupSpec::Free { rank, .. } => *rank == 1,
        }
    }

    pub fn order(&self) -> GroupOrder {
        match self {
            GroupSpec::Cyclic { n } => GroupOrder::Finite(*n),
            GroupSpec::ProductOfCyclic { moduli } => GroupOrder::Finite(moduli.iter().product()),
            GroupSpec::Dihedral { n } => GroupOrder::Finite(2 * n),
            GroupSpec::Symmetric { n } => GroupOrder::Finite((1..=*n as u64).product()),
            GroupSpec::GeneralLinear2 { p } => {
                let q = *p as u64 * *p as u64;
                GroupOrder::Finite((q - 1) * (q - *p as u64))
            }
            GroupSpec::Free { .. } => GroupOrder::Unbounded,
        }
    }

    pub fn finite_order(&self) -> Option<u64> {
        match self.order() {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Unbounded => None,
        }
    }

    fn moduli(&self) -> Option<&[u64]> {
        match self {
            GroupSpec::Cyclic { n } => Some(std::slice::from_ref(n)),
            GroupSpec::ProductOfCyclic { moduli } => Some(moduli),
            _ => None,
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupSpec::Cyclic { .. } => Element::Residues(vec![0]),
            GroupSpec::ProductOfCyclic { moduli } => Element::Residues(vec![0; moduli.len()]),
            GroupSpec::Dihedral { .. } => Element::Dihedral { rot: 0, reflect: false },
            GroupSpec::Symmetric { n } => Element::Perm(Perm::identity(*n as usize)),
            GroupSpec::GeneralLinear2 { .. } => Element::Matrix([1, 0, 0, 1]),
            GroupSpec::Free { .. } => Element::Word(Word::empty()),
        }
    }

    /// True when `e` is a canonical encoding of an element of this group.
    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (GroupSpec::Cyclic { .. } | GroupSpec::ProductOfCyclic { .. }, Element::Residues(r)) => {
                let m = self.moduli().expect("abelian variant");
                r.len() == m.len() && r.iter().zip(m).all(|(x, m)| x < m)
            }
            (GroupSpec::Dihedral { n }, Element::Dihedral { rot, .. }) => rot < n,
            (GroupSpec::Symmetric { n }, Element::Perm(p)) => p.degree() == *n as usize,
            (GroupSpec::GeneralLinear2 { p }, Element::Matrix(m)) => {
                let p = *p as u64;
                m.iter().all(|&x| (x as u64) < p) && {
                    let det = (m[0] as u64 * m[3] as u64 + p * p - (m[1] as u64 * m[2] as u64) % p) % p;
                    det != 0
                }
            }
            (GroupSpec::Free { rank, max_len }, Element::Word(w)) => {
                w.len() <= *max_len
                    && w.is_reduced()
                    && w.letters().iter().all(|g| g.unsigned_abs() <= *rank)
            }
            _ => false,
        }
    }

    pub(crate) fn check(&self, e: &Element) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::InvalidElement { element: e.to_string(), group: self.to_string() })
        }
    }

    /// Canonical product `a * b`.
    ///
    /// Fails only for the free variant, when the reduced product is longer
    /// than the word-length cap.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        Ok(match (self, a, b) {
            (GroupSpec::Cyclic { .. } | GroupSpec::ProductOfCyclic { .. }, Element::Residues(x), Element::Residues(y)) => {
                let m = self.moduli().expect("abelian variant");
                Element::Residues(x.iter().zip(y).zip(m).map(|((x, y), m)| (x + y) % m).collect())
            }
            (
                GroupSpec::Dihedral { n },
                Element::Dihedral { rot: ra, reflect: fa },
                Element::Dihedral { rot: rb, reflect: fb },
            ) => {
                // r^a s^x * r^b s^y = r^(a + (-1)^x b) s^(x + y)
                let rot = if *fa { (ra + n - rb) % n } else { (ra + rb) % n };
                Element::Dihedral { rot, reflect: fa ^ fb }
            }
            (GroupSpec::Symmetric { .. }, Element::Perm(x), Element::Perm(y)) => Element::Perm(x.compose(y)),
            (GroupSpec::GeneralLinear2 { p }, Element::Matrix(x), Element::Matrix(y)) => {
                let p = *p as u64;
                let [a, b, c, d] = x.map(u64::from);
                let [e, f, g, h] = y.map(u64::from);
                Element::Matrix([
                    ((a * e + b * g) % p) as u32,
                    ((a * f + b * h) % p) as u32,
                    ((c * e + d * g) % p) as u32,
                    ((c * f + d * h) % p) as u32,
                ])
            }
            (GroupSpec::Free { max_len, .. }, Element::Word(x), Element::Word(y)) => {
                let w = x.concat(y);
                if w.len() > *max_len {
                    return Err(Error::LengthOverflow { len: w.len(), max: *max_len });
                }
                Element::Word(w)
            }
            _ => {
                return Err(Error::InvalidElement {
                    element: format!("{a} * {b}"),
                    group: self.to_string(),
                })
            }
        })
    }

    pub fn inv(&self, a: &Element) -> Element {
        match (self, a) {
            (GroupSpec::Cyclic { .. } | GroupSpec::ProductOfCyclic { .. }, Element::Residues(x)) => {
                let m = self.moduli().expect("abelian variant");
                Element::Residues(x.iter().zip(m).map(|(x, m)| (m - x) % m).collect())
            }
            (GroupSpec::Dihedral { n }, Element::Dihedral { rot, reflect }) => {
                if *reflect {
                    a.clone()
                } else {
                    Element::Dihedral { rot: (n - rot) % n, reflect: false }
                }
            }
            (GroupSpec::Symmetric { .. }, Element::Perm(x)) => Element::Perm(x.inverse()),
            (GroupSpec::GeneralLinear2 { p }, Element::Matrix(m)) => {
                let p = *p as u64;
                let [a, b, c, d] = m.map(u64::from);
                let det = (a * d % p + p - b * c % p) % p;
                let di = pow_mod(det, p - 2, p);
                Element::Matrix([
                    (d * di % p) as u32,
                    ((p - b) % p * di % p) as u32,
                    ((p - c) % p * di % p) as u32,
                    (a * di % p) as u32,
                ])
            }
            (GroupSpec::Free { .. }, Element::Word(w)) => Element::Word(w.inverse()),
            _ => a.clone(),
        }
    }

    /// All elements in canonical order.
    pub fn enumerate(&self) -> Result<Vec<Element>> {
        let order = match self.order() {
            GroupOrder::Finite(n) => n,
            GroupOrder::Unbounded => return Err(Error::NotEnumerable(self.to_string())),
        };
        if order > ENUMERATION_LIMIT {
            return Err(Error::SizeOverflow { cap: ENUMERATION_LIMIT as usize });
        }
        let mut out = Vec::with_capacity(order as usize);
        match self {
            GroupSpec::Cyclic { .. } | GroupSpec::ProductOfCyclic { .. } => {
                let m = self.moduli().expect("abelian variant");
                let mut cur = vec![0u64; m.len()];
                loop {
                    out.push(Element::Residues(cur.clone()));
                    let mut i = m.len();
                    loop {
                        if i == 0 {
                            return Ok(out);
                        }
                        i -= 1;
                        cur[i] += 1;
                        if cur[i] < m[i] {
                            break;
                        }
                        cur[i] = 0;
                    }
                }
            }
            GroupSpec::Dihedral { n } => {
                for rot in 0..*n {
                    out.push(Element::Dihedral { rot, reflect: false });
                    out.push(Element::Dihedral { rot, reflect: true });
                }
            }
            GroupSpec::Symmetric { n } => {
                let mut p = Perm::identity(*n as usize);
                loop {
                    out.push(Element::Perm(p));
                    if !p.advance() {
                        break;
                    }
                }
            }
            GroupSpec::GeneralLinear2 { p } => {
                let p = *p;
                for a in 0..p {
                    for b in 0..p {
                        for c in 0..p {
                            for d in 0..p {
                                let m = Element::Matrix([a, b, c, d]);
                                if self.contains(&m) {
                                    out.push(m);
                                }
                            }
                        }
                    }
                }
            }
            GroupSpec::Free { .. } => unreachable!("free groups are unbounded"),
        }
        Ok(out)
    }

    /// Uniformly random element; for free groups a uniformly random reduced
    /// word of uniformly random length in `0..=max_len`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        self.random_word_or_element(rng, None)
    }

    pub(crate) fn random_word_or_element<R: Rng + ?Sized>(&self, rng: &mut R, word_len: Option<usize>) -> Element {
        match self {
            GroupSpec::Cyclic { .. } | GroupSpec::ProductOfCyclic { .. } => {
                let m = self.moduli().expect("abelian variant");
                Element::Residues(m.iter().map(|&m| rng.gen_range(0..m)).collect())
            }
            GroupSpec::Dihedral { n } => Element::Dihedral { rot: rng.gen_range(0..*n), reflect: rng.gen() },
            GroupSpec::Symmetric { n } => {
                let mut img: Vec<usize> = (0..*n as usize).collect();
                for i in (1..img.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    img.swap(i, j);
                }
                Element::Perm(Perm::from_images(&img).expect("shuffle is a bijection"))
            }
            GroupSpec::GeneralLinear2 { p } => loop {
                let m = Element::Matrix([0; 4].map(|_| rng.gen_range(0..*p)));
                if self.contains(&m) {
                    break m;
                }
            },
            GroupSpec::Free { rank, max_len } => {
                let len = rng.gen_range(0..=word_len.unwrap_or(*max_len).min(*max_len));
                let rank = *rank as i32;
                let mut letters: Vec<i32> = Vec::with_capacity(len);
                while letters.len() < len {
                    let g = rng.gen_range(1..=rank) * if rng.gen() { 1 } else { -1 };
                    if letters.last() != Some(&-g) {
                        letters.push(g);
                    }
                }
                Element::Word(Word::reduced(letters).expect("nonzero letters"))
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { n } => write!(f, "zn:{n}"),
            GroupSpec::ProductOfCyclic { moduli } => {
                let parts: Vec<String> = moduli.iter().map(u64::to_string).collect();
                write!(f, "zprod:{}", parts.join(","))
            }
            GroupSpec::Dihedral { n } => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric { n } => write!(f, "sym:{n}"),
            GroupSpec::GeneralLinear2 { p } => write!(f, "gl2:{p}"),
            GroupSpec::Free { rank, max_len } => write!(f, "free:{rank}:{max_len}"),
        }
    }
}

impl From<GroupSpec> for String {
    fn from(g: GroupSpec) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for GroupSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Resource limits applied to set operations over a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Any set operation whose result would exceed this many elements fails
    /// with [`Error::SizeOverflow`].
    pub max_set_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_set_size: 1 << 22 }
    }
}

enum Ranker {
    MixedRadix(Vec<u64>),
    Dihedral,
    Perm,
    /// Indexed by `a*p^3 + b*p^2 + c*p + d`; `u32::MAX` marks singular matrices.
    Matrix { p: u32, lookup: Vec<u32> },
}

pub(crate) struct Dense {
    elements: Vec<Element>,
    ranker: Ranker,
    inverse: Vec<u32>,
    table: OnceLock<Option<Vec<u16>>>,
}

impl Dense {
    fn build(spec: &GroupSpec) -> Option<Dense> {
        let order = spec.finite_order()?;
        if order > DENSE_LIMIT {
            return None;
        }
        let elements = spec.enumerate().ok()?;
        let ranker = match spec {
            GroupSpec::Cyclic { .. } | GroupSpec::ProductOfCyclic { .. } => {
                Ranker::MixedRadix(spec.moduli().expect("abelian variant").to_vec())
            }
            GroupSpec::Dihedral { .. } => Ranker::Dihedral,
            GroupSpec::Symmetric { .. } => Ranker::Perm,
            GroupSpec::GeneralLinear2 { p } => {
                let p = *p;
                let mut lookup = vec![u32::MAX; (p as usize).pow(4)];
                for (r, e) in elements.iter().enumerate() {
                    if let Element::Matrix(m) = e {
                        lookup[Self::matrix_key(p, m)] = r as u32;
                    }
                }
                Ranker::Matrix { p, lookup }
            }
            GroupSpec::Free { .. } => return None,
        };
        let mut dense = Dense { elements, ranker, inverse: Vec::new(), table: OnceLock::new() };
        dense.inverse = (0..dense.elements.len())
            .map(|r| dense.rank(&spec.inv(&dense.elements[r])) as u32)
            .collect();
        Some(dense)
    }

    fn matrix_key(p: u32, m: &[u32; 4]) -> usize {
        let p = p as usize;
        ((m[0] as usize * p + m[1] as usize) * p + m[2] as usize) * p + m[3] as usize
    }

    pub(crate) fn order(&self) -> usize {
        self.elements.len()
    }

    pub(crate) fn element(&self, rank: usize) -> &Element {
        &self.elements[rank]
    }

    /// Rank of a valid element.
    pub(crate) fn rank(&self, e: &Element) -> usize {
        match (&self.ranker, e) {
            (Ranker::MixedRadix(m), Element::Residues(r)) => {
                r.iter().zip(m).fold(0u64, |acc, (x, m)| acc * m + x) as usize
            }
            (Ranker::Dihedral, Element::Dihedral { rot, reflect }) => (*rot as usize) * 2 + *reflect as usize,
            (Ranker::Perm, Element::Perm(p)) => p.lex_rank(),
            (Ranker::Matrix { p, lookup }, Element::Matrix(m)) => lookup[Self::matrix_key(*p, m)] as usize,
            _ => panic!("element encoding does not match group"),
        }
    }

    pub(crate) fn inv_rank(&self, r: usize) -> usize {
        self.inverse[r] as usize
    }

    fn table(&self, spec: &GroupSpec) -> Option<&[u16]> {
        self.table
            .get_or_init(|| {
                let n = self.elements.len();
                if n as u64 > TABLE_LIMIT {
                    return None;
                }
                let mut t = Vec::with_capacity(n * n);
                for a in &self.elements {
                    for b in &self.elements {
                        let ab = spec.mul(a, b).expect("finite groups never overflow");
                        t.push(self.rank(&ab) as u16);
                    }
                }
                Some(t)
            })
            .as_deref()
    }

    /// Row `a` of the multiplication table, when the group has one.
    pub(crate) fn row(&self, spec: &GroupSpec, a: usize) -> Option<&[u16]> {
        let n = self.elements.len();
        self.table(spec).map(|t| &t[a * n..(a + 1) * n])
    }

    pub(crate) fn mul_rank(&self, spec: &GroupSpec, a: usize, b: usize) -> usize {
        if let Some(t) = self.table(spec) {
            return t[a * self.elements.len() + b] as usize;
        }
        match &self.ranker {
            Ranker::MixedRadix(m) if m.len() == 1 => (a + b) % m[0] as usize,
            Ranker::Dihedral => {
                let n = self.elements.len() / 2;
                let (ra, fa) = (a / 2, a % 2 == 1);
                let (rb, fb) = (b / 2, b % 2 == 1);
                let rot = if fa { (ra + n - rb) % n } else { (ra + rb) % n };
                rot * 2 + (fa ^ fb) as usize
            }
            _ => {
                let ab = spec.mul(&self.elements[a], &self.elements[b]).expect("finite groups never overflow");
                self.rank(&ab)
            }
        }
    }
}

/// A group together with its enumeration index and resource limits.
///
/// Shared between sets through an [`Arc`]; immutable after construction.
pub struct Group {
    spec: GroupSpec,
    limits: Limits,
    dense: Option<Dense>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("spec", &self.spec).field("dense", &self.dense.is_some()).finish()
    }
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Arc<Group>> {
        Group::with_limits(spec, Limits::default())
    }

    pub fn with_limits(spec: GroupSpec, limits: Limits) -> Result<Arc<Group>> {
        spec.validate()?;
        let dense = Dense::build(&spec);
        Ok(Arc::new(Group { spec, limits, dense }))
    }

    /// Parses a group spec string such as `sym:5`.
    pub fn parse(s: &str) -> Result<Arc<Group>> {
        Group::new(s.parse()?)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn is_abelian(&self) -> bool {
        self.spec.is_abelian()
    }

    /// True when sets over this group are stored as bit vectors.
    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    pub(crate) fn dense(&self) -> Option<&Dense> {
        self.dense.as_ref()
    }

    pub fn identity(&self) -> Element {
        self.spec.identity()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.spec.mul(a, b)
    }

    pub fn inv(&self, a: &Element) -> Element {
        self.spec.inv(a)
    }

    pub fn parse_element(&self, s: &str) -> Result<Element> {
        self.spec.parse_element(s)
    }

    /// Enumeration rank of `e`, for dense groups.
    pub fn rank(&self, e: &Element) -> Option<usize> {
        let d = self.dense.as_ref()?;
        self.spec.contains(e).then(|| d.rank(e))
    }

    pub(crate) fn same_as(&self, other: &Group) -> bool {
        std::ptr::eq(self, other) || self.spec == other.spec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_specs() -> Vec<GroupSpec> {
        vec![
            GroupSpec::cyclic(10).unwrap(),
            GroupSpec::product_of_cyclic(vec![2, 3, 5]).unwrap(),
            GroupSpec::dihedral(4).unwrap(),
            GroupSpec::dihedral(5).unwrap(),
            GroupSpec::symmetric(3).unwrap(),
            GroupSpec::symmetric(4).unwrap(),
            GroupSpec::general_linear2(3).unwrap(),
        ]
    }

    #[test]
    fn mul_examples() {
        let z10 = GroupSpec::cyclic(10).unwrap();
        let r = z10.mul(&Element::Residues(vec![7]), &Element::Residues(vec![5])).unwrap();
        assert_eq!(r, Element::Residues(vec![2]));
        assert_eq!(z10.inv(&Element::Residues(vec![3])), Element::Residues(vec![7]));

        let f = GroupSpec::free(2, 8).unwrap();
        let x = f.parse_element("x1").unwrap();
        assert_eq!(f.mul(&x, &f.inv(&x)).unwrap(), f.identity());
        let xy = f.parse_element("x1 x2").unwrap();
        assert_eq!(f.inv(&xy).to_string(), "x2^-1 x1^-1");

        let gl = GroupSpec::general_linear2(5).unwrap();
        let m = gl.parse_element("[[1,1],[0,1]]").unwrap();
        assert_eq!(gl.inv(&m).to_string(), "[[1,4],[0,1]]");
    }

    #[test]
    fn free_length_overflow_is_an_error() {
        let f = GroupSpec::free(2, 3).unwrap();
        let a = f.parse_element("x1 x1").unwrap();
        let b = f.parse_element("x2 x2").unwrap();
        assert_eq!(f.mul(&a, &b), Err(Error::LengthOverflow { len: 4, max: 3 }));
        // cancellation keeps products short
        let c = f.parse_element("x1^-1 x2").unwrap();
        assert_eq!(f.mul(&a, &c).unwrap().to_string(), "x1 x2");
    }

    #[test]
    fn enumeration_sizes_and_order() {
        assert_eq!(GroupSpec::cyclic(4).unwrap().enumerate().unwrap().len(), 4);
        assert_eq!(GroupSpec::dihedral(3).unwrap().enumerate().unwrap().len(), 6);
        assert_eq!(GroupSpec::symmetric(4).unwrap().enumerate().unwrap().len(), 24);
        assert_eq!(GroupSpec::general_linear2(5).unwrap().enumerate().unwrap().len(), 480);
        for g in all_specs() {
            let els = g.enumerate().unwrap();
            assert_eq!(els.len() as u64, g.finite_order().unwrap());
            assert!(els.windows(2).all(|w| w[0] < w[1]), "{g} not in canonical order");
        }
        let z4: Vec<String> = GroupSpec::cyclic(4).unwrap().enumerate().unwrap().iter().map(|e| e.to_string()).collect();
        assert_eq!(z4, ["0", "1", "2", "3"]);
        assert!(matches!(GroupSpec::free(2, 4).unwrap().enumerate(), Err(Error::NotEnumerable(_))));
    }

    #[test]
    fn abelian_flags() {
        assert!(GroupSpec::cyclic(7).unwrap().is_abelian());
        assert!(GroupSpec::free(1, 5).unwrap().is_abelian());
        assert!(!GroupSpec::free(2, 5).unwrap().is_abelian());
        assert!(!GroupSpec::dihedral(3).unwrap().is_abelian());
        assert!(GroupSpec::symmetric(2).unwrap().is_abelian());
        assert!(!GroupSpec::symmetric(3).unwrap().is_abelian());
        assert_eq!(GroupSpec::free(2, 5).unwrap().order(), GroupOrder::Unbounded);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(GroupSpec::cyclic(0).is_err());
        assert!(GroupSpec::product_of_cyclic(vec![]).is_err());
        assert!(GroupSpec::dihedral(2).is_err());
        assert!(GroupSpec::symmetric(9).is_err());
        assert!(GroupSpec::general_linear2(9).is_err());
        assert!(GroupSpec::general_linear2(37).is_err());
        assert!(GroupSpec::free(0, 3).is_err());
        assert!(GroupSpec::free(2, 0).is_err());
    }

    #[test]
    fn exhaustive_group_axioms_on_small_groups() {
        for g in all_specs() {
            let els = g.enumerate().unwrap();
            let e = g.identity();
            for a in &els {
                assert_eq!(g.mul(&e, a).unwrap(), *a);
                assert_eq!(g.mul(a, &e).unwrap(), *a);
                assert_eq!(g.mul(a, &g.inv(a)).unwrap(), e);
                assert!(g.contains(a));
                for b in &els {
                    let ab = g.mul(a, b).unwrap();
                    assert!(g.contains(&ab));
                    if g.is_abelian() {
                        assert_eq!(ab, g.mul(b, a).unwrap());
                    }
                    if els.len() <= 24 {
                        for c in &els {
                            assert_eq!(g.mul(&ab, c).unwrap(), g.mul(a, &g.mul(b, c).unwrap()).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dense_ranks_and_tables_agree_with_spec() {
        for spec in all_specs().into_iter().chain([GroupSpec::symmetric(7).unwrap(), GroupSpec::general_linear2(7).unwrap()]) {
            let g = Group::new(spec.clone()).unwrap();
            let d = g.dense().unwrap();
            let els = spec.enumerate().unwrap();
            for (r, e) in els.iter().enumerate() {
                assert_eq!(d.rank(e), r);
                assert_eq!(d.element(r), e);
                assert_eq!(d.inv_rank(r), d.rank(&spec.inv(e)));
            }
            let step = (els.len() / 40).max(1);
            for a in (0..els.len()).step_by(step) {
                for b in (0..els.len()).step_by(step) {
                    let ab = spec.mul(&els[a], &els[b]).unwrap();
                    assert_eq!(d.mul_rank(&spec, a, b), d.rank(&ab));
                }
            }
        }
    }

    #[test]
    fn large_groups_are_sparse() {
        assert!(!Group::parse("gl2:17").unwrap().is_dense());
        assert!(!Group::parse("zn:100000").unwrap().is_dense());
        assert!(Group::parse("sym:8").unwrap().is_dense());
        assert!(!Group::parse("free:2:4").unwrap().is_dense());
    }
}
