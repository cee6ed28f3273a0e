//! Finite subsets of a group and the product-set algebra over them.
//!
//! Sets over groups of order at most [`DENSE_LIMIT`](crate::group::DENSE_LIMIT)
//! are bit vectors indexed by enumeration rank; everything else (large
//! finite groups, free groups) uses sorted canonical element vectors.
//! Both representations present the same canonical order.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Dense(FixedBitSet),
    Sparse(Vec<Element>),
}

/// Finite set of elements of one group, kept in canonical order.
#[derive(Clone)]
pub struct GSet {
    group: Arc<Group>,
    repr: Repr,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.repr == other.repr
    }
}

impl Eq for GSet {}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.group.spec(), self)
    }
}

impl fmt::Display for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for GSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl GSet {
    pub fn empty(group: &Arc<Group>) -> GSet {
        let repr = match group.dense() {
            Some(d) => Repr::Dense(FixedBitSet::with_capacity(d.order())),
            None => Repr::Sparse(Vec::new()),
        };
        GSet { group: Arc::clone(group), repr }
    }

    /// Validates, sorts and deduplicates.
    pub fn from_elements(group: &Arc<Group>, elements: impl IntoIterator<Item = Element>) -> Result<GSet> {
        let cap = group.limits().max_set_size;
        let repr = match group.dense() {
            Some(d) => {
                let mut bits = FixedBitSet::with_capacity(d.order());
                for e in elements {
                    group.spec().check(&e)?;
                    bits.insert(d.rank(&e));
                }
                Repr::Dense(bits)
            }
            None => {
                let mut v = Vec::new();
                for e in elements {
                    group.spec().check(&e)?;
                    v.push(e);
                }
                v.sort_unstable();
                v.dedup();
                Repr::Sparse(v)
            }
        };
        let set = GSet { group: Arc::clone(group), repr };
        if set.len() > cap {
            return Err(Error::SizeOverflow { cap });
        }
        Ok(set)
    }

    pub fn singleton(group: &Arc<Group>, e: Element) -> Result<GSet> {
        GSet::from_elements(group, [e])
    }

    /// `{e}`.
    pub fn identity(group: &Arc<Group>) -> GSet {
        GSet::from_elements(group, [group.identity()]).expect("identity is valid")
    }

    /// Every element of a finite group.
    pub fn whole(group: &Arc<Group>) -> Result<GSet> {
        GSet::from_elements(group, group.spec().enumerate()?)
    }

    /// Subgroup generated by `generators` (closure under products and inverses).
    pub fn subgroup(group: &Arc<Group>, generators: &[Element]) -> Result<GSet> {
        let cap = group.limits().max_set_size;
        let mut gens: Vec<Element> = Vec::new();
        for g in generators {
            group.spec().check(g)?;
            gens.push(g.clone());
            gens.push(group.inv(g));
        }
        let mut seen: HashSet<Element> = HashSet::new();
        let mut frontier = vec![group.identity()];
        seen.insert(group.identity());
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = group.mul(&x, g)?;
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::SizeOverflow { cap });
                    }
                    frontier.push(y);
                }
            }
        }
        GSet::from_elements(group, seen)
    }

    /// Parses a set expression: `{0,1,2}`, `subgroup:g1;g2`, `all`, `identity`,
    /// or a `|`-separated union of those.
    pub fn parse(group: &Arc<Group>, literal: &str) -> Result<GSet> {
        let mut acc = GSet::empty(group);
        for term in literal.split('|') {
            let term = term.trim();
            let set = if let Some(body) = term.strip_prefix('{').and_then(|b| b.strip_suffix('}')) {
                let els = split_top_level(body, ',')
                    .into_iter()
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| group.parse_element(t))
                    .collect::<Result<Vec<_>>>()?;
                GSet::from_elements(group, els)?
            } else if let Some(gens) = term.strip_prefix("subgroup:") {
                let gens = gens
                    .split(';')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| group.parse_element(t))
                    .collect::<Result<Vec<_>>>()?;
                GSet::subgroup(group, &gens)?
            } else if term == "all" {
                GSet::whole(group)?
            } else if term == "identity" {
                GSet::identity(group)
            } else {
                return Err(Error::Parse(format!(
                    "set term `{term}` must be `{{...}}`, `subgroup:...`, `all` or `identity`"
                )));
            };
            acc = acc.union(&set)?;
        }
        Ok(acc)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Dense(b) => b.count_ones(..),
            Repr::Sparse(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match &self.repr {
            Repr::Dense(b) => b.is_clear(),
            Repr::Sparse(v) => v.is_empty(),
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        match &self.repr {
            Repr::Dense(b) => self.group.rank(e).is_some_and(|r| b.contains(r)),
            Repr::Sparse(v) => v.binary_search(e).is_ok(),
        }
    }

    /// Elements in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        let (dense, sparse) = match &self.repr {
            Repr::Dense(b) => {
                let d = self.group.dense().expect("dense group");
                (Some(b.ones().map(move |r| d.element(r).clone())), None)
            }
            Repr::Sparse(v) => (None, Some(v.iter().cloned())),
        };
        dense.into_iter().flatten().chain(sparse.into_iter().flatten())
    }

    pub fn elements(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.iter().map(|e| e.to_string()).collect()
    }

    pub fn first(&self) -> Option<Element> {
        self.iter().next()
    }

    fn check_same_group(&self, other: &GSet) -> Result<()> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(self.group.spec().to_string(), other.group.spec().to_string()))
        }
    }

    fn with_repr(&self, repr: Repr) -> GSet {
        GSet { group: Arc::clone(&self.group), repr }
    }

    pub fn is_subset(&self, other: &GSet) -> Result<bool> {
        self.check_same_group(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => a.is_subset(b),
            _ => self.iter().all(|e| other.contains(&e)),
        })
    }

    pub fn is_disjoint(&self, other: &GSet) -> Result<bool> {
        self.check_same_group(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => a.is_disjoint(b),
            _ => self.iter().all(|e| !other.contains(&e)),
        })
    }

    pub fn union(&self, other: &GSet) -> Result<GSet> {
        self.check_same_group(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => {
                let mut u = a.clone();
                u.union_with(b);
                Repr::Dense(u)
            }
            (Repr::Sparse(a), Repr::Sparse(b)) => {
                let mut v: Vec<Element> = a.iter().chain(b).cloned().collect();
                v.sort_unstable();
                v.dedup();
                Repr::Sparse(v)
            }
            _ => unreachable!("one group, one representation"),
        };
        let out = self.with_repr(repr);
        let cap = self.group.limits().max_set_size;
        if out.len() > cap {
            return Err(Error::SizeOverflow { cap });
        }
        Ok(out)
    }

    pub fn intersection(&self, other: &GSet) -> Result<GSet> {
        self.check_same_group(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => {
                let mut u = a.clone();
                u.intersect_with(b);
                self.with_repr(Repr::Dense(u))
            }
            (Repr::Sparse(a), _) => {
                self.with_repr(Repr::Sparse(a.iter().filter(|e| other.contains(e)).cloned().collect()))
            }
            _ => unreachable!("one group, one representation"),
        })
    }

    pub fn difference(&self, other: &GSet) -> Result<GSet> {
        self.check_same_group(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => {
                let mut u = a.clone();
                u.difference_with(b);
                self.with_repr(Repr::Dense(u))
            }
            (Repr::Sparse(a), _) => {
                self.with_repr(Repr::Sparse(a.iter().filter(|e| !other.contains(e)).cloned().collect()))
            }
            _ => unreachable!("one group, one representation"),
        })
    }

    /// Subset picked by positions into the canonical order.
    pub fn select(&self, positions: impl IntoIterator<Item = usize>) -> GSet {
        let els = self.elements();
        GSet::from_elements(&self.group, positions.into_iter().map(|i| els[i].clone()))
            .expect("subset of a valid set")
    }
}

/// Splits `s` at `sep` characters that are not nested in brackets.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Exponent sign in alternating products such as `B B^{-1} B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    /// Parses a comma-separated list such as `+,-,+`.
    pub fn parse_list(s: &str) -> Result<Vec<Sign>> {
        s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.parse()).collect()
    }

    pub fn format_list(signs: &[Sign]) -> String {
        signs.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "-1" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("sign must be + or -, got `{other}`"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `A * B = {ab : a in A, b in B}`.
pub fn product(a: &GSet, b: &GSet) -> Result<GSet> {
    a.check_same_group(b)?;
    let group = &a.group;
    let cap = group.limits().max_set_size;
    match (&a.repr, &b.repr) {
        (Repr::Dense(x), Repr::Dense(y)) => {
            let d = group.dense().expect("dense group");
            let spec = group.spec();
            let mut out = FixedBitSet::with_capacity(d.order());
            let ys: Vec<usize> = y.ones().collect();
            for i in x.ones() {
                if let Some(row) = d.row(spec, i) {
                    for &j in &ys {
                        out.insert(row[j] as usize);
                    }
                } else {
                    for &j in &ys {
                        out.insert(d.mul_rank(spec, i, j));
                    }
                }
            }
            let out = a.with_repr(Repr::Dense(out));
            if out.len() > cap {
                return Err(Error::SizeOverflow { cap });
            }
            Ok(out)
        }
        (Repr::Sparse(x), Repr::Sparse(y)) => {
            let mut seen: HashSet<Element> = HashSet::with_capacity(x.len().saturating_mul(y.len()).min(1 << 16));
            for p in x {
                for q in y {
                    seen.insert(group.mul(p, q)?);
                    if seen.len() > cap {
                        return Err(Error::SizeOverflow { cap });
                    }
                }
            }
            let mut v: Vec<Element> = seen.into_iter().collect();
            v.sort_unstable();
            Ok(a.with_repr(Repr::Sparse(v)))
        }
        _ => unreachable!("one group, one representation"),
    }
}

/// Product of a whole sequence, left-associated.
pub fn product_all(sets: &[&GSet]) -> Result<GSet> {
    let (first, rest) = sets.split_first().ok_or_else(|| Error::Domain("empty product".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, s| product(&acc, s))
}

/// `{c}X`.
pub fn left_translate(c: &Element, x: &GSet) -> Result<GSet> {
    product(&GSet::singleton(x.group(), c.clone())?, x)
}

/// `A^{-1} = {a^{-1} : a in A}`.
pub fn inverse_set(a: &GSet) -> GSet {
    match &a.repr {
        Repr::Dense(bits) => {
            let d = a.group.dense().expect("dense group");
            let mut out = FixedBitSet::with_capacity(d.order());
            out.extend(bits.ones().map(|r| d.inv_rank(r)));
            a.with_repr(Repr::Dense(out))
        }
        Repr::Sparse(v) => {
            let mut out: Vec<Element> = v.iter().map(|e| a.group.inv(e)).collect();
            out.sort_unstable();
            a.with_repr(Repr::Sparse(out))
        }
    }
}

/// `B^h = B * ... * B` (h factors, left-associated). Requires `h >= 1`.
pub fn power(b: &GSet, h: u32) -> Result<GSet> {
    if h == 0 {
        return Err(Error::Domain("power needs h >= 1".into()));
    }
    power_or_identity(b, h)
}

/// Like [`power`] but `B^0 = {e}`.
pub(crate) fn power_or_identity(b: &GSet, h: u32) -> Result<GSet> {
    let mut acc = GSet::identity(b.group());
    for i in 0..h {
        acc = if i == 0 { b.clone() } else { product(&acc, b)? };
    }
    Ok(acc)
}

/// `kB - lB` in an abelian group (`0B = {0}`); requires `k + l >= 1`.
pub fn signed_sum(b: &GSet, k: u32, l: u32) -> Result<GSet> {
    if !b.group.is_abelian() {
        return Err(Error::Unsupported(format!("kB - lB needs an abelian group, got {}", b.group.spec())));
    }
    if k + l == 0 {
        return Err(Error::Domain("signed sum needs k + l >= 1".into()));
    }
    let pos = power_or_identity(b, k)?;
    let neg = power_or_identity(&inverse_set(b), l)?;
    product(&pos, &neg)
}

/// `B B^{e_1} ... B^{e_h} B^{-1}`, left-associated.
pub fn mixed_product(b: &GSet, signs: &[Sign]) -> Result<GSet> {
    let b_inv = inverse_set(b);
    let mut acc = b.clone();
    for s in signs {
        acc = product(&acc, if *s == Sign::Plus { b } else { &b_inv })?;
    }
    product(&acc, &b_inv)
}

/// Exact `|AB| / |A|`.
pub fn ratio(a: &GSet, b: &GSet) -> Result<Rational> {
    if a.is_empty() {
        return Err(Error::EmptySet("ratio numerator set A"));
    }
    if b.is_empty() {
        return Err(Error::EmptySet("ratio multiplier set B"));
    }
    let ab = product(a, b)?;
    Ok(Rational::new(ab.len() as u64, a.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &Arc<Group>, s: &str) -> GSet {
        GSet::parse(g, s).unwrap()
    }

    #[test]
    fn product_examples() {
        let z10 = Group::parse("zn:10").unwrap();
        assert_eq!(product(&set(&z10, "{0,1,2}"), &set(&z10, "{0,1}")).unwrap(), set(&z10, "{0,1,2,3}"));
        let a = set(&z10, "{3,7,8}");
        assert_eq!(product(&a, &GSet::identity(&z10)).unwrap(), a);
    }

    #[test]
    fn inverse_examples() {
        let z10 = Group::parse("zn:10").unwrap();
        assert_eq!(inverse_set(&set(&z10, "{1,3}")), set(&z10, "{7,9}"));
        let h = set(&z10, "subgroup:2");
        assert_eq!(h.len(), 5);
        assert_eq!(inverse_set(&h), h);
    }

    #[test]
    fn power_examples() {
        let z20 = Group::parse("zn:20").unwrap();
        let b = set(&z20, "{0,1}");
        assert_eq!(power(&b, 1).unwrap(), b);
        let b5 = power(&b, 5).unwrap();
        assert_eq!(b5, set(&z20, "{0,1,2,3,4,5}"));
        let h = set(&z20, "subgroup:5");
        assert_eq!(power(&h, 4).unwrap(), h);
        assert!(power(&b, 0).is_err());
    }

    #[test]
    fn signed_sum_examples() {
        let z10 = Group::parse("zn:10").unwrap();
        let b = set(&z10, "{0,1}");
        assert_eq!(signed_sum(&b, 1, 0).unwrap(), b);
        assert_eq!(signed_sum(&b, 1, 1).unwrap(), set(&z10, "{9,0,1}"));
        assert!(signed_sum(&b, 0, 0).is_err());
        let s3 = Group::parse("sym:3").unwrap();
        assert!(matches!(signed_sum(&GSet::identity(&s3), 1, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn signed_sum_matches_nested_loops() {
        let z100 = Group::parse("zn:100").unwrap();
        let b = [0i64, 1, 10];
        let mut oracle = std::collections::BTreeSet::new();
        for x in b {
            for y in b {
                for z in b {
                    oracle.insert((x + y - z).rem_euclid(100));
                }
            }
        }
        let got = signed_sum(&set(&z100, "{0,1,10}"), 2, 1).unwrap();
        assert_eq!(got.len(), oracle.len());
        let want: Vec<String> = oracle.iter().map(|v| v.to_string()).collect();
        assert_eq!(got.to_strings(), want);
    }

    #[test]
    fn mixed_product_examples() {
        let s4 = Group::parse("sym:4").unwrap();
        let h = set(&s4, "subgroup:(1 2 3);(1 2)");
        assert_eq!(h.len(), 6);
        assert_eq!(mixed_product(&h, &[Sign::Plus, Sign::Minus, Sign::Minus]).unwrap(), h);
        let b = set(&s4, "{(1 2),(2 3 4),(1 4)(2 3)}");
        assert_eq!(mixed_product(&b, &[]).unwrap(), product(&b, &inverse_set(&b)).unwrap());

        // nested-loop oracle for B B B^-1 B^-1 on D_8
        let d8 = Group::parse("dihedral:8").unwrap();
        let b = set(&d8, "{r1,r3s,r6}");
        let els = b.elements();
        let mut oracle = HashSet::new();
        for p in &els {
            for q in &els {
                for r in &els {
                    for s in &els {
                        let x = d8.mul(&d8.mul(&d8.mul(p, q).unwrap(), &d8.inv(r)).unwrap(), &d8.inv(s)).unwrap();
                        oracle.insert(x);
                    }
                }
            }
        }
        assert_eq!(mixed_product(&b, &[Sign::Plus, Sign::Minus]).unwrap().len(), oracle.len());
    }

    #[test]
    fn ratio_examples() {
        let z10 = Group::parse("zn:10").unwrap();
        assert_eq!(ratio(&set(&z10, "{0,1,2}"), &set(&z10, "{0,1}")).unwrap(), Rational::new(4, 3));
        assert_eq!(ratio(&set(&z10, "{4,5}"), &GSet::identity(&z10)).unwrap(), Rational::one());
        let z57 = Group::parse("zprod:5,7").unwrap();
        let a = set(&z57, "subgroup:(1,0)");
        let b = set(&z57, "{(0,1),(1,2),(2,4)}");
        assert_eq!(product(&a, &b).unwrap().len(), 15);
        assert_eq!(ratio(&a, &b).unwrap(), Rational::from_integer(3));
        assert!(matches!(ratio(&GSet::empty(&z10), &a.clone()), Err(Error::GroupMismatch(..)) | Err(Error::EmptySet(_))));
        assert!(matches!(ratio(&GSet::empty(&z10), &set(&z10, "{1}")), Err(Error::EmptySet(_))));
    }

    #[test]
    fn sparse_and_free_products() {
        let big = Group::parse("zn:1000003").unwrap();
        assert!(!big.is_dense());
        let a = set(&big, "{0,1,2}");
        let b = set(&big, "{0,1000002}");
        assert_eq!(product(&a, &b).unwrap().to_strings(), ["0", "1", "2", "1000002"]);

        let f = Group::parse("free:2:3").unwrap();
        let a = set(&f, "{x1, x2}");
        assert_eq!(power(&a, 3).unwrap().len(), 8);
        assert!(matches!(power(&a, 4), Err(Error::LengthOverflow { .. })));
        let w = set(&f, "{x1, x1^-1}");
        assert_eq!(product(&w, &w).unwrap().to_strings(), ["e", "x1^-1 x1^-1", "x1 x1"]);
    }

    #[test]
    fn size_cap_is_enforced() {
        let spec = "free:2:10".parse().unwrap();
        let g = Group::with_limits(spec, crate::group::Limits { max_set_size: 20 }).unwrap();
        let a = set(&g, "{x1,x2,x1^-1,x2^-1}");
        assert!(power(&a, 2).is_ok());
        assert_eq!(power(&a, 3), Err(Error::SizeOverflow { cap: 20 }));
    }

    #[test]
    fn set_literals() {
        let s6 = Group::parse("sym:6").unwrap();
        let a = set(&s6, "subgroup:(1 2 3);(1 2) | {(1 4)(2 5)(3 6)}");
        assert_eq!(a.len(), 7);
        let gl = Group::parse("gl2:3").unwrap();
        assert_eq!(set(&gl, "{[[1,1],[0,1]], [[1,0],[0,1]]}").len(), 2);
        assert!(GSet::parse(&gl, "[[1,1],[0,1]]").is_err());
        assert!(set(&gl, "{}").is_empty());
        assert_eq!(set(&gl, "all").len(), 48);
        let other = Group::parse("sym:5").unwrap();
        assert!(matches!(product(&a, &GSet::identity(&other)), Err(Error::GroupMismatch(..))));
    }
}
