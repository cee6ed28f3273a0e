//! Ruzsa covering: `T` in `B` with `|T| <= |AB|/|A|` and `B` in `A^{-1} A T`,
//! built greedily from a maximal family of disjoint translates `At`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::setops::{inverse_set, product, product_all, GSet};

/// Order in which `B` is scanned by the greedy construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanOrder {
    #[default]
    Canonical,
    Reverse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCertificate {
    #[serde(rename = "T")]
    pub t: GSet,
    /// `|AB| / |A|`.
    pub size_bound: Rational,
    /// `B` is contained in `A^{-1} A T`.
    pub covered: bool,
    /// The translates `At` are pairwise disjoint.
    pub disjoint: bool,
    /// `|T| <= size_bound`.
    pub within_bound: bool,
    pub order: ScanOrder,
}

impl CoverCertificate {
    pub fn is_valid(&self) -> bool {
        self.covered && self.disjoint && self.within_bound
    }
}

/// Greedy cover scanning `B` in canonical order.
pub fn ruzsa_cover(a: &GSet, b: &GSet) -> Result<CoverCertificate> {
    ruzsa_cover_with_order(a, b, ScanOrder::Canonical)
}

pub fn ruzsa_cover_with_order(a: &GSet, b: &GSet, order: ScanOrder) -> Result<CoverCertificate> {
    if a.is_empty() {
        return Err(Error::EmptySet("covering set A"));
    }
    if b.is_empty() {
        return Err(Error::EmptySet("covered set B"));
    }
    let mut elements = b.elements();
    if order == ScanOrder::Reverse {
        elements.reverse();
    }
    let group = a.group();
    let mut union = GSet::empty(group);
    let mut kept = Vec::new();
    for x in elements {
        let translate = product(a, &GSet::singleton(group, x.clone())?)?;
        if translate.is_disjoint(&union)? {
            union = union.union(&translate)?;
            kept.push(x);
        }
    }
    let t = GSet::from_elements(group, kept)?;
    let mut cert = CoverCertificate {
        t,
        size_bound: Rational::zero(),
        covered: false,
        disjoint: false,
        within_bound: false,
        order,
    };
    check_cover(&mut cert, a, b)?;
    Ok(cert)
}

/// Recomputes the three certificate properties from scratch and stores them.
pub fn check_cover(cert: &mut CoverCertificate, a: &GSet, b: &GSet) -> Result<bool> {
    let ab = product(a, b)?;
    cert.size_bound = Rational::new(ab.len() as u64, a.len() as u64);

    let group = a.group();
    let mut seen = GSet::empty(group);
    let mut disjoint = true;
    for x in cert.t.iter() {
        let translate = product(a, &GSet::singleton(group, x)?)?;
        if !translate.is_disjoint(&seen)? {
            disjoint = false;
        }
        seen = seen.union(&translate)?;
    }
    cert.disjoint = disjoint;
    cert.within_bound = cert.t.is_subset(b)? && !cert.t.is_empty() && (cert.t.len() * a.len()) as u64 <= ab.len() as u64;
    let cover = product_all(&[&inverse_set(a), a, &cert.t])?;
    cert.covered = b.is_subset(&cover)?;
    Ok(cert.is_valid())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    fn set(g: &std::sync::Arc<Group>, s: &str) -> GSet {
        GSet::parse(g, s).unwrap()
    }

    #[test]
    fn subgroup_needs_one_translate() {
        let g = Group::parse("sym:4").unwrap();
        let h = set(&g, "subgroup:(1 2 3 4);(1 2)");
        let b = set(&g, "{(1 2),(2 3),(1 3 4)}");
        let cert = ruzsa_cover(&h, &b).unwrap();
        assert_eq!(cert.t, GSet::singleton(&g, b.first().unwrap()).unwrap());
        assert!(cert.is_valid());
        assert_eq!(cert.size_bound, Rational::one());
    }

    #[test]
    fn z10_example() {
        let g = Group::parse("zn:10").unwrap();
        let (a, b) = (set(&g, "{0,1}"), set(&g, "{0,5}"));
        let cert = ruzsa_cover(&a, &b).unwrap();
        assert_eq!(cert.t, b);
        assert_eq!(cert.size_bound, Rational::from_integer(2));
        assert!(cert.is_valid());
        let cover = product_all(&[&inverse_set(&a), &a, &cert.t]).unwrap();
        assert_eq!(cover, set(&g, "{9,0,1,4,5,6}"));
    }

    #[test]
    fn generic_points_are_tight() {
        let g = Group::parse("zprod:5,7").unwrap();
        let a = set(&g, "subgroup:(1,0)");
        let b = set(&g, "{(0,1),(1,2),(2,4)}");
        let cert = ruzsa_cover(&a, &b).unwrap();
        assert_eq!(cert.t, b);
        assert_eq!(cert.size_bound, Rational::from_integer(3));
        assert!(cert.is_valid());
    }

    #[test]
    fn reverse_order_differs_but_verifies() {
        let g = Group::parse("zn:12").unwrap();
        let (a, b) = (set(&g, "{0,1}"), set(&g, "{0,1,2,3}"));
        let fwd = ruzsa_cover(&a, &b).unwrap();
        let rev = ruzsa_cover_with_order(&a, &b, ScanOrder::Reverse).unwrap();
        assert_eq!(fwd.t, set(&g, "{0,2}"));
        assert_eq!(rev.t, set(&g, "{1,3}"));
        assert!(fwd.is_valid() && rev.is_valid());
    }

    #[test]
    fn tampered_cover_fails_checks() {
        let g = Group::parse("zn:10").unwrap();
        let (a, b) = (set(&g, "{0,1}"), set(&g, "{0,1,5}"));
        let mut cert = ruzsa_cover(&a, &b).unwrap();
        assert!(cert.is_valid());
        cert.t = set(&g, "{0,1}");
        assert!(!check_cover(&mut cert, &a, &b).unwrap());
        assert!(!cert.disjoint);
        cert.t = set(&g, "{0}");
        assert!(!check_cover(&mut cert, &a, &b).unwrap());
        assert!(!cert.covered);
    }
}
