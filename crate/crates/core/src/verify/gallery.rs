//! Fixed instances: a nonabelian set with small doubling and large tripling,
//! and abelian instances showing the sumset bound is attained.

use std::sync::Arc;

use super::{int, size, Draft, TheoremId, TheoremReport, Verifier};
use crate::error::Result;
use crate::group::{Element, Group};
use crate::rational::Rational;
use crate::setops::{left_translate, power, product, product_all, GSet};

/// `(group, H, x, A)` in `S_6` with `H = Sym{1,2,3}`, `x = (1 4)(2 5)(3 6)`
/// and `A = H u {x}`.
pub fn counterexample_sets() -> Result<(Arc<Group>, GSet, Element, GSet)> {
    let g = Group::parse("sym:6")?;
    let h = GSet::parse(&g, "subgroup:(1 2 3);(1 2)")?;
    let x = g.parse_element("(1 4)(2 5)(3 6)")?;
    let a = h.union(&GSet::singleton(&g, x.clone())?)?;
    Ok((g, h, x, a))
}

/// An abelian pair with `|A + hB| = C(|B|+h-1, h) |A|` for small `h`.
#[derive(Clone, Debug)]
pub struct SharpnessInstance {
    pub name: &'static str,
    pub a: GSet,
    pub b: GSet,
}

pub fn sharpness_instances() -> Result<Vec<SharpnessInstance>> {
    let g1 = Group::parse("zprod:5,7")?;
    let g2 = Group::parse("zprod:3,11,13")?;
    Ok(vec![
        SharpnessInstance {
            name: "Z5xZ7",
            a: GSet::parse(&g1, "subgroup:(1,0)")?,
            b: GSet::parse(&g1, "{(0,1),(1,2),(2,4)}")?,
        },
        SharpnessInstance {
            name: "Z3xZ11xZ13",
            a: GSet::parse(&g2, "subgroup:(1,0,0)")?,
            b: GSet::parse(&g2, "{(0,0,0),(0,1,1),(0,7,7)}")?,
        },
    ])
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
}

impl Verifier {
    /// `|AA| <= 3|A|` while `|AAA| >= (|A|-1)^2` for the fixed `S_6` instance.
    pub fn gallery_counterexample(&self) -> Result<TheoremReport> {
        let (g, h, x, a) = counterexample_sets()?;
        let hxh = product_all(&[&h, &GSet::singleton(&g, x.clone())?, &h])?;
        let conj = left_translate(&x, &product(&h, &GSet::singleton(&g, g.inv(&x))?)?)?;
        let aa = power(&a, 2)?;
        let aaa = power(&a, 3)?;

        let mut d = Draft::new(self, TheoremId::GalleryCounterexample, &a);
        d.lower();
        let na = size(&a);
        d.hyp("alpha", &Rational::new(size(&aa), na));
        d.param("h_size", size(&h));
        d.param("hxh_size", size(&hxh));
        d.param("aa_size", size(&aa));
        d.param("aaa_size", size(&aaa));
        d.eq("|H| = 6", size(&h), int(6));
        d.eq("|H n xHx^-1| = 1", size(&h.intersection(&conj)?), int(1));
        d.eq("|HxH| = |H|^2", d.m(&hxh), int(size(&h).pow(2)));
        d.contained("HxH in AAA", &hxh, &aaa)?;
        d.le("|AA| <= 3|A|", d.m(&aa), int(3 * na));
        d.note("H = Sym{1,2,3} in S_6, x = (1 4)(2 5)(3 6), A = H u {x}");
        let bound = int((na - 1).pow(2));
        let actual = d.m(&aaa);
        d.ge("|AAA| >= (|A|-1)^2", actual, bound.clone());
        Ok(d.finish(bound, actual, na))
    }

    /// The sumset ledger on each sharpness instance for `h = 1..=h_max`,
    /// with the binomial count reported alongside.
    pub fn gallery_sharpness(&self, h_max: u32) -> Result<Vec<TheoremReport>> {
        let mut out = Vec::new();
        for inst in sharpness_instances()? {
            let reports = self.plunnecke_reports(TheoremId::GallerySharpness, &inst.a, &inst.b, h_max)?;
            for (h, mut r) in (1..).zip(reports) {
                let x = r.params["x_size"].as_u64().unwrap_or(0);
                let predicted = binomial(size(&inst.b) + h - 1, h) * x;
                r.params.insert("instance".into(), inst.name.into());
                r.params.insert("binomial_size".into(), predicted.into());
                r.params.insert("binomial_matches".into(), (r.actual == predicted).into());
                out.push(r);
            }
        }
        Ok(out)
    }
}
