//! Sumset inequalities in abelian groups.

use super::{bounds, int, size, Draft, TheoremId, TheoremReport, Verifier};
use crate::error::{Error, Result};
use crate::magnification::magnification;
use crate::rational::Rational;
use crate::setops::{inverse_set, power_or_identity, product, signed_sum, GSet};

pub(crate) fn nonempty(s: &GSet, what: &'static str) -> Result<()> {
    if s.is_empty() {
        Err(Error::EmptySet(what))
    } else {
        Ok(())
    }
}

fn require_abelian(s: &GSet, theorem: TheoremId) -> Result<()> {
    if s.group().is_abelian() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{theorem} needs an abelian group, got {}", s.group().spec())))
    }
}

/// `jB` written the usual way (`B`, `2B`, ...).
fn multiple(j: u32) -> String {
    if j == 1 {
        "B".into()
    } else {
        format!("{j}B")
    }
}

impl Verifier {
    /// `|X + hB| <= alpha^h |X|` for `h = 1..=h_max`, with one `X`
    /// (the magnification minimizer of `A`) shared by every `h`.
    pub fn verify_plunnecke(&self, a: &GSet, b: &GSet, h_max: u32) -> Result<Vec<TheoremReport>> {
        self.plunnecke_reports(TheoremId::PlunneckeH, a, b, h_max)
    }

    pub(crate) fn plunnecke_reports(
        &self,
        theorem: TheoremId,
        a: &GSet,
        b: &GSet,
        h_max: u32,
    ) -> Result<Vec<TheoremReport>> {
        require_abelian(a, theorem)?;
        nonempty(a, "set A")?;
        nonempty(b, "set B")?;
        if h_max == 0 {
            return Err(Error::Domain("h must be at least 1".into()));
        }
        let ab = product(a, b)?;
        let alpha = self.constant("alpha", Rational::new(size(&ab), size(a)), &self.alpha)?;
        let cert = magnification(a, b)?;
        let (x, k) = (&cert.x, &cert.k);

        let mut layers = vec![x.clone()];
        for j in 1..=h_max as usize {
            layers.push(product(&layers[j - 1], b)?);
        }

        let mut reports = Vec::with_capacity(h_max as usize);
        for h in 1..=h_max {
            let mut d = Draft::new(self, theorem, a);
            d.hyp("alpha", &alpha);
            d.hyp("K", k);
            d.param("h", h);
            d.param("x_size", size(x));
            d.le("|X+B| <= alpha|X|", d.m(&layers[1]), &alpha * size(x));
            for j in 2..=h {
                let (cur, prev) = (&layers[j as usize], &layers[j as usize - 1]);
                let label = format!("|X+{}| <= K|X+{}|", multiple(j), multiple(j - 1));
                d.le(label, d.m(cur), k * size(prev));
            }
            let bound = bounds::plunnecke(&alpha, h, size(x));
            let actual = d.m(&layers[h as usize]);
            d.le(format!("|X+{}| <= alpha^{h}|X|", multiple(h)), actual, bound.clone());
            reports.push(d.finish(bound, actual, size(x)));
        }
        Ok(reports)
    }

    /// `|kB - lB| <= alpha^(k+l) |A|` for `k + l > 1`.
    pub fn verify_ruzsa_kl(&self, a: &GSet, b: &GSet, k: u32, l: u32) -> Result<TheoremReport> {
        require_abelian(a, TheoremId::RuzsaKl)?;
        nonempty(a, "set A")?;
        nonempty(b, "set B")?;
        if k + l <= 1 {
            return Err(Error::Domain(format!("k + l must exceed 1, got k = {k}, l = {l}")));
        }
        let alpha = self.constant("alpha", Rational::new(size(&product(a, b)?), size(a)), &self.alpha)?;
        let cert = magnification(a, b)?;
        let x = &cert.x;
        let xk = product(x, &power_or_identity(b, k)?)?;
        let xl = product(x, &power_or_identity(b, l)?)?;
        let diff = signed_sum(b, k, l)?;

        let mut d = Draft::new(self, TheoremId::RuzsaKl, a);
        d.hyp("alpha", &alpha);
        d.hyp("K", &cert.k);
        d.param("k", k);
        d.param("l", l);
        d.param("x_size", size(x));
        d.le("triangle: |X||kB-lB| <= |X+kB||X+lB|", size(x) * d.m(&diff), int(size(&xk) * size(&xl)));
        d.le("|X+kB| <= alpha^k|X|", d.m(&xk), alpha.pow(k) * size(x));
        d.le("|X+lB| <= alpha^l|X|", d.m(&xl), alpha.pow(l) * size(x));
        d.le("|X| <= |A|", size(x), int(size(a)));
        let bound = bounds::ruzsa_kl(&alpha, k, l, size(a));
        let actual = d.m(&diff);
        d.le("|kB-lB| <= alpha^(k+l)|A|", actual, bound.clone());
        Ok(d.finish(bound, actual, size(a)))
    }

    /// `|X||Y - Z| <= |X + Y||X + Z|`.
    pub fn verify_triangle_abelian(&self, x: &GSet, y: &GSet, z: &GSet) -> Result<TheoremReport> {
        require_abelian(x, TheoremId::TriangleAbelian)?;
        nonempty(x, "set X")?;
        nonempty(y, "set Y")?;
        nonempty(z, "set Z")?;
        let diff = product(y, &inverse_set(z))?;
        let (xy, xz) = (product(x, y)?, product(x, z)?);
        let mut d = Draft::new(self, TheoremId::TriangleAbelian, x);
        let rhs = size(&xy) * size(&xz);
        d.le("|X||Y-Z| <= |X+Y||X+Z|", size(x) * d.m(&diff), int(rhs));
        let actual = d.m(&diff);
        Ok(d.finish(Rational::new(rhs, size(x)), actual, size(x)))
    }
}
