//! Product-set inequalities in arbitrary groups.

use super::abelian::nonempty;
use super::{bounds, decompose_cx, int, size, Draft, TheoremId, TheoremReport, Verifier};
use crate::covering::ruzsa_cover;
use crate::error::{Error, Result};
use crate::magnification::{magnification, self_minimality_witness};
use crate::rational::Rational;
use crate::setops::{inverse_set, mixed_product, power, product, product_all, GSet, Sign};

/// `B`, `B^2`, ... as labels.
fn pw(base: &str, n: u32) -> String {
    if n == 1 {
        base.to_string()
    } else {
        format!("{base}^{n}")
    }
}

/// `sum_{t in T} |L t R|`.
fn sum_translates(left: &GSet, t: &GSet, right: &GSet) -> Result<u64> {
    let mut total = 0;
    for e in t.iter() {
        let single = GSet::singleton(t.group(), e)?;
        total += size(&product_all(&[left, &single, right])?);
    }
    Ok(total)
}

/// `max_{b in B} |A b B| / |A|`.
fn beta_tight(a: &GSet, b: &GSet) -> Result<Rational> {
    let mut best = 0;
    for e in b.iter() {
        let single = GSet::singleton(a.group(), e)?;
        best = best.max(size(&product_all(&[a, &single, b])?));
    }
    Ok(Rational::new(best, size(a)))
}

/// Powers `B^0 .. B^h` with `B^0 = {e}`.
fn powers(b: &GSet, h: u32) -> Result<Vec<GSet>> {
    let mut out = vec![GSet::identity(b.group()), b.clone()];
    for j in 2..=h as usize {
        out.push(product(&out[j - 1], b)?);
    }
    Ok(out)
}

/// Intermediate sets of the triple ledger, reused by the power induction.
struct Triple {
    alpha: Rational,
    beta: Rational,
    /// `B A^-1 A T`.
    baiat: GSet,
    /// `B A^-1 A B^-1`.
    baiabi: GSet,
    /// `B T`.
    bt: GSet,
    /// `B T B`.
    btb: GSet,
}

/// Intermediate sets of the `SBB` ledger, reused by the `SB^h` induction.
struct Sbb {
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
    s: GSet,
    /// `S S^-1 S T`.
    sst: GSet,
    /// `S S^-1 S S^-1`.
    ssss: GSet,
    /// `S T`.
    st: GSet,
    /// `S T B`.
    stb: GSet,
    sb: GSet,
}

impl Verifier {
    /// `|CXB| <= K |CX|` for every `C`, where `X` minimizes `|ZB|/|Z|`
    /// over its own nonempty subsets and `K = |XB|/|X|`.
    pub fn verify_stronger_middle(&self, x: &GSet, b: &GSet, c: &GSet) -> Result<TheoremReport> {
        nonempty(x, "set X")?;
        nonempty(b, "set B")?;
        nonempty(c, "set C")?;
        let k = Rational::new(size(&product(x, b)?), size(x));
        if let Some(z) = self_minimality_witness(x, b, &k)? {
            return Err(Error::HypothesisViolation(format!(
                "X is not a minimizer of |ZB|/|Z| over its subsets: Z = {z} does better than K = {k}"
            )));
        }
        let dec = decompose_cx(c, x)?;
        let group = x.group();
        let mut d = Draft::new(self, TheoremId::StrongerMiddle, x);
        d.hyp("K", &k);
        d.param("c_size", size(c));
        let (mut cx, mut cxb) = (GSet::empty(group), GSet::empty(group));
        let xb = product(x, b)?;
        for (j, (ci, sum)) in dec.order.iter().zip(dec.prefix_sums()).enumerate() {
            let single = GSet::singleton(group, ci.clone())?;
            cx = cx.union(&product(&single, x)?)?;
            cxb = cxb.union(&product(&single, &xb)?)?;
            let j = j + 1;
            d.eq(format!("|{{c_1..c_{j}}}X| = sum_(i<={j}) |X_i|"), d.m(&cx), int(sum));
            d.le(format!("|{{c_1..c_{j}}}XB| <= K sum_(i<={j}) |X_i|"), d.m(&cxb), &k * sum);
        }
        let bound = &k * size(&cx);
        let actual = d.m(&cxb);
        d.le("|CXB| <= K|CX|", actual, bound.clone());
        Ok(d.finish(bound, actual, size(&cx)))
    }

    /// `|CXB| <= alpha |CX|` with `alpha = |AB|/|A|` and `X` the
    /// magnification minimizer of `A`.
    pub fn verify_middle(&self, a: &GSet, b: &GSet, c: &GSet) -> Result<TheoremReport> {
        nonempty(a, "set A")?;
        nonempty(b, "set B")?;
        nonempty(c, "set C")?;
        let alpha = self.constant("alpha", Rational::new(size(&product(a, b)?), size(a)), &self.alpha)?;
        let cert = magnification(a, b)?;
        let x = &cert.x;
        let xb = product(x, b)?;
        let cx = product(c, x)?;
        let cxb = product(&cx, b)?;

        let mut d = Draft::new(self, TheoremId::Middle, a);
        d.hyp("alpha", &alpha);
        d.hyp("K", &cert.k);
        d.param("x_size", size(x));
        d.le("|XB| <= alpha|X|", d.m(&xb), &alpha * size(x));
        d.le("|CXB| <= K|CX|", d.m(&cxb), &cert.k * size(&cx));
        let bound = &alpha * size(&cx);
        let actual = d.m(&cxb);
        d.le("|CXB| <= alpha|CX|", actual, bound.clone());
        Ok(d.finish(bound, actual, size(&cx)))
    }

    /// `|X||YZ| <= |YX^-1||XZ|`.
    pub fn verify_triangle(&self, x: &GSet, y: &GSet, z: &GSet) -> Result<TheoremReport> {
        nonempty(x, "set X")?;
        nonempty(y, "set Y")?;
        nonempty(z, "set Z")?;
        let yz = product(y, z)?;
        let yxi = product(y, &inverse_set(x))?;
        let xz = product(x, z)?;
        let rhs = size(&yxi) * size(&xz);
        let mut d = Draft::new(self, TheoremId::Triangle, x);
        d.le("|X||YZ| <= |YX^-1||XZ|", size(x) * d.m(&yz), int(rhs));
        let actual = d.m(&yz);
        Ok(d.finish(Rational::new(rhs, size(x)), actual, size(x)))
    }

    /// Steps bounding `|BA^-1AB^-1|` by `alpha^6 |B|` from `|BB| <= alpha|B|`
    /// and `|BAB| <= alpha^2 |B|`. Returns `BA^-1AB^-1`.
    fn b_inv_steps(&self, d: &mut Draft, a: &GSet, b: &GSet, alpha: &Rational) -> Result<GSet> {
        let (ai, bi) = (inverse_set(a), inverse_set(b));
        let ba = product(b, a)?;
        let bab = product(&ba, b)?;
        let babi = product(&ba, &bi)?;
        let bai = product(b, &ai)?;
        let baibi = product(&bai, &bi)?;
        let baiabi = product_all(&[&bai, a, &bi])?;
        let bb = product(b, b)?;
        let nb = size(b);
        d.le(
            "triangle X=B, Y=BA^-1, Z=AB^-1: |B||BA^-1AB^-1| <= |BA^-1B^-1||BAB^-1|",
            nb * d.m(&baiabi),
            int(size(&baibi) * size(&babi)),
        );
        d.eq("|BA^-1B^-1| = |BAB^-1|", d.m(&baibi), int(size(&babi)));
        d.le(
            "triangle X=B^-1, Y=BA, Z=B^-1: |B||BAB^-1| <= |BAB||BB|",
            nb * d.m(&babi),
            int(size(&bab) * size(&bb)),
        );
        d.le("|BAB^-1| <= alpha^3|B|", d.m(&babi), alpha.pow(3) * nb);
        d.le("|BA^-1AB^-1| <= alpha^6|B|", d.m(&baiabi), bounds::b_inv_chain(alpha, nb));
        Ok(baiabi)
    }

    /// `|BA^-1AB^-1| <= alpha^6 |B|` given `|BB| <= alpha|B|` and
    /// `|BAB| <= alpha^2 |B|`.
    pub fn verify_b_inv_chain(&self, a: &GSet, b: &GSet) -> Result<TheoremReport> {
        nonempty(a, "set A")?;
        nonempty(b, "set B")?;
        let bb = product(b, b)?;
        let alpha = self.constant("alpha", Rational::new(size(&bb), size(b)), &self.alpha)?;
        let bab = product_all(&[b, a, b])?;
        let mut d = Draft::new(self, TheoremId::BInvChain, b);
        d.hyp("alpha", &alpha);
        d.param("bab_size", size(&bab));
        let cap = alpha.pow(2) * size(b);
        if Rational::from_integer(size(&bab)) > cap {
            d.hypothesis_not_met(format!("|BAB| = {} exceeds alpha^2|B| = {cap}", size(&bab)));
        }
        let baiabi = self.b_inv_steps(&mut d, a, b, &alpha)?;
        let bound = bounds::b_inv_chain(&alpha, size(b));
        let actual = d.m(&baiabi);
        Ok(d.finish(bound, actual, size(b)))
    }

    fn triple_steps(&self, d: &mut Draft, b: &GSet) -> Result<Triple> {
        let bb = product(b, b)?;
        let nb = size(b);
        let alpha = self.constant("alpha", Rational::new(size(&bb), nb), &self.alpha)?;
        let beta = self.constant("beta", beta_tight(b, b)?, &self.beta)?;
        let cert = magnification(b, b)?;
        let (a, k) = (&cert.x, &cert.k);
        d.hyp("alpha", &alpha);
        d.hyp("beta", &beta);
        d.hyp("K", k);
        d.param("a_size", size(a));

        let ab = product(a, b)?;
        let ba = product(b, a)?;
        let bab = product(&ba, b)?;
        d.le("|AB| <= alpha|A|", d.m(&ab), &alpha * size(a));
        d.le("middle with C=B: |BAB| <= K|BA|", d.m(&bab), k * size(&ba));
        d.le("|BA| <= |BB|", d.m(&ba), int(size(&bb)));
        d.le("|BAB| <= alpha^2|B|", d.m(&bab), alpha.pow(2) * nb);

        let cover = ruzsa_cover(a, b)?;
        let t = &cover.t;
        let ai = inverse_set(a);
        d.param("t_size", size(t));
        d.le("cover: |T| <= K", size(t), k.clone());
        d.le("|T| <= alpha", size(t), alpha.clone());
        d.contained("cover: B in A^-1AT", b, &product_all(&[&ai, a, t])?)?;

        let baiabi = self.b_inv_steps(d, a, b, &alpha)?;

        let bt = product(b, t)?;
        let btb = product(&bt, b)?;
        let sum = sum_translates(b, t, b)?;
        d.le("|BTB| <= sum_t |BtB|", d.m(&btb), int(sum));
        d.le("sum_t |BtB| <= |T| beta|B|", sum, &beta * (size(t) * nb));
        d.le("|BTB| <= alpha beta|B|", d.m(&btb), &alpha * &beta * nb);

        let baiat = product_all(&[b, &ai, a, t])?;
        let baiatb = product(&baiat, b)?;
        let bbb = product(&bb, b)?;
        d.contained("BBB in BA^-1ATB", &bbb, &baiatb)?;
        d.le(
            "triangle X=B, Y=BA^-1A, Z=TB: |B||BA^-1ATB| <= |BA^-1AB^-1||BTB|",
            nb * d.m(&baiatb),
            int(size(&baiabi) * size(&btb)),
        );
        d.le("|BBB| <= alpha^7 beta|B|", d.m(&bbb), bounds::triple(&alpha, &beta, nb));
        Ok(Triple { alpha, beta, baiat, baiabi, bt, btb })
    }

    /// `|BBB| <= alpha^7 beta |B|` with `alpha = |BB|/|B|` and
    /// `beta = max_b |BbB|/|B|`.
    pub fn verify_triple(&self, b: &GSet) -> Result<TheoremReport> {
        nonempty(b, "set B")?;
        let mut d = Draft::new(self, TheoremId::Triple, b);
        let tr = self.triple_steps(&mut d, b)?;
        let bound = bounds::triple(&tr.alpha, &tr.beta, size(b));
        let actual = d.m(&power(b, 3)?);
        Ok(d.finish(bound, actual, size(b)))
    }

    /// `|B^h| <= alpha^(8h-17) beta^(h-2) |B|` for `h > 2`.
    pub fn verify_tao_power(&self, b: &GSet, h: u32) -> Result<TheoremReport> {
        nonempty(b, "set B")?;
        if h <= 2 {
            return Err(Error::Domain(format!("h must exceed 2, got {h}")));
        }
        let mut d = Draft::new(self, TheoremId::TaoPower, b);
        d.param("h", h);
        d.scope("h=3");
        let tr = self.triple_steps(&mut d, b)?;
        let (alpha, beta) = (&tr.alpha, &tr.beta);
        let nb = size(b);
        let pws = powers(b, h)?;
        let bi = inverse_set(b);
        let bibi = product(&bi, &bi)?;
        for j in 4..=h {
            let ju = j as usize;
            d.scope(format!("h={j}"));
            let (cur, prev, tail) = (&pws[ju], &pws[ju - 1], &pws[ju - 2]);
            let (bj, bj1, bj2) = (pw("B", j), pw("B", j - 1), pw("B", j - 2));
            let baiat_tail = product(&tr.baiat, tail)?;
            let bt_tail = product(&tr.bt, tail)?;
            let bi_tail = product(&bi, tail)?;
            d.contained(format!("{bj} in BA^-1AT{bj2}"), cur, &baiat_tail)?;
            d.le(
                format!("triangle X=B, Y=BA^-1A, Z=T{bj2}: |B||BA^-1AT{bj2}| <= |BA^-1AB^-1||BT{bj2}|"),
                nb * d.m(&baiat_tail),
                int(size(&tr.baiabi) * size(&bt_tail)),
            );
            d.le(
                format!("triangle X=B^-1, Y=BT, Z={bj2}: |B||BT{bj2}| <= |BTB||B^-1{bj2}|"),
                nb * d.m(&bt_tail),
                int(size(&tr.btb) * size(&bi_tail)),
            );
            d.le(
                format!("triangle X=B, Y=B^-1, Z={bj2}: |B||B^-1{bj2}| <= |B^-1B^-1||{bj1}|"),
                nb * d.m(&bi_tail),
                int(size(&bibi) * size(prev)),
            );
            d.le(format!("|B^-1{bj2}| <= alpha|{bj1}|"), d.m(&bi_tail), alpha * size(prev));
            d.le(
                format!("|{bj}| <= alpha^8 beta|{bj1}|"),
                d.m(cur),
                alpha.pow(8) * beta * size(prev),
            );
        }
        d.scope("");
        let bound = bounds::tao_power(alpha, beta, h, nb);
        d.param("inductive_bound_matches", bound == bounds::tao_power_inductive(alpha, beta, h, nb));
        d.param("h3_matches_triple", bounds::tao_power(alpha, beta, 3, nb) == bounds::triple(alpha, beta, nb));
        d.note("the middle factor in |B^-1 B^(j-2)| is read as B^-1 (the inverse of B)");
        let actual = d.m(&pws[h as usize]);
        d.le(format!("|{}| <= alpha^{} beta^{}|B|", pw("B", h), 8 * h - 17, h - 2), actual, bound.clone());
        Ok(d.finish(bound, actual, nb))
    }

    /// `|B^{e_1} ... B^{e_h}| <= (alpha^7 beta)^(2h) |B|`.
    pub fn verify_alternating(&self, b: &GSet, signs: &[Sign]) -> Result<TheoremReport> {
        nonempty(b, "set B")?;
        if signs.is_empty() {
            return Err(Error::Domain("the sign pattern must have length at least 1".into()));
        }
        let h = signs.len() as u32;
        let nb = size(b);
        let alpha = self.constant("alpha", Rational::new(size(&power(b, 2)?), nb), &self.alpha)?;
        let beta = self.constant("beta", beta_tight(b, b)?, &self.beta)?;
        let mixed = mixed_product(b, signs)?;
        let mut d = Draft::new(self, TheoremId::Alternating, b);
        d.hyp("alpha", &alpha);
        d.hyp("beta", &beta);
        d.param("h", h);
        d.param("signs", Sign::format_list(signs));
        d.le("|BBB| <= alpha^7 beta|B|", d.m(&power(b, 3)?), bounds::triple(&alpha, &beta, nb));
        d.note("stated without a proof; the ledger holds only the triple bound it builds on");
        let bound = bounds::alternating(&alpha, &beta, h, nb);
        let actual = d.m(&mixed);
        d.le(format!("|mixed product| <= (alpha^7 beta)^{}|B|", 2 * h), actual, bound.clone());
        Ok(d.finish(bound, actual, nb))
    }

    /// Steps bounding `|SS^-1SS^-1|` for an `S` satisfying
    /// `|CSB| <= alpha |CS|`. Returns `SS^-1SS^-1`.
    fn s_chain_steps(&self, d: &mut Draft, s: &GSet, b: &GSet, alpha: &Rational) -> Result<GSet> {
        let si = inverse_set(s);
        let (ns, nb) = (size(s), size(b));
        let ssi = product(s, &si)?;
        let sis = product(&si, s)?;
        let ssis = product(&ssi, s)?;
        let ssss = product(&ssis, &si)?;
        let sb = product(s, b)?;
        let ssisb = product(&ssis, b)?;
        let sisb = product(&sis, b)?;

        d.le(
            "triangle X=B^-1, Y=SS^-1S, Z=S^-1: |B||SS^-1SS^-1| <= |SS^-1SB||SB|",
            nb * d.m(&ssss),
            int(size(&ssisb) * size(&sb)),
        );
        d.le("|SS^-1SB| <= alpha|SS^-1S|", d.m(&ssisb), alpha * size(&ssis));
        d.le("|SB| <= alpha|S|", d.m(&sb), alpha * ns);
        d.le(
            "|SS^-1SS^-1| <= alpha^2|SS^-1S||S|/|B|",
            d.m(&ssss),
            alpha.pow(2) * Rational::new(size(&ssis) * ns, nb),
        );
        d.le(
            "triangle X=B^-1, Y=S, Z=S^-1S: |B||SS^-1S| <= |SB||S^-1SB|",
            nb * d.m(&ssis),
            int(size(&sb) * size(&sisb)),
        );
        d.le("|S^-1SB| <= alpha|S^-1S|", d.m(&sisb), alpha * size(&sis));
        d.le(
            "|SS^-1S| <= alpha^2|S||S^-1S|/|B|",
            d.m(&ssis),
            alpha.pow(2) * Rational::new(ns * size(&sis), nb),
        );
        d.le(
            "|SS^-1S| <= alpha^2|S||SS^-1|/|B| (uses |S^-1S| = |SS^-1|)",
            d.m(&ssis),
            alpha.pow(2) * Rational::new(ns * size(&ssi), nb),
        );
        d.le("triangle X=B^-1, Y=S, Z=S^-1: |B||SS^-1| <= |SB|^2", nb * d.m(&ssi), int(size(&sb).pow(2)));
        d.le("|SS^-1| <= alpha^2|S|^2/|B|", d.m(&ssi), alpha.pow(2) * Rational::new(ns * ns, nb));
        d.le("|SS^-1SS^-1| <= alpha^6(|S|/|B|)^3|S|", d.m(&ssss), bounds::s_chain(alpha, ns, nb));
        Ok(ssss)
    }

    /// `|SS^-1SS^-1| <= alpha^6 (|S|/|B|)^3 |S|` for `S` with
    /// `|CSB| <= alpha |CS|` for all `C`. The hypothesis is certified by `S`
    /// minimizing `|ZB|/|Z|` over its own subsets, with `alpha = |SB|/|S|`.
    pub fn verify_s_chain(&self, s: &GSet, b: &GSet) -> Result<TheoremReport> {
        nonempty(s, "set S")?;
        nonempty(b, "set B")?;
        let k = Rational::new(size(&product(s, b)?), size(s));
        let alpha = self.constant("alpha", k.clone(), &self.alpha)?;
        let mut d = Draft::new(self, TheoremId::SChain, s);
        d.hyp("alpha", &alpha);
        if let Some(z) = self_minimality_witness(s, b, &k)? {
            d.hypothesis_not_met(format!(
                "S does not minimize |ZB|/|Z| over its subsets (Z = {z}), so |CSB| <= alpha|CS| is not certified"
            ));
        }
        let ssss = self.s_chain_steps(&mut d, s, b, &alpha)?;
        d.note("the step marked 'uses |S^-1S| = |SS^-1|' is not an identity in nonabelian groups and can fail");
        let bound = bounds::s_chain(&alpha, size(s), size(b));
        let actual = d.m(&ssss);
        Ok(d.finish(bound, actual, size(s)))
    }

    fn sbb_steps(&self, d: &mut Draft, a: &GSet, b: &GSet) -> Result<Sbb> {
        let (na, nb) = (size(a), size(b));
        let alpha = self.constant("alpha", Rational::new(size(&product(a, b)?), na), &self.alpha)?;
        let beta = self.constant("beta", beta_tight(a, b)?, &self.beta)?;
        let gamma = self.constant("gamma", Rational::new(na, nb), &self.gamma)?;
        let cert = magnification(a, b)?;
        let (s, k) = (cert.x.clone(), &cert.k);
        let ns = size(&s);
        d.hyp("alpha", &alpha);
        d.hyp("beta", &beta);
        d.hyp("gamma", &gamma);
        d.hyp("K", k);
        d.param("s_size", ns);

        let sb = product(&s, b)?;
        d.le("|SB| <= alpha|S|", d.m(&sb), &alpha * ns);
        let cover = ruzsa_cover(&s, b)?;
        let t = &cover.t;
        d.param("t_size", size(t));
        d.le("cover: |T| <= K", size(t), k.clone());
        d.le("|T| <= alpha", size(t), alpha.clone());
        let si = inverse_set(&s);
        d.contained("cover: B in S^-1ST", b, &product_all(&[&si, &s, t])?)?;

        let sst = product_all(&[&s, &si, &s, t])?;
        let sstb = product(&sst, b)?;
        let sbb = product(&sb, b)?;
        d.contained("SBB in SS^-1STB", &sbb, &sstb)?;
        let ssss = self.s_chain_steps(d, &s, b, &alpha)?;
        let st = product(&s, t)?;
        let stb = product(&st, b)?;
        d.le(
            "triangle X=S, Y=SS^-1S, Z=TB: |S||SS^-1STB| <= |SS^-1SS^-1||STB|",
            ns * d.m(&sstb),
            int(size(&ssss) * size(&stb)),
        );
        d.le(
            "|SS^-1SS^-1| <= alpha^6 gamma^2|S|^2/|B|",
            d.m(&ssss),
            alpha.pow(6) * gamma.pow(2) * Rational::new(ns * ns, nb),
        );
        let sum_s = sum_translates(&s, t, b)?;
        let sum_a = sum_translates(a, t, b)?;
        d.le("|STB| <= sum_t |StB|", d.m(&stb), int(sum_s));
        d.le("sum_t |StB| <= sum_t |AtB|", sum_s, int(sum_a));
        d.le("sum_t |AtB| <= |T| beta|A|", sum_a, &beta * (size(t) * na));
        d.le("|STB| <= alpha beta|A|", d.m(&stb), &alpha * &beta * na);
        d.le("|SBB| <= alpha^7 beta gamma^3|S|", d.m(&sbb), bounds::sbb(&alpha, &beta, &gamma, ns));
        d.note("T covers B by translates of S (B in S^-1ST), as the triangle step on SS^-1STB requires");
        Ok(Sbb { alpha, beta, gamma, s, sst, ssss, st, stb, sb })
    }

    /// `|SBB| <= alpha^7 beta gamma^3 |S|` with `S` the magnification
    /// minimizer of `A`, `alpha = |AB|/|A|`, `beta = max_b |AbB|/|A|`,
    /// `gamma = |A|/|B|`.
    pub fn verify_sbb(&self, a: &GSet, b: &GSet) -> Result<TheoremReport> {
        nonempty(a, "set A")?;
        nonempty(b, "set B")?;
        let mut d = Draft::new(self, TheoremId::Sbb, a);
        let c = self.sbb_steps(&mut d, a, b)?;
        let ns = size(&c.s);
        let bound = bounds::sbb(&c.alpha, &c.beta, &c.gamma, ns);
        let actual = d.m(&product_all(&[&c.sb, b])?);
        Ok(d.finish(bound, actual, ns))
    }

    /// `|SB^h| <= alpha^(8h-9) beta^(h-1) gamma^(4h-5) |S|` for `h >= 2`.
    pub fn verify_sb_h(&self, a: &GSet, b: &GSet, h: u32) -> Result<TheoremReport> {
        nonempty(a, "set A")?;
        nonempty(b, "set B")?;
        if h < 2 {
            return Err(Error::Domain(format!("h must be at least 2, got {h}")));
        }
        let mut d = Draft::new(self, TheoremId::SbH, a);
        d.param("h", h);
        d.scope("h=2");
        let c = self.sbb_steps(&mut d, a, b)?;
        let (alpha, beta, gamma) = (&c.alpha, &c.beta, &c.gamma);
        let (ns, nb) = (size(&c.s), size(b));
        let pws = powers(b, h)?;
        let bi = inverse_set(b);
        let mut sbs = vec![GSet::empty(b.group()), c.sb.clone()];
        for j in 2..=h as usize {
            sbs.push(product(&sbs[j - 1], b)?);
        }
        for j in 3..=h {
            let ju = j as usize;
            d.scope(format!("h={j}"));
            let (bj, bj1) = (pw("B", j), pw("B", j - 1));
            let (cur, prev, tail) = (&sbs[ju], &sbs[ju - 1], &pws[ju - 1]);
            let sst_tail = product(&c.sst, tail)?;
            let st_tail = product(&c.st, tail)?;
            let bi_tail = product(&bi, tail)?;
            d.contained(format!("S{bj} in SS^-1ST{bj1}"), cur, &sst_tail)?;
            d.le(
                format!("triangle X=S, Y=SS^-1S, Z=T{bj1}: |S||SS^-1ST{bj1}| <= |SS^-1SS^-1||ST{bj1}|"),
                ns * d.m(&sst_tail),
                int(size(&c.ssss) * size(&st_tail)),
            );
            d.le(
                format!("triangle X=B^-1, Y=ST, Z={bj1}: |B||ST{bj1}| <= |STB||B^-1{bj1}|"),
                nb * d.m(&st_tail),
                int(size(&c.stb) * size(&bi_tail)),
            );
            d.le("|STB| <= alpha beta gamma|B|", d.m(&c.stb), alpha * beta * gamma * nb);
            d.le(
                format!("triangle X=S, Y=B^-1, Z={bj1}: |S||B^-1{bj1}| <= |B^-1S^-1||S{bj1}|"),
                ns * d.m(&bi_tail),
                int(size(&c.sb) * size(prev)),
            );
            d.le(format!("|B^-1{bj1}| <= alpha|S{bj1}|"), d.m(&bi_tail), alpha * size(prev));
            d.le(
                format!("|S{bj}| <= alpha^8 beta gamma^4|S{bj1}|"),
                d.m(cur),
                alpha.pow(8) * beta * gamma.pow(4) * size(prev),
            );
        }
        d.scope("");
        let bound = bounds::sb_h(alpha, beta, gamma, h, ns);
        d.param("inductive_bound_matches", bound == bounds::sb_h_inductive(alpha, beta, gamma, h, ns));
        let actual = d.m(&sbs[h as usize]);
        d.le(
            format!("|S{}| <= alpha^{} beta^{} gamma^{}|S|", pw("B", h), 8 * h - 9, h - 1, 4 * h - 5),
            actual,
            bound.clone(),
        );
        Ok(d.finish(bound, actual, ns))
    }
}
