//! Magnification ratio `K = min { |ZB| / |Z| : Z nonempty subset of A }`.
//!
//! Two exact solvers: exhaustive subset search ([`magnification_brute`]) and
//! a Dinkelbach iteration over parametric minimum cuts
//! ([`magnification_flow`]).
//!
//! Minimizers are selected by maximum cardinality, then by lexicographically
//! least element sequence. The ratio-`K` minimizers are closed under union
//! (`|(Y u Z)B| <= |YB| + |ZB| - |(Y n Z)B|`), so the maximum-cardinality
//! minimizer is unique and both solvers return the same set.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INF};
use crate::group::Element;
use crate::rational::Rational;
use crate::setops::{product, GSet};

/// Largest `|A|` accepted by [`magnification_brute`].
pub const BRUTE_FORCE_CAP: usize = 20;
/// Largest `|A| * |AB|` accepted by [`magnification_flow`].
pub const FLOW_GRAPH_CAP: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Brute,
    Flow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MagnificationCertificate {
    #[serde(rename = "K")]
    pub k: Rational,
    #[serde(rename = "X")]
    pub x: GSet,
    pub method: Method,
    /// The solver re-checked `X` is a nonempty subset of `A` with `|XB| = K|X|`.
    pub verified: bool,
    /// Dinkelbach rounds (flow) or 0 (brute).
    pub iterations: u64,
    /// Subsets scored (brute) or minimum cuts solved (flow).
    pub candidates_examined: u64,
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub valid: bool,
    /// A nonempty `Z` in `X` with `r(Z) < K`, when minimality fails.
    pub witness: Option<GSet>,
    pub reason: Option<String>,
}

/// Neighbourhoods `aB` of the elements of `A`, as indices into `AB`.
struct Growth {
    /// `nbrs[i]` lists the indices of `a_i B` in the canonical order of `AB`.
    nbrs: Vec<Vec<u32>>,
    right: usize,
}

fn growth(a: &GSet, b: &GSet) -> Result<Growth> {
    let ab = product(a, b)?;
    let bs = b.elements();
    let group = a.group();
    let index: HashMap<Element, u32> = ab.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
    let mut nbrs = Vec::with_capacity(a.len());
    for x in a.iter() {
        let mut row = Vec::with_capacity(bs.len());
        for y in &bs {
            row.push(index[&group.mul(&x, y)?]);
        }
        nbrs.push(row);
    }
    Ok(Growth { nbrs, right: ab.len() })
}

fn check_inputs(a: &GSet, b: &GSet) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptySet("magnification set A"));
    }
    if b.is_empty() {
        return Err(Error::EmptySet("magnification set B"));
    }
    if !a.group().same_as(b.group()) {
        return Err(Error::GroupMismatch(a.group().spec().to_string(), b.group().spec().to_string()));
    }
    Ok(())
}

/// `true` when `(num, den, positions)` beats the incumbent under the
/// ratio / cardinality / lexicographic order.
fn better(num: u64, den: u64, pos: &[usize], best: &Option<(u64, u64, Vec<usize>)>) -> bool {
    let Some((bn, bd, bpos)) = best else { return true };
    let (lhs, rhs) = (num as u128 * *bd as u128, *bn as u128 * den as u128);
    if lhs != rhs {
        return lhs < rhs;
    }
    if pos.len() != bpos.len() {
        return pos.len() > bpos.len();
    }
    pos < bpos.as_slice()
}

/// Exhaustive minimum over all `2^|A| - 1` nonempty subsets.
pub fn magnification_brute(a: &GSet, b: &GSet) -> Result<MagnificationCertificate> {
    check_inputs(a, b)?;
    if a.len() > BRUTE_FORCE_CAP {
        return Err(Error::Capacity(format!(
            "|A| = {} exceeds the brute-force cap of {BRUTE_FORCE_CAP}; use the flow method",
            a.len()
        )));
    }
    let g = growth(a, b)?;
    let n = g.nbrs.len();
    let rows: Vec<FixedBitSet> = g
        .nbrs
        .iter()
        .map(|r| {
            let mut f = FixedBitSet::with_capacity(g.right);
            f.extend(r.iter().map(|&i| i as usize));
            f
        })
        .collect();

    // Depth-first over include/exclude decisions, carrying the union ZB.
    let mut best: Option<(u64, u64, Vec<usize>)> = None;
    let mut stack: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(g.right)];
    let mut chosen: Vec<usize> = Vec::new();
    fn walk(
        i: usize,
        n: usize,
        rows: &[FixedBitSet],
        stack: &mut Vec<FixedBitSet>,
        chosen: &mut Vec<usize>,
        best: &mut Option<(u64, u64, Vec<usize>)>,
    ) {
        if i == n {
            if !chosen.is_empty() {
                let num = stack.last().expect("root").count_ones(..) as u64;
                if better(num, chosen.len() as u64, chosen, best) {
                    *best = Some((num, chosen.len() as u64, chosen.clone()));
                }
            }
            return;
        }
        let mut next = stack.last().expect("root").clone();
        next.union_with(&rows[i]);
        stack.push(next);
        chosen.push(i);
        walk(i + 1, n, rows, stack, chosen, best);
        chosen.pop();
        stack.pop();
        walk(i + 1, n, rows, stack, chosen, best);
    }
    walk(0, n, &rows, &mut stack, &mut chosen, &mut best);

    let (num, den, pos) = best.expect("A is nonempty");
    finish(a, b, Rational::new(num, den), a.select(pos), Method::Brute, 0, (1u64 << n) - 1)
}

fn finish(
    a: &GSet,
    b: &GSet,
    k: Rational,
    x: GSet,
    method: Method,
    iterations: u64,
    candidates_examined: u64,
) -> Result<MagnificationCertificate> {
    let xb = product(&x, b)?;
    let verified = !x.is_empty() && x.is_subset(a)? && Rational::new(xb.len() as u64, x.len() as u64) == k;
    Ok(MagnificationCertificate { k, x, method, verified, iterations, candidates_examined })
}

/// Builds the network `s -> a (cap p)`, `a -> y (inf)`, `y -> t (cap q)` for
/// `lambda = p / q` and returns `(min cut - p|A|, network)`.
fn parametric_cut(g: &Growth, p: u64, q: u64) -> (i64, FlowNetwork) {
    let n = g.nbrs.len();
    let (s, t) = (n + g.right, n + g.right + 1);
    let mut net = FlowNetwork::new(n + g.right + 2);
    for (i, row) in g.nbrs.iter().enumerate() {
        net.add_edge(s, i, p as i64);
        for &y in row {
            net.add_edge(i, n + y as usize, INF);
        }
    }
    for y in 0..g.right {
        net.add_edge(n + y, t, q as i64);
    }
    let flow = net.max_flow(s, t);
    (flow - (p * n as u64) as i64, net)
}

/// Dinkelbach iteration over parametric minimum cuts, exact on integers.
///
/// Starting from `lambda = r(A)`, each round finds `Z` minimizing
/// `q|N(Z)| - p|Z|` for `lambda = p/q`; a strictly negative optimum has a
/// nonempty inclusion-minimal minimizer, whose ratio becomes the next
/// `lambda`. At the fixed point the inclusion-maximal minimum cut is the
/// maximum-cardinality minimizer.
pub fn magnification_flow(a: &GSet, b: &GSet) -> Result<MagnificationCertificate> {
    check_inputs(a, b)?;
    let g = growth(a, b)?;
    let n = g.nbrs.len();
    let edges = n as u64 * g.right as u64;
    if edges > FLOW_GRAPH_CAP {
        return Err(Error::Capacity(format!("growth graph |A||AB| = {edges} exceeds the cap of {FLOW_GRAPH_CAP}")));
    }
    let (mut p, mut q) = (g.right as u64, n as u64);
    let mut iterations = 0;
    loop {
        iterations += 1;
        let (objective, net) = parametric_cut(&g, p, q);
        if objective < 0 {
            let side = net.min_source_side(n + g.right);
            let z: Vec<usize> = (0..n).filter(|&i| side[i]).collect();
            debug_assert!(!z.is_empty());
            let mut nb = FixedBitSet::with_capacity(g.right);
            for &i in &z {
                nb.extend(g.nbrs[i].iter().map(|&y| y as usize));
            }
            p = nb.count_ones(..) as u64;
            q = z.len() as u64;
            continue;
        }
        debug_assert_eq!(objective, 0);
        let side = net.max_source_side(n + g.right + 1);
        let x: Vec<usize> = (0..n).filter(|&i| side[i]).collect();
        return finish(a, b, Rational::new(p, q), a.select(x), Method::Flow, iterations, iterations);
    }
}

/// Brute force when `|A|` is within the cap, flow otherwise.
pub fn magnification(a: &GSet, b: &GSet) -> Result<MagnificationCertificate> {
    if a.len() <= BRUTE_FORCE_CAP {
        magnification_brute(a, b)
    } else {
        magnification_flow(a, b)
    }
}

/// A nonempty `Z` in `X` with `r(Z) < K`, or `None` when `X` minimizes the
/// ratio over its own subsets.
pub fn self_minimality_witness(x: &GSet, b: &GSet, k: &Rational) -> Result<Option<GSet>> {
    let inner = magnification(x, b)?;
    Ok((inner.k < *k).then_some(inner.x))
}

/// Re-checks a certificate against `A` and `B`.
///
/// Always checks `X` is a nonempty subset of `A` with `|XB| = K|X|`. With
/// `exhaustive`, also checks `K <= r(Z)` for every nonempty `Z` in `X`: by
/// enumeration when `|X| <= BRUTE_FORCE_CAP`, otherwise by an exact flow
/// solve over the subsets of `X`.
pub fn verify_certificate(
    cert: &MagnificationCertificate,
    a: &GSet,
    b: &GSet,
    exhaustive: bool,
) -> Result<CertificateCheck> {
    let fail = |reason: String, witness: Option<GSet>| CertificateCheck { valid: false, witness, reason: Some(reason) };
    if cert.x.is_empty() {
        return Ok(fail("X is empty".into(), None));
    }
    if !cert.x.is_subset(a)? {
        return Ok(fail("X is not a subset of A".into(), None));
    }
    let xb = product(&cert.x, b)?;
    if Rational::new(xb.len() as u64, cert.x.len() as u64) != cert.k {
        return Ok(fail(format!("|XB| = {} but K|X| = {}", xb.len(), &cert.k * cert.x.len() as u64), None));
    }
    if exhaustive {
        if let Some(z) = self_minimality_witness(&cert.x, b, &cert.k)? {
            let r = Rational::new(product(&z, b)?.len() as u64, z.len() as u64);
            return Ok(fail(format!("subset Z of X has r(Z) = {r} < K = {}", cert.k), Some(z)));
        }
    }
    Ok(CertificateCheck { valid: true, witness: None, reason: None })
}
