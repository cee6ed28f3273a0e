//! Independent reimplementations checked against the library's Cayley tables
//! and product sets.

use std::collections::BTreeSet;

use setcalc::setops::{power, product, GSet};
use setcalc::verify::{self, Status, TheoremId};
use setcalc::{Element, Group};

fn perm_matrix(images: &[usize]) -> Vec<Vec<u8>> {
    let n = images.len();
    let mut m = vec![vec![0; n]; n];
    for (i, &j) in images.iter().enumerate() {
        m[j][i] = 1;
    }
    m
}

fn mat_mul(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn images(e: &Element) -> Vec<usize> {
    match e {
        Element::Perm(p) => (0..p.degree()).map(|i| p.apply(i)).collect(),
        _ => panic!("not a permutation"),
    }
}

#[test]
fn s3_table_matches_permutation_matrices() {
    let g = Group::parse("sym:3").unwrap();
    let all = g.spec().enumerate().unwrap();
    assert_eq!(all.len(), 6);
    for a in &all {
        for b in &all {
            let ab = g.mul(a, b).unwrap();
            assert_eq!(perm_matrix(&images(&ab)), mat_mul(&perm_matrix(&images(a)), &perm_matrix(&images(b))));
        }
        assert_eq!(perm_matrix(&images(&g.mul(a, &g.inv(a)).unwrap())), perm_matrix(&[0, 1, 2]));
    }
}

/// Action of `r^rot s^reflect` on the vertices of the n-gon, with
/// `r: i -> i + 1` and `s: i -> -i`.
fn dihedral_action(e: &Element, n: i64) -> Vec<i64> {
    let Element::Dihedral { rot, reflect } = e else { panic!("not dihedral") };
    (0..n)
        .map(|i| {
            let s = if *reflect { -i } else { i };
            (s + *rot as i64).rem_euclid(n)
        })
        .collect()
}

#[test]
fn d4_table_matches_vertex_action() {
    let n = 4;
    let g = Group::parse("dihedral:4").unwrap();
    let all = g.spec().enumerate().unwrap();
    assert_eq!(all.len(), 8);
    let distinct: BTreeSet<_> = all.iter().map(|e| dihedral_action(e, n)).collect();
    assert_eq!(distinct.len(), 8);
    for a in &all {
        for b in &all {
            let (fa, fb) = (dihedral_action(a, n), dihedral_action(b, n));
            let composed: Vec<i64> = (0..n as usize).map(|i| fa[fb[i] as usize]).collect();
            assert_eq!(dihedral_action(&g.mul(a, b).unwrap(), n), composed);
        }
    }
    // r^4 = s^2 = e and s r s = r^-1
    let r = g.parse_element("r").unwrap();
    let s = g.parse_element("s").unwrap();
    let mut x = g.identity();
    for _ in 0..4 {
        x = g.mul(&x, &r).unwrap();
    }
    assert_eq!(x, g.identity());
    assert_eq!(g.mul(&s, &s).unwrap(), g.identity());
    assert_eq!(g.mul(&g.mul(&s, &r).unwrap(), &s).unwrap(), g.inv(&r));
}

#[test]
fn gl2_table_matches_naive_matrix_product() {
    for p in [2u32, 3, 5] {
        let g = Group::parse(&format!("gl2:{p}")).unwrap();
        let all = g.spec().enumerate().unwrap();
        let q = p as u64;
        assert_eq!(all.len() as u64, (q * q - 1) * (q * q - q));
        let step = if p == 5 { 7 } else { 1 };
        for a in all.iter().step_by(step) {
            for b in all.iter().step_by(step) {
                let (Element::Matrix(x), Element::Matrix(y)) = (a, b) else { panic!() };
                let m = |i: usize, j: usize| (0..2).map(|k| x[2 * i + k] * y[2 * k + j]).sum::<u32>() % p;
                assert_eq!(g.mul(a, b).unwrap(), Element::Matrix([m(0, 0), m(0, 1), m(1, 0), m(1, 1)]));
            }
        }
    }
}

#[test]
fn zn_table_matches_modular_addition() {
    let g = Group::parse("zn:12").unwrap();
    for a in 0..12u64 {
        for b in 0..12u64 {
            let got = g.mul(&Element::Residues(vec![a]), &Element::Residues(vec![b])).unwrap();
            assert_eq!(got, Element::Residues(vec![(a + b) % 12]));
        }
    }
}

fn naive_product(g: &Group, a: &[Element], b: &[Element]) -> BTreeSet<Element> {
    a.iter().flat_map(|x| b.iter().map(move |y| g.mul(x, y).unwrap())).collect()
}

#[test]
fn z5_z7_iterated_sums_by_hand() {
    let g = Group::parse("zprod:5,7").unwrap();
    let a: Vec<Element> = (0..5).map(|i| Element::Residues(vec![i, 0])).collect();
    let b = vec![Element::Residues(vec![0, 1]), Element::Residues(vec![1, 2]), Element::Residues(vec![2, 4])];
    let mut layer: BTreeSet<Element> = a.iter().cloned().collect();
    let mut sizes = Vec::new();
    for _ in 0..3 {
        layer = naive_product(&g, &layer.into_iter().collect::<Vec<_>>(), &b);
        sizes.push(layer.len());
    }
    // every second coordinate is reached by the third sum, so the group is full
    assert_eq!(sizes, vec![15, 30, 35]);
    let inst = &verify::sharpness_instances().unwrap()[0];
    assert_eq!(product(&inst.a, &inst.b).unwrap().len(), 15);
}

#[test]
fn s6_counterexample_by_naive_products() {
    let (g, h, x, a) = verify::counterexample_sets().unwrap();
    let (hs, els) = (h.elements(), a.elements());
    assert_eq!(hs.len(), 6);
    let conj: BTreeSet<Element> = hs.iter().map(|y| g.mul(&g.mul(&x, y).unwrap(), &g.inv(&x)).unwrap()).collect();
    assert_eq!(hs.iter().filter(|y| conj.contains(y)).count(), 1);
    let aa = naive_product(&g, &els, &els);
    let aaa = naive_product(&g, &aa.iter().cloned().collect::<Vec<_>>(), &els);
    assert_eq!(aa.len(), 17);
    assert!(aa.len() <= 3 * els.len());
    assert_eq!(aaa.len(), 47);
    assert!(aaa.len() >= (els.len() - 1) * (els.len() - 1));
    assert_eq!(aaa.len(), power(&a, 3).unwrap().len());
}

#[test]
fn s8_s_chain_counterexample_by_naive_products() {
    let g = Group::parse("sym:8").unwrap();
    let h = GSet::parse(&g, "subgroup:(1 2 3 4);(1 2)").unwrap();
    let x = g.parse_element("(1 5)(2 6)(3 7)(4 8)").unwrap();
    let mut s_els = h.elements();
    s_els.extend(h.iter().map(|y| g.mul(&x, &y).unwrap()));
    let s = GSet::from_elements(&g, s_els.clone()).unwrap();
    assert_eq!(s.len(), 48);
    let inv: Vec<Element> = s_els.iter().map(|y| g.inv(y)).collect();
    let sis = naive_product(&g, &inv, &s_els);
    let ssi = naive_product(&g, &s_els, &inv);
    let ssis = naive_product(&g, &ssi.iter().cloned().collect::<Vec<_>>(), &s_els);
    assert_eq!((sis.len(), ssi.len(), ssis.len()), (600, 94, 1152));
    let report = verify::verify_s_chain(&s, &h).unwrap();
    assert_eq!(report.theorem, TheoremId::SChain);
    assert_eq!(report.status, Status::Fail);
    assert_eq!(report.actual, ssis.len() as u64);
}
