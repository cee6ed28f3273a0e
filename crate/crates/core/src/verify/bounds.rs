//! Closed-form bounds as exact functions of the hypothesis constants.

use crate::rational::Rational;

/// `alpha^h |X|`.
pub fn plunnecke(alpha: &Rational, h: u32, x: u64) -> Rational {
    alpha.pow(h) * x
}

/// `alpha^(k+l) |A|`.
pub fn ruzsa_kl(alpha: &Rational, k: u32, l: u32, a: u64) -> Rational {
    alpha.pow(k + l) * a
}

/// `alpha^6 |B|`.
pub fn b_inv_chain(alpha: &Rational, b: u64) -> Rational {
    alpha.pow(6) * b
}

/// `alpha^7 beta |B|`.
pub fn triple(alpha: &Rational, beta: &Rational, b: u64) -> Rational {
    alpha.pow(7) * beta * b
}

/// `alpha^(8h-17) beta^(h-2) |B|` for `h >= 3`.
pub fn tao_power(alpha: &Rational, beta: &Rational, h: u32, b: u64) -> Rational {
    assert!(h >= 3, "defined for h > 2");
    alpha.pow(8 * h - 17) * beta.pow(h - 2) * b
}

/// The bound the induction produces: the triple bound times `(alpha^8 beta)^(h-3)`.
pub fn tao_power_inductive(alpha: &Rational, beta: &Rational, h: u32, b: u64) -> Rational {
    assert!(h >= 3, "defined for h > 2");
    triple(alpha, beta, b) * (alpha.pow(8) * beta).pow(h - 3)
}

/// `(alpha^7 beta)^(2h) |B|`.
pub fn alternating(alpha: &Rational, beta: &Rational, h: u32, b: u64) -> Rational {
    (alpha.pow(7) * beta).pow(2 * h) * b
}

/// `alpha^6 (|S|/|B|)^3 |S|`.
pub fn s_chain(alpha: &Rational, s: u64, b: u64) -> Rational {
    alpha.pow(6) * Rational::new(s, b).pow(3) * s
}

/// `alpha^7 beta gamma^3 |S|`.
pub fn sbb(alpha: &Rational, beta: &Rational, gamma: &Rational, s: u64) -> Rational {
    alpha.pow(7) * beta * gamma.pow(3) * s
}

/// `alpha^(8h-9) beta^(h-1) gamma^(4h-5) |S|` for `h >= 2`.
pub fn sb_h(alpha: &Rational, beta: &Rational, gamma: &Rational, h: u32, s: u64) -> Rational {
    assert!(h >= 2, "defined for h > 1");
    alpha.pow(8 * h - 9) * beta.pow(h - 1) * gamma.pow(4 * h - 5) * s
}

/// The bound the induction produces: the `SBB` bound times `(alpha^8 beta gamma^4)^(h-2)`.
pub fn sb_h_inductive(alpha: &Rational, beta: &Rational, gamma: &Rational, h: u32, s: u64) -> Rational {
    assert!(h >= 2, "defined for h > 1");
    sbb(alpha, beta, gamma, s) * (alpha.pow(8) * beta * gamma.pow(4)).pow(h - 2)
}
