//! Exact non-negative rationals.
//!
//! Every ratio in the crate (magnification ratios, hypothesis constants,
//! bounds, slack) is carried as a reduced fraction of big integers, so no
//! comparison ever goes through floating point.

use std::fmt;
use std::ops::{Add, Div, Mul};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Reduced fraction `num / den` with `num >= 0` and `den > 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics when `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(n: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(Pow::pow(&self.0, exp))
    }

    /// Inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Numerator and denominator as `u64`, when both fit.
    pub fn to_u64_parts(&self) -> Option<(u64, u64)> {
        Some((self.numer().to_u64()?, self.denom().to_u64()?))
    }

    /// `self >= n` without allocating a rational for `n`.
    pub fn ge_int(&self, n: u64) -> bool {
        self.numer() >= &(self.denom() * BigInt::from(n))
    }

    /// Decimal rendering with `digits` significant digits, half-up rounding,
    /// switching to exponent notation outside `1e-4 ..= 10^digits`.
    pub fn to_sig_string(&self, digits: u32) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let num = self.numer().clone();
        let den = self.denom().clone();
        let ten = BigInt::from(10u32);

        // Decimal exponent e with 10^e <= r < 10^(e+1).
        let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
        let below = |e: i64| -> bool {
            // r < 10^e ?
            if e >= 0 {
                num < &den * Pow::pow(&ten, e as u32)
            } else {
                &num * Pow::pow(&ten, (-e) as u32) < den
            }
        };
        if below(e) {
            e -= 1;
        }
        debug_assert!(!below(e) && below(e + 1));

        let shift = digits as i64 - 1 - e;
        let (n, d) = if shift >= 0 {
            (&num * Pow::pow(&ten, shift as u32), den.clone())
        } else {
            (num.clone(), &den * Pow::pow(&ten, (-shift) as u32))
        };
        // round half up: floor((2n + d) / 2d)
        let two = BigInt::from(2u32);
        let mut scaled = (&two * &n + &d).div_floor(&(&two * &d));
        if scaled >= Pow::pow(&ten, digits) {
            scaled /= &ten;
            e += 1;
        }
        let mantissa = scaled.to_string();
        debug_assert_eq!(mantissa.len(), digits as usize);

        if e < -4 || e >= digits as i64 {
            let (head, tail) = mantissa.split_at(1);
            if tail.is_empty() {
                format!("{head}e{e:+}")
            } else {
                format!("{head}.{tail}e{e:+}")
            }
        } else if e >= 0 {
            let int_len = (e + 1) as usize;
            let (head, tail) = mantissa.split_at(int_len);
            if tail.is_empty() {
                head.to_string()
            } else {
                format!("{head}.{tail}")
            }
        } else {
            let zeros = "0".repeat((-e - 1) as usize);
            format!("0.{zeros}{mantissa}")
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational::from_integer(n as u64)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<u64> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: u64) -> Rational {
                Rational($trait::$method(&self.0, BigRational::from_integer(BigInt::from(rhs))))
            }
        }
        impl $trait<u64> for Rational {
            type Output = Rational;
            fn $method(self, rhs: u64) -> Rational {
                Rational($trait::$method(self.0, BigRational::from_integer(BigInt::from(rhs))))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Mul, mul);
// Division panics on a zero divisor, like the integer operators.
forward_binop!(Div, div);

// Wire form: `{"num": 4, "den": 3}`; components that do not fit in u64 are
// written as decimal strings.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BigRepr {
    Small(u64),
    Big(String),
}

impl BigRepr {
    fn of(n: &BigInt) -> Self {
        match n.to_u64() {
            Some(v) => BigRepr::Small(v),
            None => BigRepr::Big(n.to_string()),
        }
    }

    fn into_bigint(self) -> Option<BigInt> {
        match self {
            BigRepr::Small(v) => Some(BigInt::from(v)),
            BigRepr::Big(s) => {
                let u: BigUint = s.parse().ok()?;
                Some(BigInt::from_biguint(Sign::Plus, u))
            }
        }
    }
}

impl std::str::FromStr for Rational {
    type Err = crate::error::Error;

    /// `7`, `7/3` or `2.25`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || crate::error::Error::Parse(format!("expected a non-negative rational like `7/3` or `2.25`, got `{s}`"));
        let digits = |t: &str| -> Result<BigInt, crate::error::Error> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        let t = s.trim();
        let (num, den) = if let Some((n, d)) = t.split_once('/') {
            (digits(n.trim())?, digits(d.trim())?)
        } else if let Some((i, f)) = t.split_once('.') {
            if i.is_empty() || f.is_empty() {
                return Err(bad());
            }
            let scale = Pow::pow(&BigInt::from(10u32), f.len() as u32);
            (digits(&format!("{i}{f}"))?, scale)
        } else {
            (digits(t)?, BigInt::one())
        };
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: BigRepr,
    den: BigRepr,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalRepr { num: BigRepr::of(self.numer()), den: BigRepr::of(self.denom()) }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RationalRepr::deserialize(deserializer)?;
        let num = repr.num.into_bigint().ok_or_else(|| D::Error::custom("bad numerator"))?;
        let den = repr.den.into_bigint().ok_or_else(|| D::Error::custom("bad denominator"))?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = Rational::new(8, 6);
        assert_eq!(r.to_u64_parts(), Some((4, 3)));
        assert_eq!(r.to_string(), "4/3");
        assert_eq!(Rational::new(15, 5).to_string(), "3");
    }

    #[test]
    fn parses_literals() {
        assert_eq!("7/3".parse::<Rational>().unwrap(), Rational::new(7, 3));
        assert_eq!("2.25".parse::<Rational>().unwrap(), Rational::new(9, 4));
        assert_eq!("4".parse::<Rational>().unwrap(), Rational::from_integer(4));
        for bad in ["", "-1", "1/0", "a", "1.", "/2"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_comparison() {
        assert!(Rational::new(4, 3) < Rational::new(3, 2));
        assert!(Rational::new(4, 3).ge_int(1));
        assert!(!Rational::new(4, 3).ge_int(2));
        assert!(Rational::new(6, 3).ge_int(2));
    }

    #[test]
    fn large_powers_stay_exact() {
        let a = Rational::new(10, 1).pow(31);
        assert_eq!(a.numer().to_string(), format!("1{}", "0".repeat(31)));
        assert!(a.to_u64_parts().is_none());
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, format!("{{\"num\":\"1{}\",\"den\":1}}", "0".repeat(31)));
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&Rational::new(4, 3)).unwrap();
        assert_eq!(json, r#"{"num":4,"den":3}"#);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(Rational::one().to_sig_string(6), "1.00000");
        assert_eq!(Rational::new(4, 3).to_sig_string(6), "1.33333");
        assert_eq!(Rational::new(2, 3).to_sig_string(6), "0.666667");
        assert_eq!(Rational::new(45, 1).to_sig_string(6), "45.0000");
        assert_eq!(Rational::new(9_999_995, 10).to_sig_string(6), "1.00000e+6");
        assert_eq!(Rational::new(123_456, 1).to_sig_string(6), "123456");
        assert_eq!(Rational::new(1, 100_000).to_sig_string(6), "1.00000e-5");
        assert_eq!(Rational::new(1, 1000).to_sig_string(6), "0.00100000");
        assert_eq!(Rational::new(27, 10).pow(20).to_sig_string(6), "4.23912e+8");
    }
}
