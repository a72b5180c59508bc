//! Exact rational scalars.
//!
//! Every value is a reduced fraction with positive denominator. Arithmetic
//! is exact; values are kept in a machine-word representation while they
//! fit and promoted to arbitrary precision on overflow. Promoted results
//! that fit a machine word again are demoted, so equality and hashing see
//! a single canonical form.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An exact rational number over ℚ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Reduced fraction with denominator > 0, both fitting `i64`.
    Small(i64, i64),
    /// Reduced fraction that does not fit the small form.
    Big(Box<BigRational>),
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// Construct a reduced small scalar if the arithmetic stays in range.
fn small(num: i64, den: i64) -> Option<Scalar> {
    debug_assert!(den != 0);
    if num == 0 {
        return Some(Scalar::Small(0, 1));
    }
    let g = gcd_i64(num, den);
    let (mut n, mut d) = (num / g, den / g);
    if d < 0 {
        n = n.checked_neg()?;
        d = d.checked_neg()?;
    }
    Some(Scalar::Small(n, d))
}

fn big_of(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonicalize a big rational: demote when it fits `i64`.
fn normalize_big(r: BigRational) -> Scalar {
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
        Scalar::Small(n, d)
    } else {
        Scalar::Big(Box::new(r))
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Small(0, 1)
    }

    pub fn one() -> Self {
        Scalar::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Small(n, 1)
    }

    /// `n/d` as a reduced scalar. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        small(n, d).unwrap_or_else(|| normalize_big(big_of(n, d)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Small(n, _) => *n < 0,
            Scalar::Big(r) => r.is_negative(),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(n, d) => big_of(*n, *d),
            Scalar::Big(r) => (**r).clone(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Small(n, d) => {
                assert!(*n != 0, "inverse of zero");
                small(*d, *n).unwrap_or_else(|| normalize_big(big_of(*d, *n)))
            }
            Scalar::Big(r) => normalize_big(r.recip()),
        }
    }

    fn add_ref(&self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Small(a, b), Scalar::Small(c, d)) = (self, rhs) {
            // a/b + c/d with the common-denominator split through gcd(b, d).
            let g = gcd_i64(*b, *d);
            let result = (|| {
                let db = d / g;
                let num = a.checked_mul(db)?.checked_add(c.checked_mul(b / g)?)?;
                let den = b.checked_mul(db)?;
                small(num, den)
            })();
            if let Some(s) = result {
                return s;
            }
        }
        normalize_big(self.to_big() + rhs.to_big())
    }

    fn sub_ref(&self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Small(a, b), Scalar::Small(c, d)) = (self, rhs) {
            let g = gcd_i64(*b, *d);
            let result = (|| {
                let db = d / g;
                let num = a.checked_mul(db)?.checked_sub(c.checked_mul(b / g)?)?;
                let den = b.checked_mul(db)?;
                small(num, den)
            })();
            if let Some(s) = result {
                return s;
            }
        }
        normalize_big(self.to_big() - rhs.to_big())
    }

    fn mul_ref(&self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if let (Scalar::Small(a, b), Scalar::Small(c, d)) = (self, rhs) {
            // Cross-reduce before multiplying to keep the factors small.
            let g1 = gcd_i64(*a, *d);
            let g2 = gcd_i64(*c, *b);
            let result = (|| {
                let num = (a / g1).checked_mul(c / g2)?;
                let den = (b / g2).checked_mul(d / g1)?;
                small(num, den)
            })();
            if let Some(s) = result {
                return s;
            }
        }
        normalize_big(self.to_big() * rhs.to_big())
    }

    fn div_ref(&self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        match rhs {
            Scalar::Small(c, d) => {
                let flipped = small(*d, *c).unwrap_or_else(|| normalize_big(big_of(*d, *c)));
                self.mul_ref(&flipped)
            }
            Scalar::Big(r) => normalize_big(self.to_big() / (**r).clone()),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Small(n, d) => match n.checked_neg() {
                Some(m) => Scalar::Small(m, *d),
                None => normalize_big(-big_of(*n, *d)),
            },
            Scalar::Big(r) => normalize_big(-(**r).clone()),
        }
    }

    /// `self += c * x`, the inner-loop primitive.
    pub fn add_mul_assign(&mut self, c: &Scalar, x: &Scalar) {
        if c.is_zero() || x.is_zero() {
            return;
        }
        let t = c.mul_ref(x);
        *self = self.add_ref(&t);
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, div_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.sub_ref(rhs);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_ref(rhs);
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(n, 1) => write!(f, "{n}"),
            Scalar::Small(n, d) => write!(f, "{n}/{d}"),
            Scalar::Big(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse error for rational literals.
#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseScalarError(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() || d.is_negative() {
            return Err(bad());
        }
        Ok(normalize_big(BigRational::new(n, d)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Scalar;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or \"p\", or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
                v.parse().map_err(de::Error::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
                Ok(Scalar::from_int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
                i64::try_from(v)
                    .map(Scalar::from_int)
                    .map_err(|_| de::Error::custom("integer out of range"))
            }
        }
        deserializer.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduced_form() {
        assert_eq!(Scalar::new(2, 4), Scalar::new(1, 2));
        assert_eq!(Scalar::new(-2, -4), Scalar::new(1, 2));
        assert_eq!(Scalar::new(2, -4), Scalar::new(-1, 2));
        assert_eq!(Scalar::new(0, 7), Scalar::zero());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Scalar::new(3, 2).to_string(), "3/2");
        assert_eq!(Scalar::new(-3, 1).to_string(), "-3");
        assert_eq!("5/10".parse::<Scalar>().unwrap(), Scalar::new(1, 2));
        assert_eq!("-7".parse::<Scalar>().unwrap(), Scalar::from_int(-7));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn promotion_and_demotion() {
        let big = Scalar::from_int(i64::MAX);
        let sum = &big + &big;
        // 2 * i64::MAX does not fit; must be a Big holding the exact value.
        assert_eq!(sum.to_string(), format!("{}", (i64::MAX as i128) * 2));
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Small(_, _)));
    }

    #[test]
    fn exact_field_ops() {
        let a = Scalar::new(1, 3);
        let b = Scalar::new(1, 6);
        assert_eq!(&a + &b, Scalar::new(1, 2));
        assert_eq!(&a - &b, Scalar::new(1, 6));
        assert_eq!(&a * &b, Scalar::new(1, 18));
        assert_eq!(&a / &b, Scalar::from_int(2));
        assert_eq!(a.inv(), Scalar::from_int(3));
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (any::<i32>(), 1i32..1000).prop_map(|(n, d)| Scalar::new(n as i64, d as i64))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            if !a.is_zero() {
                prop_assert_eq!(&(&b / &a) * &a, b.clone());
            }
        }

        #[test]
        fn roundtrip(a in arb_scalar()) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<Scalar>().unwrap(), a);
        }
    }
}
