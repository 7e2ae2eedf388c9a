//! Exact rational numbers with an i64 fast path.
//!
//! Values that fit in reduced i64/i64 form are kept inline; anything larger
//! is promoted to an arbitrary-precision `BigRational`. All small-path
//! arithmetic runs in i128 so it cannot overflow before the fit check, and
//! results shrink back to the inline form whenever they fit, so the
//! representation stays canonical: a `Big` value never fits in i64s.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type BigRational = num_rational::BigRational;

#[derive(Clone, Debug)]
enum Repr {
    /// Reduced fraction, denominator > 0.
    Small(i64, i64),
    /// Reduced, denominator > 0, and not representable as `Small`.
    Big(Box<BigRational>),
}

/// Exact rational coefficient type. Always stored reduced with positive
/// denominator; equality is plain structural equality.
#[derive(Clone, Debug)]
pub struct Rational(Repr);

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Reduced small representation of num/den, if it fits.
fn make_small(mut num: i128, mut den: i128) -> Option<(i64, i64)> {
    debug_assert!(den != 0);
    if den < 0 {
        num = -num;
        den = -den;
    }
    if num == 0 {
        return Some((0, 1));
    }
    let g = gcd_i128(num, den);
    num /= g;
    den /= g;
    match (i64::try_from(num), i64::try_from(den)) {
        (Ok(n), Ok(d)) => Some((n, d)),
        _ => None,
    }
}

fn big_from_i128(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Rational {
    fn from_repr_i128(num: i128, den: i128) -> Self {
        match make_small(num, den) {
            Some((n, d)) => Rational(Repr::Small(n, d)),
            None => Rational(Repr::Big(Box::new(big_from_i128(num, den)))),
        }
    }

    /// Shrinks a big value back to the inline form when it fits.
    fn from_big(value: BigRational) -> Self {
        if let (Some(n), Some(d)) = (value.numer().to_i64(), value.denom().to_i64()) {
            Rational(Repr::Small(n, d))
        } else {
            Rational(Repr::Big(Box::new(value)))
        }
    }

    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_i64(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// num/den; panics when den = 0.
    pub fn new_i64(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_repr_i128(num as i128, den as i128)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    pub fn from_big_rational(value: BigRational) -> Self {
        Self::from_big(value)
    }

    pub fn to_big_rational(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    /// True when the value is an integer.
    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "division by zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_repr_i128(*d as i128, *n as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    fn binop(
        &self,
        rhs: &Rational,
        small: impl Fn(i128, i128, i128, i128) -> (i128, i128),
        big: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (num, den) = small(*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_repr_i128(num, den)
            }
            _ => Self::from_big(big(&self.to_big_rational(), &rhs.to_big_rational())),
        }
    }

    fn add_impl(&self, rhs: &Rational) -> Rational {
        self.binop(rhs, |a, b, c, d| (a * d + c * b, b * d), |x, y| x + y)
    }

    fn sub_impl(&self, rhs: &Rational) -> Rational {
        self.binop(rhs, |a, b, c, d| (a * d - c * b, b * d), |x, y| x - y)
    }

    fn mul_impl(&self, rhs: &Rational) -> Rational {
        self.binop(rhs, |a, b, c, d| (a * c, b * d), |x, y| x * y)
    }

    fn div_impl(&self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        self.binop(rhs, |a, b, c, d| (a * d, b * c), |x, y| x / y)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        // Canonical representation: mixed reprs are never equal.
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big_rational().cmp(&other.to_big_rational()),
        }
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $impl_fn:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$impl_fn(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$impl_fn(&rhs)
            }
        }
        impl $assign_trait<&Rational> for Rational {
            fn $assign_method(&mut self, rhs: &Rational) {
                *self = self.$impl_fn(rhs);
            }
        }
        impl $assign_trait<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                *self = self.$impl_fn(&rhs);
            }
        }
    };
}

impl_binop!(Add, add, add_impl, AddAssign, add_assign);
impl_binop!(Sub, sub, sub_impl, SubAssign, sub_assign);
impl_binop!(Mul, mul, mul_impl, MulAssign, mul_assign);
impl_binop!(Div, div, div_impl, DivAssign, div_assign);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_i64(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new_i64(n, d)
    }

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(1, -2), r(-1, 2));
        assert_eq!(r(0, -5), Rational::zero());
        assert_eq!(r(-6, -3), Rational::from_i64(2));
    }

    #[test]
    fn arithmetic_matches_big_reference() {
        let samples = [
            r(0, 1),
            r(1, 1),
            r(-3, 7),
            r(22, 6),
            r(i64::MAX, 1),
            r(i64::MIN + 1, 3),
            r(1, i64::MAX),
        ];
        for a in &samples {
            for b in &samples {
                let (ba, bb) = (a.to_big_rational(), b.to_big_rational());
                assert_eq!((a + b).to_big_rational(), &ba + &bb);
                assert_eq!((a - b).to_big_rational(), &ba - &bb);
                assert_eq!((a * b).to_big_rational(), &ba * &bb);
                if !b.is_zero() {
                    assert_eq!((a / b).to_big_rational(), &ba / &bb);
                }
                assert_eq!(a.cmp(b), ba.cmp(&bb));
            }
        }
    }

    #[test]
    fn promotes_on_overflow_and_shrinks_back() {
        let big = r(i64::MAX, 1) * r(i64::MAX, 1);
        assert_eq!(
            big.to_big_rational(),
            BigRational::from_integer(BigInt::from(i64::MAX)) * BigRational::from_integer(BigInt::from(i64::MAX))
        );
        // dividing back shrinks into the small repr and equality holds
        let back = &big / &r(i64::MAX, 1);
        assert_eq!(back, r(i64::MAX, 1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(r(3, 4).to_string(), "3/4");
        assert_eq!(r(-3, 1).to_string(), "-3");
        assert_eq!(Rational::zero().to_string(), "0");
    }
}
