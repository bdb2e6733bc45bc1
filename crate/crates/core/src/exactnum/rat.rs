//! Arbitrary-precision rationals with an `i64` fast path.
//!
//! Almost every structure constant in this crate is a small fraction, so the
//! common case stays on machine words and only spills to `BigRational` when
//! an intermediate no longer fits. The representation is canonical: a value
//! is stored as `Small` whenever its reduced numerator and denominator fit.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    /// Reduced, `den > 0`, `num != i64::MIN`.
    Small(i64, i64),
    /// Only used when the reduced value does not fit `Small`.
    Big(Box<BigRational>),
}

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(Repr);

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Result<Self, NumError> {
        if den == 0 {
            return Err(NumError::DivisionByZero);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    /// Reduce `num/den` (den != 0) and pick the canonical representation.
    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Rat(Repr::Small(0, 1));
        }
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if d == 1 && n > i64::MIN as i128 && n <= i64::MAX as i128 {
            return Rat(Repr::Small(n as i64, 1));
        }
        if d & (d - 1) == 0 {
            // power-of-two denominators (halves, quarters) are the common case
            let s = n.trailing_zeros().min(d.trailing_zeros());
            n >>= s;
            d >>= s;
        } else {
            let (an, ad) = (n.unsigned_abs(), d as u128);
            if an <= u64::MAX as u128 && ad <= u64::MAX as u128 {
                let g = gcd_u64(an as u64, ad as u64);
                if g > 1 {
                    let q = (an as u64 / g) as i128;
                    n = if n < 0 { -q } else { q };
                    d = (ad as u64 / g) as i128;
                }
            } else {
                let g = gcd_u128(an, ad) as i128;
                n /= g;
                d /= g;
            }
        }
        if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rat(Repr::Small(n as i64, d as i64))
        } else {
            Rat(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))))
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational keeps itself reduced with a positive denominator.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(Box::new(r))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    /// True if the value is stored on the machine-word path.
    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(..))
    }

    pub fn checked_inv(&self) -> Result<Self, NumError> {
        match &self.0 {
            Repr::Small(0, _) => Err(NumError::DivisionByZero),
            Repr::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Repr::Big(r) => Ok(Self::from_big(r.recip())),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, NumError> {
        Ok(self * &other.checked_inv()?)
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat(Repr::Small(0, 1))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat(Repr::Small(1, 1))
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_integer(n)
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat::from_big(r)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

fn add_impl(a: &Rat, b: &Rat) -> Rat {
    match (&a.0, &b.0) {
        (Repr::Small(n1, 1), Repr::Small(n2, 1)) => match n1.checked_add(*n2) {
            Some(n) if n != i64::MIN => Rat(Repr::Small(n, 1)),
            _ => Rat::from_i128(*n1 as i128 + *n2 as i128, 1),
        },
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
            if d1 == d2 {
                Rat::from_i128(*n1 as i128 + *n2 as i128, *d1 as i128)
            } else {
                let (n1, d1, n2, d2) = (*n1 as i128, *d1 as i128, *n2 as i128, *d2 as i128);
                Rat::from_i128(n1 * d2 + n2 * d1, d1 * d2)
            }
        }
        _ => Rat::from_big(a.to_big() + b.to_big()),
    }
}

fn mul_impl(a: &Rat, b: &Rat) -> Rat {
    match (&a.0, &b.0) {
        (Repr::Small(n1, 1), Repr::Small(n2, 1)) => match n1.checked_mul(*n2) {
            Some(n) if n != i64::MIN => Rat(Repr::Small(n, 1)),
            _ => Rat::from_i128(*n1 as i128 * *n2 as i128, 1),
        },
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
            Rat::from_i128(*n1 as i128 * *n2 as i128, *d1 as i128 * *d2 as i128)
        }
        _ => Rat::from_big(a.to_big() * b.to_big()),
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self.0 {
            Repr::Small(n, d) => Rat(Repr::Small(-n, d)),
            Repr::Big(r) => Rat::from_big(-*r),
        }
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                $body(self, rhs)
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, |a: &Rat, b: &Rat| add_impl(a, &-b));
forward_binop!(Mul, mul, mul_impl);

/// Panics on division by zero; use [`Rat::checked_div`] for a `Result`.
impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        &self / &rhs
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = add_impl(self, rhs);
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = add_impl(self, &-rhs);
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = mul_impl(self, rhs);
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Rat {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, NumError> {
        let bad = || NumError::Parse(s.to_string());
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: BigInt = n.parse().map_err(|_| bad())?;
        let den: BigInt = match d {
            Some(d) if !d.starts_with(['+', '-']) => d.parse().map_err(|_| bad())?,
            Some(_) => return Err(bad()),
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let g = num.gcd(&den);
        Ok(Rat::from_big(BigRational::new_raw(&num / &g, &den / &g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_small_and_big() {
        let a = Rat::new(6, -4).unwrap();
        assert_eq!(a, Rat::new(-3, 2).unwrap());
        assert!(a.is_small());
        let big = Rat::from_integer(i64::MAX) * Rat::from_integer(4);
        assert!(!big.is_small());
        let back = &big / &Rat::from_integer(8);
        assert!(back.is_small());
        assert_eq!(back, Rat::new(i64::MAX, 2).unwrap());
    }

    #[test]
    fn min_value_goes_big() {
        let m = Rat::from_integer(i64::MIN + 1) - Rat::one();
        assert!(!m.is_small());
        assert_eq!(-(-m.clone()), m);
        assert_eq!((m.clone() + Rat::one()), Rat::from_integer(i64::MIN + 1));
    }

    #[test]
    fn zero_division_is_an_error() {
        assert_eq!(Rat::new(1, 0), Err(NumError::DivisionByZero));
        assert_eq!(Rat::zero().checked_inv(), Err(NumError::DivisionByZero));
    }

    #[test]
    fn ordering() {
        assert!(Rat::new(1, 3).unwrap() < Rat::new(1, 2).unwrap());
        assert!(Rat::new(-7, 2).unwrap() < Rat::zero());
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "-5", "3/7", "-12345678901234567890123/7"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/-2".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }
}
