use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{NumError, Rat};

/// An element `re + im·i` of the Gaussian rationals ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(Rat::from_integer(n), Rat::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self, NumError> {
        Ok(GaussRat::new(Rat::new(n, d)?, Rat::zero()))
    }

    /// `a + b·i` from integer parts.
    pub fn int_pair(a: i64, b: i64) -> Self {
        GaussRat::new(Rat::from_integer(a), Rat::from_integer(b))
    }

    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -&self.im)
    }

    /// The field norm `re² + im²`.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn checked_inv(&self) -> Result<Self, NumError> {
        if self.im.is_zero() {
            return Ok(GaussRat::new(self.re.checked_inv()?, Rat::zero()));
        }
        let n = self.norm().checked_inv()?;
        Ok(GaussRat::new(&self.re * &n, -(&self.im * &n)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, NumError> {
        Ok(self * &other.checked_inv()?)
    }

    /// `i^k` for any integer `k`.
    pub fn pow_i(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussRat::one(),
            1 => GaussRat::i(),
            2 => -GaussRat::one(),
            _ => -GaussRat::i(),
        }
    }

    /// Canonical text form, e.g. `"2"`, `"-1/3*i"`, `"1/2+3*i"`, `"0"`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn mul_impl(a: &GaussRat, b: &GaussRat) -> GaussRat {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussRat::new(&a.re * &b.re, Rat::zero());
    }
    if a.im.is_zero() {
        return GaussRat::new(&a.re * &b.re, &a.re * &b.im);
    }
    if b.im.is_zero() {
        return GaussRat::new(&a.re * &b.re, &a.im * &b.re);
    }
    GaussRat::new(
        &a.re * &b.re - &a.im * &b.im,
        &a.re * &b.im + &a.im * &b.re,
    )
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::new(Rat::zero(), Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::new(Rat::one(), Rat::zero())
    }
}

impl From<Rat> for GaussRat {
    fn from(r: Rat) -> Self {
        GaussRat::new(r, Rat::zero())
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&GaussRat> for &GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &GaussRat) -> GaussRat {
                $body(self, rhs)
            }
        }
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat {
                $body(&self, &rhs)
            }
        }
        impl $tr<&GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &GaussRat) -> GaussRat {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &GaussRat, b: &GaussRat| GaussRat::new(
    &a.re + &b.re,
    &a.im + &b.im
));
forward_binop!(Sub, sub, |a: &GaussRat, b: &GaussRat| GaussRat::new(
    &a.re - &b.re,
    &a.im - &b.im
));
forward_binop!(Mul, mul, mul_impl);

/// Panics on division by zero; use [`GaussRat::checked_div`] for a `Result`.
impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: GaussRat) -> GaussRat {
        self.checked_div(&rhs).expect("division by zero in Q(i)")
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = mul_impl(self, rhs);
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.signum() > 0 {
                    write!(f, "{}+{}*i", self.re, self.im)
                } else {
                    write!(f, "{}{}*i", self.re, self.im)
                }
            }
        }
    }
}

impl FromStr for GaussRat {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, NumError> {
        let s = s.trim();
        // a bare `i` after a sign (or alone) has coefficient 1
        let unit;
        let body = match s.strip_suffix("*i") {
            Some(b) => b,
            None => match s.strip_suffix('i') {
                Some(b) if b.is_empty() || b.ends_with(['+', '-']) => {
                    unit = format!("{b}1");
                    &unit
                }
                _ => return Ok(GaussRat::from(s.parse::<Rat>()?)),
            },
        };
        // The imaginary part starts at the last sign that is not leading.
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        match split {
            None => Ok(GaussRat::new(Rat::zero(), body.parse()?)),
            Some(k) => {
                let (re, im) = body.split_at(k);
                let im = im.strip_prefix('+').unwrap_or(im);
                Ok(GaussRat::new(re.parse()?, im.parse()?))
            }
        }
    }
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        // (1 + i)(1 - i) = 2
        assert_eq!(GaussRat::int_pair(1, 1) * GaussRat::int_pair(1, -1), GaussRat::from_int(2));
        // i^-1 = -i
        assert_eq!(GaussRat::i().checked_inv().unwrap(), -GaussRat::i());
        // 3/2 + 1/2 = 2
        assert_eq!(g("3/2") + g("1/2"), GaussRat::from_int(2));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(GaussRat::i().conj(), -GaussRat::i());
        assert_eq!(GaussRat::from_int(2).conj(), GaussRat::from_int(2));
        assert_eq!(g("1/3-2*i").conj(), g("1/3+2*i"));
    }

    #[test]
    fn pow_i_examples() {
        assert_eq!(GaussRat::pow_i(0), GaussRat::one());
        assert_eq!(GaussRat::pow_i(2), -GaussRat::one());
        assert_eq!(GaussRat::pow_i(7), -GaussRat::i());
        assert_eq!(GaussRat::pow_i(-1), -GaussRat::i());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(GaussRat::zero().checked_inv(), Err(NumError::DivisionByZero));
        assert_eq!(
            GaussRat::one().checked_div(&GaussRat::zero()),
            Err(NumError::DivisionByZero)
        );
    }

    #[test]
    fn text_format() {
        for (s, v) in [
            ("2", GaussRat::from_int(2)),
            ("-1/3*i", GaussRat::new(Rat::zero(), Rat::new(-1, 3).unwrap())),
            ("0", GaussRat::zero()),
            ("1/2+3*i", GaussRat::new(Rat::new(1, 2).unwrap(), Rat::from_integer(3))),
            ("-1/2-3/4*i", GaussRat::new(Rat::new(-1, 2).unwrap(), Rat::new(-3, 4).unwrap())),
        ] {
            assert_eq!(v.to_string(), s);
            assert_eq!(g(s), v);
        }
        assert_eq!(g("i"), GaussRat::i());
        assert_eq!(g("-i"), -GaussRat::i());
        assert_eq!(g("2-i"), GaussRat::int_pair(2, -1));
        assert!("2i".parse::<GaussRat>().is_err());
        assert!("1+*i".parse::<GaussRat>().is_err());
        assert!("1++2*i".parse::<GaussRat>().is_err());
        assert!("abc".parse::<GaussRat>().is_err());
    }
}
