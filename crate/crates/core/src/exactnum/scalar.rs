use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GaussRat, Rat};

/// An exact field containing a fourth root of unity `i`.
///
/// Every algebra in this crate is generic over `Scalar`. `GaussRat` is the
/// production instance; `Complex<BigRational>` is a plain reference instance
/// used to cross-check the fast kernel.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn from_i64(n: i64) -> Self;

    /// `n/d`; panics when `d == 0`.
    fn from_ratio(n: i64, d: i64) -> Self;

    fn imag_unit() -> Self;

    fn conj(&self) -> Self;

    fn checked_inv(&self) -> Option<Self>;

    fn to_gauss(&self) -> GaussRat;

    fn from_gauss(g: &GaussRat) -> Self;

    fn mul_ref(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r *= other;
        r
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self += &a.mul_ref(b);
        }
    }

    fn pow_i(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::imag_unit(),
            2 => -Self::one(),
            _ => -Self::imag_unit(),
        }
    }
}

impl Scalar for GaussRat {
    fn from_i64(n: i64) -> Self {
        GaussRat::from_int(n)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        GaussRat::from_ratio(n, d).expect("zero denominator")
    }
    fn imag_unit() -> Self {
        GaussRat::i()
    }
    fn conj(&self) -> Self {
        GaussRat::conj(self)
    }
    fn checked_inv(&self) -> Option<Self> {
        GaussRat::checked_inv(self).ok()
    }
    fn to_gauss(&self) -> GaussRat {
        self.clone()
    }
    fn from_gauss(g: &GaussRat) -> Self {
        g.clone()
    }
}

/// Reference arithmetic straight from `num`, with no small-value fast path.
pub type RefComplex = Complex<BigRational>;

impl Scalar for RefComplex {
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Complex::new(BigRational::new(n.into(), d.into()), BigRational::zero())
    }
    fn imag_unit() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }
    fn to_gauss(&self) -> GaussRat {
        GaussRat::new(Rat::from(self.re.clone()), Rat::from(self.im.clone()))
    }
    fn from_gauss(g: &GaussRat) -> Self {
        Complex::new(g.re.to_big(), g.im.to_big())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip<F: Scalar>() {
        let x = F::from_ratio(3, 4) + F::imag_unit() * F::from_i64(-2);
        let y = F::from_gauss(&x.to_gauss());
        assert_eq!(x, y);
        assert_eq!(F::pow_i(3), -F::imag_unit());
        assert_eq!(x.mul_ref(&x.checked_inv().unwrap()), F::one());
        assert!(F::zero().checked_inv().is_none());
    }

    #[test]
    fn both_instances_agree() {
        roundtrip::<GaussRat>();
        roundtrip::<RefComplex>();
        let a = GaussRat::int_pair(2, -5) * GaussRat::from_ratio(1, 7).unwrap();
        let b = RefComplex::from_gauss(&a);
        let c = b.clone() * b.conj();
        assert_eq!(c.to_gauss(), a.clone() * a.conj());
    }
}
