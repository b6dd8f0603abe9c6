use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPoly;

/// Element of `Z[t, t^-1]` stored as `t^shift * poly`.
///
/// Normalized so that `poly` has a nonzero constant term; the zero element
/// has a zero `poly` and `shift = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    poly: IntPoly,
    shift: i64,
}

impl LaurentPoly {
    pub fn new(poly: IntPoly, shift: i64) -> Self {
        if poly.is_zero() {
            return LaurentPoly::default();
        }
        let lead_zeros = poly.coeffs().iter().take_while(|c| c.is_zero()).count();
        let trimmed = IntPoly::from_coeffs(poly.coeffs()[lead_zeros..].to_vec());
        LaurentPoly { poly: trimmed, shift: shift + lead_zeros as i64 }
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i64) -> Self {
        LaurentPoly { poly: IntPoly::one(), shift: k }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// Lowest exponent present.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i64) -> BigInt {
        if k < self.shift {
            return BigInt::zero();
        }
        self.poly.coeff((k - self.shift) as usize)
    }

    /// The same element as a polynomial, if no negative powers occur.
    pub fn to_poly(&self) -> Option<IntPoly> {
        (self.shift >= 0 || self.is_zero()).then(|| self.poly.shift(self.shift.max(0) as usize))
    }

    /// The involution `t -> t^-1` (dual representation).
    pub fn dual(&self) -> Self {
        let Some(d) = self.poly.degree() else {
            return Self::default();
        };
        let rev: Vec<BigInt> = self.poly.coeffs().iter().rev().cloned().collect();
        LaurentPoly::new(IntPoly::from_coeffs(rev), -self.shift - d as i64)
    }

    /// Evaluation at `t = 1` (the rank of a virtual representation).
    pub fn augmentation(&self) -> BigInt {
        self.poly.eval_i64(1)
    }
}

impl From<IntPoly> for LaurentPoly {
    fn from(p: IntPoly) -> Self {
        LaurentPoly::new(p, 0)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.shift.min(rhs.shift);
        let a = self.poly.shift((self.shift - low) as usize);
        let b = rhs.poly.shift((rhs.shift - low) as usize);
        LaurentPoly::new(a + b, low)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { poly: -&self.poly, shift: self.shift }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(&self.poly * &rhs.poly, self.shift + rhs.shift)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shift {
            0 => write!(f, "{}", self.poly),
            _ if self.is_zero() => f.write_str("0"),
            s => write!(f, "t^{s} * ({})", self.poly),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_low_zeros() {
        let l = LaurentPoly::new(IntPoly::from_i64s(&[0, 0, 3, 1]), -5);
        assert_eq!(l.shift(), -3);
        assert_eq!(l.poly(), &IntPoly::from_i64s(&[3, 1]));
        assert_eq!(l.coeff(-3), BigInt::from(3));
        assert_eq!(l.coeff(-2), BigInt::from(1));
        assert_eq!(l.coeff(-4), BigInt::zero());
    }

    #[test]
    fn t_times_t_inverse_is_one() {
        let one = &LaurentPoly::t_pow(1) * &LaurentPoly::t_pow(-1);
        assert_eq!(one, LaurentPoly::from(IntPoly::one()));
        assert_eq!(one.to_poly(), Some(IntPoly::one()));
        assert_eq!(LaurentPoly::t_pow(-2).to_poly(), None);
    }

    #[test]
    fn dual_is_an_involution() {
        let l = LaurentPoly::new(IntPoly::from_i64s(&[2, 0, -1]), -1);
        assert_eq!(l.dual().dual(), l);
        assert_eq!(l.dual().shift(), -1);
        assert_eq!(l.dual().coeff(1), BigInt::from(2));
        assert_eq!(l.augmentation(), BigInt::from(1));
    }

    #[test]
    fn add_sub_cancel() {
        let a = LaurentPoly::new(IntPoly::from_i64s(&[1, 1]), -1);
        let b = LaurentPoly::t_pow(-1);
        assert_eq!(&a - &b, LaurentPoly::t_pow(0));
        assert!((&a - &a).is_zero());
    }
}
