use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Dense polynomial in `Z[t]`; `coeffs[i]` is the coefficient of `t^i`.
///
/// The representation is normalized: the last coefficient is nonzero and the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * t^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// `t^n - 1`.
    pub fn t_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        Self::from_coeffs(coeffs)
    }

    /// `1 - t^n`, the form in which these factors usually appear in formulas.
    pub fn one_minus_t_pow(n: usize) -> Self {
        -Self::t_pow_minus_one(n)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// True when `self` or `-self` is monic.
    pub fn is_monic_up_to_sign(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.abs().is_one())
    }

    /// Multiplies by -1 if the leading coefficient is negative.
    pub fn normalize_sign(self) -> Self {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Long division that must leave no remainder.
    ///
    /// Each step divides the current leading coefficient by the leading
    /// coefficient of `den`; a non-integral step or a nonzero remainder is
    /// reported as [`PolyError::NotDivisible`].
    pub fn divide_exact(&self, den: &IntPoly) -> Result<IntPoly, PolyError> {
        let den_deg = den.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = &den.coeffs[den_deg];
        let Some(num_deg) = self.degree() else {
            return Ok(Self::zero());
        };
        if num_deg < den_deg {
            return Err(PolyError::NotDivisible);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); num_deg - den_deg + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + den_deg];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            for (j, d) in den.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NotDivisible);
        }
        Ok(Self::from_coeffs(quot))
    }

    /// Remainder modulo a monic polynomial; the result has degree below
    /// `modulus.degree()`.
    ///
    /// Works in `i64` while every intermediate value fits and falls back to
    /// `BigInt` otherwise.
    ///
    /// # Panics
    ///
    /// If `modulus` is not monic.
    pub fn rem_monic(&self, modulus: &IntPoly) -> IntPoly {
        assert!(modulus.is_monic(), "rem_monic needs a monic modulus");
        if self.coeffs.len() < modulus.coeffs.len() {
            return self.clone();
        }
        self.rem_monic_small(modulus).unwrap_or_else(|| self.rem_monic_big(modulus))
    }

    fn rem_monic_small(&self, modulus: &IntPoly) -> Option<IntPoly> {
        let d = modulus.coeffs.len() - 1;
        let tail: Vec<(usize, i64)> = modulus.coeffs[..d]
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(j, m)| i64::try_from(m).ok().map(|m| (j, m)))
            .collect::<Option<_>>()?;
        let mut rem: Vec<i64> = self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect::<Option<_>>()?;
        while rem.len() > d {
            let top = rem.pop().unwrap();
            if top == 0 {
                continue;
            }
            let base = rem.len() - d;
            for &(j, m) in &tail {
                let r = &mut rem[base + j];
                *r = r.checked_sub(top.checked_mul(m)?)?;
            }
        }
        Some(Self::from_coeffs(rem.into_iter().map(BigInt::from).collect()))
    }

    fn rem_monic_big(&self, modulus: &IntPoly) -> IntPoly {
        let d = modulus.coeffs.len() - 1;
        let tail: Vec<(usize, &BigInt)> =
            modulus.coeffs[..d].iter().enumerate().filter(|(_, m)| !m.is_zero()).collect();
        let mut rem = self.coeffs.clone();
        while rem.len() > d {
            let top = rem.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = rem.len() - d;
            for &(j, m) in &tail {
                rem[base + j] -= &top * m;
            }
        }
        Self::from_coeffs(rem)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Descending-degree ASCII form, e.g. `t^2 - t + 1`, `-2t^3 + 5`, `0`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::one(), |acc, p| acc * p)
    }
}

impl<'a> std::iter::Product<&'a IntPoly> for IntPoly {
    fn product<I: Iterator<Item = &'a IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::one(), |acc, p| acc * p)
    }
}

impl std::iter::Sum for IntPoly {
    fn sum<I: Iterator<Item = IntPoly>>(iter: I) -> Self {
        iter.fold(IntPoly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p(&[1, 1]) * p(&[-1, 1]), p(&[-1, 0, 1]));
    }

    #[test]
    fn additive_identity() {
        let q = p(&[3, 0, -2, 7]);
        assert_eq!(&q + &IntPoly::zero(), q);
        assert_eq!(&q - &q, IntPoly::zero());
    }

    #[test]
    fn one_minus_t_times_geometric_sum() {
        let lhs = p(&[1, -1]) * p(&[1, 1, 1]);
        assert_eq!(lhs, IntPoly::one_minus_t_pow(3));
        assert_eq!(lhs.divide_exact(&p(&[1, 1, 1])).unwrap(), p(&[1, -1]));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(IntPoly::from_i64s(&[0, 0, 0]), IntPoly::zero());
        assert_eq!(IntPoly::constant(5).degree(), Some(0));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[1, -1, 1]).eval_i64(1), BigInt::from(1));
        assert_eq!(IntPoly::zero().eval_i64(17), BigInt::zero());
        assert_eq!(p(&[1, 1]).eval_i64(-1), BigInt::zero());
    }

    #[test]
    fn divide_exact_examples() {
        assert_eq!(p(&[-1, 0, 1]).divide_exact(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        let num = IntPoly::one_minus_t_pow(6) * IntPoly::one_minus_t_pow(1);
        let den = IntPoly::one_minus_t_pow(2) * IntPoly::one_minus_t_pow(3);
        assert_eq!(num.divide_exact(&den).unwrap(), p(&[1, -1, 1]));
        assert_eq!(p(&[1, 0, 1]).divide_exact(&p(&[-1, 1])), Err(PolyError::NotDivisible));
    }

    #[test]
    fn divide_exact_rejects_fractional_step() {
        // t^2 / (2t) would need a 1/2 coefficient
        assert_eq!(p(&[0, 0, 1]).divide_exact(&p(&[0, 2])), Err(PolyError::NotDivisible));
        assert_eq!(p(&[0, 0, 4]).divide_exact(&p(&[0, 2])).unwrap(), p(&[0, 2]));
        assert_eq!(p(&[1]).divide_exact(&IntPoly::zero()), Err(PolyError::DivisionByZero));
        assert_eq!(p(&[1]).divide_exact(&p(&[0, 1])), Err(PolyError::NotDivisible));
    }

    #[test]
    fn rem_monic_reduces_degree() {
        // t^2 - t + 1 mod t^2 + t + 1 = -2t
        assert_eq!(p(&[1, -1, 1]).rem_monic(&p(&[1, 1, 1])), p(&[0, -2]));
        assert_eq!(p(&[1, 1]).rem_monic(&p(&[-1, 1])), p(&[2]));
        assert_eq!(p(&[5, 3]).rem_monic(&IntPoly::one()), IntPoly::zero());
    }

    #[test]
    fn rem_monic_overflow_path_agrees() {
        let huge = BigInt::from(i64::MAX) * BigInt::from(4);
        let num = IntPoly::from_coeffs(vec![huge.clone(), BigInt::zero(), BigInt::one(), huge.clone()]);
        let modulus = p(&[3, -5, 1]);
        let r = num.rem_monic(&modulus);
        assert_eq!(r, num.rem_monic_big(&modulus));
        let q = (&num - &r).divide_exact(&modulus).unwrap();
        assert_eq!(&q * &modulus + &r, num);
        let small = p(&[i64::MAX, 0, 0, i64::MAX]);
        assert_eq!(small.rem_monic(&modulus), small.rem_monic_big(&modulus));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(p(&[-1, 1]).to_string(), "t - 1");
        assert_eq!(p(&[5, 0, 0, -2]).to_string(), "-2t^3 + 5");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[-7]).to_string(), "-7");
    }

    #[test]
    fn pow_and_sign() {
        assert_eq!(p(&[1, 1]).pow(2), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 1]).pow(0), IntPoly::one());
        assert_eq!(IntPoly::one_minus_t_pow(4).normalize_sign(), IntPoly::t_pow_minus_one(4));
        assert!(IntPoly::one_minus_t_pow(4).is_monic_up_to_sign());
        assert!(!p(&[1, 2]).is_monic_up_to_sign());
    }
}
