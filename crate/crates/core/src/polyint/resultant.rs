use num_bigint::BigInt;

use super::{IntPoly, PolyError};
use crate::abgroup::IntMatrix;

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted rows of
/// `f` followed by m shifted rows of `g`, columns in descending degree.
pub fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> Result<IntMatrix, PolyError> {
    let m = f.degree().ok_or(PolyError::ZeroInput)?;
    let n = g.degree().ok_or(PolyError::ZeroInput)?;
    let size = m + n;
    let mut mat = IntMatrix::zeros(size, size);
    for row in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            mat[(row, row + k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            mat[(n + row, row + k)] = c.clone();
        }
    }
    Ok(mat)
}

/// `Res(f, g)` as the exact determinant of the Sylvester matrix, evaluated by
/// fraction-free Bareiss elimination.
///
/// When one argument is monic up to sign and has the smaller degree, the other
/// is first reduced modulo it: for monic `f`, `Res(f, g) = ∏ g(α) = Res(f, g mod f)`
/// over the roots `α` of `f`. This only shrinks the matrix.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, PolyError> {
    let m = f.degree().ok_or(PolyError::ZeroInput)?;
    let n = g.degree().ok_or(PolyError::ZeroInput)?;
    if m >= 1 && n >= m && f.is_monic_up_to_sign() {
        return Ok(reduced(f, g, n));
    }
    if n >= 1 && m > n && g.is_monic_up_to_sign() {
        // Res(f, g) = (−1)^{mn} Res(g, f)
        let r = reduced(g, f, m);
        return Ok(if m * n % 2 == 1 { -r } else { r });
    }
    sylvester_resultant(f, g)
}

/// `Res(f, g)` for `f` monic up to sign, `deg g = n`.
fn reduced(f: &IntPoly, g: &IntPoly, n: usize) -> BigInt {
    // Res(−f, g) = (−1)^n Res(f, g)
    let negated = !f.is_monic();
    let monic = if negated { -f } else { f.clone() };
    let r = g.rem_monic(&monic);
    let res = if r.is_zero() { BigInt::from(0) } else { sylvester_resultant(&monic, &r).expect("both nonzero") };
    if negated && n % 2 == 1 {
        -res
    } else {
        res
    }
}

fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, PolyError> {
    let syl = sylvester_matrix(f, g)?;
    if syl.rows() == 0 {
        // both constants: empty determinant
        return Ok(BigInt::from(1));
    }
    Ok(syl.determinant().expect("Sylvester matrices are square"))
}
