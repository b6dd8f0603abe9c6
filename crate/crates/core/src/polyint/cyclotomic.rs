//! Cyclotomic polynomials by exact division.
//!
//! `Phi_n` is obtained from `t^n - 1 = prod_{d | n} Phi_d` by dividing out the
//! proper-divisor factors. Results are cached process-wide; the cache is
//! behind a `RwLock` and the lock is never held across the recursive calls.
//!
//! Sign convention: every `Phi_n` here is monic, so `Phi_1 = t - 1`. Formulas
//! written with `1 - t` and `1 - t^n` differ from these by the unit `-1`, which
//! changes no ideal or quotient ring.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::{IntPoly, PolyError};
use crate::arith::divisors;

fn cache() -> &'static RwLock<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, monic of degree `phi(n)`.
pub fn cyclotomic(n: u64) -> Result<IntPoly, PolyError> {
    if n == 0 {
        return Err(PolyError::InvalidIndex(n));
    }
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return Ok(p.clone());
    }
    let proper: IntPoly = divisors(n)
        .into_iter()
        .filter(|&d| d < n)
        .map(|d| cyclotomic(d).expect("proper divisors are positive"))
        .product();
    let phi = IntPoly::t_pow_minus_one(n as usize)
        .divide_exact(&proper)
        .expect("t^n - 1 is divisible by its proper cyclotomic factors");
    cache().write().expect("cyclotomic cache poisoned").entry(n).or_insert_with(|| phi.clone());
    Ok(phi)
}
