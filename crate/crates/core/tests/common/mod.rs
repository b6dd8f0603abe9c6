//! Reference implementations that share no code with the library.

#![allow(dead_code)]

use std::f64::consts::PI;

use krk0::polyint::IntPoly;
use num_bigint::BigInt;

/// Dense `i128` polynomial, ascending.
pub type P = Vec<i128>;

pub fn trim(mut p: P) -> P {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn mul(a: &P, b: &P) -> P {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Long division by a monic polynomial; panics on a nonzero remainder.
pub fn div_exact_monic(num: &P, den: &P) -> P {
    let mut rem = num.clone();
    let d = den.len() - 1;
    assert_eq!(den[d], 1);
    if rem.len() <= d {
        assert!(trim(rem).is_empty());
        return vec![];
    }
    let mut q = vec![0i128; rem.len() - d];
    for k in (0..q.len()).rev() {
        let c = rem[k + d];
        q[k] = c;
        for (j, x) in den.iter().enumerate() {
            rem[k + j] -= c * x;
        }
    }
    assert!(trim(rem).is_empty(), "not divisible");
    trim(q)
}

pub fn t_pow_minus_one(n: usize) -> P {
    let mut p = vec![0i128; n + 1];
    p[0] = -1;
    p[n] = 1;
    p
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn totient_brute(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

pub fn mobius_brute(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `Φₙ = ∏_{d|n} (t^d − 1)^{μ(n/d)}`.
pub fn cyclotomic_mobius(n: u64) -> P {
    let (mut num, mut den) = (vec![1i128], vec![1i128]);
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        match mobius_brute(n / d) {
            1 => num = mul(&num, &t_pow_minus_one(d as usize)),
            -1 => den = mul(&den, &t_pow_minus_one(d as usize)),
            _ => {}
        }
    }
    div_exact_monic(&num, &den)
}

pub fn to_i128(p: &IntPoly) -> P {
    p.coeffs().iter().map(|c| i128::try_from(c).expect("small coefficient")).collect()
}

pub fn from_i128(p: &P) -> IntPoly {
    IntPoly::from_coeffs(p.iter().map(|&c| BigInt::from(c)).collect())
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[derive(Clone, Copy, Debug)]
pub struct C(pub f64, pub f64);

impl C {
    pub fn root_of_unity(k: u64, n: u64) -> C {
        let a = 2.0 * PI * k as f64 / n as f64;
        C(a.cos(), a.sin())
    }
    pub fn sub(self, o: C) -> C {
        C(self.0 - o.0, self.1 - o.1)
    }
    pub fn abs(self) -> f64 {
        self.0.hypot(self.1)
    }
}

pub fn primitive_roots(n: u64) -> impl Iterator<Item = C> {
    (0..n).filter(move |&k| gcd(k, n) == 1).map(move |k| C::root_of_unity(k, n))
}

/// `log |Res(Φ_m, Φ_n)| = Σ log |ζ − η|` over primitive `m`-th roots `ζ` and
/// `n`-th roots `η`.
pub fn log_abs_resultant_cyclotomic(m: u64, n: u64) -> f64 {
    let etas: Vec<C> = primitive_roots(n).collect();
    primitive_roots(m).map(|z| etas.iter().map(|&e| z.sub(e).abs().ln()).sum::<f64>()).sum()
}

/// Rank over `F_p` by Gaussian elimination.
pub fn rank_mod_p(rows: &[Vec<i128>], p: i128) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % p;
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i128, mut e: i128, p: i128) -> i128 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rows `t^j g mod f`, `j < deg f`, for monic `f`, in `i128`.
pub fn multiplication_rows(f: &P, g: &P) -> Vec<Vec<i128>> {
    let d = f.len() - 1;
    let reduce = |p: &mut P| {
        while p.len() > d {
            let c = p.pop().unwrap();
            let base = p.len() - d;
            for j in 0..d {
                p[base + j] -= c * f[j];
            }
        }
        p.resize(d, 0);
    };
    let mut cur = g.clone();
    reduce(&mut cur);
    let mut rows = Vec::with_capacity(d);
    for _ in 0..d {
        rows.push(cur.clone());
        cur.insert(0, 0);
        reduce(&mut cur);
    }
    rows
}

pub fn divisor_count(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).count() as u64
}
