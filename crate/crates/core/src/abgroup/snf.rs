use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | ... | d_rank`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Entry arithmetic for the elimination. Every fallible operation returns
/// `None` on machine-integer overflow; the `BigInt` instance never fails.
trait Entry: Clone + Zero {
    fn mag_lt(&self, other: &Self) -> bool;
    fn floor_div(&self, other: &Self) -> Option<Self>;
    /// `*self -= q * x`
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()>;
    fn add_assign_checked(&mut self, x: &Self) -> Option<()>;
    fn divides(&self, x: &Self) -> bool;
    fn negative(&self) -> bool;
    fn negate(&mut self) -> Option<()>;
}

impl Entry for BigInt {
    fn mag_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn floor_div(&self, other: &Self) -> Option<Self> {
        Some(self.div_floor(other))
    }
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()> {
        *self -= q * x;
        Some(())
    }
    fn add_assign_checked(&mut self, x: &Self) -> Option<()> {
        *self += x;
        Some(())
    }
    fn divides(&self, x: &Self) -> bool {
        x.is_multiple_of(self)
    }
    fn negative(&self) -> bool {
        self.is_negative()
    }
    fn negate(&mut self) -> Option<()> {
        *self = -std::mem::take(self);
        Some(())
    }
}

impl Entry for i64 {
    fn mag_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn floor_div(&self, other: &Self) -> Option<Self> {
        self.checked_div(*other)?;
        Some(Integer::div_floor(self, other))
    }
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()> {
        *self = self.checked_sub(q.checked_mul(*x)?)?;
        Some(())
    }
    fn add_assign_checked(&mut self, x: &Self) -> Option<()> {
        *self = self.checked_add(*x)?;
        Some(())
    }
    fn divides(&self, x: &Self) -> bool {
        // |self| >= 1 here; i64::MIN % -1 is the only overflow and divides anyway
        *self == -1 || x % self == 0
    }
    fn negative(&self) -> bool {
        *self < 0
    }
    fn negate(&mut self) -> Option<()> {
        *self = self.checked_neg()?;
        Some(())
    }
}

/// Dense row-major working matrix.
#[derive(Clone)]
struct Work<T> {
    rows: usize,
    cols: usize,
    e: Vec<T>,
}

impl<T: Entry> Work<T> {
    fn identity(n: usize, one: T) -> Self {
        let mut e = vec![T::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = one.clone();
        }
        Work { rows: n, cols: n, e }
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.e[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.e.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.e.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q * row[src]`, touching only columns from `from` on.
    fn sub_row(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Option<()> {
        for j in from..self.cols {
            let x = self.e[src * self.cols + j].clone();
            self.e[dst * self.cols + j].sub_mul(q, &x)?;
        }
        Some(())
    }

    /// `col[dst] -= q * col[src]`, touching only rows from `from` on.
    fn sub_col(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Option<()> {
        for i in from..self.rows {
            let x = self.e[i * self.cols + src].clone();
            self.e[i * self.cols + dst].sub_mul(q, &x)?;
        }
        Some(())
    }

    fn add_row(&mut self, dst: usize, src: usize, from: usize) -> Option<()> {
        for j in from..self.cols {
            let x = self.e[src * self.cols + j].clone();
            self.e[dst * self.cols + j].add_assign_checked(&x)?;
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for j in 0..self.cols {
            self.e[i * self.cols + j].negate()?;
        }
        Some(())
    }
}

/// Working state; `u` and `v` are `None` when only `D` is wanted.
struct Reducer<T> {
    d: Work<T>,
    u: Option<Work<T>>,
    v: Option<Work<T>>,
}

impl<T: Entry> Reducer<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    // Entries of D left of (above) the active index `t` are already zero in
    // the rows (columns) being combined, so D is only updated from `t` on.

    fn sub_row(&mut self, dst: usize, src: usize, q: &T, t: usize) -> Option<()> {
        self.d.sub_row(dst, src, q, t)?;
        match &mut self.u {
            Some(u) => u.sub_row(dst, src, q, 0),
            None => Some(()),
        }
    }

    fn sub_col(&mut self, dst: usize, src: usize, q: &T, t: usize) -> Option<()> {
        self.d.sub_col(dst, src, q, t)?;
        match &mut self.v {
            Some(v) => v.sub_col(dst, src, q, 0),
            None => Some(()),
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, t: usize) -> Option<()> {
        self.d.add_row(dst, src, t)?;
        match &mut self.u {
            Some(u) => u.add_row(dst, src, 0),
            None => Some(()),
        }
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        self.d.negate_row(i)?;
        match &mut self.u {
            Some(u) => u.negate_row(i),
            None => Some(()),
        }
    }

    /// Position of the smallest nonzero |entry| in the lower-right block at `t`.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows {
            for j in t..self.d.cols {
                let e = self.d.at(i, j);
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| e.mag_lt(self.d.at(bi, bj))) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Moves the smallest nonzero entry of row `t` or column `t` onto the pivot.
    fn repivot_cross(&mut self, t: usize) {
        let mut best = (t, t);
        for i in t + 1..self.d.rows {
            let e = self.d.at(i, t);
            if !e.is_zero() && e.mag_lt(self.d.at(best.0, best.1)) {
                best = (i, t);
            }
        }
        for j in t + 1..self.d.cols {
            let e = self.d.at(t, j);
            if !e.is_zero() && e.mag_lt(self.d.at(best.0, best.1)) {
                best = (t, j);
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }

    /// Reduces the pivot row and column; `Some(true)` when both are now clear.
    fn clear_cross(&mut self, t: usize) -> Option<bool> {
        let mut clean = true;
        let pivot = self.d.at(t, t).clone();
        for i in t + 1..self.d.rows {
            if self.d.at(i, t).is_zero() {
                continue;
            }
            let q = self.d.at(i, t).floor_div(&pivot)?;
            self.sub_row(i, t, &q, t)?;
            clean &= self.d.at(i, t).is_zero();
        }
        for j in t + 1..self.d.cols {
            if self.d.at(t, j).is_zero() {
                continue;
            }
            let q = self.d.at(t, j).floor_div(&pivot)?;
            self.sub_col(j, t, &q, t)?;
            clean &= self.d.at(t, j).is_zero();
        }
        Some(clean)
    }

    /// A row below `t` holding an entry the pivot does not divide.
    fn find_indivisible_row(&self, t: usize) -> Option<usize> {
        let pivot = self.d.at(t, t);
        (t + 1..self.d.rows).find(|&i| (t + 1..self.d.cols).any(|j| !pivot.divides(self.d.at(i, j))))
    }

    /// Runs the elimination to completion; `None` on overflow.
    fn reduce(&mut self) -> Option<usize> {
        let mut t = 0;
        while t < self.d.rows.min(self.d.cols) {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if !self.clear_cross(t)? {
                    self.repivot_cross(t);
                    continue;
                }
                match self.find_indivisible_row(t) {
                    Some(i) => self.add_row(t, i, t)?,
                    None => break,
                }
            }
            if self.d.at(t, t).negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        Some(t)
    }
}

fn to_work(m: &IntMatrix) -> Work<BigInt> {
    Work { rows: m.rows(), cols: m.cols(), e: m.entries().to_vec() }
}

fn from_work(w: Work<BigInt>) -> IntMatrix {
    IntMatrix::from_entries(w.rows, w.cols, w.e).expect("shape preserved")
}

/// Smith normal form with full transform accumulation.
///
/// Pivoting always picks the smallest nonzero absolute value, first in the
/// remaining block and then within the pivot row and column while they are
/// being cleared. The result is deterministic for a given input.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let one = BigInt::from(1);
    let mut r = Reducer {
        d: to_work(m),
        u: Some(Work::identity(m.rows(), one.clone())),
        v: Some(Work::identity(m.cols(), one)),
    };
    let rank = r.reduce().expect("BigInt elimination cannot overflow");
    SmithForm { u: from_work(r.u.expect("tracked")), d: from_work(r.d), v: from_work(r.v.expect("tracked")), rank }
}

/// The diagonal `D` of [`smith_normal_form`] without building `U` and `V`.
///
/// Same pivot sequence, so the returned matrix equals
/// `smith_normal_form(m).d`. Transforms grow far faster than `D` on the
/// relation matrices of cyclotomic quotients, so structure computations use
/// this entry point. Runs on `i64` first and redoes the work with `BigInt`
/// only if some intermediate value overflows.
pub fn smith_diagonal(m: &IntMatrix) -> (IntMatrix, usize) {
    let small: Option<Vec<i64>> = m.entries().iter().map(|e| i64::try_from(e).ok()).collect();
    if let Some(e) = small {
        let mut r = Reducer { d: Work { rows: m.rows(), cols: m.cols(), e }, u: None, v: None };
        if let Some(rank) = r.reduce() {
            let entries = r.d.e.into_iter().map(BigInt::from).collect();
            let d = IntMatrix::from_entries(m.rows(), m.cols(), entries).expect("shape preserved");
            return (d, rank);
        }
    }
    let mut r = Reducer { d: to_work(m), u: None, v: None };
    let rank = r.reduce().expect("BigInt elimination cannot overflow");
    (from_work(r.d), rank)
}
