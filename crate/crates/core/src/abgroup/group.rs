use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::{smith_diagonal, IntMatrix};
use crate::json::int_value;

/// A finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k` in
/// invariant-factor form: every `d_i >= 2` and `d_i | d_{i+1}`.
///
/// Two values are equal exactly when the groups are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupOrder {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invariant factor {0} is below 2")]
    FactorTooSmall(BigInt),
    #[error("invariant factor {0} does not divide {1}")]
    NotAChain(BigInt, BigInt),
    #[error("malformed group JSON: {0}")]
    Json(String),
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z/n`; `n = 0` gives `Z`, `n = +-1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_factors(0, &[n.into()])
    }

    /// Validating constructor for data already in invariant-factor form.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, GroupError> {
        for w in torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(GroupError::NotAChain(w[0].clone(), w[1].clone()));
            }
        }
        if let Some(d) = torsion.iter().find(|d| **d < BigInt::from(2)) {
            return Err(GroupError::FactorTooSmall(d.clone()));
        }
        Ok(FinAbGroup { free_rank, torsion })
    }

    /// Canonical form of `Z^free_rank + Z/n_1 + ... + Z/n_k` for arbitrary
    /// integers `n_i` (zero contributes a free summand).
    pub fn from_cyclic_factors(free_rank: usize, factors: &[BigInt]) -> Self {
        let g = group_from_relations(&IntMatrix::diagonal(factors));
        FinAbGroup { free_rank: free_rank + g.free_rank, torsion: g.torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> GroupOrder {
        if self.free_rank > 0 {
            GroupOrder::Infinite
        } else {
            GroupOrder::Finite(self.torsion.iter().product())
        }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// True when the group is `Z/n`.
    pub fn is_cyclic_of_order(&self, n: &BigInt) -> bool {
        if n.is_one() {
            return self.is_trivial();
        }
        self.free_rank == 0 && self.torsion.len() == 1 && &self.torsion[0] == n
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let factors: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_cyclic_factors(self.free_rank + other.free_rank, &factors)
    }

    /// `k`-fold direct sum.
    pub fn power(&self, k: usize) -> FinAbGroup {
        let mut torsion = Vec::with_capacity(self.torsion.len() * k);
        // G^k has invariant factors d_i repeated k times, already a chain when sorted
        for d in &self.torsion {
            torsion.extend(std::iter::repeat_n(d.clone(), k));
        }
        FinAbGroup { free_rank: self.free_rank * k, torsion }
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "free_rank": self.free_rank,
            "torsion": self.torsion.iter().map(int_value).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, GroupError> {
        let free_rank =
            v.get("free_rank").and_then(Value::as_u64).ok_or_else(|| GroupError::Json("missing free_rank".into()))?
                as usize;
        let torsion = v
            .get("torsion")
            .and_then(Value::as_array)
            .ok_or_else(|| GroupError::Json("missing torsion".into()))?
            .iter()
            .map(|d| {
                let s = match d {
                    Value::Number(n) => n.to_string(),
                    Value::String(s) => s.clone(),
                    _ => return Err(GroupError::Json(format!("bad factor {d}"))),
                };
                s.parse::<BigInt>().map_err(|_| GroupError::Json(format!("bad factor {s}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(free_rank, torsion)
    }
}

/// `Z ⊕ Z/2 ⊕ Z/6`-style rendering; the trivial group prints as `0`.
impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

/// The cokernel `Z^cols / rowspan(M)` in canonical form.
pub fn group_from_relations(m: &IntMatrix) -> FinAbGroup {
    let (d, rank) = smith_diagonal(m);
    let torsion = (0..rank).map(|i| d[(i, i)].abs()).filter(|x| !x.is_one()).collect();
    FinAbGroup { free_rank: m.cols() - rank, torsion }
}

pub fn group_order(g: &FinAbGroup) -> GroupOrder {
    g.order()
}
