//! Fixed coordinates of diagonal `μₙ`- and `C^×`-actions on affine space.
//!
//! For weights `(a₁, …, a_r)`, `λ ∈ C^×` acts by `xᵢ ↦ λ^{aᵢ} xᵢ`. A coordinate
//! axis is pointwise fixed by `μₙ` iff `n | aᵢ`, and by all of `C^×` iff
//! `aᵢ = 0`; the fixed locus is the span of the fixed axes. When `n ≥ 2` is
//! coprime to every nonzero `|aᵢ|` the two loci agree.
//!
//! `μ₁` is the trivial group and fixes everything, so the coprimality
//! criterion only makes sense for `n ≥ 2`: [`verify_fixed_point_prop`]
//! sweeps `2 ≤ n ≤ N`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::gcd;
use crate::krmodel::WeightVector;

pub type IndexSet = BTreeSet<usize>;

/// `{ i : n | aᵢ }`.
pub fn mu_fixed_indices(w: &WeightVector, n: u64) -> IndexSet {
    assert!(n >= 1, "n must be >= 1");
    w.weights().iter().enumerate().filter(|(_, &a)| a.unsigned_abs() % n == 0).map(|(i, _)| i).collect()
}

/// `{ i : aᵢ = 0 }`.
pub fn torus_fixed_indices(w: &WeightVector) -> IndexSet {
    w.weights().iter().enumerate().filter(|(_, &a)| a == 0).map(|(i, _)| i).collect()
}

/// `gcd(n, |aᵢ|) = 1` for every nonzero weight; vacuously true if all are 0.
pub fn coprime_predicate(w: &WeightVector, n: u64) -> bool {
    w.weights().iter().filter(|&&a| a != 0).all(|&a| gcd(n, a.unsigned_abs()) == 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointCounterexample {
    pub n: u64,
    pub mu_fixed: IndexSet,
    pub torus_fixed: IndexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub weights: WeightVector,
    #[serde(rename = "N")]
    pub n_max: u64,
    /// Number of `n` in `2..=N` satisfying the coprimality hypothesis.
    pub checked: u64,
    pub status: Status,
    pub counterexample: Option<FixedPointCounterexample>,
}

impl FixedPointReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

/// Checks `μₙ`-fixed = `C^×`-fixed for every `2 ≤ n ≤ N` that is coprime to
/// all nonzero weights, stopping at the first disagreement.
pub fn verify_fixed_point_prop(w: &WeightVector, n_max: u64) -> FixedPointReport {
    let torus = torus_fixed_indices(w);
    let mut checked = 0;
    for n in 2..=n_max {
        if !coprime_predicate(w, n) {
            continue;
        }
        checked += 1;
        let mu = mu_fixed_indices(w, n);
        if mu != torus {
            return FixedPointReport {
                weights: w.clone(),
                n_max,
                checked,
                status: Status::Fail,
                counterexample: Some(FixedPointCounterexample { n, mu_fixed: mu, torus_fixed: torus }),
            };
        }
    }
    FixedPointReport { weights: w.clone(), n_max, checked, status: Status::Pass, counterexample: None }
}
