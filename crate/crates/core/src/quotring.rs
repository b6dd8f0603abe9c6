//! Additive structure of `Z[t]/(g_1, ..., g_k)` when some generator is
//! monic up to sign.
//!
//! With a monic `h` of degree `d` among the generators, `Z[t]/(h)` is free on
//! `1, t, ..., t^{d-1}`; the remaining generators contribute the relations
//! `t^j * g_i mod h` for `0 <= j < d`. The Smith normal form of that relation
//! matrix gives the canonical group.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::abgroup::{group_from_relations, FinAbGroup, GroupOrder, IntMatrix};
use crate::json::int_value;
use crate::polyint::{cyclotomic, resultant, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("no generator is monic up to sign")]
    NoMonicGenerator,
    #[error("the generator list is empty")]
    EmptyGenerators,
    #[error("cyclotomic pair needs 1 <= m < n (got m = {m}, n = {n})")]
    InvalidRange { m: u64, n: u64 },
}

/// A presentation of `Z[t]/(gens)` as a `Z`-module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPresentation {
    inputs: Vec<IntPoly>,
    generators: Vec<IntPoly>,
    modulus_index: usize,
    extra: Vec<IntPoly>,
}

impl QuotientPresentation {
    /// Generators exactly as supplied.
    pub fn inputs(&self) -> &[IntPoly] {
        &self.inputs
    }

    /// Generators after sign normalization (positive leading coefficient).
    pub fn generators(&self) -> &[IntPoly] {
        &self.generators
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.generators[self.modulus_index]
    }

    /// The other generators reduced modulo [`modulus`](Self::modulus).
    pub fn extra(&self) -> &[IntPoly] {
        &self.extra
    }

    /// `Z`-rank of `Z[t]/(modulus)`.
    pub fn rank(&self) -> usize {
        self.modulus().degree().expect("modulus is nonzero")
    }

    /// Rows `t^j * g mod modulus` in the basis `1, t, ..., t^{d-1}`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let d = self.rank();
        let modulus = self.modulus();
        let mut rows = Vec::with_capacity(d * self.extra.len());
        for g in &self.extra {
            let mut cur = g.clone();
            for _ in 0..d {
                rows.push((0..d).map(|i| cur.coeff(i)).collect());
                cur = cur.shift(1).rem_monic(modulus);
            }
        }
        IntMatrix::from_rows(d, rows).expect("rows have modulus-degree length")
    }

    pub fn structure(&self) -> FinAbGroup {
        group_from_relations(&self.relation_matrix())
    }

    /// `Res(modulus, g)` when exactly one other generator is present. For a
    /// monic modulus its absolute value is the order of a finite quotient.
    pub fn resultant_check(&self) -> Option<BigInt> {
        match self.generators.len() {
            2 => {
                let other = &self.generators[1 - self.modulus_index];
                if other.is_zero() {
                    return None;
                }
                Some(resultant(self.modulus(), other).expect("both generators nonzero"))
            }
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "input_generators": self.inputs.iter().map(IntPoly::to_json).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(IntPoly::to_json).collect::<Vec<_>>(),
            "modulus": self.modulus().to_json(),
            "extra": self.extra.iter().map(IntPoly::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Chooses the monic generator of least degree as modulus, earliest in input
/// order on ties. `1 - t^n` style generators are negated first.
pub fn build_presentation(gens: &[IntPoly]) -> Result<QuotientPresentation, QuotientError> {
    if gens.is_empty() {
        return Err(QuotientError::EmptyGenerators);
    }
    let generators: Vec<IntPoly> = gens.iter().cloned().map(IntPoly::normalize_sign).collect();
    let modulus_index = generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.is_monic())
        .min_by_key(|(i, g)| (g.degree(), *i))
        .map(|(i, _)| i)
        .ok_or(QuotientError::NoMonicGenerator)?;
    let modulus = &generators[modulus_index];
    let extra =
        generators.iter().enumerate().filter(|&(i, _)| i != modulus_index).map(|(_, g)| g.rem_monic(modulus)).collect();
    Ok(QuotientPresentation { inputs: gens.to_vec(), generators, modulus_index, extra })
}

pub fn quotient_structure(gens: &[IntPoly]) -> Result<FinAbGroup, QuotientError> {
    Ok(build_presentation(gens)?.structure())
}

/// `Z[t]/(Phi_m, Phi_n)` for `1 <= m < n`.
pub fn cyclotomic_pair(m: u64, n: u64) -> Result<FinAbGroup, QuotientError> {
    if m == 0 || m >= n {
        return Err(QuotientError::InvalidRange { m, n });
    }
    let phi_m = cyclotomic(m).expect("m >= 1");
    let phi_n = cyclotomic(n).expect("n >= 1");
    quotient_structure(&[phi_m, phi_n])
}

pub fn is_unit_ideal(gens: &[IntPoly]) -> Result<bool, QuotientError> {
    Ok(quotient_structure(gens)?.is_trivial())
}

/// A computed quotient with its presentation and resultant cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientReport {
    pub presentation: QuotientPresentation,
    pub group: FinAbGroup,
    pub resultant_check: Option<BigInt>,
}

impl QuotientReport {
    pub fn compute(gens: &[IntPoly]) -> Result<Self, QuotientError> {
        let presentation = build_presentation(gens)?;
        let group = presentation.structure();
        let resultant_check = presentation.resultant_check();
        Ok(QuotientReport { presentation, group, resultant_check })
    }

    /// True when the group is finite and its order equals `|resultant|`, or
    /// the group is infinite and the resultant vanishes. `None` without a
    /// resultant to compare against.
    pub fn resultant_agrees(&self) -> Option<bool> {
        let r = self.resultant_check.as_ref()?;
        Some(match self.group.order() {
            GroupOrder::Finite(n) => n.magnitude() == r.magnitude() && r.sign() != num_bigint::Sign::NoSign,
            GroupOrder::Infinite => r.sign() == num_bigint::Sign::NoSign,
        })
    }

    pub fn to_json(&self) -> Value {
        let p = &self.presentation;
        json!({
            "input_generators": p.inputs().iter().map(IntPoly::to_json).collect::<Vec<_>>(),
            "generators": p.generators().iter().map(IntPoly::to_json).collect::<Vec<_>>(),
            "modulus": p.modulus().to_json(),
            "group": self.group.to_json(),
            "order": self.group.order().to_string(),
            "resultant_check": self.resultant_check.as_ref().map(int_value),
        })
    }
}
