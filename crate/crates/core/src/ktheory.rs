//! Equivariant `K₀` of Koras–Russell threefolds.
//!
//! For the hyperbolic `C^×`-action,
//!
//! ```text
//! K₀^{C^×}(X) = R(C^×) ⊕ (R(C^×)/(f(t)))^{ρ−1},    R(C^×) = Z[t, t⁻¹],
//! ```
//!
//! and each summand `Z[t]/(f)` is free of rank `deg f = (α₂−1)(α₃−1)`.
//! Restricting to `μₙ ⊂ C^×` is base change along `R(C^×) → R(μₙ) = Z[t]/(1 − tⁿ)`,
//! so
//!
//! ```text
//! K₀^{μₙ}(X) = R(μₙ) ⊕ F^{ρ−1},    F = Z[t]/(f(t), 1 − tⁿ).
//! ```
//!
//! For `n = pᵏ` the group `F_{pᵏ}` is finite, and nonzero exactly when
//! `p | α₂α₃`. Because `f(1) = 1`, the f-part dies after completing at the
//! augmentation ideal `(1 − t)`.
//!
//! A trivial threefold (`ε_X = 0`) is `A^3` with a linear action and has
//! `K₀ = R`. That branch is reachable only through [`ThreefoldParams::from_descriptor`];
//! the bare `(α₂, α₃, ρ)` constructors assume a nontrivial threefold.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::abgroup::{FinAbGroup, GroupOrder};
use crate::arith::{gcd, is_prime, prime_power_base};
use crate::json::int_value;
use crate::krmodel::{bell_f, KrDescriptor, KrError};
use crate::polyint::IntPoly;
use crate::quotring::{build_presentation, is_unit_ideal, QuotientPresentation, QuotientReport};

/// Largest `n` for which `1 − tⁿ` is materialized.
pub const MAX_GROUP_ORDER: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KtError {
    #[error(transparent)]
    Model(#[from] KrError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the threefold is trivial (ε = 0); its K₀ is the representation ring alone")]
    TrivialThreefold,
    #[error("group order must be >= 1")]
    ZeroOrder,
    #[error("group order {0} exceeds the supported maximum {MAX_GROUP_ORDER}")]
    OrderTooLarge(String),
    #[error("bad group spec {0:?}: expected `torus`, `mu:n` or `mu:p^k`")]
    BadGroupSpec(String),
}

fn violation(name: &str) -> KtError {
    KtError::Model(KrError::ConstraintViolation(name.to_string()))
}

/// The integers the `K₀` formulas consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreefoldParams {
    pub alpha2: u64,
    pub alpha3: u64,
    pub rho: u64,
    pub nontrivial: bool,
}

impl ThreefoldParams {
    /// A nontrivial threefold with the given exponents.
    pub fn new(alpha2: u64, alpha3: u64, rho: u64) -> Result<Self, KtError> {
        if alpha2 < 2 || alpha3 < 2 {
            return Err(violation("α₂,α₃ ≥ 2"));
        }
        if gcd(alpha2, alpha3) != 1 {
            return Err(violation("(α₂,α₃)=1"));
        }
        if rho < 2 {
            return Err(violation("ρ ≥ 2"));
        }
        Ok(ThreefoldParams { alpha2, alpha3, rho, nontrivial: true })
    }

    /// Validates `d`; triviality follows [`KrDescriptor::is_nontrivial`].
    pub fn from_descriptor(d: &KrDescriptor) -> Result<Self, KtError> {
        let d = d.clone().validate()?;
        if !d.is_nontrivial() {
            return Ok(ThreefoldParams { alpha2: d.alpha2(), alpha3: d.alpha3(), rho: d.rho, nontrivial: false });
        }
        Self::new(d.alpha2(), d.alpha3(), d.rho)
    }

    /// `(α₂−1)(α₃−1)`, the degree of `f`.
    pub fn f_degree(&self) -> u64 {
        (self.alpha2 - 1) * (self.alpha3 - 1)
    }

    pub fn multiplicity(&self) -> u64 {
        if self.nontrivial {
            self.rho - 1
        } else {
            0
        }
    }

    pub fn f(&self) -> IntPoly {
        bell_f(self.alpha2, self.alpha3).expect("validated exponents are coprime")
    }

    /// Whether `F_{pᵏ}` should be nonzero: `X` nontrivial and `p | α₂α₃`.
    pub fn predicts_nontrivial(&self, p: u64) -> bool {
        self.nontrivial && (self.alpha2.is_multiple_of(p) || self.alpha3.is_multiple_of(p))
    }

    fn to_json(self) -> Value {
        json!({ "alpha2": self.alpha2, "alpha3": self.alpha3, "rho": self.rho })
    }
}

/// `C^×` or `μₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActingGroup {
    Torus,
    Mu(u64),
}

impl ActingGroup {
    /// `(p, k)` with `n = pᵏ`, if `μₙ` is a nontrivial cyclic `p`-group.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match *self {
            ActingGroup::Mu(n) if n >= 2 => {
                let p = prime_power_base(n)?;
                let mut k = 0;
                let mut m = n;
                while m > 1 {
                    m /= p;
                    k += 1;
                }
                Some((p, k))
            }
            _ => None,
        }
    }
}

impl fmt::Display for ActingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActingGroup::Torus => f.write_str("torus"),
            ActingGroup::Mu(n) => write!(f, "mu:{n}"),
        }
    }
}

/// Parses `torus`, `mu:n` or `mu:p^k`. In the last form `p` must be prime.
impl FromStr for ActingGroup {
    type Err = KtError;

    fn from_str(s: &str) -> Result<Self, KtError> {
        let bad = || KtError::BadGroupSpec(s.to_string());
        let s = s.trim();
        if s.eq_ignore_ascii_case("torus") {
            return Ok(ActingGroup::Torus);
        }
        let rest = s.strip_prefix("mu:").ok_or_else(bad)?;
        let n = match rest.split_once('^') {
            None => rest.trim().parse::<u64>().map_err(|_| bad())?,
            Some((p, k)) => {
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                let k: u32 = k.trim().parse().map_err(|_| bad())?;
                if !is_prime(p) {
                    return Err(KtError::NotPrime(p));
                }
                p.checked_pow(k).ok_or_else(|| KtError::OrderTooLarge(format!("{p}^{k}")))?
            }
        };
        if n == 0 {
            return Err(KtError::ZeroOrder);
        }
        Ok(ActingGroup::Mu(n))
    }
}

/// `Z`-rank of the representation-ring summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeRank {
    Finite(u64),
    Infinite,
}

/// `K₀^G(X)` split as `R(G) ⊕ F^{ρ−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantK0 {
    pub params: ThreefoldParams,
    pub group: ActingGroup,
    /// Ring rank of `R(G)` over `Z`: `n` for `μₙ`.
    pub free_rank: FreeRank,
    /// `None` on the trivial-threefold branch.
    pub presentation: Option<QuotientPresentation>,
    pub f_structure: FinAbGroup,
    /// `ρ − 1`, or 0 for a trivial threefold.
    pub multiplicity: u64,
}

impl EquivariantK0 {
    pub fn compute(params: &ThreefoldParams, group: ActingGroup) -> Result<Self, KtError> {
        let free_rank = match group {
            ActingGroup::Torus => FreeRank::Infinite,
            ActingGroup::Mu(0) => return Err(KtError::ZeroOrder),
            ActingGroup::Mu(n) if n > MAX_GROUP_ORDER => return Err(KtError::OrderTooLarge(n.to_string())),
            ActingGroup::Mu(n) => FreeRank::Finite(n),
        };
        if !params.nontrivial {
            return Ok(EquivariantK0 {
                params: *params,
                group,
                free_rank,
                presentation: None,
                f_structure: FinAbGroup::trivial(),
                multiplicity: 0,
            });
        }
        let f = params.f();
        let gens = match group {
            ActingGroup::Torus => vec![f],
            ActingGroup::Mu(n) => vec![f, IntPoly::one_minus_t_pow(n as usize)],
        };
        let presentation = build_presentation(&gens).expect("f is monic");
        let f_structure = presentation.structure();
        Ok(EquivariantK0 {
            params: *params,
            group,
            free_rank,
            presentation: Some(presentation),
            f_structure,
            multiplicity: params.multiplicity(),
        })
    }

    /// The underlying abelian group `Zⁿ ⊕ F^{ρ−1}`; `None` for the torus,
    /// whose representation ring has infinite rank.
    pub fn whole_group(&self) -> Option<FinAbGroup> {
        match self.free_rank {
            FreeRank::Finite(n) => {
                Some(FinAbGroup::free(n as usize).direct_sum(&self.f_structure.power(self.multiplicity as usize)))
            }
            FreeRank::Infinite => None,
        }
    }

    /// `F^{ρ−1}` alone.
    pub fn f_part(&self) -> FinAbGroup {
        self.f_structure.power(self.multiplicity as usize)
    }

    pub fn resultant_check(&self) -> Option<BigInt> {
        self.presentation.as_ref()?.resultant_check()
    }

    pub fn to_json(&self) -> Value {
        let ring = match self.group {
            ActingGroup::Torus => "Z[t,t^-1]".to_string(),
            ActingGroup::Mu(n) => format!("Z[t]/(t^{n} - 1)"),
        };
        let rank = match self.free_rank {
            FreeRank::Finite(n) => json!(n),
            FreeRank::Infinite => json!("infinite"),
        };
        let resultant = self.resultant_check();
        let agrees = resultant.as_ref().map(|r| match self.f_structure.order() {
            GroupOrder::Finite(o) => !r.is_zero() && o.magnitude() == r.magnitude(),
            GroupOrder::Infinite => r.is_zero(),
        });
        let predicted = self.group.prime_power().map(|(p, _)| classification(self.params.predicts_nontrivial(p)));
        json!({
            "inputs": self.params.to_json(),
            "group": self.group.to_string(),
            "nontrivial_threefold": self.params.nontrivial,
            "representation_ring": { "ring": ring, "z_rank": rank },
            "f": self.presentation.as_ref().map(|p| p.inputs()[0].to_json()),
            "presentation": self.presentation.as_ref().map(QuotientPresentation::to_json),
            "f_part": self.f_structure.to_json(),
            "f_part_order": self.f_structure.order().to_string(),
            "multiplicity": self.multiplicity,
            "whole_group": self.whole_group().map(|g| g.to_json()),
            "classification": classification(!self.f_structure.is_trivial()),
            "predicted_classification": predicted,
            "oracle": {
                "resultant": resultant.as_ref().map(int_value),
                "resultant_agrees": agrees,
            },
        })
    }
}

fn classification(nontrivial: bool) -> &'static str {
    if nontrivial {
        "nontrivial"
    } else {
        "trivial"
    }
}

/// `K₀^{C^×}(X)`: one copy of `Z[t, t⁻¹]` and `ρ−1` copies of `Z[t]/(f)`.
pub fn k0_torus(alpha2: u64, alpha3: u64, rho: u64) -> Result<EquivariantK0, KtError> {
    EquivariantK0::compute(&ThreefoldParams::new(alpha2, alpha3, rho)?, ActingGroup::Torus)
}

/// `K₀^{μₙ}(X)` with `F = Z[t]/(f, 1 − tⁿ)`.
pub fn k0_mu(alpha2: u64, alpha3: u64, rho: u64, n: u64) -> Result<EquivariantK0, KtError> {
    EquivariantK0::compute(&ThreefoldParams::new(alpha2, alpha3, rho)?, ActingGroup::Mu(n))
}

/// One summand `F_{pᵏ}` together with its predicted and observed status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FGroup {
    pub p: u64,
    pub k: u32,
    pub group: FinAbGroup,
    pub nontrivial: bool,
    pub predicted_nontrivial: bool,
    pub resultant: Option<BigInt>,
}

impl FGroup {
    /// Finite, and nonzero exactly when predicted.
    pub fn matches_classification(&self) -> bool {
        self.group.is_finite() && self.nontrivial == self.predicted_nontrivial
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "k": self.k,
            "group": self.group.to_json(),
            "order": self.group.order().to_string(),
            "classification": classification(self.nontrivial),
            "predicted_classification": classification(self.predicted_nontrivial),
            "resultant": self.resultant.as_ref().map(int_value),
        })
    }
}

/// `F_{pᵏ} = Z[t]/(1 − t^{pᵏ}, f)`, a single summand.
///
/// Built straight from the quotient ring rather than through
/// [`EquivariantK0`], so the two can be compared.
pub fn f_group_for(params: &ThreefoldParams, p: u64, k: u32) -> Result<FGroup, KtError> {
    let n = prime_power_order(p, k)?;
    let (group, resultant) = if params.nontrivial {
        let report = QuotientReport::compute(&f_generators(params, n)).expect("f is monic");
        (report.group, report.resultant_check)
    } else {
        (FinAbGroup::trivial(), None)
    };
    Ok(FGroup {
        p,
        k,
        nontrivial: !group.is_trivial(),
        predicted_nontrivial: params.predicts_nontrivial(p),
        group,
        resultant,
    })
}

fn prime_power_order(p: u64, k: u32) -> Result<u64, KtError> {
    if !is_prime(p) {
        return Err(KtError::NotPrime(p));
    }
    if k == 0 {
        return Err(KtError::ZeroOrder);
    }
    let n = p.checked_pow(k).filter(|&n| n <= MAX_GROUP_ORDER);
    n.ok_or_else(|| KtError::OrderTooLarge(format!("{p}^{k}")))
}

fn f_generators(params: &ThreefoldParams, n: u64) -> [IntPoly; 2] {
    [IntPoly::one_minus_t_pow(n as usize), params.f()]
}

pub fn f_group(alpha2: u64, alpha3: u64, rho: u64, p: u64, k: u32) -> Result<FGroup, KtError> {
    f_group_for(&ThreefoldParams::new(alpha2, alpha3, rho)?, p, k)
}

/// Both halves of the completion criterion for `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionCheck {
    pub f_at_one: BigInt,
    /// `(f, t − 1)` is the unit ideal.
    pub unit_ideal: bool,
}

impl CompletionCheck {
    /// `|f(1)| = 1`, which makes `f` a unit in `Z[[1 − t]]`.
    pub fn trivial(&self) -> bool {
        self.f_at_one.abs().is_one()
    }

    pub fn consistent(&self) -> bool {
        self.trivial() == self.unit_ideal
    }
}

pub fn completion_check(alpha2: u64, alpha3: u64) -> Result<CompletionCheck, KtError> {
    let params = ThreefoldParams::new(alpha2, alpha3, 2)?;
    let f = params.f();
    let f_at_one = f.eval_i64(1);
    let unit_ideal = is_unit_ideal(&[f, IntPoly::t_pow_minus_one(1)]).expect("f is monic");
    Ok(CompletionCheck { f_at_one, unit_ideal })
}

/// Whether the f-part vanishes after completing at `(1 − t)`.
pub fn completion_trivial(alpha2: u64, alpha3: u64) -> Result<bool, KtError> {
    Ok(completion_check(alpha2, alpha3)?.trivial())
}

/// Dimension over `Q` of the kernel of `(Z[t]/f)^{ρ−1} ⊗ Q → F_{pᵏ}^{ρ−1} ⊗ Q`,
/// the f-part of restriction from `C^×` to `μ_{pᵏ}`.
///
/// The map is onto, so the kernel has dimension `(ρ−1)(deg f − rank F)`; when
/// `F_{pᵏ}` is finite that is `(ρ−1)(α₂−1)(α₃−1)`.
pub fn rational_restriction_kernel_for(params: &ThreefoldParams, p: u64, k: u32) -> Result<u64, KtError> {
    if !params.nontrivial {
        return Err(KtError::TrivialThreefold);
    }
    let n = prime_power_order(p, k)?;
    let f = build_presentation(&f_generators(params, n)).expect("f is monic").structure();
    Ok(params.multiplicity() * (params.f_degree() - f.free_rank() as u64))
}

pub fn rational_restriction_kernel(alpha2: u64, alpha3: u64, rho: u64, p: u64, k: u32) -> Result<u64, KtError> {
    rational_restriction_kernel_for(&ThreefoldParams::new(alpha2, alpha3, rho)?, p, k)
}
