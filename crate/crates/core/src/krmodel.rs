//! Parameters of Koras–Russell threefolds and the polynomial `f(t)`.
//!
//! A threefold in normal form is `t^{α₂} = G(x, y^{α₁}, z^{α₃})` with
//! `α₁, α₂, α₃` pairwise coprime. The equation `G` itself never enters a
//! computation: only the exponents, the `x`-degree `r` of `G(x, y^{α₁}, 0)`
//! and its number `ρ` of irreducible factors do, so those are inputs here.
//!
//! The threefolds of the first kind `a x + x^m y + z^{α₂} + t^{α₃}` and second
//! kind `a x + (x^b + z^{α₂})^l y + t^{α₃}` are validated against their own
//! parameter constraints. The scalar `a ∈ C^×` is carried as an opaque tag.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd};
use crate::polyint::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KrError {
    /// Carries the name of the violated constraint, e.g. `(α₂,α₃)=1`.
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("ε is only defined for the normal form")]
    WrongKind,
    #[error("exponents {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("weight vector must be nonempty")]
    EmptyWeights,
}

fn violation(name: &str) -> KrError {
    KrError::ConstraintViolation(name.to_string())
}

/// Symbolic stand-in for the scalar `a ∈ C^×`. Only nonvanishing is checked:
/// a tag that reads as the number zero is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScalarTag(pub String);

impl Default for ScalarTag {
    fn default() -> Self {
        ScalarTag("a".to_string())
    }
}

impl ScalarTag {
    pub fn is_zero(&self) -> bool {
        self.0.trim().parse::<f64>().is_ok_and(|x| x == 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KrKind {
    NormalForm,
    FirstKind { a: ScalarTag, m: u64 },
    SecondKind { a: ScalarTag, l: u64, b: u64 },
}

/// `(α₁, α₂, α₃, ρ, r)` plus the presentation kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrDescriptor {
    pub alpha: [u64; 3],
    pub rho: u64,
    pub r: u64,
    pub kind: KrKind,
}

impl KrDescriptor {
    pub fn normal_form(alpha: [u64; 3], rho: u64, r: u64) -> Self {
        KrDescriptor { alpha, rho, r, kind: KrKind::NormalForm }
    }

    pub fn alpha2(&self) -> u64 {
        self.alpha[1]
    }

    pub fn alpha3(&self) -> u64 {
        self.alpha[2]
    }

    /// Checks the kind-specific constraints and returns the descriptor.
    pub fn validate(self) -> Result<Self, KrError> {
        let [a1, a2, a3] = self.alpha;
        if a1 == 0 || a2 == 0 || a3 == 0 {
            return Err(violation("α₁,α₂,α₃ ≥ 1"));
        }
        if self.r == 0 {
            return Err(violation("r ≥ 1"));
        }
        if self.rho < 2 {
            return Err(violation("ρ ≥ 2"));
        }
        match &self.kind {
            KrKind::NormalForm => {
                if gcd(a1, a2) != 1 || gcd(a1, a3) != 1 || gcd(a2, a3) != 1 {
                    return Err(violation("α₁,α₂,α₃ pairwise coprime"));
                }
            }
            KrKind::FirstKind { a, m } => {
                if a.is_zero() {
                    return Err(violation("a ≠ 0"));
                }
                if *m < 2 || a2 < 2 || a3 < 2 {
                    return Err(violation("m,α₂,α₃ ≥ 2"));
                }
                if gcd(a2, a3) != 1 {
                    return Err(violation("(α₂,α₃)=1"));
                }
            }
            KrKind::SecondKind { a, l, b } => {
                if a.is_zero() {
                    return Err(violation("a ≠ 0"));
                }
                if *l < 2 || *b < 2 || a2 < 2 || a3 < 2 {
                    return Err(violation("l,b,α₂,α₃ ≥ 2"));
                }
                if gcd(a2, b * a3) != 1 {
                    return Err(violation("(α₂,bα₃)=1"));
                }
            }
        }
        Ok(self)
    }

    /// `ε_X = (r−1)(α₂−1)(α₃−1)`; normal form only.
    pub fn epsilon(&self) -> Result<u64, KrError> {
        match self.kind {
            KrKind::NormalForm => Ok((self.r - 1) * (self.alpha2() - 1) * (self.alpha3() - 1)),
            _ => Err(KrError::WrongKind),
        }
    }

    /// Whether the threefold is nontrivial (not `A^3` with a linear action).
    ///
    /// For the normal form this is `ε_X ≠ 0`. The first- and second-kind
    /// families force `α₂, α₃ ≥ 2` and are never isomorphic to `A^3`, so they
    /// are always nontrivial.
    pub fn is_nontrivial(&self) -> bool {
        match self.kind {
            KrKind::NormalForm => self.epsilon().is_ok_and(|e| e != 0),
            _ => true,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DescriptorJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, KrError> {
        let raw: DescriptorJson = serde_json::from_value(v.clone())
            .map_err(|e| KrError::ConstraintViolation(format!("descriptor JSON: {e}")))?;
        raw.try_into()
    }
}

/// Wire form: `{"kind": "normal"|"first"|"second", "alpha": [..], "rho", "r", "m"/"l"/"b", "a"}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DescriptorJson {
    kind: String,
    alpha: [u64; 3],
    rho: u64,
    r: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<ScalarTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<u64>,
}

impl From<&KrDescriptor> for DescriptorJson {
    fn from(d: &KrDescriptor) -> Self {
        let mut out = DescriptorJson {
            kind: "normal".into(),
            alpha: d.alpha,
            rho: d.rho,
            r: d.r,
            a: None,
            m: None,
            l: None,
            b: None,
        };
        match &d.kind {
            KrKind::NormalForm => {}
            KrKind::FirstKind { a, m } => {
                out.kind = "first".into();
                out.a = Some(a.clone());
                out.m = Some(*m);
            }
            KrKind::SecondKind { a, l, b } => {
                out.kind = "second".into();
                out.a = Some(a.clone());
                out.l = Some(*l);
                out.b = Some(*b);
            }
        }
        out
    }
}

impl TryFrom<DescriptorJson> for KrDescriptor {
    type Error = KrError;

    fn try_from(j: DescriptorJson) -> Result<Self, KrError> {
        let missing = |f: &str| KrError::ConstraintViolation(format!("descriptor JSON: missing \"{f}\""));
        let kind = match j.kind.as_str() {
            "normal" => KrKind::NormalForm,
            "first" => KrKind::FirstKind { a: j.a.unwrap_or_default(), m: j.m.ok_or_else(|| missing("m"))? },
            "second" => KrKind::SecondKind {
                a: j.a.unwrap_or_default(),
                l: j.l.ok_or_else(|| missing("l"))?,
                b: j.b.ok_or_else(|| missing("b"))?,
            },
            other => return Err(KrError::ConstraintViolation(format!("descriptor JSON: unknown kind \"{other}\""))),
        };
        Ok(KrDescriptor { alpha: j.alpha, rho: j.rho, r: j.r, kind })
    }
}

/// `f(t) = (1 − t^{α₂α₃})(1 − t) / ((1 − t^{α₂})(1 − t^{α₃}))`, monic of
/// degree `(α₂−1)(α₃−1)`.
///
/// The numerator is formed in full and divided exactly; with all four factors
/// written as `t^k − 1` the signs cancel in pairs.
pub fn bell_f(alpha2: u64, alpha3: u64) -> Result<IntPoly, KrError> {
    check_coprime(alpha2, alpha3)?;
    let (a, b) = (alpha2 as usize, alpha3 as usize);
    let num = IntPoly::t_pow_minus_one(a * b) * IntPoly::t_pow_minus_one(1);
    let den = IntPoly::t_pow_minus_one(a) * IntPoly::t_pow_minus_one(b);
    Ok(num.divide_exact(&den).expect("f(t) is a polynomial for coprime exponents"))
}

/// Indices `a·b` with `a | α₂`, `b | α₃`, `a, b ≥ 2`, ascending. Each occurs
/// once because the exponents are coprime, and `f = ∏ Φ_{ab}`.
pub fn bell_factorization(alpha2: u64, alpha3: u64) -> Result<Vec<u64>, KrError> {
    check_coprime(alpha2, alpha3)?;
    let mut out: Vec<u64> = divisors(alpha2)
        .into_iter()
        .filter(|&a| a >= 2)
        .flat_map(|a| divisors(alpha3).into_iter().filter(|&b| b >= 2).map(move |b| a * b))
        .collect();
    out.sort_unstable();
    Ok(out)
}

fn check_coprime(alpha2: u64, alpha3: u64) -> Result<(), KrError> {
    if alpha2 == 0 || alpha3 == 0 || gcd(alpha2, alpha3) != 1 {
        return Err(KrError::NotCoprime(alpha2, alpha3));
    }
    Ok(())
}

/// Weights `(a₁, …, a_r)` of a linear `C^×`-action on affine space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(weights: Vec<i64>) -> Result<Self, KrError> {
        if weights.is_empty() {
            return Err(KrError::EmptyWeights);
        }
        Ok(WeightVector(weights))
    }

    /// The Russell cubic action `λ·(x,y,z,t) = (λ⁶x, λ⁻⁶y, λ³z, λ²t)`.
    pub fn russell_cubic() -> Self {
        WeightVector(vec![6, -6, 3, 2])
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl TryFrom<Vec<i64>> for WeightVector {
    type Error = KrError;

    fn try_from(v: Vec<i64>) -> Result<Self, KrError> {
        WeightVector::new(v)
    }
}

impl From<WeightVector> for Vec<i64> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// All weights nonzero and their product negative.
pub fn is_hyperbolic(w: &WeightVector) -> bool {
    if w.0.contains(&0) {
        return false;
    }
    // sign of the product without overflow
    w.0.iter().filter(|&&a| a < 0).count() % 2 == 1
}
