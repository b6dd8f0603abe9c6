//! Bounded exhaustive and seeded random checks of the facts the `K₀`
//! computations rely on.
//!
//! Each [`Suite`] enumerates its cases up front (random inputs are drawn from a
//! ChaCha stream seeded by the config), checks them on the rayon pool and
//! reassembles the results in enumeration order, so a report depends only on
//! the config and never on the thread count.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::abgroup::{smith_diagonal, smith_normal_form, FinAbGroup, GroupOrder, IntMatrix};
use crate::arith::{divisors, gcd, is_prime, mobius, prime_factors, prime_power_base, primes_up_to, totient};
use crate::fixedpoints::{coprime_predicate, mu_fixed_indices, torus_fixed_indices};
use crate::krmodel::{bell_f, bell_factorization, WeightVector};
use crate::ktheory::{completion_check, f_group_for, k0_torus, ActingGroup, EquivariantK0, ThreefoldParams};
use crate::polyint::{cyclotomic, resultant, IntPoly};
use crate::quotring::{build_presentation, is_unit_ideal, QuotientReport};

/// Counterexamples kept per suite; the total is always counted.
const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Cyclotomic,
    CoprimePairs,
    PrimePowerPairs,
    FiniteQuotients,
    BellIdentities,
    Classification,
    RestrictionKernel,
    FixedPoints,
    SmithBackend,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Cyclotomic,
        Suite::CoprimePairs,
        Suite::PrimePowerPairs,
        Suite::FiniteQuotients,
        Suite::BellIdentities,
        Suite::Classification,
        Suite::RestrictionKernel,
        Suite::FixedPoints,
        Suite::SmithBackend,
    ];

    /// 1-based position in [`Suite::ALL`].
    pub fn id(self) -> usize {
        Suite::ALL.iter().position(|&s| s == self).unwrap() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cyclotomic => "cyclotomic",
            Suite::CoprimePairs => "cyclotomic-pairs-unit",
            Suite::PrimePowerPairs => "cyclotomic-pairs-prime-power",
            Suite::FiniteQuotients => "finite-quotients",
            Suite::BellIdentities => "bell-identities",
            Suite::Classification => "f-classification",
            Suite::RestrictionKernel => "restriction-kernel",
            Suite::FixedPoints => "fixed-points",
            Suite::SmithBackend => "smith-backend",
        }
    }

    pub fn claim(self) -> &'static str {
        match self {
            Suite::Cyclotomic => {
                "prod_{d|n} Phi_d = t^n - 1, Mobius product agrees, deg Phi_n = phi(n), Phi_p = 1 + ... + t^(p-1)"
            }
            Suite::CoprimePairs => "Z[t]/(Phi_m, Phi_n) = 0 when n/m is not a prime power",
            Suite::PrimePowerPairs => {
                "Z[t]/(Phi_m, Phi_n) for n/m = q^i is a nonzero q-group of order |Res(Phi_m, Phi_n)|"
            }
            Suite::FiniteQuotients => "Z[t]/(1 - t^(p^k), prod Phi_(a_i)) is finite when p does not divide any a_i",
            Suite::BellIdentities => "f(t) identities, cyclotomic factorization, f(1) = 1 and (f, t - 1) = (1)",
            Suite::Classification => {
                "F_(p^k) is finite, nonzero iff p | a2*a3, with the order, tower and completion checks"
            }
            Suite::RestrictionKernel => "torus f-part has rank (rho-1)(a2-1)(a3-1) > 0 while F_(p^k) is torsion",
            Suite::FixedPoints => "mu_n-fixed = torus-fixed coordinates when n >= 2 is coprime to every nonzero weight",
            Suite::SmithBackend => {
                "U M V = D with unimodular U, V and a divisibility chain; Res(f, g) = det of multiplication by g"
            }
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(String);

/// Accepts a suite name or its 1-based id.
impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, UnknownSuite> {
        if let Ok(id) = s.parse::<usize>() {
            if (1..=Suite::ALL.len()).contains(&id) {
                return Ok(Suite::ALL[id - 1]);
            }
        }
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub max_cyclotomic: u64,
    /// Bound on `m < n` for the cyclotomic pair suites.
    pub max_mn: u64,
    pub quotient_max_prime: u64,
    pub quotient_max_k: u32,
    pub quotient_max_factors: usize,
    pub quotient_max_index: u64,
    pub max_alpha_identities: u64,
    /// Bound on `α₃` for the classification and kernel grids.
    pub max_alpha: u64,
    pub rhos: Vec<u64>,
    pub max_prime: u64,
    pub max_k: u32,
    pub weight_vectors: usize,
    pub weight_len: usize,
    pub weight_abs: i64,
    pub fixed_point_max_n: u64,
    pub matrices: usize,
    pub matrix_dim: usize,
    pub matrix_entry: i64,
    pub resultant_pairs: usize,
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide. Has no effect on the report.
    #[serde(skip)]
    pub parallelism: usize,
    /// Test hook: corrupts the first computed value of the named suite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inject_fault: Option<Suite>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_cyclotomic: 200,
            max_mn: 60,
            quotient_max_prime: 13,
            quotient_max_k: 3,
            quotient_max_factors: 3,
            quotient_max_index: 30,
            max_alpha_identities: 30,
            max_alpha: 12,
            rhos: vec![2, 3],
            max_prime: 13,
            max_k: 2,
            weight_vectors: 500,
            weight_len: 6,
            weight_abs: 50,
            fixed_point_max_n: 200,
            matrices: 1000,
            matrix_dim: 8,
            matrix_entry: 1_000_000,
            resultant_pairs: 200,
            seed: 20_240_101,
            parallelism: 0,
            inject_fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub case: Value,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub id: usize,
    pub name: Suite,
    pub claim: &'static str,
    pub status: &'static str,
    pub cases: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub records: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn elapsed(&self) -> Duration {
        self.suites.iter().map(|s| s.elapsed).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out += &format!(
                "[{}] {:<30} {:>6}/{:<6} {}\n",
                s.id,
                s.name.name(),
                s.cases - s.failed,
                s.cases,
                if s.passed() { "pass" } else { "FAIL" }
            );
            for c in &s.counterexamples {
                out += &format!("      counterexample {}: {}\n", c.case, c.reasons.join("; "));
            }
        }
        out += if self.passed { "all suites passed\n" } else { "verification FAILED\n" };
        out
    }
}

/// Runs every suite on a pool of `config.parallelism` threads.
pub fn run_all(config: &VerifyConfig) -> VerifyReport {
    with_pool(config, || {
        let suites: Vec<SuiteReport> = Suite::ALL.into_iter().map(|s| run_suite_inner(s, config)).collect();
        VerifyReport { config: config.clone(), passed: suites.iter().all(SuiteReport::passed), suites }
    })
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> SuiteReport {
    with_pool(config, || run_suite_inner(suite, config))
}

fn with_pool<T: Send>(config: &VerifyConfig, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(config.parallelism).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn run_suite_inner(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let fault = cfg.inject_fault == Some(suite);
    let (outcomes, records) = match suite {
        Suite::Cyclotomic => (sweep(cyclotomic_cases(cfg), fault, check_cyclotomic), Value::Null),
        Suite::CoprimePairs => (sweep(pair_cases(cfg, false), fault, check_coprime_pair), Value::Null),
        Suite::PrimePowerPairs => {
            let out = sweep(pair_cases(cfg, true), fault, check_prime_power_pair);
            let records = prime_power_records(&out);
            (out, records)
        }
        Suite::FiniteQuotients => (sweep(finite_quotient_cases(cfg), fault, check_finite_quotient), Value::Null),
        Suite::BellIdentities => (sweep(bell_cases(cfg.max_alpha_identities), fault, check_bell), Value::Null),
        Suite::Classification => {
            let mut out = sweep(classification_cases(cfg), fault, |k, f, c| check_classification(k, cfg.max_k, f, c));
            let (spot, records) = russell_spot_values();
            out.push(spot);
            (out, records)
        }
        Suite::RestrictionKernel => (sweep(kernel_cases(cfg), fault, check_kernel), Value::Null),
        Suite::FixedPoints => {
            (sweep(weight_cases(cfg), fault, |w, f, c| check_weights(w, cfg.fixed_point_max_n, f, c)), Value::Null)
        }
        Suite::SmithBackend => {
            let mut out = sweep(matrix_cases(cfg), fault, check_matrix);
            out.extend(sweep(resultant_cases(cfg), false, check_resultant));
            (out, Value::Null)
        }
    };
    let cases = outcomes.len();
    let failing: Vec<Outcome> = outcomes.into_iter().filter(|o| !o.reasons.is_empty()).collect();
    let failed = failing.len();
    SuiteReport {
        id: suite.id(),
        name: suite,
        claim: suite.claim(),
        status: if failed == 0 { "pass" } else { "fail" },
        cases,
        failed,
        counterexamples: failing
            .into_iter()
            .take(MAX_COUNTEREXAMPLES)
            .map(|o| Counterexample { case: o.case, reasons: o.reasons })
            .collect(),
        records,
        elapsed: start.elapsed(),
    }
}

struct Outcome {
    case: Value,
    reasons: Vec<String>,
    record: Option<Value>,
}

/// Accumulates the failed checks of one case.
#[derive(Default)]
struct Checks {
    reasons: Vec<String>,
    record: Option<Value>,
}

impl Checks {
    fn require(&mut self, ok: bool, reason: impl FnOnce() -> String) {
        if !ok {
            self.reasons.push(reason());
        }
    }
}

trait CaseKey: Sync {
    fn describe(&self) -> Value;
}

fn sweep<K: CaseKey>(cases: Vec<K>, fault: bool, check: impl Fn(&K, bool, &mut Checks) + Sync) -> Vec<Outcome> {
    cases
        .par_iter()
        .enumerate()
        .map(|(i, k)| {
            let mut c = Checks::default();
            check(k, fault && i == 0, &mut c);
            Outcome { case: k.describe(), reasons: c.reasons, record: c.record }
        })
        .collect()
}

fn phi(n: u64) -> IntPoly {
    cyclotomic(n).expect("index >= 1")
}

fn big_abs_eq(a: &BigInt, b: &BigInt) -> bool {
    a.magnitude() == b.magnitude()
}

// 1. cyclotomic engine

struct CycCase(u64);

impl CaseKey for CycCase {
    fn describe(&self) -> Value {
        json!({ "n": self.0 })
    }
}

fn cyclotomic_cases(cfg: &VerifyConfig) -> Vec<CycCase> {
    (1..=cfg.max_cyclotomic).map(CycCase).collect()
}

fn check_cyclotomic(&CycCase(n): &CycCase, fault: bool, c: &mut Checks) {
    let p = phi(n);
    let mut product: IntPoly = divisors(n).into_iter().map(phi).product();
    if fault {
        product = product.shift(1);
    }
    c.require(product == IntPoly::t_pow_minus_one(n as usize), || "product over divisors is not t^n - 1".into());
    c.require(p.degree() == Some(totient(n) as usize), || format!("degree {:?} != phi(n)", p.degree()));
    c.require(p.is_monic(), || "not monic".into());

    // Φₙ = ∏_{d|n} (t^d − 1)^{μ(n/d)}
    let (mut num, mut den) = (IntPoly::one(), IntPoly::one());
    for d in divisors(n) {
        match mobius(n / d) {
            1 => num = num * IntPoly::t_pow_minus_one(d as usize),
            -1 => den = den * IntPoly::t_pow_minus_one(d as usize),
            _ => {}
        }
    }
    c.require(num.divide_exact(&den).as_ref() == Ok(&p), || "Mobius product disagrees".into());

    if is_prime(n) {
        let ones = IntPoly::from_coeffs(vec![BigInt::one(); n as usize]);
        c.require(p == ones, || "Phi_p is not 1 + t + ... + t^(p-1)".into());
    }
}

// 2-3. cyclotomic pairs

struct PairCase {
    m: u64,
    n: u64,
}

impl CaseKey for PairCase {
    fn describe(&self) -> Value {
        json!({ "m": self.m, "n": self.n })
    }
}

/// `(q, i)` with `n / m = qⁱ`, `i ≥ 1`.
fn prime_power_ratio(m: u64, n: u64) -> Option<(u64, u32)> {
    if !n.is_multiple_of(m) {
        return None;
    }
    let r = n / m;
    let q = prime_power_base(r)?;
    let mut i = 0;
    let mut x = r;
    while x > 1 {
        x /= q;
        i += 1;
    }
    Some((q, i))
}

fn pair_cases(cfg: &VerifyConfig, prime_power: bool) -> Vec<PairCase> {
    let mut out = Vec::new();
    for n in 2..=cfg.max_mn {
        for m in 1..n {
            if prime_power_ratio(m, n).is_some() == prime_power {
                out.push(PairCase { m, n });
            }
        }
    }
    out.sort_by_key(|c| (c.m, c.n));
    out
}

fn pair_report(m: u64, n: u64, fault: bool) -> QuotientReport {
    let mut r = QuotientReport::compute(&[phi(m), phi(n)]).expect("cyclotomics are monic");
    if fault {
        r.group = r.group.direct_sum(&FinAbGroup::cyclic(2));
    }
    r
}

fn check_coprime_pair(&PairCase { m, n }: &PairCase, fault: bool, c: &mut Checks) {
    let r = pair_report(m, n, fault);
    c.require(r.group.is_trivial(), || format!("group is {}, expected 0", r.group));
    let res = resultant(&phi(m), &phi(n)).expect("nonzero");
    c.require(res.abs().is_one(), || format!("Res = {res}, expected +-1"));
}

fn check_prime_power_pair(&PairCase { m, n }: &PairCase, fault: bool, c: &mut Checks) {
    let (q, i) = prime_power_ratio(m, n).expect("enumerated as prime power");
    let r = pair_report(m, n, fault);
    let g = &r.group;
    c.require(!g.is_trivial(), || "group is trivial".into());
    c.require(g.is_finite(), || format!("group {g} is infinite"));
    let qb = BigInt::from(q);
    let is_q_power = |d: &BigInt| {
        let mut x = d.clone();
        while x.is_multiple_of(&qb) {
            x /= &qb;
        }
        x.is_one()
    };
    c.require(g.torsion().iter().all(is_q_power), || format!("{g} has an invariant factor prime to {q}"));
    let res = resultant(&phi(m), &phi(n)).expect("nonzero");
    let order_ok = matches!(g.order(), GroupOrder::Finite(o) if big_abs_eq(&o, &res));
    c.require(order_ok, || format!("order {} != |Res| = {}", g.order(), res.abs()));
    let equals_zq = g.is_cyclic_of_order(&qb);
    if totient(m) == 1 {
        // Z[t]/(Φ_m) = Z, so the quotient is Z/Φₙ(±1) = Z/q
        c.require(equals_zq, || format!("phi(m) = 1 but group {g} is not Z/{q}"));
    }
    c.record = Some(json!({
        "m": m,
        "n": n,
        "q": q,
        "i": i,
        "group": g.to_json(),
        "equals_z_q": equals_zq,
    }));
}

fn prime_power_records(outcomes: &[Outcome]) -> Value {
    let cases: Vec<&Value> = outcomes.iter().filter_map(|o| o.record.as_ref()).collect();
    let structured: Vec<Value> =
        cases.iter().filter(|r| r["equals_z_q"] == false).map(|r| json!([r["m"], r["n"]])).collect();
    json!({
        "equals_z_q": cases.len() - structured.len(),
        "not_z_q": structured.len(),
        "not_z_q_pairs": structured,
        "cases": cases,
    })
}

// 4. finite quotients

struct QuotCase {
    p: u64,
    k: u32,
    indices: Vec<u64>,
}

impl CaseKey for QuotCase {
    fn describe(&self) -> Value {
        json!({ "p": self.p, "k": self.k, "indices": self.indices })
    }
}

fn finite_quotient_cases(cfg: &VerifyConfig) -> Vec<QuotCase> {
    let mut out = Vec::new();
    for p in primes_up_to(cfg.quotient_max_prime) {
        let pool: Vec<u64> = (2..=cfg.quotient_max_index).filter(|a| a % p != 0).collect();
        let mut multisets: Vec<Vec<u64>> = vec![vec![]];
        let mut frontier: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..cfg.quotient_max_factors {
            let mut next = Vec::new();
            for s in &frontier {
                let lo = s.last().copied().unwrap_or(0);
                for &a in pool.iter().filter(|&&a| a >= lo) {
                    let mut t = s.clone();
                    t.push(a);
                    next.push(t);
                }
            }
            multisets.extend(next.iter().cloned());
            frontier = next;
        }
        multisets.retain(|s| !s.is_empty());
        for k in 1..=cfg.quotient_max_k {
            for s in &multisets {
                out.push(QuotCase { p, k, indices: s.clone() });
            }
        }
    }
    out
}

fn check_finite_quotient(case: &QuotCase, fault: bool, c: &mut Checks) {
    let n = case.p.pow(case.k);
    let g: IntPoly = case.indices.iter().map(|&a| phi(a)).product();
    let pres = build_presentation(&[IntPoly::one_minus_t_pow(n as usize), g]).expect("both monic");
    let mut group = pres.structure();
    if fault {
        group = group.direct_sum(&FinAbGroup::free(1));
    }
    c.require(group.free_rank() == 0, || format!("group {group} has free rank {}", group.free_rank()));
}

// 5. f(t) identities

struct AlphaPair(u64, u64);

impl CaseKey for AlphaPair {
    fn describe(&self) -> Value {
        json!({ "alpha2": self.0, "alpha3": self.1 })
    }
}

fn bell_cases(max: u64) -> Vec<AlphaPair> {
    let mut out = Vec::new();
    for a3 in 3..=max {
        for a2 in 2..a3 {
            if gcd(a2, a3) == 1 {
                out.push(AlphaPair(a2, a3));
            }
        }
    }
    out.sort_by_key(|p| (p.0, p.1));
    out
}

fn check_bell(&AlphaPair(a2, a3): &AlphaPair, fault: bool, c: &mut Checks) {
    let mut f = bell_f(a2, a3).expect("coprime");
    if fault {
        f = f + IntPoly::one();
    }
    let (a, b) = (a2 as usize, a3 as usize);
    let lhs = &f * &(IntPoly::t_pow_minus_one(a) * IntPoly::t_pow_minus_one(b));
    let rhs = IntPoly::t_pow_minus_one(a * b) * IntPoly::t_pow_minus_one(1);
    c.require(lhs == rhs, || "f (t^a2 - 1)(t^a3 - 1) != (t^(a2 a3) - 1)(t - 1)".into());
    let deg = ((a2 - 1) * (a3 - 1)) as usize;
    c.require(f.degree() == Some(deg), || format!("degree {:?} != {deg}", f.degree()));
    let factors = bell_factorization(a2, a3).expect("coprime");
    let product: IntPoly = factors.iter().map(|&i| phi(i)).product();
    c.require(product == f, || "f != product of Phi_ab".into());
    for &i in &factors {
        c.require(prime_factors(i).len() >= 2, || format!("index {i} has a single prime factor"));
    }
    let at_one = f.eval_i64(1);
    c.require(at_one.is_one(), || format!("f(1) = {at_one}"));
    let unit = is_unit_ideal(&[f.clone(), IntPoly::t_pow_minus_one(1)]).expect("monic");
    c.require(unit, || "(f, t - 1) is not the unit ideal".into());
}

// 6-7. classification and restriction kernel

struct GridCase {
    params: ThreefoldParams,
    p: u64,
}

impl CaseKey for GridCase {
    fn describe(&self) -> Value {
        json!({ "alpha2": self.params.alpha2, "alpha3": self.params.alpha3, "rho": self.params.rho, "p": self.p })
    }
}

struct KGridCase {
    params: ThreefoldParams,
    p: u64,
    k: u32,
}

impl CaseKey for KGridCase {
    fn describe(&self) -> Value {
        json!({
            "alpha2": self.params.alpha2,
            "alpha3": self.params.alpha3,
            "rho": self.params.rho,
            "p": self.p,
            "k": self.k,
        })
    }
}

fn grid_params(cfg: &VerifyConfig) -> Vec<ThreefoldParams> {
    let mut out = Vec::new();
    for AlphaPair(a2, a3) in bell_cases(cfg.max_alpha) {
        for &rho in &cfg.rhos {
            out.push(ThreefoldParams::new(a2, a3, rho).expect("grid parameters are valid"));
        }
    }
    out
}

fn classification_cases(cfg: &VerifyConfig) -> Vec<GridCase> {
    let primes = primes_up_to(cfg.max_prime);
    grid_params(cfg).into_iter().flat_map(|params| primes.iter().map(move |&p| GridCase { params, p })).collect()
}

/// One case covers every level `k ≤ max_k` so the tower can be checked.
fn check_classification(case: &GridCase, max_k: u32, fault: bool, c: &mut Checks) {
    let GridCase { params, p } = *case;
    let mut prev_nontrivial = false;
    for k in 1..=max_k {
        let mut f = f_group_for(&params, p, k).expect("p is prime");
        if fault && k == 1 {
            f.group = FinAbGroup::trivial();
            f.nontrivial = false;
        }
        c.require(f.group.is_finite(), || format!("F_({p}^{k}) = {} is infinite", f.group));
        c.require(f.nontrivial == f.predicted_nontrivial, || {
            format!("F_({p}^{k}) = {}, predicted {}", f.group, if f.predicted_nontrivial { "nonzero" } else { "zero" })
        });
        if f.predicted_nontrivial {
            let other = if params.alpha2 % p == 0 { params.alpha3 } else { params.alpha2 };
            let order = f.group.torsion_order();
            let witness = prime_factors(other).into_iter().any(|q| order.is_multiple_of(&BigInt::from(q)));
            c.require(witness, || format!("|F_({p}^{k})| = {order} has no prime factor of {other}"));
        }
        if let (Some(r), GroupOrder::Finite(o)) = (&f.resultant, f.group.order()) {
            c.require(big_abs_eq(r, &o), || format!("|F_({p}^{k})| = {o} but Res = {r}"));
        }
        if k > 1 {
            c.require(!prev_nontrivial || f.nontrivial, || format!("F_({p}^{}) nonzero but F_({p}^{k}) zero", k - 1));
        }
        prev_nontrivial = f.nontrivial;

        let k0 = EquivariantK0::compute(&params, ActingGroup::Mu(p.pow(k))).expect("valid group");
        c.require(k0.f_structure == f.group, || format!("K0 path gives {}, direct path {}", k0.f_structure, f.group));
        let whole = k0.whole_group().expect("finite group");
        let expected = FinAbGroup::free(p.pow(k) as usize).direct_sum(&f.group.power(params.rho as usize - 1));
        c.require(whole == expected, || format!("K0 = {whole}, expected Z^n + F^(rho-1) = {expected}"));
    }
    let completion = completion_check(params.alpha2, params.alpha3).expect("valid pair");
    c.require(completion.trivial() && completion.unit_ideal, || {
        format!("completion check failed: f(1) = {}, unit ideal {}", completion.f_at_one, completion.unit_ideal)
    });
}

/// Expected values for the Russell cubic `α₂ = 2, α₃ = 3`.
fn russell_spot_values() -> (Outcome, Value) {
    let params = ThreefoldParams::new(2, 3, 2).expect("valid");
    let f = |p| f_group_for(&params, p, 1).expect("prime").group;
    let (f2, f3, f5, f7) = (f(2), f(3), f(5), f(7));
    let mut c = Checks::default();
    c.require(f2 == FinAbGroup::cyclic(3), || format!("F_2 = {f2}, expected Z/3"));
    c.require(f3.order() == GroupOrder::Finite(BigInt::from(4)), || format!("F_3 = {f3}, expected order 4"));
    c.require(f5.is_trivial(), || format!("F_5 = {f5}, expected 0"));
    c.require(f7.is_trivial(), || format!("F_7 = {f7}, expected 0"));
    let records = json!({
        "russell_cubic": {
            "F_2": f2.to_json(),
            "F_3": f3.to_json(),
            "F_5": f5.to_json(),
            "F_7": f7.to_json(),
        }
    });
    (Outcome { case: json!({ "russell_cubic": true }), reasons: c.reasons, record: None }, records)
}

fn kernel_cases(cfg: &VerifyConfig) -> Vec<KGridCase> {
    let primes = primes_up_to(cfg.max_prime);
    let mut out = Vec::new();
    for params in grid_params(cfg) {
        for &p in &primes {
            for k in 1..=cfg.max_k {
                out.push(KGridCase { params, p, k });
            }
        }
    }
    out
}

fn check_kernel(case: &KGridCase, fault: bool, c: &mut Checks) {
    let KGridCase { params, p, k } = *case;
    let torus = k0_torus(params.alpha2, params.alpha3, params.rho).expect("valid");
    let mut torus_part = torus.f_part();
    if fault {
        torus_part = FinAbGroup::trivial();
    }
    let expected_rank = (params.rho - 1) * (params.alpha2 - 1) * (params.alpha3 - 1);
    c.require(torus_part.free_rank() as u64 == expected_rank && torus_part.torsion().is_empty(), || {
        format!("torus f-part {torus_part}, expected Z^{expected_rank}")
    });
    c.require(expected_rank > 0, || "torus f-part has rank 0".into());
    let f = EquivariantK0::compute(&params, ActingGroup::Mu(p.pow(k))).expect("valid group").f_structure;
    c.require(f.free_rank() == 0, || format!("F_({p}^{k}) = {f} has positive rank"));
    let kernel = crate::ktheory::rational_restriction_kernel_for(&params, p, k).expect("nontrivial");
    c.require(kernel == expected_rank && kernel > 0, || format!("kernel dimension {kernel}, expected {expected_rank}"));
}

// 8. fixed points

struct WeightCase(WeightVector);

impl CaseKey for WeightCase {
    fn describe(&self) -> Value {
        json!({ "weights": self.0.weights() })
    }
}

/// Russell cubic and two degenerate vectors, then seeded random ones.
fn weight_cases(cfg: &VerifyConfig) -> Vec<WeightCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x8);
    let mut out = vec![
        WeightCase(WeightVector::russell_cubic()),
        WeightCase(WeightVector::new(vec![0, 2]).unwrap()),
        WeightCase(WeightVector::new(vec![1]).unwrap()),
    ];
    for _ in 0..cfg.weight_vectors {
        let len = rng.gen_range(1..=cfg.weight_len);
        let w = (0..len).map(|_| rng.gen_range(-cfg.weight_abs..=cfg.weight_abs)).collect();
        out.push(WeightCase(WeightVector::new(w).expect("nonempty")));
    }
    out
}

fn check_weights(WeightCase(w): &WeightCase, max_n: u64, fault: bool, c: &mut Checks) {
    let mut torus = torus_fixed_indices(w);
    if fault {
        torus.insert(w.len());
    }
    for n in 1..=max_n {
        let mu = mu_fixed_indices(w, n);
        c.require(mu.is_superset(&torus), || format!("n = {n}: torus-fixed set not contained in mu-fixed set"));
        if n >= 2 && coprime_predicate(w, n) {
            c.require(mu == torus, || format!("n = {n}: mu-fixed {mu:?} != torus-fixed {torus:?}"));
        }
        for m in 2..=max_n / n {
            let coarse = mu_fixed_indices(w, n * m);
            c.require(coarse.is_subset(&mu), || format!("mu_{}-fixed not inside mu_{n}-fixed", n * m));
        }
    }
}

// 9. Smith normal form and resultants

struct MatrixCase(IntMatrix);

impl CaseKey for MatrixCase {
    fn describe(&self) -> Value {
        json!({ "matrix": self.0.to_json() })
    }
}

fn matrix_cases(cfg: &VerifyConfig) -> Vec<MatrixCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9);
    (0..cfg.matrices)
        .map(|i| {
            let rows = rng.gen_range(1..=cfg.matrix_dim);
            let cols = rng.gen_range(1..=cfg.matrix_dim);
            // every fourth matrix is low-rank to exercise zero invariant factors
            let entries: Vec<BigInt> = if i % 4 == 3 && rows > 1 {
                let a: Vec<i64> = (0..rows).map(|_| rng.gen_range(-1000..=1000)).collect();
                let b: Vec<i64> = (0..cols).map(|_| rng.gen_range(-1000..=1000)).collect();
                a.iter().flat_map(|x| b.iter().map(move |y| BigInt::from(x * y))).collect()
            } else {
                (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-cfg.matrix_entry..=cfg.matrix_entry))).collect()
            };
            MatrixCase(IntMatrix::from_entries(rows, cols, entries).expect("sized"))
        })
        .collect()
}

fn check_matrix(MatrixCase(m): &MatrixCase, fault: bool, c: &mut Checks) {
    let mut s = smith_normal_form(m);
    if fault {
        s.d[(0, 0)] += 1;
    }
    c.require(&(&s.u * m) * &s.v == s.d, || "U M V != D".into());
    for (name, t) in [("U", &s.u), ("V", &s.v)] {
        let det = t.determinant().expect("square");
        c.require(det.abs().is_one(), || format!("det {name} = {det}"));
    }
    c.require(s.d.is_diagonal(), || "D is not diagonal".into());
    let diag: Vec<BigInt> = (0..m.rows().min(m.cols())).map(|i| s.d[(i, i)].clone()).collect();
    c.require(diag.iter().all(|d| !d.is_negative()), || "negative diagonal entry".into());
    c.require(diag[..s.rank].iter().all(|d| !d.is_zero()), || "zero inside the rank".into());
    c.require(diag[s.rank..].iter().all(Zero::is_zero), || "nonzero past the rank".into());
    for w in diag[..s.rank].windows(2) {
        c.require(w[1].is_multiple_of(&w[0]), || format!("{} does not divide {}", w[0], w[1]));
    }
    let (d_only, rank) = smith_diagonal(m);
    c.require(d_only == s.d && rank == s.rank, || "transform-free diagonal disagrees".into());
    if m.is_square() && s.rank == m.rows() {
        let det = m.determinant().expect("square");
        let product: BigInt = diag.iter().product();
        c.require(big_abs_eq(&product, &det), || format!("product {product} != |det| {}", det.abs()));
    }
}

struct ResultantCase(IntPoly, IntPoly);

impl CaseKey for ResultantCase {
    fn describe(&self) -> Value {
        json!({ "f": self.0.to_json(), "g": self.1.to_json() })
    }
}

fn resultant_cases(cfg: &VerifyConfig) -> Vec<ResultantCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x99);
    (0..cfg.resultant_pairs)
        .map(|_| {
            let df = rng.gen_range(1..=6);
            let mut f: Vec<i64> = (0..df).map(|_| rng.gen_range(-20..=20)).collect();
            f.push(1);
            let dg = rng.gen_range(0..=6);
            let mut g: Vec<i64> = (0..dg).map(|_| rng.gen_range(-20..=20)).collect();
            g.push(rng.gen_range(1..=20) * if rng.gen_bool(0.5) { 1 } else { -1 });
            ResultantCase(IntPoly::from_i64s(&f), IntPoly::from_i64s(&g))
        })
        .collect()
}

/// For monic `f`, `Res(f, g)` is the determinant of multiplication by `g` on
/// `Z[t]/(f)`.
fn check_resultant(ResultantCase(f, g): &ResultantCase, _: bool, c: &mut Checks) {
    let d = f.degree().expect("nonzero");
    let rows = (0..d)
        .map(|j| {
            let r = g.shift(j).rem_monic(f);
            (0..d).map(|i| r.coeff(i)).collect()
        })
        .collect();
    let mult = IntMatrix::from_rows(d, rows).expect("square");
    let det = mult.determinant().expect("square");
    let res = resultant(f, g).expect("nonzero");
    c.require(res == det, || format!("Res = {res}, det = {det}"));
    if !res.is_zero() {
        let group = crate::abgroup::group_from_relations(&mult);
        let ok = matches!(group.order(), GroupOrder::Finite(o) if big_abs_eq(&o, &res));
        c.require(ok, || format!("Z[t]/(f, g) = {group}, |Res| = {}", res.abs()));
    }
}
