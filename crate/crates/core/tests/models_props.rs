mod common;

use krk0::abgroup::GroupOrder;
use krk0::fixedpoints::{coprime_predicate, mu_fixed_indices, torus_fixed_indices, verify_fixed_point_prop};
use krk0::krmodel::{bell_f, bell_factorization, is_hyperbolic, WeightVector};
use krk0::ktheory::{f_group, k0_mu, rational_restriction_kernel, ThreefoldParams};
use krk0::polyint::{cyclotomic, IntPoly};
use proptest::prelude::*;

fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
    (2u64..=30, 2u64..=30).prop_filter("coprime, distinct", |&(a, b)| a < b && common::gcd(a, b) == 1)
}

fn weights() -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(-60i64..=60, 1..=6).prop_map(|w| WeightVector::new(w).unwrap())
}

fn distinct_primes(n: u64) -> usize {
    (2..=n).filter(|&p| common::is_prime(p) && n.is_multiple_of(p)).count()
}

proptest! {
    #[test]
    fn bell_f_matches_reference((a, b) in coprime_pair()) {
        let (au, bu) = (a as usize, b as usize);
        let num = common::mul(&common::t_pow_minus_one(au * bu), &common::t_pow_minus_one(1));
        let den = common::mul(&common::t_pow_minus_one(au), &common::t_pow_minus_one(bu));
        let expect = common::div_exact_monic(&num, &den);
        let f = bell_f(a, b).unwrap();
        prop_assert_eq!(common::to_i128(&f), expect);
        prop_assert_eq!(f.degree(), Some(((a - 1) * (b - 1)) as usize));
        prop_assert_eq!(f.eval_i64(1), 1.into());
    }

    #[test]
    fn bell_factorization_multiplies_back((a, b) in coprime_pair()) {
        let idx = bell_factorization(a, b).unwrap();
        prop_assert_eq!(idx.len() as u64, (common::divisor_count(a) - 1) * (common::divisor_count(b) - 1));
        for &i in &idx {
            prop_assert!(distinct_primes(i) >= 2, "index {} has fewer than two primes", i);
        }
        let prod: IntPoly = idx.iter().map(|&i| cyclotomic(i).unwrap()).product();
        prop_assert_eq!(prod, bell_f(a, b).unwrap());
    }

    #[test]
    fn fixed_loci_agree_when_coprime(w in weights(), n in 2u64..=300) {
        let (mu, torus) = (mu_fixed_indices(&w, n), torus_fixed_indices(&w));
        prop_assert!(torus.is_subset(&mu));
        let coprime = w.weights().iter().filter(|&&a| a != 0).all(|&a| common::gcd(n, a.unsigned_abs()) == 1);
        prop_assert_eq!(coprime_predicate(&w, n), coprime);
        if coprime {
            prop_assert_eq!(&mu, &torus);
        }
        for m in (2..=n).filter(|m| n % m == 0) {
            prop_assert!(mu.is_subset(&mu_fixed_indices(&w, m)));
        }
    }

    #[test]
    fn fixed_point_sweep_passes(w in weights(), n_max in 1u64..=150) {
        let report = verify_fixed_point_prop(&w, n_max);
        prop_assert!(report.passed());
        let coprime = (2..=n_max)
            .filter(|&n| w.weights().iter().all(|&a| a == 0 || common::gcd(n, a.unsigned_abs()) == 1))
            .count() as u64;
        prop_assert_eq!(report.checked, coprime);
    }

    #[test]
    fn hyperbolic_means_mixed_signs(w in weights()) {
        let ws = w.weights();
        let negative = ws.iter().filter(|&&a| a < 0).count();
        prop_assert_eq!(is_hyperbolic(&w), !ws.contains(&0) && negative % 2 == 1);
    }
}

/// `|F_{p^k}| = ∏ |Res(Φ_i, Φ_d)|` over the factor indices `i` of `f` and
/// `d | p^k`, computed here from the roots.
#[test]
fn f_group_order_against_roots() {
    for a in 2u64..=7 {
        for b in (a + 1)..=9 {
            if common::gcd(a, b) != 1 {
                continue;
            }
            let idx = bell_factorization(a, b).unwrap();
            for p in [2u64, 3, 5, 7] {
                for k in 1u32..=2 {
                    let n = p.pow(k);
                    let fg = f_group(a, b, 2, p, k).unwrap();
                    let GroupOrder::Finite(order) = fg.group.order() else {
                        panic!("F infinite for ({a},{b},{p}^{k})")
                    };
                    let log_order = order.to_string().parse::<f64>().unwrap().ln();
                    let oracle: f64 = idx
                        .iter()
                        .flat_map(|&i| (0..=k).map(move |j| common::log_abs_resultant_cyclotomic(i, p.pow(j))))
                        .sum();
                    assert!((log_order - oracle).abs() < 1e-6, "({a},{b}) p^k = {n}: {log_order} vs {oracle}");
                    let divides = a % p == 0 || b % p == 0;
                    assert_eq!(!fg.group.is_trivial(), divides, "({a},{b}) p^k = {n}: {}", fg.group);
                    assert!(fg.matches_classification());

                    let k0 = k0_mu(a, b, 3, n).unwrap();
                    assert_eq!(k0.f_structure, fg.group);
                    assert_eq!(k0.multiplicity, 2);
                    let kernel = rational_restriction_kernel(a, b, 3, p, k).unwrap();
                    assert_eq!(kernel, 2 * (a - 1) * (b - 1));
                }
            }
        }
    }
}

#[test]
fn multiplicity_tracks_rho() {
    for rho in 2..=6 {
        let params = ThreefoldParams::new(2, 3, rho).unwrap();
        assert_eq!(params.multiplicity(), rho - 1);
        assert_eq!(params.f_degree(), 2);
    }
}
