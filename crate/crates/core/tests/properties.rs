mod common;

use lcc_core::builtin;
use lcc_core::poly::{ratio, scalar, Monomial};
use lcc_core::{Cochain, Poly, Scalar, Var};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn vars() -> [Var; 5] {
    [Var::Del, Var::Lam(0), Var::Lam(1), Var::Lam(2), Var::Lam(3)]
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-5i64..=5, 1i64..=3, prop::collection::vec(0u16..=2, 5)), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (n, d, exps)| {
            let m = Monomial::from_exponents(vars().into_iter().zip(exps));
            acc + Poly::term(ratio(n, d), m)
        })
    })
}

fn lambda_poly_strategy() -> impl Strategy<Value = Poly> {
    poly_strategy().prop_map(|p| p.substitute_many(&[(Var::Del, Poly::zero()), (Var::Lam(0), Poly::zero())]))
}

fn config() -> Config {
    Config { cases: 128, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..Config::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_laws(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!((&p + &q) + &r, &p + (&q + &r));
        prop_assert_eq!((&p * &q) * &r, &p * (&q * &r));
        prop_assert_eq!(&p * (&q + &r), &p * &q + &p * &r);
        prop_assert_eq!(&p - &p, Poly::zero());
        prop_assert_eq!(&p * &Poly::one(), p.clone());
    }

    #[test]
    fn substitution_is_a_homomorphism(p in poly_strategy(), q in poly_strategy(), r in lambda_poly_strategy()) {
        let s = |f: &Poly| f.substitute(Var::Del, &r).unwrap();
        prop_assert_eq!(s(&(&p * &q)), s(&p) * s(&q));
        prop_assert_eq!(s(&(&p + &q)), s(&p) + s(&q));
    }

    #[test]
    fn division_by_affine_inverts_multiplication(p in lambda_poly_strategy(), a in -3i64..=3) {
        let f = Poly::constant(scalar(a)) + Poly::lambda_sum(3);
        prop_assert_eq!((&p * &f).divide_by_affine(&f).unwrap(), Some(p.clone()));
        let rest = &p * &f + Poly::one();
        prop_assert_eq!(rest.divide_by_affine(&f).unwrap(), None);
    }

    #[test]
    fn permutation_inverse(p in lambda_poly_strategy(), perm in Just(vec![1u32, 2, 3]).prop_shuffle()) {
        let mut inv = vec![0u32; 3];
        for (i, &s) in perm.iter().enumerate() {
            inv[(s - 1) as usize] = i as u32 + 1;
        }
        prop_assert_eq!(p.permute_lambdas(&perm).permute_lambdas(&inv), p);
    }

    #[test]
    fn leibniz_rule(p in poly_strategy(), q in poly_strategy(), v in 0usize..5) {
        let v = vars()[v];
        let lhs = (&p * &q).partial_derivative(v);
        prop_assert_eq!(lhs, p.partial_derivative(v) * &q + &p * q.partial_derivative(v));
    }

    #[test]
    fn evaluate_recovers_stored_values(p in lambda_poly_strategy(), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        // antisymmetrize on three distinct generators, then read back every order
        let tuple = [2usize, 0, 1];
        let c = Cochain::from_tuples(3, [(&tuple[..], p.clone())]);
        prop_assert_eq!(c.evaluate(&tuple), p.clone());
        let permuted: Vec<usize> = perm.iter().map(|&i| tuple[i]).collect();
        let args: Vec<Poly> = perm.iter().map(|&i| Poly::lam(i as u32 + 1)).collect();
        prop_assert_eq!(c.evaluate_at(&permuted, &args).scale(&scalar(lcc_core::cochain::permutation_sign(&perm) as i64)), p);
    }
}

#[test]
fn basis_dimension_matches_brute_force() {
    let n = common::check_basis_dims(4, 5).unwrap();
    assert!(n > 100);
}

#[test]
fn d_squared_vanishes_on_builtins() {
    for (i, a) in builtin::all().iter().enumerate() {
        assert_eq!(common::check_d_squared(a, 100, 11 + i as u64), Ok(100));
    }
}

#[test]
fn d_commutes_with_partial() {
    for (i, a) in builtin::all().iter().enumerate() {
        assert_eq!(common::check_d_partial(a, 100, 23 + i as u64), Ok(100));
    }
}

#[test]
fn tau2_homotopy_identity() {
    for (i, a) in builtin::all().iter().enumerate() {
        assert_eq!(common::check_tau2_identity(a, 50, 37 + i as u64), Ok(50));
    }
}

#[test]
fn homotopy_identity_on_retained_slots() {
    for a in builtin::all() {
        for c in [Scalar::zero(), Scalar::one(), ratio(-1, 2), scalar(2)] {
            common::check_homotopy(&a, &c).unwrap();
        }
    }
}

#[test]
fn builtin_axioms() {
    for a in builtin::all() {
        common::check_axioms(&a).unwrap();
    }
}

#[test]
fn parse_render_round_trip() {
    assert_eq!(common::check_round_trip(150, 41), Ok(150));
}

#[test]
fn parser_fuzz() {
    assert_eq!(common::check_fuzz(10_000, 53), Ok(10_000));
}
