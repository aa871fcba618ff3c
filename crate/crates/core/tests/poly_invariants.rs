//! Structural invariants of the polynomial layer.

mod common;

use cascade_core::gf2poly::{
    factor, is_irreducible, poly_order, pow_index, pow_min_poly, x_pow_mod, Degree, Poly2,
};
use common::*;
use proptest::prelude::*;

fn arb_poly() -> impl Strategy<Value = Poly2> {
    any::<u128>().prop_map(Poly2::from_mask)
}

fn arb_nonzero_poly() -> impl Strategy<Value = Poly2> {
    any::<u128>().prop_map(|m| Poly2::from_mask(m | 1))
}

proptest! {
    #[test]
    fn divrem_reassembles(a in arb_poly(), b in arb_nonzero_poly()) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both_and_is_symmetric(a in arb_nonzero_poly(), b in arb_poly()) {
        let g = a.gcd(&b).unwrap();
        prop_assert!(a.rem(&g).unwrap().is_zero());
        if !b.is_zero() {
            prop_assert!(b.rem(&g).unwrap().is_zero());
            prop_assert_eq!(b.gcd(&a).unwrap(), g);
        }
    }

    #[test]
    fn square_matches_self_product(a in arb_poly()) {
        prop_assert_eq!(a.square(), a.mul(&a));
    }

    #[test]
    fn derivative_of_square_vanishes(a in arb_poly()) {
        prop_assert!(a.square().derivative().is_zero());
    }
}

/// Reference factorization: repeatedly strip the smallest monic divisor.
fn trial_division(a: &Poly2) -> Vec<(Poly2, u32)> {
    let mut rest = a.clone();
    let mut out: Vec<(Poly2, u32)> = Vec::new();
    'outer: while rest.deg().unwrap() > 0 {
        let d = rest.deg().unwrap();
        for deg in 1..=d {
            for inner in 0u64..1 << deg {
                let cand = Poly2::from_mask((1u128 << deg) | inner as u128);
                let (q, r) = rest.divrem(&cand).unwrap();
                if r.is_zero() {
                    match out.iter_mut().find(|(f, _)| *f == cand) {
                        Some((_, e)) => *e += 1,
                        None => out.push((cand, 1)),
                    }
                    rest = q;
                    continue 'outer;
                }
            }
        }
        unreachable!("every non-constant polynomial has a divisor");
    }
    out.sort();
    out
}

#[test]
fn factor_agrees_with_trial_division_up_to_degree_12() {
    for mask in 2u64..1 << 13 {
        let a = Poly2::from_mask(mask as u128);
        if a.deg().unwrap() == 0 {
            continue;
        }
        let f = factor(&a).unwrap();
        assert_eq!(f.product(), a, "product must reassemble {}", a);
        for (q, _) in &f.factors {
            assert!(is_irreducible(q).unwrap(), "factor {} of {}", q, a);
        }
        let mut got = f.factors.clone();
        got.sort();
        assert_eq!(got, trial_division(&a), "factorization of {}", a);
    }
}

#[test]
fn order_divides_and_is_minimal() {
    for q in irreducibles(10) {
        if q == Poly2::x() {
            continue;
        }
        let d = q.deg().unwrap() as u32;
        let ord = poly_order(&q).unwrap();
        let lambda = (1u128 << d) - 1;
        assert_eq!(lambda % ord as u128, 0, "ord({}) must divide 2^{}-1", q, d);
        assert!(x_pow_mod(ord as u128, &q).unwrap().is_one());
        // Minimality over the maximal proper divisors.
        let mut rest = ord;
        let mut primes = Vec::new();
        let mut p = 2u64;
        while p * p <= rest {
            if rest % p == 0 {
                primes.push(p);
                while rest % p == 0 {
                    rest /= p;
                }
            }
            p += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        for p in primes {
            assert!(
                !x_pow_mod((ord / p) as u128, &q).unwrap().is_one(),
                "ord({}) = {} is not minimal",
                q,
                ord
            );
        }
    }
}

#[test]
fn power_minimal_polynomials_compose() {
    for q in irreducibles(6) {
        if q == Poly2::x() {
            continue;
        }
        let dq = q.deg().unwrap();
        for l1 in 1u64..=16 {
            let inner = pow_min_poly(&q, l1).unwrap();
            assert_eq!(dq % inner.deg().unwrap(), 0, "deg pow divides deg q");
            assert_eq!(pow_index(&q, l1).unwrap() * inner.deg().unwrap(), dq);
            for l2 in 1u64..=16 {
                assert_eq!(
                    pow_min_poly(&inner, l2).unwrap(),
                    pow_min_poly(&q, l1 * l2).unwrap(),
                    "q={} l1={} l2={}",
                    q,
                    l1,
                    l2
                );
            }
        }
    }
}

#[test]
fn degree_marker_for_zero() {
    assert_eq!(Poly2::zero().degree(), Degree::NegInfinity);
    assert!(Poly2::zero().degree() < Poly2::one().degree());
}
