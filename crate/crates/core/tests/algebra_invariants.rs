//! Invariants of the cycle-type algebra and the affine closed forms.

mod common;

use cascade_core::affine_cycles::{ct_affine_mod_p, ct_linear_mod_p, AffineMapModP};
use cascade_core::cycletype::CycleType;
use cascade_core::gf2poly::Poly2;
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_ct() -> impl Strategy<Value = CycleType> {
    proptest::collection::btree_map(1u64..40, 1u128..6, 0..5).prop_map(|m| {
        let mut ct = CycleType::empty();
        for (l, c) in m {
            ct.add_cycles(l, c).unwrap();
        }
        ct
    })
}

proptest! {
    #[test]
    fn weixu_point_count_multiplies(a in arb_ct(), b in arb_ct()) {
        let prod = a.weixu(&b).unwrap();
        prop_assert_eq!(
            prod.total_points().unwrap(),
            a.total_points().unwrap() * b.total_points().unwrap()
        );
    }

    #[test]
    fn weixu_commutative_and_unital(a in arb_ct(), b in arb_ct()) {
        prop_assert_eq!(a.weixu(&b).unwrap(), b.weixu(&a).unwrap());
        let one = CycleType::fixed_point();
        prop_assert_eq!(a.weixu(&one).unwrap(), a);
    }

    #[test]
    fn weixu_associative(a in arb_ct(), b in arb_ct(), c in arb_ct()) {
        let left = a.weixu(&b).unwrap().weixu(&c).unwrap();
        let right = a.weixu(&b.weixu(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_adds_points(a in arb_ct(), b in arb_ct()) {
        prop_assert_eq!(
            a.mul(&b).unwrap().total_points().unwrap(),
            a.total_points().unwrap() + b.total_points().unwrap()
        );
    }

    #[test]
    fn blowup_scales_points(a in arb_ct(), l in 1u64..20) {
        prop_assert_eq!(
            a.blowup(l).unwrap().total_points().unwrap(),
            a.total_points().unwrap() * l as u128
        );
    }

    #[test]
    fn iterate_preserves_points(a in arb_ct(), t in 1u64..40) {
        prop_assert_eq!(
            a.iterate(t).unwrap().total_points().unwrap(),
            a.total_points().unwrap()
        );
    }
}

#[test]
fn affine_mod_p_matches_brute_force_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAFF1);
    for _ in 0..120 {
        let deg = rng.gen_range(1..=14);
        let modulus = random_poly_unit_constant(deg, &mut rng);
        let l = *[2u64, 4, 8, 16].iter().nth(rng.gen_range(0..4)).unwrap();
        let c = Poly2::from_mask(rng.gen_range(0..1u64 << deg) as u128);
        let map = AffineMapModP::new(modulus.clone(), l, c.clone()).unwrap();
        let closed = ct_affine_mod_p(&map).unwrap();
        let brute = brute_affine(&modulus, l, &c);
        assert_eq!(closed, brute, "P={} L={} c={}", modulus, l, c);
    }
}

#[test]
fn linear_mod_p_matches_brute_force_sweep() {
    for deg in 1..=8 {
        for modulus in monic_with_unit_constant(deg) {
            assert_eq!(
                ct_linear_mod_p(&modulus).unwrap(),
                brute_affine(&modulus, 1, &Poly2::zero()),
                "P={}",
                modulus
            );
        }
    }
}
