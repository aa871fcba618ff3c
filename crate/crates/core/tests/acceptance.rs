//! Acceptance suite: every criterion runs as its own test and prints one
//! pass line (visible with --nocapture; the test name doubles as the line).
//!
//! Run with: cargo test -p cascade-core --test acceptance

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use cascade_core::affine_cycles::{
    alpha_weight, block_split_count, ct_lambda_primary, rcf_power_coprime, rcf_power_p,
    AffineModulus,
};
use cascade_core::bitlinalg::{companion, mat_pow, min_poly, primary_block_profile};
use cascade_core::cycletype::CycleType;
use cascade_core::fsr::{
    all_debruijn, cascade_transition, lfsr_spec, output_period, output_stream, CascadeSpec,
    FsrSpec,
};
use cascade_core::gf2poly::{ceil_log2, poly_order, prime_power_order, Poly2};
use cascade_core::wreath::{
    ct_brute, ct_cascade_closed, ct_cascade_fast, ct_polya_general, max_period_bound,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pass(criterion: u32, label: &str, start: Instant) {
    eprintln!(
        "[acceptance] criterion {:2}: PASS - {} ({:.2?})",
        criterion,
        label,
        start.elapsed()
    );
}

fn golden(sequence: &str, poly: &str, expect: &str) -> cascade_core::wreath::CascadeAnalysis {
    let f = FsrSpec::from_debruijn_sequence_str(sequence).unwrap();
    let modulus = p(poly);
    let expect = ct(expect);

    let closed = ct_cascade_closed(&f, &modulus).unwrap();
    assert_eq!(closed.cycle_type, expect, "closed form");

    if let Some(fast) = ct_cascade_fast(&f, &modulus).unwrap() {
        assert_eq!(fast.cycle_type, expect, "fast path");
    }

    let spec = CascadeSpec::new(f, lfsr_spec(&modulus).unwrap());
    let polya = ct_polya_general(&spec).unwrap();
    assert_eq!(polya.cycle_type, expect, "general method");

    let brute = ct_brute(&cascade_transition(&spec).unwrap()).unwrap();
    assert_eq!(brute, expect, "brute force");

    closed
}

#[test]
fn criterion_01_golden_example_1() {
    let start = Instant::now();
    let analysis = golden("0011", "x^3+x+1", "x4 x28");
    // The fast path applies here (square-free modulus, n > 1).
    assert!(ct_cascade_fast(
        &FsrSpec::from_debruijn_sequence_str("0011").unwrap(),
        &p("x^3+x+1")
    )
    .unwrap()
    .is_some());
    assert_eq!(analysis.fcp_ct, Some(ct("x1 x7")));
    assert!(start.elapsed() < Duration::from_secs(1));
    pass(1, "0011 into x^3+x+1 gives x4 x28 by all four methods", start);
}

#[test]
fn criterion_02_golden_example_2() {
    let start = Instant::now();
    let analysis = golden("0011", "x^5+x^2+x+1", "x8^2 x56^2");
    assert_eq!(analysis.fcp_ct, Some(ct("x2^2 x14^2")));
    assert_eq!(analysis.chi, Some(p("x+1")));
    assert!(start.elapsed() < Duration::from_secs(1));
    pass(2, "0011 into x^5+x^2+x+1 gives x8^2 x56^2 with the reported intermediates", start);
}

#[test]
fn criterion_03_golden_example_3() {
    let start = Instant::now();
    let analysis = golden("0011", "x^8+x^7+x^6+x^3+x^2+1", "x8^16 x56^16");
    assert_eq!(analysis.fcp_unipotent_ct, Some(ct("x2^16")));
    assert!(start.elapsed() < Duration::from_secs(1));
    pass(3, "0011 into x^8+x^7+x^6+x^3+x^2+1 gives x8^16 x56^16", start);
}

#[test]
fn criterion_04_exhaustive_oracle_sweep() {
    let start = Instant::now();
    let mut cases = 0usize;
    for n in [2usize, 3] {
        for f in all_debruijn(n).unwrap() {
            for deg in 1..=6 {
                for modulus in monic_with_unit_constant(deg) {
                    check_closed_vs_brute(&f, &modulus);
                    cases += 1;
                }
            }
        }
    }
    // Dimension 4: all 16 cycles against a fixed set of ten moduli,
    // including (x+1)^5-divisible ones.
    let ten = [
        "x^3+x+1",
        "x^5+x^2+x+1",
        "x^8+x^7+x^6+x^3+x^2+1",
        "x^5+x^4+x+1",
        "x^6+x^4+x^2+1",
        "x^7+x^6+x^5+x^4+x^3+x^2+x+1",
        "x^4+x+1",
        "x^2+x+1",
        "x^7+x^4+x^3+x^2+1",
        "x+1",
    ];
    for f in all_debruijn(4).unwrap() {
        for poly in ten {
            check_closed_vs_brute(&f, &p(poly));
            cases += 1;
        }
    }
    assert_eq!(cases, 3 * 63 + 16 * 10);
    assert!(start.elapsed() < Duration::from_secs(120));
    pass(4, "closed form equals brute force on 349 cascades", start);
}

fn check_closed_vs_brute(f: &FsrSpec, modulus: &Poly2) {
    let closed = ct_cascade_closed(f, modulus).unwrap().cycle_type;
    let spec = CascadeSpec::new(f.clone(), lfsr_spec(modulus).unwrap());
    let brute = ct_brute(&cascade_transition(&spec).unwrap()).unwrap();
    assert_eq!(closed, brute, "n={} P={}", f.n(), modulus);
}

#[test]
fn criterion_05_primary_affine_exhaustive() {
    let start = Instant::now();
    let mut cases = 0usize;
    for q in irreducibles(4) {
        if q == Poly2::x() {
            continue;
        }
        let d = q.deg().unwrap();
        for e in 1..=(12 / d) {
            let m = AffineModulus::new(q.clone(), e as u32).unwrap();
            let modulus = m.modulus();
            for u_mask in 0..1u64 << (e * d) {
                let u = Poly2::from_mask(u_mask as u128);
                let closed = ct_lambda_primary(&m, &u).unwrap();
                let brute = brute_affine(&modulus, 1, &u);
                assert_eq!(closed, brute, "Q={} e={} u={}", q, e, u);
                cases += 1;
            }
        }
    }
    assert!(cases > 10_000);
    assert!(start.elapsed() < Duration::from_secs(60));
    pass(5, "primary affine cycle types match brute force for every residue", start);
}

#[test]
fn criterion_06_weight_classifies_cycle_types() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    for _ in 0..50 {
        let deg = rng.gen_range(1..=10);
        let modulus = random_poly_unit_constant(deg, &mut rng);
        let mut by_weight: HashMap<u32, CycleType> = HashMap::new();
        for v_mask in 0..1u64 << deg {
            let v = Poly2::from_mask(v_mask as u128);
            let brute = brute_affine(&modulus, 1, &v);
            let weight = alpha_weight(&modulus, &v).unwrap();
            let min_pow2 = brute
                .entries()
                .map(|(l, _)| l)
                .filter(|l| l.is_power_of_two())
                .min()
                .expect("a power-of-2 cycle length always exists");
            assert_eq!(min_pow2, 1u64 << weight, "P={} v={}", modulus, v);
            match by_weight.get(&weight) {
                Some(prev) => assert_eq!(prev, &brute, "P={} v={} weight={}", modulus, v, weight),
                None => {
                    by_weight.insert(weight, brute);
                }
            }
        }
    }
    pass(6, "alpha-weight determines the cycle type and its shortest 2-power length", start);
}

#[test]
fn criterion_07_power_block_structure_vs_oracle() {
    let start = Instant::now();
    let mut checks = 0usize;
    for q in irreducibles(4) {
        if q == Poly2::x() {
            continue;
        }
        let ord = poly_order(&q).unwrap() as u128;
        for e in 1u32..=6 {
            let m = AffineModulus::new(q.clone(), e).unwrap();
            let comp = companion(&m.modulus()).unwrap();
            let full_order = prime_power_order(&q, e).unwrap();
            let two_part = 1u128 << ceil_log2(e);
            for l in 1u64..=16 {
                let powered = mat_pow(&comp, l as u128).unwrap();
                if gcd_u128(l as u128, full_order) == 1 {
                    let (pw, exp) = rcf_power_coprime(&m, l).unwrap();
                    let expected_min = poly_pow(&pw, exp);
                    assert_eq!(min_poly(&powered).unwrap(), expected_min, "coprime q={} e={} l={}", q, e, l);
                    assert_eq!(
                        primary_block_profile(&powered, &pw).unwrap(),
                        vec![(exp, 1)],
                        "coprime q={} e={} l={}",
                        q,
                        e,
                        l
                    );
                    checks += 1;
                }
                if l.is_power_of_two() && two_part % (l as u128) == 0 {
                    let blocks = rcf_power_p(&m, l).unwrap();
                    let pw = blocks[0].0.clone();
                    let profile: Vec<(u32, usize)> =
                        blocks.iter().map(|(_, exp, count)| (*exp, *count)).collect();
                    assert_eq!(
                        primary_block_profile(&powered, &pw).unwrap(),
                        profile,
                        "2-power q={} e={} l={}",
                        q,
                        e,
                        l
                    );
                    let max_exp = blocks.iter().map(|(_, exp, _)| *exp).max().unwrap();
                    assert_eq!(
                        min_poly(&powered).unwrap(),
                        poly_pow(&pw, max_exp),
                        "2-power q={} e={} l={}",
                        q,
                        e,
                        l
                    );
                    checks += 1;
                }
                if ord % (l as u128) == 0 {
                    let (ind, pw, exp) = block_split_count(&m, l).unwrap();
                    assert_eq!(
                        primary_block_profile(&powered, &pw).unwrap(),
                        vec![(exp, ind)],
                        "odd-part q={} e={} l={}",
                        q,
                        e,
                        l
                    );
                    assert_eq!(min_poly(&powered).unwrap(), poly_pow(&pw, exp));
                    checks += 1;
                }
            }
        }
    }
    assert!(checks > 300);
    pass(7, "power-block formulas agree with the linear-algebra oracles", start);
}

fn poly_pow(base: &Poly2, exp: u32) -> Poly2 {
    (0..exp).fold(Poly2::one(), |acc, _| acc.mul(base))
}

#[test]
fn criterion_08_period_bound() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0071E);
    for _ in 0..200 {
        let (n, m) = loop {
            let n = rng.gen_range(1..=8);
            let m = rng.gen_range(1..=8);
            if (n, m) != (1, 1) {
                break (n, m);
            }
        };
        let spec = CascadeSpec::new(random_periodic(n, &mut rng), random_periodic(m, &mut rng));
        let brute = ct_brute(&cascade_transition(&spec).unwrap()).unwrap();
        let max_len = brute.entries().map(|(l, _)| l).max().unwrap();
        let bound = max_period_bound(n, m).unwrap();
        assert!(
            (max_len as u128) <= bound,
            "n={} m={} max={} bound={}",
            n,
            m,
            max_len,
            bound
        );
    }
    // The first golden example attains the bound.
    let f = FsrSpec::from_debruijn_sequence_str("0011").unwrap();
    let spec = CascadeSpec::new(f, lfsr_spec(&p("x^3+x+1")).unwrap());
    let brute = ct_brute(&cascade_transition(&spec).unwrap()).unwrap();
    let max_len = brute.entries().map(|(l, _)| l).max().unwrap();
    assert_eq!(max_len as u128, max_period_bound(2, 3).unwrap());
    pass(8, "200 random cascades respect the period bound; the golden case attains it", start);
}

#[test]
fn criterion_09_cycle_type_algebra() {
    let start = Instant::now();
    // The worked Wei-Xu product and the blow-up example.
    assert_eq!(
        ct("x2^2 x3").weixu(&ct("x3^2 x4")).unwrap(),
        ct("x3^6 x4^4 x6^4 x12")
    );
    assert_eq!(ct("x1^2 x3").blowup(3).unwrap(), ct("x3^2 x9"));

    let mut rng = ChaCha8Rng::seed_from_u64(0xAB50);

    // Absorption: when every length of gamma divides every length of delta,
    // the Wei-Xu product is delta with all counts scaled by gamma's points.
    for _ in 0..100 {
        let d: u64 = rng.gen_range(1..=6);
        let mut gamma = CycleType::single(d, rng.gen_range(1..=3)).unwrap();
        for div in 1..=d {
            if d % div == 0 {
                gamma.add_cycles(div, rng.gen_range(0..=2)).unwrap();
            }
        }
        let mut delta = CycleType::single(d * rng.gen_range(1..=4), 1).unwrap();
        for k in 1..=4u64 {
            delta.add_cycles(d * k, rng.gen_range(0..=2)).unwrap();
        }
        let points = gamma.total_points().unwrap();
        let product = gamma.weixu(&delta).unwrap();
        let mut expected = CycleType::empty();
        for (l, c) in delta.entries() {
            expected.add_cycles(l, c * points).unwrap();
        }
        assert_eq!(product, expected, "gamma={} delta={}", gamma, delta);
    }

    // The operations against direct enumeration on random permutations.
    for _ in 0..10 {
        let a = rng.gen_range(1..=64);
        let b = rng.gen_range(1..=64);
        let sigma = random_perm(a, &mut rng);
        let tau = random_perm(b, &mut rng);
        let ct_sigma = enumerate_ct(&sigma);
        let ct_tau = enumerate_ct(&tau);

        // Componentwise pair map.
        let pair: Vec<usize> = (0..a * b).map(|i| sigma[i / b] * b + tau[i % b]).collect();
        assert_eq!(ct_sigma.weixu(&ct_tau).unwrap(), enumerate_ct(&pair));

        // Iterates.
        let mut power: Vec<usize> = (0..a).collect();
        for t in 1..=10u64 {
            power = power.iter().map(|&i| sigma[i]).collect();
            assert_eq!(ct_sigma.iterate(t).unwrap(), enumerate_ct(&power), "t={}", t);
        }

        // Blow-up via a wreath element with a single driving l-cycle whose
        // only nontrivial block map is sigma at the last position.
        let l = rng.gen_range(1..=6);
        let wreath: Vec<usize> = (0..a * l)
            .map(|idx| {
                let (k, x) = (idx / a, idx % a);
                if k + 1 < l {
                    (k + 1) * a + x
                } else {
                    sigma[x]
                }
            })
            .collect();
        assert_eq!(
            ct_sigma.blowup(l as u64).unwrap(),
            enumerate_ct(&wreath),
            "l={}",
            l
        );
    }
    pass(9, "cycle-type algebra matches the paper examples and enumeration oracles", start);
}

#[test]
fn criterion_10_output_stream_periods() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x57AE);
    for _ in 0..50 {
        let n = rng.gen_range(1..=7);
        let m = rng.gen_range(1..=7);
        let spec = CascadeSpec::new(random_periodic(n, &mut rng), random_periodic(m, &mut rng));
        let initial = rng.gen_range(0..spec.state_count());
        let period = output_period(&spec, initial).unwrap();
        let stream = output_stream(&spec, initial, period as usize).unwrap();
        assert_eq!(
            min_cyclic_period(&stream),
            period,
            "n={} m={} initial={}",
            n,
            m,
            initial
        );
    }
    pass(10, "output stream periods equal transition cycle lengths", start);
}
