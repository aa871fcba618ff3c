//! Shared helpers for the integration and acceptance suites. The brute-force
//! enumerators here are the independent oracles: they never go through the
//! closed-form code paths they are used to check.

#![allow(dead_code)]

use cascade_core::cycletype::CycleType;
use cascade_core::fsr::{FsrSpec, TransitionPerm};
use cascade_core::gf2poly::{is_irreducible, Poly2};
use cascade_core::wreath::ct_brute;
use rand::Rng;

pub fn p(s: &str) -> Poly2 {
    s.parse().unwrap()
}

pub fn ct(s: &str) -> CycleType {
    s.parse().unwrap()
}

/// Brute-force cycle type of R -> X^l * R + c on all residues modulo
/// `modulus` (constant term 1, degree <= 28), via word-mask arithmetic.
pub fn brute_affine(modulus: &Poly2, l: u64, c: &Poly2) -> CycleType {
    let m = modulus.deg().unwrap();
    let modulus_mask = modulus.to_mask().unwrap() as u64;
    let c_mask = c.to_mask().unwrap() as u64;
    let step = |r: u64| -> u64 {
        let mut r = r;
        for _ in 0..l {
            r <<= 1;
            if r >> m & 1 == 1 {
                r ^= modulus_mask;
            }
        }
        r ^ c_mask
    };
    let perm = TransitionPerm::from_fn(m, step).unwrap();
    ct_brute(&perm).unwrap()
}

/// All monic polynomials of the given degree with constant term 1.
pub fn monic_with_unit_constant(deg: usize) -> Vec<Poly2> {
    assert!(deg >= 1);
    let mut out = Vec::new();
    for inner in 0u64..1 << (deg - 1) {
        let mask = (1u128 << deg) | ((inner as u128) << 1) | 1;
        out.push(Poly2::from_mask(mask));
    }
    out
}

/// All monic irreducible polynomials of degree 1..=max_deg, including X.
pub fn irreducibles(max_deg: usize) -> Vec<Poly2> {
    let mut out = Vec::new();
    for deg in 1..=max_deg {
        for inner in 0u64..1 << deg {
            let q = Poly2::from_mask((1u128 << deg) | inner as u128);
            if is_irreducible(&q).unwrap() {
                out.push(q);
            }
        }
    }
    out
}

/// A uniformly random periodic update function on n stages: f1 = x0 + f0.
pub fn random_periodic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> FsrSpec {
    let bits: Vec<bool> = {
        let f0: Vec<bool> = (0..1usize << (n - 1)).map(|_| rng.gen()).collect();
        (0..1u64 << n)
            .map(|s| (s & 1 == 1) != f0[(s >> 1) as usize])
            .collect()
    };
    FsrSpec::from_truth_table_bits(n, &bits).unwrap()
}

/// A random monic polynomial of exactly the given degree with constant term 1.
pub fn random_poly_unit_constant<R: Rng + ?Sized>(deg: usize, rng: &mut R) -> Poly2 {
    let inner: u64 = if deg > 1 {
        rng.gen_range(0..1u64 << (deg - 1))
    } else {
        0
    };
    Poly2::from_mask((1u128 << deg) | ((inner as u128) << 1) | 1)
}

/// A uniformly random permutation of {0, ..., size-1} by Fisher-Yates.
pub fn random_perm<R: Rng + ?Sized>(size: usize, rng: &mut R) -> Vec<usize> {
    let mut v: Vec<usize> = (0..size).collect();
    for i in (1..size).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    v
}

/// Direct cycle-type enumeration of an explicit permutation given as an
/// image array; independent of the library's cycle walkers.
pub fn enumerate_ct(images: &[usize]) -> CycleType {
    let mut visited = vec![false; images.len()];
    let mut ct = CycleType::empty();
    for start in 0..images.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            len += 1;
            i = images[i];
        }
        ct.add_cycles(len, 1).unwrap();
    }
    ct
}

/// Least period of a cyclic bit sequence: the smallest divisor d of the
/// length such that shifting by d fixes the sequence.
pub fn min_cyclic_period(bits: &[bool]) -> u64 {
    let n = bits.len() as u64;
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let ok = (0..bits.len()).all(|i| bits[i] == bits[(i + d as usize) % bits.len()]);
        if ok {
            return d;
        }
    }
    n
}

pub fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
