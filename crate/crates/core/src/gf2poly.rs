//! Univariate polynomials over F2: arithmetic, factorization and order computations.
//!
//! Coefficients are packed into machine words, bit `i` of word `j` holding the
//! coefficient of `X^(64*j + i)`. Every nonzero polynomial over F2 is monic, so
//! the canonical representation simply trims trailing zero words.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default cap on `deg q` for [`poly_order`]: the order computation factors
/// `2^deg - 1` by trial division, which is cheap up to here.
pub const DEFAULT_ORDER_DEGREE_CAP: usize = 32;

/// Hard cap for [`poly_order`]: beyond 64 the order no longer fits in a `u64`.
pub const MAX_ORDER_DEGREE: usize = 64;

/// The degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, Degree::Finite(_)) => Ordering::Less,
            (Degree::Finite(_), Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

/// A polynomial over F2 in dense bit-packed form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    words: Vec<u64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { words: Vec::new() }
    }

    pub fn one() -> Self {
        Poly2 { words: vec![1] }
    }

    /// The polynomial X.
    pub fn x() -> Self {
        Poly2 { words: vec![2] }
    }

    /// The polynomial X + 1.
    pub fn x_plus_one() -> Self {
        Poly2 { words: vec![3] }
    }

    /// X^k.
    pub fn monomial(k: usize) -> Self {
        let mut p = Poly2::zero();
        p.set_coeff(k);
        p
    }

    /// Builds a polynomial from a coefficient mask, bit `i` = coefficient of X^i.
    pub fn from_mask(mask: u128) -> Self {
        let mut p = Poly2 {
            words: vec![mask as u64, (mask >> 64) as u64],
        };
        p.trim();
        p
    }

    /// Coefficient mask of a polynomial of degree < 128.
    pub fn to_mask(&self) -> Option<u128> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0] as u128),
            2 => Some(self.words[0] as u128 | (self.words[1] as u128) << 64),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    pub fn degree(&self) -> Degree {
        match self.words.last() {
            None => Degree::NegInfinity,
            Some(w) => Degree::Finite((self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize),
        }
    }

    /// Degree as a plain usize; only valid for nonzero polynomials.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn coeff(&self, i: usize) -> bool {
        match self.words.get(i / 64) {
            Some(w) => (w >> (i % 64)) & 1 == 1,
            None => false,
        }
    }

    pub fn set_coeff(&mut self, i: usize) {
        let word = i / 64;
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        self.words[word] |= 1 << (i % 64);
    }

    /// Flips the coefficient of X^i.
    pub fn toggle_coeff(&mut self, i: usize) {
        let word = i / 64;
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        self.words[word] ^= 1 << (i % 64);
        self.trim();
    }

    /// Evaluation at 1, i.e. the parity of the number of terms.
    pub fn eval_at_one(&self) -> bool {
        self.words.iter().fold(0u32, |acc, w| acc ^ w.count_ones()) & 1 == 1
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (i, w) in short.words.iter().enumerate() {
            words[i] ^= w;
        }
        let mut p = Poly2 { words };
        p.trim();
        p
    }

    /// Multiplication by X^k.
    pub fn shl(&self, k: usize) -> Poly2 {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let word_shift = k / 64;
        let bit_shift = k % 64;
        let mut words = vec![0u64; self.words.len() + word_shift + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + word_shift] |= w << bit_shift;
            if bit_shift > 0 {
                words[i + word_shift + 1] |= w >> (64 - bit_shift);
            }
        }
        let mut p = Poly2 { words };
        p.trim();
        p
    }

    /// Carry-less product.
    pub fn mul(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() || other.is_zero() {
            return Poly2::zero();
        }
        let (a, b) = if self.term_count() <= other.term_count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Poly2::zero();
        for (j, &w) in a.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let bit = w.trailing_zeros() as usize;
                acc = acc.add(&b.shl(j * 64 + bit));
                w &= w - 1;
            }
        }
        acc
    }

    /// Squaring: bit i moves to bit 2i.
    pub fn square(&self) -> Poly2 {
        let mut words = vec![0u64; self.words.len() * 2];
        for (j, &w) in self.words.iter().enumerate() {
            words[2 * j] = spread_bits(w as u32);
            words[2 * j + 1] = spread_bits((w >> 32) as u32);
        }
        let mut p = Poly2 { words };
        p.trim();
        p
    }

    /// Euclidean division: returns (quotient, remainder) with deg r < deg b.
    pub fn divrem(&self, b: &Poly2) -> Result<(Poly2, Poly2)> {
        let db = b.deg().ok_or(Error::DivisionByZero)?;
        let mut r = self.clone();
        let mut q = Poly2::zero();
        while let Some(dr) = r.deg() {
            if dr < db {
                break;
            }
            let shift = dr - db;
            r = r.add(&b.shl(shift));
            q.set_coeff(shift);
        }
        Ok((q, r))
    }

    pub fn rem(&self, b: &Poly2) -> Result<Poly2> {
        Ok(self.divrem(b)?.1)
    }

    /// Monic greatest common divisor; gcd(0, 0) is an error.
    pub fn gcd(&self, other: &Poly2) -> Result<Poly2> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Formal derivative; over F2 the even-exponent terms vanish.
    pub fn derivative(&self) -> Poly2 {
        const ODD: u64 = 0xAAAA_AAAA_AAAA_AAAA;
        let words = self.words.iter().map(|w| (w & ODD) >> 1).collect();
        let mut p = Poly2 { words };
        p.trim();
        p
    }

    /// Square root of a perfect square (a polynomial with zero derivative).
    fn sqrt(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for i in 0..self.words.len() * 64 {
            if self.coeff(2 * i) {
                out.set_coeff(i);
            }
        }
        out
    }

    /// Product mod m.
    pub fn mulmod(&self, other: &Poly2, m: &Poly2) -> Result<Poly2> {
        self.mul(other).rem(m)
    }
}

/// Interleaves the bits of `w` with zeros: bit i -> bit 2i.
fn spread_bits(w: u32) -> u64 {
    let mut x = w as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// X^k mod m by square-and-multiply.
pub fn x_pow_mod(k: u128, m: &Poly2) -> Result<Poly2> {
    match m.deg() {
        None | Some(0) => return Err(Error::ConstantModulus),
        Some(_) => {}
    }
    let mut result = Poly2::one().rem(m)?;
    let mut base = Poly2::x().rem(m)?;
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = result.mul(&base).rem(m)?;
        }
        base = base.square().rem(m)?;
        k >>= 1;
    }
    Ok(result)
}

/// Rabin irreducibility test: deg a >= 1 required.
pub fn is_irreducible(a: &Poly2) -> Result<bool> {
    let d = match a.deg() {
        None | Some(0) => return Err(Error::NotFactorable),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    // h_i = X^(2^i) mod a, computed by repeated squaring.
    let mut h = Poly2::x().rem(a)?;
    let mut powers = vec![h.clone()];
    for _ in 0..d {
        h = h.square().rem(a)?;
        powers.push(h.clone());
    }
    if powers[d].add(&Poly2::x()).rem(a)? != Poly2::zero() {
        return Ok(false);
    }
    for r in prime_divisors(d as u64) {
        let e = d / r as usize;
        let g = powers[e].add(&Poly2::x()).gcd(a)?;
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficient value).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(Poly2, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn product(&self) -> Poly2 {
        let mut acc = Poly2::one();
        for (q, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(q);
            }
        }
        acc
    }

    /// Multiplicity of a given irreducible factor (0 if absent).
    pub fn multiplicity(&self, q: &Poly2) -> u32 {
        self.factors
            .iter()
            .find(|(f, _)| f == q)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, e) in &self.factors {
            write!(f, "({})", q)?;
            if *e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

fn cmp_poly(a: &Poly2, b: &Poly2) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        let n = a.words.len().max(b.words.len());
        for i in (0..n).rev() {
            let wa = a.words.get(i).copied().unwrap_or(0);
            let wb = b.words.get(i).copied().unwrap_or(0);
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    })
}

impl PartialOrd for Poly2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(cmp_poly(self, other))
    }
}

impl Ord for Poly2 {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_poly(self, other)
    }
}

/// Factors a polynomial of degree >= 1 into monic irreducibles.
///
/// Square-free decomposition (gcd with the derivative plus square-root
/// extraction in characteristic 2), then distinct-degree splitting, then
/// deterministic equal-degree splitting via trace maps of basis monomials.
pub fn factor(a: &Poly2) -> Result<Factorization> {
    match a.deg() {
        None | Some(0) => return Err(Error::NotFactorable),
        Some(_) => {}
    }
    let mut factors: Vec<(Poly2, u32)> = Vec::new();
    for (part, mult) in squarefree_parts(a, 1)? {
        for (g, d) in distinct_degree_parts(&part)? {
            for q in equal_degree_split(&g, d)? {
                match factors.iter_mut().find(|(f, _)| *f == q) {
                    Some((_, e)) => *e += mult,
                    None => factors.push((q, mult)),
                }
            }
        }
    }
    factors.sort_by(|(p, _), (q, _)| cmp_poly(p, q));
    Ok(Factorization { factors })
}

/// Yields (squarefree product, multiplicity) pairs whose expansion is `f`.
fn squarefree_parts(f: &Poly2, outer: u32) -> Result<Vec<(Poly2, u32)>> {
    let mut out = Vec::new();
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f is a perfect square in characteristic 2.
        return squarefree_parts(&f.sqrt(), outer * 2);
    }
    let mut c = f.gcd(&deriv)?;
    let mut w = f.divrem(&c)?.0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.divrem(&y)?.0;
        if z.deg().map(|d| d > 0).unwrap_or(false) {
            out.push((z, outer * i));
        }
        c = c.divrem(&y)?.0;
        w = y;
        i += 1;
    }
    if !c.is_one() {
        out.extend(squarefree_parts(&c.sqrt(), outer * 2)?);
    }
    Ok(out)
}

/// Splits a squarefree polynomial into products of factors of equal degree.
fn distinct_degree_parts(f: &Poly2) -> Result<Vec<(Poly2, usize)>> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = Poly2::x().rem(&f)?;
    let mut d = 0usize;
    while f.deg().map(|n| n >= 2 * (d + 1)).unwrap_or(false) {
        d += 1;
        h = h.square().rem(&f)?;
        let g = h.add(&Poly2::x()).gcd(&f)?;
        if !g.is_one() {
            out.push((g.clone(), d));
            f = f.divrem(&g)?.0;
            h = h.rem(&f)?;
        }
    }
    if let Some(n) = f.deg() {
        if n > 0 {
            out.push((f, n));
        }
    }
    Ok(out)
}

/// Splits a squarefree product of irreducibles, all of degree `d`.
///
/// Derandomized: iterates the degree-d trace map over the basis monomials
/// X^j; some monomial always separates two distinct factors.
fn equal_degree_split(f: &Poly2, d: usize) -> Result<Vec<Poly2>> {
    let n = f.deg().expect("nonzero by construction");
    if n == d {
        return Ok(vec![f.clone()]);
    }
    for j in 1..n {
        let h = Poly2::monomial(j).rem(f)?;
        // w = h + h^2 + h^4 + ... + h^(2^(d-1)) mod f
        let mut w = h.clone();
        let mut t = h.clone();
        for _ in 1..d {
            t = t.square().rem(f)?;
            w = w.add(&t);
        }
        let g = w.gcd(f)?;
        if let Some(dg) = g.deg() {
            if dg > 0 && dg < n {
                let rest = f.divrem(&g)?.0;
                let mut out = equal_degree_split(&g, d)?;
                out.extend(equal_degree_split(&rest, d)?);
                return Ok(out);
            }
        }
    }
    Err(Error::InvalidInput(format!(
        "equal-degree splitting failed for {} at degree {}",
        f, d
    )))
}

/// Prime divisors of n, ascending.
fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn prime_divisors_u128(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut p = 3u128;
    if n % 2 == 0 {
        out.push(2);
        while n % 2 == 0 {
            n /= 2;
        }
    }
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_order_input(q: &Poly2, cap: usize) -> Result<usize> {
    let d = match q.deg() {
        None | Some(0) => return Err(Error::NotFactorable),
        Some(d) => d,
    };
    if *q == Poly2::x() {
        return Err(Error::ModulusIsX);
    }
    if d > cap.min(MAX_ORDER_DEGREE) {
        return Err(Error::DegreeCapExceeded {
            degree: d,
            cap: cap.min(MAX_ORDER_DEGREE),
        });
    }
    if !is_irreducible(q)? {
        return Err(Error::NotIrreducible(q.to_string()));
    }
    Ok(d)
}

/// Multiplicative order of X in F2[X]/(q), for q monic irreducible, q != X.
pub fn poly_order(q: &Poly2) -> Result<u64> {
    poly_order_with_cap(q, DEFAULT_ORDER_DEGREE_CAP)
}

/// As [`poly_order`] with an explicit degree cap (hard maximum 64).
pub fn poly_order_with_cap(q: &Poly2, cap: usize) -> Result<u64> {
    let d = check_order_input(q, cap)?;
    // ord divides 2^d - 1; descend through its prime factors.
    let lambda = if d == 64 {
        u128::MAX >> 64
    } else {
        (1u128 << d) - 1
    };
    let mut t = lambda;
    for p in prime_divisors_u128(lambda) {
        while t % p == 0 && x_pow_mod(t / p, q)?.is_one() {
            t /= p;
        }
    }
    Ok(t as u64)
}

/// ord(q^e) = ord(q) * 2^ceil(log2 e).
pub fn prime_power_order(q: &Poly2, e: u32) -> Result<u128> {
    if e == 0 {
        return Err(Error::InvalidInput("exponent must be positive".into()));
    }
    let ord = poly_order(q)? as u128;
    Ok(ord << ceil_log2(e))
}

/// ceil(log2 e) for e >= 1.
pub fn ceil_log2(e: u32) -> u32 {
    if e <= 1 {
        0
    } else {
        (e - 1).ilog2() + 1
    }
}

/// Minimal polynomial over F2 of xi^l, where xi is any root of q.
///
/// Computed as the minimal polynomial of the multiplication-by-(X^l mod q)
/// operator on F2[X]/(q), via the linear algebra in [`crate::bitlinalg`].
pub fn pow_min_poly(q: &Poly2, l: u64) -> Result<Poly2> {
    if l == 0 {
        return Err(Error::InvalidInput("exponent must be positive".into()));
    }
    let d = match q.deg() {
        None | Some(0) => return Err(Error::NotFactorable),
        Some(d) => d,
    };
    if *q == Poly2::x() {
        return Err(Error::ModulusIsX);
    }
    if !is_irreducible(q)? {
        return Err(Error::NotIrreducible(q.to_string()));
    }
    let beta = x_pow_mod(l as u128, q)?;
    let mut m = crate::bitlinalg::BitMatrix::zero(d, d)?;
    let mut col = beta;
    for j in 0..d {
        for i in 0..d {
            if col.coeff(i) {
                m.set(i, j, true);
            }
        }
        col = col.shl(1).rem(q)?;
    }
    crate::bitlinalg::min_poly(&m)
}

/// deg q / deg pow_min_poly(q, l); always an exact integer.
pub fn pow_index(q: &Poly2, l: u64) -> Result<usize> {
    let p = pow_min_poly(q, l)?;
    let dq = q.deg().expect("validated nonzero");
    let dp = p.deg().expect("minimal polynomial is nonzero");
    debug_assert_eq!(dq % dp, 0);
    Ok(dq / dp)
}

/// A q-adic valuation; the valuation of 0 is infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(u32),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

/// Largest v with q^v | p, for q monic irreducible.
pub fn valuation(q: &Poly2, p: &Poly2) -> Result<Valuation> {
    match q.deg() {
        None | Some(0) => return Err(Error::NotFactorable),
        Some(_) => {}
    }
    if !is_irreducible(q)? {
        return Err(Error::NotIrreducible(q.to_string()));
    }
    if p.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let mut v = 0u32;
    let mut rest = p.clone();
    loop {
        let (quot, rem) = rest.divrem(q)?;
        if !rem.is_zero() {
            return Ok(Valuation::Finite(v));
        }
        v += 1;
        rest = quot;
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..=self.deg().unwrap()).rev() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", i)?,
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Poly2 {
    type Err = Error;

    /// Accepts the canonical textual form ("x^5+x^2+x+1", "x+1", "1", "0"),
    /// with '-' treated like '+', and a hexadecimal coefficient-mask form
    /// ("0x2B" has bit i set iff the coefficient of X^i is 1).
    fn from_str(s: &str) -> Result<Poly2> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty polynomial".into()));
        }
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            return parse_hex_mask(hex);
        }
        let mut p = Poly2::zero();
        for term in s.split(['+', '-']) {
            let term = term.trim();
            let k = match term {
                "0" => continue,
                "1" => 0,
                "x" | "X" => 1,
                _ => {
                    let exp = term
                        .strip_prefix("x^")
                        .or_else(|| term.strip_prefix("X^"))
                        .ok_or_else(|| {
                            Error::InvalidInput(format!("bad polynomial term '{}'", term))
                        })?;
                    exp.parse::<usize>().map_err(|_| {
                        Error::InvalidInput(format!("bad exponent in term '{}'", term))
                    })?
                }
            };
            p.toggle_coeff(k);
        }
        Ok(p)
    }
}

fn parse_hex_mask(hex: &str) -> Result<Poly2> {
    if hex.is_empty() {
        return Err(Error::InvalidInput("empty hex mask".into()));
    }
    let mut p = Poly2::zero();
    let digits: Vec<char> = hex.chars().collect();
    for (pos, c) in digits.iter().rev().enumerate() {
        let v = c
            .to_digit(16)
            .ok_or_else(|| Error::InvalidInput(format!("bad hex digit '{}'", c)))? as usize;
        for b in 0..4 {
            if v >> b & 1 == 1 {
                p.set_coeff(pos * 4 + b);
            }
        }
    }
    Ok(p)
}

impl std::ops::Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        Poly2::add(self, rhs)
    }
}

impl std::ops::Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        Poly2::mul(self, rhs)
    }
}
