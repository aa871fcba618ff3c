//! Closed-form cycle types of affine permutations R -> X^L * R + c of the
//! quotient rings F2[X]/(P), plus the block structure of powers of the
//! multiplication-by-X map.

use crate::cycletype::CycleType;
use crate::error::{Error, Result};
use crate::gf2poly::{
    self, ceil_log2, factor, is_irreducible, poly_order, pow_index, pow_min_poly,
    prime_power_order, valuation, Poly2, Valuation,
};

/// The modulus Q^e of a primary quotient ring, with Q monic irreducible, Q != X.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineModulus {
    q: Poly2,
    e: u32,
}

impl AffineModulus {
    pub fn new(q: Poly2, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidInput("exponent must be positive".into()));
        }
        if q == Poly2::x() {
            return Err(Error::ModulusIsX);
        }
        match q.deg() {
            None | Some(0) => return Err(Error::NotFactorable),
            Some(_) => {}
        }
        if !is_irreducible(&q)? {
            return Err(Error::NotIrreducible(q.to_string()));
        }
        Ok(AffineModulus { q, e })
    }

    pub fn q(&self) -> &Poly2 {
        &self.q
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Q^e expanded.
    pub fn modulus(&self) -> Poly2 {
        (0..self.e).fold(Poly2::one(), |acc, _| acc.mul(&self.q))
    }

    fn dim(&self) -> usize {
        self.e as usize * self.q.deg().expect("irreducible is nonzero")
    }
}

/// An affine permutation R -> X^L * R + c of F2[X]/(P), with P(0) = 1 so that
/// multiplication by X is invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMapModP {
    modulus: Poly2,
    multiplier_exponent: u64,
    translation: Poly2,
}

impl AffineMapModP {
    pub fn new(modulus: Poly2, multiplier_exponent: u64, translation: Poly2) -> Result<Self> {
        match modulus.deg() {
            None | Some(0) => return Err(Error::ConstantModulus),
            Some(_) => {}
        }
        if !modulus.coeff(0) {
            return Err(Error::InvalidInput(
                "modulus must have nonzero constant term".into(),
            ));
        }
        if translation.degree() >= modulus.degree() {
            return Err(Error::InvalidInput(
                "translation must be reduced modulo the modulus".into(),
            ));
        }
        Ok(AffineMapModP {
            modulus,
            multiplier_exponent,
            translation,
        })
    }

    pub fn modulus(&self) -> &Poly2 {
        &self.modulus
    }

    pub fn multiplier_exponent(&self) -> u64 {
        self.multiplier_exponent
    }

    pub fn translation(&self) -> &Poly2 {
        &self.translation
    }
}

/// Exact cycle type of the affine permutation R -> R*X + u of F2[X]/(Q^e).
///
/// Three cases: for Q != X+1 the count is independent of u and consists of
/// one fixed point, the base level of ord(Q)-cycles, a geometric tower of
/// levels of length ord(Q)*2^a, and a top level; for Q = X+1 the type depends
/// only on whether u is a unit modulo (X+1)^e.
pub fn ct_lambda_primary(m: &AffineModulus, u: &Poly2) -> Result<CycleType> {
    ct_lambda_primary_with_order_cap(m, u, gf2poly::DEFAULT_ORDER_DEGREE_CAP)
}

/// As [`ct_lambda_primary`] with an explicit degree cap for the order
/// computation of Q.
pub fn ct_lambda_primary_with_order_cap(
    m: &AffineModulus,
    u: &Poly2,
    order_cap: usize,
) -> Result<CycleType> {
    if u.deg().map(|d| d >= m.dim()).unwrap_or(false) {
        return Err(Error::InvalidInput(
            "translation must be reduced modulo Q^e".into(),
        ));
    }
    let d = m.q.deg().expect("irreducible is nonzero") as u32;
    let e = m.e;
    let top = ceil_log2(e);
    let mut ct = CycleType::empty();
    if m.q != Poly2::x_plus_one() {
        let ord = gf2poly::poly_order_with_cap(&m.q, order_cap)? as u128;
        ct.add_cycles(1, 1)?;
        ct.add_cycles(ord as u64, (pow2(d)? - 1) / ord)?;
        for a in 1..top {
            let half = pow2(2u32.pow(a - 1) * d)?;
            let count = mul128(half, half - 1)? / (pow2(a)? * ord);
            let len = (ord as u64)
                .checked_mul(1 << a)
                .ok_or(Error::LengthOverflow)?;
            ct.add_cycles(len, count)?;
        }
        if top >= 1 {
            let lead = 2u32.pow(top - 1);
            let count = mul128(pow2(lead * d)?, pow2(d * (e - lead))? - 1)? / (pow2(top)? * ord);
            let len = (ord as u64)
                .checked_mul(1 << top)
                .ok_or(Error::LengthOverflow)?;
            ct.add_cycles(len, count)?;
        }
    } else if !is_unipotent_unit(u, e) {
        ct.add_cycles(1, 2)?;
        for a in 1..top {
            let half = pow2(2u32.pow(a - 1))?;
            ct.add_cycles(1 << a, mul128(half, half - 1)? / pow2(a)?)?;
        }
        if top >= 1 {
            let lead = 2u32.pow(top - 1);
            let count = mul128(pow2(lead)?, pow2(e - lead)? - 1)? / pow2(top)?;
            ct.add_cycles(1 << top, count)?;
        }
    } else {
        let len = e.ilog2() + 1;
        ct.add_cycles(1 << len, pow2(e)? / pow2(len)?)?;
    }
    if let Ok(expected) = pow2(e.saturating_mul(d)) {
        debug_assert_eq!(ct.total_points(), Ok(expected));
    }
    Ok(ct)
}

fn pow2(k: u32) -> Result<u128> {
    if k >= 128 {
        return Err(Error::CountOverflow);
    }
    Ok(1u128 << k)
}

fn mul128(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::CountOverflow)
}

/// Cycle type of multiplication by X modulo P, for P with P(0) = 1: the
/// Wei-Xu product over the factors of P of the primary cycle types.
pub fn ct_linear_mod_p(p: &Poly2) -> Result<CycleType> {
    if !p.coeff(0) {
        return Err(Error::InvalidInput(
            "modulus must have nonzero constant term".into(),
        ));
    }
    let mut ct = CycleType::fixed_point();
    for (q, e) in factor(p)?.factors {
        let m = AffineModulus::new(q, e)?;
        ct = ct.weixu(&ct_lambda_primary(&m, &Poly2::zero())?)?;
    }
    Ok(ct)
}

/// Whether u reduces to a unit of F2[X]/((X+1)^e), i.e. (X+1) does not divide
/// the reduction; equivalently u(1) = 1.
pub fn is_unipotent_unit(u: &Poly2, _e: u32) -> bool {
    u.eval_at_one()
}

/// The weight of a translation v for the multiplication-by-X map modulo P:
/// 1 + floor(log2 e0) when the (X+1)^e0 component of v is a unit (e0 being
/// the (X+1)-adic valuation of P), and 0 otherwise. Determines the cycle
/// type of R -> R*X + v among all translations.
pub fn alpha_weight(p: &Poly2, v: &Poly2) -> Result<u32> {
    if !p.coeff(0) {
        return Err(Error::InvalidInput(
            "modulus must have nonzero constant term".into(),
        ));
    }
    if v.degree() >= p.degree() {
        return Err(Error::InvalidInput(
            "translation must be reduced modulo the modulus".into(),
        ));
    }
    let e0 = match valuation(&Poly2::x_plus_one(), p)? {
        Valuation::Finite(v) => v,
        Valuation::Infinity => unreachable!("p is nonzero"),
    };
    if e0 == 0 {
        return Ok(0);
    }
    // The (X+1)^e0 CRT component of v is a unit iff v(1) = 1: reduction
    // modulo (X+1)^e0 does not change the value at 1.
    if v.eval_at_one() {
        Ok(1 + e0.ilog2())
    } else {
        Ok(0)
    }
}

/// Cycle type of the affine permutation R -> X^L R + c of F2[X]/((X+1)^e0),
/// for L = 2^n. This is the unipotent branch of [`ct_affine_mod_p`],
/// the generalization of [`gamma_zero_ct`] to arbitrary translations.
fn unipotent_affine_ct(e0: u32, n: u32, c: &Poly2) -> Result<CycleType> {
    if e0 == 0 {
        return CycleType::single(1, 1);
    }
    let xp1 = Poly2::x_plus_one();
    let modulus = (0..e0).fold(Poly2::one(), |acc, _| acc.mul(&xp1));
    let c0 = c.rem(&modulus)?;
    if n >= ceil_log2(e0) {
        // X^(2^n) is the identity modulo (X+1)^e0; the map is a translation.
        return if c0.is_zero() {
            CycleType::single(1, pow2(e0)?)
        } else {
            CycleType::single(2, pow2(e0 - 1)?)
        };
    }
    // 2^n < ord((X+1)^e0), hence e0 > 2^n: split e0 = a*2^n + b.
    let a = e0 >> n;
    let b = e0 & ((1 << n) - 1);
    let nu = match valuation(&xp1, &c0)? {
        Valuation::Finite(v) => v,
        Valuation::Infinity => u32::MAX,
    };
    let weight = if nu < b {
        1 + (a + 1).ilog2()
    } else if nu < (1 << n) {
        1 + a.ilog2()
    } else {
        // The translation is a non-unit in every block: the cycle type is
        // that of the linear part, the 2^n-th iterate of multiplication by X.
        let base = ct_lambda_primary(&AffineModulus::new(xp1, e0)?, &Poly2::zero())?;
        return base.iterate(1 << n);
    };
    CycleType::single(1 << weight, pow2(e0 - weight)?)
}

/// Cycle type of a general affine permutation R -> X^L R + c modulo P.
///
/// P is factored; each factor coprime to X+1 contributes the L-th iterate of
/// its multiplication-by-X cycle type (the translation cannot change it
/// there), the (X+1)-power factor goes through the unipotent closed form,
/// and the results combine by Wei-Xu product. L must be 0 or a power of 2;
/// the unipotent closed form does not cover other exponents, so they are
/// rejected rather than approximated.
pub fn ct_affine_mod_p(map: &AffineMapModP) -> Result<CycleType> {
    let l = map.multiplier_exponent;
    if l == 0 {
        // Pure translation.
        let m = map.modulus.deg().unwrap() as u32;
        return if map.translation.is_zero() {
            CycleType::single(1, pow2(m)?)
        } else {
            CycleType::single(2, pow2(m - 1)?)
        };
    }
    if !l.is_power_of_two() {
        return Err(Error::UnsupportedMultiplier { l });
    }
    let n = l.ilog2();
    let mut ct = CycleType::fixed_point();
    for (q, e) in factor(&map.modulus)?.factors {
        let part = if q == Poly2::x_plus_one() {
            unipotent_affine_ct(e, n, &map.translation)?
        } else {
            let base = ct_lambda_primary(&AffineModulus::new(q, e)?, &Poly2::zero())?;
            base.iterate(l)?
        };
        ct = ct.weixu(&part)?;
    }
    Ok(ct)
}

/// Cycle type of the unipotent component of the cascade's forward cycle
/// product: the affine map R -> X^(2^n) R + chi of F2[X]/((X+1)^e0), where
/// chi is the cycle polynomial of a De Bruijn cycle (nonzero, deg < 2^n).
///
/// Implements the six-way case split directly; with e0 = a*2^n + b:
/// whether the map has fixed points, 2-cycles only, or a single length
/// depends on n, on whether a+1 is a power of 2, and on divisibility of chi
/// by powers of X+1.
pub fn gamma_zero_ct(e0: u32, n: u32, chi: &Poly2) -> Result<CycleType> {
    if n == 0 {
        return Err(Error::InvalidInput("stage count must be positive".into()));
    }
    let chi_deg = match chi.deg() {
        None => return Err(Error::InvalidInput("cycle polynomial is zero".into())),
        Some(d) => d,
    };
    if n < 64 && chi_deg as u128 >= 1u128 << n {
        return Err(Error::InvalidInput(
            "cycle polynomial degree must be below 2^n".into(),
        ));
    }
    if e0 == 0 {
        return CycleType::single(1, 1);
    }
    let xp1 = Poly2::x_plus_one();
    let nu = valuation(&xp1, chi)?
        .finite()
        .expect("chi is nonzero");
    if n >= ceil_log2(e0) {
        return if nu >= e0 {
            CycleType::single(1, pow2(e0)?)
        } else {
            CycleType::single(2, pow2(e0 - 1)?)
        };
    }
    let a = e0 >> n;
    let b = e0 & ((1 << n) - 1);
    if (a + 1).is_power_of_two() {
        if nu >= b {
            // One of the a-dimensional blocks absorbs everything.
            CycleType::single(a as u64 + 1, pow2(e0)? / (a as u128 + 1))
        } else {
            CycleType::single(2 * (a as u64 + 1), pow2(e0 - 1)? / (a as u128 + 1))
        }
    } else {
        CycleType::single(1 << (a.ilog2() + 1), pow2(e0 - a.ilog2() - 1)?)
    }
}

/// Single primary block of the l-th power of the multiplication-by-X map on
/// F2[X]/(Q^e), for l coprime to the map order: (pow_l(Q), e).
pub fn rcf_power_coprime(m: &AffineModulus, l: u64) -> Result<(Poly2, u32)> {
    let order = prime_power_order(&m.q, m.e)?;
    if gcd_u128(l as u128, order) != 1 {
        return Err(Error::NotCoprime { l, order });
    }
    Ok((pow_min_poly(&m.q, l)?, m.e))
}

/// Primary rational canonical blocks of the l-th power for l a power of 2
/// dividing the 2-part of the map order. With l' = min(l, e) and
/// e = a*l' + b: b blocks of exponent a+1 and l'-b blocks of exponent a,
/// all over pow_l(Q). (Powers of the Frobenius preserve the factor degree,
/// so the exponents must sum to e for the dimensions to add up.)
pub fn rcf_power_p(m: &AffineModulus, l: u64) -> Result<Vec<(Poly2, u32, usize)>> {
    let two_part = 1u128 << ceil_log2(m.e);
    if !l.is_power_of_two() || two_part % (l as u128) != 0 {
        return Err(Error::DivisibilityViolated { l, divisor: two_part });
    }
    let pw = pow_min_poly(&m.q, l)?;
    let lp = (l as usize).min(m.e as usize);
    let a = (m.e as usize / lp) as u32;
    let b = m.e as usize % lp;
    let mut out = Vec::new();
    if b > 0 {
        out.push((pw.clone(), a + 1, b));
    }
    if lp - b > 0 {
        out.push((pw, a, lp - b));
    }
    Ok(out)
}

/// Block subspace decomposition of the l-th power for l dividing the odd
/// part ord(Q) of the map order: ind_l(Q) blocks, each with minimal
/// polynomial pow_l(Q)^e.
pub fn block_split_count(m: &AffineModulus, l: u64) -> Result<(usize, Poly2, u32)> {
    let ord = poly_order(&m.q)? as u128;
    if l == 0 || ord % (l as u128) != 0 {
        return Err(Error::DivisibilityViolated { l, divisor: ord });
    }
    let pw = pow_min_poly(&m.q, l)?;
    let ind = pow_index(&m.q, l)?;
    Ok((ind, pw, m.e))
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// (X+1)-adic valuation of a nonzero polynomial, as a plain integer.
pub fn nu_x_plus_one(p: &Poly2) -> Result<u32> {
    match gf2poly::valuation(&Poly2::x_plus_one(), p)? {
        Valuation::Finite(v) => Ok(v),
        Valuation::Infinity => Err(Error::InvalidInput(
            "valuation of the zero polynomial is infinite".into(),
        )),
    }
}
