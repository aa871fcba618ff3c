//! Cycle types of permutations as monomials in variables x_l, together with
//! their product, the Wei-Xu product, blow-ups and iterates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A multiset of cycle lengths: maps each length to a positive count.
///
/// The empty value is the cycle type of the permutation on zero points.
/// Counts are 128-bit and all arithmetic is overflow-checked.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleType {
    entries: BTreeMap<u64, u128>,
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl CycleType {
    pub fn empty() -> Self {
        CycleType::default()
    }

    /// The cycle type of the identity on a single point: the monomial x_1.
    pub fn fixed_point() -> Self {
        CycleType::single(1, 1).expect("x_1 is well-formed")
    }

    /// The monomial x_len^count (empty if count is 0).
    pub fn single(len: u64, count: u128) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidInput("cycle length must be positive".into()));
        }
        let mut ct = CycleType::empty();
        if count > 0 {
            ct.entries.insert(len, count);
        }
        Ok(ct)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in increasing length order.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u128)> + '_ {
        self.entries.iter().map(|(l, c)| (*l, *c))
    }

    pub fn count_of(&self, len: u64) -> u128 {
        self.entries.get(&len).copied().unwrap_or(0)
    }

    /// Adds `count` cycles of length `len`, checking for overflow.
    pub fn add_cycles(&mut self, len: u64, count: u128) -> Result<()> {
        if len == 0 {
            return Err(Error::InvalidInput("cycle length must be positive".into()));
        }
        if count == 0 {
            return Ok(());
        }
        let slot = self.entries.entry(len).or_insert(0);
        *slot = slot.checked_add(count).ok_or(Error::CountOverflow)?;
        Ok(())
    }

    /// Product of cycle types: pointwise count addition (disjoint union).
    pub fn mul(&self, other: &CycleType) -> Result<CycleType> {
        let mut out = self.clone();
        for (l, c) in other.entries() {
            out.add_cycles(l, c)?;
        }
        Ok(out)
    }

    /// Wei-Xu product: the cycle type of the componentwise pair map of two
    /// permutations with these cycle types.
    pub fn weixu(&self, other: &CycleType) -> Result<CycleType> {
        let mut out = CycleType::empty();
        for (i, ei) in self.entries() {
            for (j, ej) in other.entries() {
                let g = gcd_u64(i, j);
                let l = i.checked_mul(j / g).ok_or(Error::LengthOverflow)?;
                let count = ei
                    .checked_mul(ej)
                    .and_then(|c| c.checked_mul(g as u128))
                    .ok_or(Error::CountOverflow)?;
                out.add_cycles(l, count)?;
            }
        }
        Ok(out)
    }

    /// l-blow-up: every x_n becomes x_{l*n}, counts unchanged.
    pub fn blowup(&self, l: u64) -> Result<CycleType> {
        if l == 0 {
            return Err(Error::InvalidInput("blow-up factor must be positive".into()));
        }
        let mut out = CycleType::empty();
        for (n, c) in self.entries() {
            let len = n.checked_mul(l).ok_or(Error::LengthOverflow)?;
            out.add_cycles(len, c)?;
        }
        Ok(out)
    }

    /// Cycle type of the t-th iterate: x_l^e becomes x_{l/gcd(l,t)}^{e*gcd(l,t)}.
    pub fn iterate(&self, t: u64) -> Result<CycleType> {
        let mut out = CycleType::empty();
        for (l, e) in self.entries() {
            let g = gcd_u64(l, t);
            let count = e.checked_mul(g as u128).ok_or(Error::CountOverflow)?;
            out.add_cycles(l / g, count)?;
        }
        Ok(out)
    }

    /// Total number of permuted points: sum of length * count.
    pub fn total_points(&self) -> Result<u128> {
        let mut total: u128 = 0;
        for (l, c) in self.entries() {
            let pts = c.checked_mul(l as u128).ok_or(Error::CountOverflow)?;
            total = total.checked_add(pts).ok_or(Error::CountOverflow)?;
        }
        Ok(total)
    }

    /// Order of any permutation with this cycle type: the lcm of the lengths.
    pub fn permutation_order(&self) -> Result<u128> {
        if self.is_empty() {
            return Err(Error::EmptyCycleType);
        }
        let mut acc: u128 = 1;
        for (l, _) in self.entries() {
            let l = l as u128;
            let g = {
                let (mut a, mut b) = (acc, l);
                while b != 0 {
                    (a, b) = (b, a % b);
                }
                a
            };
            acc = (acc / g).checked_mul(l).ok_or(Error::LengthOverflow)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for CycleType {
    // Textual form "x4 x28" / "x8^16 x56^16"; the empty monomial prints "1".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (l, c) in self.entries() {
            if !first {
                write!(f, " ")?;
            }
            if c == 1 {
                write!(f, "x{}", l)?;
            } else {
                write!(f, "x{}^{}", l, c)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<CycleType> {
        let s = s.trim();
        if s == "1" {
            return Ok(CycleType::empty());
        }
        let mut ct = CycleType::empty();
        for token in s.split_whitespace() {
            let body = token
                .strip_prefix('x')
                .ok_or_else(|| Error::InvalidInput(format!("bad cycle-type token '{}'", token)))?;
            let (len, count) = match body.split_once('^') {
                Some((l, c)) => (
                    l.parse::<u64>()
                        .map_err(|_| Error::InvalidInput(format!("bad length in '{}'", token)))?,
                    c.parse::<u128>()
                        .map_err(|_| Error::InvalidInput(format!("bad count in '{}'", token)))?,
                ),
                None => (
                    body.parse::<u64>()
                        .map_err(|_| Error::InvalidInput(format!("bad length in '{}'", token)))?,
                    1,
                ),
            };
            ct.add_cycles(len, count)?;
        }
        Ok(ct)
    }
}
