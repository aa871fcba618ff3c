//! Feedback shift register models: update functions, transition functions,
//! periodicity and De Bruijn checks, cascade construction, cycle polynomial
//! extraction, and generators.
//!
//! State encoding: stage x0 (the leftmost, output stage) is the least
//! significant bit of the state index. Cascade states concatenate the driven
//! register's bits (low) and the driving register's bits (high).

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2poly::Poly2;

/// Cap on the stage count of a single register (1 Mi-entry truth table).
pub const DEFAULT_STAGE_CAP: usize = 20;

/// Default cap on the materialized cascade state space.
pub const DEFAULT_CASCADE_STATE_CAP: u64 = 1 << 28;

/// An n-stage FSR given by the truth table of its update function f1.
///
/// The table has 2^n bits; entry s is f1 evaluated at the state whose stage
/// bits are the bits of s (x0 at the least significant position).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsrSpec {
    n: usize,
    table: Vec<u64>,
}

impl FsrSpec {
    pub fn from_truth_table_bits(n: usize, bits: &[bool]) -> Result<Self> {
        if n == 0 || n > DEFAULT_STAGE_CAP {
            return Err(Error::StageCountOutOfRange {
                n,
                cap: DEFAULT_STAGE_CAP,
            });
        }
        if bits.len() != 1 << n {
            return Err(Error::InvalidInput(format!(
                "truth table must have 2^{} = {} entries, got {}",
                n,
                1u64 << n,
                bits.len()
            )));
        }
        let mut table = vec![0u64; (bits.len()).div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                table[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(FsrSpec { n, table })
    }

    /// Builds the register from the De Bruijn sequence it should output:
    /// a cyclic bit string of length 2^n read through sliding windows.
    /// All 2^n windows must be distinct.
    pub fn from_debruijn_sequence(bits: &[bool]) -> Result<Self> {
        let len = bits.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "a De Bruijn sequence has length 2^n for n >= 1, got {}",
                len
            )));
        }
        let n = len.trailing_zeros() as usize;
        if n > DEFAULT_STAGE_CAP {
            return Err(Error::StageCountOutOfRange {
                n,
                cap: DEFAULT_STAGE_CAP,
            });
        }
        let mut seen = vec![0u64; len.div_ceil(64)];
        let mut tt = vec![false; len];
        for k in 0..len {
            let mut state = 0u64;
            for i in 0..n {
                if bits[(k + i) % len] {
                    state |= 1 << i;
                }
            }
            if seen[state as usize / 64] >> (state % 64) & 1 == 1 {
                return Err(Error::InvalidInput(format!(
                    "window {} appears twice; not a De Bruijn sequence",
                    state
                )));
            }
            seen[state as usize / 64] |= 1 << (state % 64);
            tt[state as usize] = bits[(k + n) % len];
        }
        FsrSpec::from_truth_table_bits(n, &tt)
    }

    /// Parses "0011"-style 0/1 strings into a De Bruijn register.
    pub fn from_debruijn_sequence_str(s: &str) -> Result<Self> {
        let bits = parse_bits(s)?;
        FsrSpec::from_debruijn_sequence(&bits)
    }

    /// Parses a truth table given as hex digits (bit i of the mask is the
    /// table entry for state i) or as "b"-prefixed binary ("b0110").
    pub fn from_truth_table_text(s: &str) -> Result<Self> {
        let bits = if let Some(bin) = s.strip_prefix('b') {
            parse_bits(bin)?
        } else {
            let hex = s.strip_prefix("0x").unwrap_or(s);
            let mut bits = Vec::with_capacity(hex.len() * 4);
            for c in hex.chars().rev() {
                let v = c
                    .to_digit(16)
                    .ok_or_else(|| Error::InvalidInput(format!("bad hex digit '{}'", c)))?;
                for b in 0..4 {
                    bits.push(v >> b & 1 == 1);
                }
            }
            bits
        };
        if !bits.len().is_power_of_two() || bits.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "truth table must have 2^n entries for n >= 1, got {} bits",
                bits.len()
            )));
        }
        FsrSpec::from_truth_table_bits(bits.len().trailing_zeros() as usize, &bits)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn state_count(&self) -> u64 {
        1 << self.n
    }

    /// Update function value f1(state).
    pub fn f1(&self, state: u64) -> bool {
        self.table[state as usize / 64] >> (state % 64) & 1 == 1
    }

    /// One step of the transition function; caller guarantees the range.
    pub fn step(&self, state: u64) -> u64 {
        (state >> 1) | ((self.f1(state) as u64) << (self.n - 1))
    }

    /// One step with a range check.
    pub fn transition(&self, state: u64) -> Result<u64> {
        if state >= self.state_count() {
            return Err(Error::InvalidInput(format!(
                "state {} out of range for {} stages",
                state, self.n
            )));
        }
        Ok(self.step(state))
    }

    /// The register always returns to its initial state iff the update
    /// function splits off x0, i.e. flipping x0 flips the update value.
    pub fn is_periodic(&self) -> bool {
        (0..self.state_count())
            .step_by(2)
            .all(|s| self.f1(s) != self.f1(s | 1))
    }

    /// Periodic with a single cycle through all 2^n states.
    pub fn is_debruijn(&self) -> bool {
        if !self.is_periodic() {
            return false;
        }
        let mut state = self.step(0);
        let mut steps = 1u64;
        while state != 0 {
            state = self.step(state);
            steps += 1;
        }
        steps == self.state_count()
    }

    /// Truth table as a hex mask string (bit i = entry for state i).
    pub fn truth_table_hex(&self) -> String {
        let digits = (self.state_count() as usize).div_ceil(4);
        let mut out = String::with_capacity(digits + 2);
        out.push_str("0x");
        for d in (0..digits).rev() {
            let mut v = 0u32;
            for b in 0..4 {
                let i = d * 4 + b;
                if (i as u64) < self.state_count() && self.f1(i as u64) {
                    v |= 1 << b;
                }
            }
            out.push(char::from_digit(v, 16).unwrap());
        }
        out
    }
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidInput(format!("bad bit '{}'", c))),
        })
        .collect()
}

/// An explicit permutation (or map) of {0, ..., 2^k - 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionPerm {
    k: usize,
    images: Vec<u32>,
}

impl TransitionPerm {
    pub fn new(k: usize, images: Vec<u32>) -> Result<Self> {
        if k > 31 {
            return Err(Error::StateCapExceeded {
                states: 1u128 << k,
                cap: 1 << 31,
            });
        }
        if images.len() != 1usize << k {
            return Err(Error::InvalidInput(format!(
                "expected 2^{} images, got {}",
                k,
                images.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&v| v as u64 >= 1u64 << k) {
            return Err(Error::InvalidInput(format!(
                "image {} out of range for dimension {}",
                bad, k
            )));
        }
        Ok(TransitionPerm { k, images })
    }

    pub fn from_fn(k: usize, mut f: impl FnMut(u64) -> u64) -> Result<Self> {
        if k > 31 {
            return Err(Error::StateCapExceeded {
                states: 1u128 << k,
                cap: 1 << 31,
            });
        }
        let images = (0..1u64 << k).map(|s| f(s) as u32).collect();
        TransitionPerm::new(k, images)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> u64 {
        1 << self.k
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn image(&self, s: u64) -> u64 {
        self.images[s as usize] as u64
    }
}

/// The cascaded connection of a driving register into a driven register:
/// the driving register's output bit is XORed into the driven register's
/// feedback.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeSpec {
    /// The n-stage register whose output feeds the other one.
    pub driving: FsrSpec,
    /// The m-stage register receiving the feed.
    pub driven: FsrSpec,
}

impl CascadeSpec {
    pub fn new(driving: FsrSpec, driven: FsrSpec) -> Self {
        CascadeSpec { driving, driven }
    }

    pub fn state_bits(&self) -> usize {
        self.driving.n + self.driven.n
    }

    pub fn state_count(&self) -> u64 {
        1 << self.state_bits()
    }

    /// One step of the combined transition function; defined for any pair of
    /// update functions, periodic or not.
    pub fn step(&self, state: u64) -> u64 {
        let m = self.driven.n;
        let x = state & ((1 << m) - 1);
        let y = state >> m;
        let fed = self.driven.f1(x) as u64 ^ (y & 1);
        let new_x = (x >> 1) | (fed << (m - 1));
        new_x | (self.driving.step(y) << m)
    }

    /// The output bit of a cascade state: the leftmost stage of the driven
    /// register.
    pub fn output_bit(state: u64) -> bool {
        state & 1 == 1
    }

    fn require_periodic(&self) -> Result<()> {
        if !self.driving.is_periodic() {
            return Err(Error::NotPeriodic { role: "driving" });
        }
        if !self.driven.is_periodic() {
            return Err(Error::NotPeriodic { role: "driven" });
        }
        Ok(())
    }
}

/// Materializes the cascade transition permutation on 2^(m+n) states.
/// Both components must be periodic.
pub fn cascade_transition(spec: &CascadeSpec) -> Result<TransitionPerm> {
    cascade_transition_with_cap(spec, DEFAULT_CASCADE_STATE_CAP)
}

pub fn cascade_transition_with_cap(spec: &CascadeSpec, max_states: u64) -> Result<TransitionPerm> {
    let states = spec.state_count();
    if states > max_states {
        return Err(Error::StateCapExceeded {
            states: states as u128,
            cap: max_states as u128,
        });
    }
    spec.require_periodic()?;
    TransitionPerm::from_fn(spec.state_bits(), |s| spec.step(s))
}

/// The per-block map of the cascade seen as a block permutation: for the
/// driving-register state y, the driven register's state advances by its own
/// transition, followed by the translation +t (flipping the top stage) iff
/// the first bit of y is 1.
#[derive(Debug, Clone)]
pub struct BlockMap<'a> {
    driven: &'a FsrSpec,
    translate: bool,
}

impl BlockMap<'_> {
    pub fn translate(&self) -> bool {
        self.translate
    }

    pub fn apply(&self, x: u64) -> u64 {
        let gx = self.driven.step(x);
        if self.translate {
            gx ^ (1 << (self.driven.n - 1))
        } else {
            gx
        }
    }
}

/// The block map attached to driving-register state y. Composing these along
/// the driving register's transition reproduces [`cascade_transition`]:
/// step(x | y << m) == wreath_view(y).apply(x) | step_driving(y) << m.
pub fn wreath_view<'a>(spec: &'a CascadeSpec, y: u64) -> BlockMap<'a> {
    BlockMap {
        driven: &spec.driven,
        translate: y & 1 == 1,
    }
}

/// The polynomial whose coefficients are the output bits read along the
/// De Bruijn cycle from the all-zero state: the bit after k steps becomes
/// the coefficient of X^(2^n - 1 - k).
pub fn chi_poly(spec: &FsrSpec) -> Result<Poly2> {
    if !spec.is_debruijn() {
        return Err(Error::NotDeBruijn);
    }
    let size = spec.state_count();
    let mut chi = Poly2::zero();
    let mut state = 0u64;
    for k in 0..size {
        if state & 1 == 1 {
            chi.set_coeff((size - 1 - k) as usize);
        }
        state = spec.step(state);
    }
    Ok(chi)
}

/// The sequence output by a De Bruijn register along its single cycle,
/// starting from the all-zero state.
pub fn debruijn_sequence_bits(spec: &FsrSpec) -> Result<Vec<bool>> {
    if !spec.is_debruijn() {
        return Err(Error::NotDeBruijn);
    }
    let mut out = Vec::with_capacity(spec.state_count() as usize);
    let mut state = 0u64;
    for _ in 0..spec.state_count() {
        out.push(state & 1 == 1);
        state = spec.step(state);
    }
    Ok(out)
}

/// Greedy prefer-one De Bruijn register: from the all-zero window, append a 1
/// whenever the resulting window is new, else a 0.
pub fn debruijn_prefer_one(n: usize) -> Result<FsrSpec> {
    if n == 0 || n > DEFAULT_STAGE_CAP {
        return Err(Error::StageCountOutOfRange {
            n,
            cap: DEFAULT_STAGE_CAP,
        });
    }
    let size = 1u64 << n;
    let mut seen = vec![0u64; (size as usize).div_ceil(64)];
    let mut tt = vec![false; size as usize];
    let mut window = 0u64;
    seen[0] |= 1;
    loop {
        let w1 = (window >> 1) | (1 << (n - 1));
        let w0 = window >> 1;
        let next = if seen[w1 as usize / 64] >> (w1 % 64) & 1 == 0 {
            tt[window as usize] = true;
            w1
        } else if seen[w0 as usize / 64] >> (w0 % 64) & 1 == 0 {
            w0
        } else {
            // Both successors visited: the walk closes back to the start.
            break;
        };
        seen[next as usize / 64] |= 1 << (next % 64);
        window = next;
    }
    let spec = FsrSpec::from_truth_table_bits(n, &tt)?;
    if !spec.is_debruijn() {
        return Err(Error::InvalidInput(
            "prefer-one construction did not close into a full cycle".into(),
        ));
    }
    Ok(spec)
}

/// A uniform-ish random De Bruijn register by cycle joining: start from the
/// pure cycling register, link its cycles along a random spanning tree of
/// the conjugate-pair adjacency graph.
pub fn debruijn_random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<FsrSpec> {
    if n == 0 || n > DEFAULT_STAGE_CAP {
        return Err(Error::StageCountOutOfRange {
            n,
            cap: DEFAULT_STAGE_CAP,
        });
    }
    let size = 1usize << n;
    // Pure cycling register: f1(x) = x0, a rotation of the state bits.
    let mut tt: Vec<bool> = (0..size).map(|s| s & 1 == 1).collect();
    let spec = FsrSpec::from_truth_table_bits(n, &tt)?;

    let mut cycle_id = vec![u32::MAX; size];
    let mut cycles = 0u32;
    for start in 0..size as u64 {
        if cycle_id[start as usize] != u32::MAX {
            continue;
        }
        let mut s = start;
        loop {
            cycle_id[s as usize] = cycles;
            s = spec.step(s);
            if s == start {
                break;
            }
        }
        cycles += 1;
    }

    // Toggling the update at both states of a conjugate pair (r<<1, r<<1|1)
    // swaps their successors; doing so along a spanning tree of the cycle
    // adjacency graph joins everything into a single cycle.
    let mut pairs: Vec<u64> = (0..1u64 << (n - 1)).collect();
    pairs.shuffle(rng);
    let mut parent: Vec<u32> = (0..cycles).collect();
    fn find(parent: &mut [u32], mut a: u32) -> u32 {
        while parent[a as usize] != a {
            parent[a as usize] = parent[parent[a as usize] as usize];
            a = parent[a as usize];
        }
        a
    }
    let mut joined = 1;
    for r in pairs {
        let a = find(&mut parent, cycle_id[(r << 1) as usize]);
        let b = find(&mut parent, cycle_id[(r << 1 | 1) as usize]);
        if a != b {
            parent[a as usize] = b;
            tt[(r << 1) as usize] = !tt[(r << 1) as usize];
            tt[(r << 1 | 1) as usize] = !tt[(r << 1 | 1) as usize];
            joined += 1;
            if joined == cycles {
                break;
            }
        }
    }
    let spec = FsrSpec::from_truth_table_bits(n, &tt)?;
    if !spec.is_debruijn() {
        return Err(Error::InvalidInput(
            "cycle joining did not produce a full cycle".into(),
        ));
    }
    Ok(spec)
}

/// All De Bruijn update functions on n stages, for n <= 4, by filtering the
/// periodic truth tables.
pub fn all_debruijn(n: usize) -> Result<Vec<FsrSpec>> {
    if n == 0 || n > 4 {
        return Err(Error::StageCountOutOfRange { n, cap: 4 });
    }
    let half = 1usize << (n - 1);
    let mut out = Vec::new();
    for f0_mask in 0u64..1 << half {
        let bits: Vec<bool> = (0..1u64 << n)
            .map(|s| (s & 1 == 1) != (f0_mask >> (s >> 1) & 1 == 1))
            .collect();
        let spec = FsrSpec::from_truth_table_bits(n, &bits)?;
        if spec.is_debruijn() {
            out.push(spec);
        }
    }
    Ok(out)
}

/// The linear register whose connection polynomial is p: for
/// p = X^m + sum c_i X^i the update is f1(x) = XOR of the x_i with c_i = 1.
/// Periodicity requires p(0) = 1.
pub fn lfsr_spec(p: &Poly2) -> Result<FsrSpec> {
    let m = match p.deg() {
        None | Some(0) => return Err(Error::ConstantModulus),
        Some(m) => m,
    };
    if m > DEFAULT_STAGE_CAP {
        return Err(Error::StageCountOutOfRange {
            n: m,
            cap: DEFAULT_STAGE_CAP,
        });
    }
    if !p.coeff(0) {
        return Err(Error::InvalidInput(
            "connection polynomial must have nonzero constant term".into(),
        ));
    }
    let mask = p.to_mask().expect("degree is capped") as u64 & ((1 << m) - 1);
    let bits: Vec<bool> = (0..1u64 << m)
        .map(|s| (s & mask).count_ones() & 1 == 1)
        .collect();
    FsrSpec::from_truth_table_bits(m, &bits)
}

/// Recovers the connection polynomial of a linear periodic register;
/// inverse of [`lfsr_spec`].
pub fn connection_poly(spec: &FsrSpec) -> Result<Poly2> {
    if spec.f1(0) {
        return Err(Error::NotLinear);
    }
    let m = spec.n;
    let mut mask = 0u64;
    for i in 0..m {
        if spec.f1(1 << i) {
            mask |= 1 << i;
        }
    }
    for s in 0..spec.state_count() {
        if spec.f1(s) != ((s & mask).count_ones() & 1 == 1) {
            return Err(Error::NotLinear);
        }
    }
    if mask & 1 == 0 {
        return Err(Error::NotPeriodic { role: "driven" });
    }
    let mut p = Poly2::from_mask(mask as u128);
    p.set_coeff(m);
    Ok(p)
}

/// Cycle length of `initial` under the cascade transition; by the stream
/// reconstruction argument this equals the least period of the output
/// sequence from that state.
pub fn output_period(spec: &CascadeSpec, initial: u64) -> Result<u64> {
    let states = spec.state_count();
    if states > DEFAULT_CASCADE_STATE_CAP {
        return Err(Error::StateCapExceeded {
            states: states as u128,
            cap: DEFAULT_CASCADE_STATE_CAP as u128,
        });
    }
    if initial >= states {
        return Err(Error::InvalidInput(format!(
            "initial state {} out of range",
            initial
        )));
    }
    spec.require_periodic()?;
    let mut state = spec.step(initial);
    let mut steps = 1u64;
    while state != initial {
        state = spec.step(state);
        steps += 1;
    }
    Ok(steps)
}

/// The first `len` output bits of the cascade from a given initial state.
pub fn output_stream(spec: &CascadeSpec, initial: u64, len: usize) -> Result<Vec<bool>> {
    if initial >= spec.state_count() {
        return Err(Error::InvalidInput(format!(
            "initial state {} out of range",
            initial
        )));
    }
    let mut out = Vec::with_capacity(len);
    let mut state = initial;
    for _ in 0..len {
        out.push(CascadeSpec::output_bit(state));
        state = spec.step(state);
    }
    Ok(out)
}
