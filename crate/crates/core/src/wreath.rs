//! The cascade engine: brute-force cycle enumeration, the general
//! block-decomposition method (forward cycle products and blow-ups), the
//! closed form for De Bruijn-into-linear cascades, the fast path, the
//! maximum-period bound, and the cycle-polynomial valuation scan.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::affine_cycles::{ct_lambda_primary, ct_linear_mod_p, gamma_zero_ct, AffineModulus};
use crate::cycletype::CycleType;
use crate::error::{Error, Result};
use crate::fsr::{
    all_debruijn, chi_poly, debruijn_random, wreath_view, CascadeSpec, FsrSpec, TransitionPerm,
};
use crate::gf2poly::{factor, valuation, Factorization, Poly2, Valuation};

/// How a cascade cycle type was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    FastPath,
    GeneralPolya,
    BruteForce,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::FastPath => "fast_path",
            Method::GeneralPolya => "general_polya",
            Method::BruteForce => "brute_force",
        }
    }
}

/// A cascade cycle-type result together with the intermediate artifacts the
/// computation produced.
#[derive(Debug, Clone)]
pub struct CascadeAnalysis {
    pub cycle_type: CycleType,
    pub method: Method,
    /// Cycle type of the forward cycle product over the full driving cycle.
    pub fcp_ct: Option<CycleType>,
    /// Its component modulo the (X+1)-power factor of the modulus.
    pub fcp_unipotent_ct: Option<CycleType>,
    /// Its component modulo the factors coprime to X+1.
    pub fcp_coprime_ct: Option<CycleType>,
    /// Cycle polynomial of the driving De Bruijn register.
    pub chi: Option<Poly2>,
    pub factorization: Option<Factorization>,
}

impl CascadeAnalysis {
    fn bare(cycle_type: CycleType, method: Method) -> Self {
        CascadeAnalysis {
            cycle_type,
            method,
            fcp_ct: None,
            fcp_unipotent_ct: None,
            fcp_coprime_ct: None,
            chi: None,
            factorization: None,
        }
    }
}

/// Exact cycle type of an explicit permutation by marking visited states.
/// Rejects non-permutations, reporting a state with two preimages.
pub fn ct_brute(perm: &TransitionPerm) -> Result<CycleType> {
    let size = perm.len();
    let words = (size as usize).div_ceil(64);
    let mut hit = vec![0u64; words];
    for s in 0..size {
        let img = perm.image(s);
        let (w, b) = (img as usize / 64, img % 64);
        if hit[w] >> b & 1 == 1 {
            return Err(Error::NotAPermutation { witness: img });
        }
        hit[w] |= 1 << b;
    }
    let mut visited = vec![0u64; words];
    let mut ct = CycleType::empty();
    for start in 0..size {
        if visited[start as usize / 64] >> (start % 64) & 1 == 1 {
            continue;
        }
        let mut len = 0u64;
        let mut s = start;
        loop {
            visited[s as usize / 64] |= 1 << (s % 64);
            len += 1;
            s = perm.image(s);
            if s == start {
                break;
            }
        }
        ct.add_cycles(len, 1)?;
    }
    Ok(ct)
}

/// Composes the per-block maps along one driving-register cycle, visiting
/// the states in the given order and applying the first state's map first.
/// Returns the composite as an explicit map on the driven state space.
pub fn forward_cycle_product(spec: &CascadeSpec, cycle: &[u64]) -> Result<Vec<u32>> {
    if cycle.is_empty() {
        return Err(Error::InvalidInput("empty cycle".into()));
    }
    let n_states = spec.driving.state_count();
    let mut seen = vec![0u64; (n_states as usize).div_ceil(64)];
    for (i, &y) in cycle.iter().enumerate() {
        if y >= n_states {
            return Err(Error::InvalidInput(format!("state {} out of range", y)));
        }
        if seen[y as usize / 64] >> (y % 64) & 1 == 1 {
            return Err(Error::InvalidInput(format!(
                "state {} repeats; not a cycle of the driving transition",
                y
            )));
        }
        seen[y as usize / 64] |= 1 << (y % 64);
        let next = cycle[(i + 1) % cycle.len()];
        if spec.driving.step(y) != next {
            return Err(Error::InvalidInput(format!(
                "states {} -> {} do not follow the driving transition",
                y, next
            )));
        }
    }
    Ok(compose_cycle(spec, cycle))
}

fn compose_cycle(spec: &CascadeSpec, cycle: &[u64]) -> Vec<u32> {
    let m_states = spec.driven.state_count();
    let mut map: Vec<u32> = (0..m_states as u32).collect();
    for &y in cycle {
        let block = wreath_view(spec, y);
        for x in map.iter_mut() {
            *x = block.apply(*x as u64) as u32;
        }
    }
    map
}

/// Cycle type of the cascade by the block-decomposition method: enumerate
/// the driving register's cycles, take each forward cycle product's cycle
/// type, blow it up by the cycle length, and multiply everything. Works for
/// any pair of periodic registers, nonlinear ones included.
pub fn ct_polya_general(spec: &CascadeSpec) -> Result<CascadeAnalysis> {
    if !spec.driving.is_periodic() {
        return Err(Error::NotPeriodic { role: "driving" });
    }
    if !spec.driven.is_periodic() {
        return Err(Error::NotPeriodic { role: "driven" });
    }
    let n_states = spec.driving.state_count();
    let m = spec.driven.n();
    let mut visited = vec![0u64; (n_states as usize).div_ceil(64)];
    let mut total = CycleType::empty();
    let mut full_cycle_ct = None;
    for start in 0..n_states {
        if visited[start as usize / 64] >> (start % 64) & 1 == 1 {
            continue;
        }
        let mut cycle = Vec::new();
        let mut y = start;
        loop {
            visited[y as usize / 64] |= 1 << (y % 64);
            cycle.push(y);
            y = spec.driving.step(y);
            if y == start {
                break;
            }
        }
        let fcp = compose_cycle(spec, &cycle);
        let fcp_ct = ct_brute(&TransitionPerm::new(m, fcp)?)?;
        if cycle.len() as u64 == n_states {
            full_cycle_ct = Some(fcp_ct.clone());
        }
        total = total.mul(&fcp_ct.blowup(cycle.len() as u64)?)?;
    }
    debug_assert_eq!(
        total.total_points().unwrap(),
        spec.state_count() as u128
    );
    let mut analysis = CascadeAnalysis::bare(total, Method::GeneralPolya);
    analysis.fcp_ct = full_cycle_ct;
    Ok(analysis)
}

fn check_cascade_inputs(driving: &FsrSpec, p: &Poly2) -> Result<usize> {
    if !driving.is_debruijn() {
        return Err(Error::NotDeBruijn);
    }
    let m = match p.deg() {
        None | Some(0) => return Err(Error::ConstantModulus),
        Some(m) => m,
    };
    if !p.coeff(0) {
        return Err(Error::InvalidInput(
            "connection polynomial must have nonzero constant term".into(),
        ));
    }
    Ok(m)
}

/// Closed-form cycle type of a De Bruijn register cascaded into the linear
/// register with connection polynomial p. No brute force anywhere: the
/// modulus is factored, the coprime factors contribute the 2^n-th iterate of
/// their multiplication-by-X cycle type, the unipotent factor goes through
/// the six-way table driven by the cycle polynomial, and the Wei-Xu product
/// of the two is blown up by 2^n.
pub fn ct_cascade_closed(driving: &FsrSpec, p: &Poly2) -> Result<CascadeAnalysis> {
    let m = check_cascade_inputs(driving, p)?;
    let n = driving.n();
    let period = 1u64 << n;
    let chi = chi_poly(driving)?;
    let factorization = factor(p)?;
    let xp1 = Poly2::x_plus_one();
    let mut e0 = 0u32;
    let mut coprime = CycleType::fixed_point();
    for (q, e) in &factorization.factors {
        if *q == xp1 {
            e0 = *e;
            continue;
        }
        let primary = ct_lambda_primary(&AffineModulus::new(q.clone(), *e)?, &Poly2::zero())?;
        coprime = coprime.weixu(&primary)?;
    }
    let gamma_plus = coprime.iterate(period)?;
    let gamma_zero = gamma_zero_ct(e0, n as u32, &chi)?;
    let gamma = gamma_zero.weixu(&gamma_plus)?;
    let cycle_type = gamma.blowup(period)?;
    debug_assert_eq!(cycle_type.total_points().unwrap(), 1u128 << (m + n));
    Ok(CascadeAnalysis {
        cycle_type,
        method: Method::ClosedForm,
        fcp_ct: Some(gamma),
        fcp_unipotent_ct: Some(gamma_zero),
        fcp_coprime_ct: Some(gamma_plus),
        chi: Some(chi),
        factorization: Some(factorization),
    })
}

/// Fast path: when the (X+1)-adic valuation of p is at most 1 and n > 1, the
/// cascade cycle type is the 2^n-blow-up of the 2^n-th iterate of the driven
/// register's own cycle type; when p is additionally squarefree (odd order)
/// the iterate is the identity and is skipped. Returns None when the
/// hypotheses fail.
pub fn ct_cascade_fast(driving: &FsrSpec, p: &Poly2) -> Result<Option<CascadeAnalysis>> {
    check_cascade_inputs(driving, p)?;
    let n = driving.n();
    if n < 2 {
        return Ok(None);
    }
    let e0 = match valuation(&Poly2::x_plus_one(), p)? {
        Valuation::Finite(v) => v,
        Valuation::Infinity => unreachable!("p is nonzero"),
    };
    if e0 > 1 {
        return Ok(None);
    }
    let period = 1u64 << n;
    let base = ct_linear_mod_p(p)?;
    let squarefree = p.gcd(&p.derivative())?.is_one();
    let gamma = if squarefree { base } else { base.iterate(period)? };
    let cycle_type = gamma.blowup(period)?;
    let mut analysis = CascadeAnalysis::bare(cycle_type, Method::FastPath);
    analysis.fcp_ct = Some(gamma);
    Ok(Some(analysis))
}

/// Maximum period of an output sequence of a cascade of an n-stage register
/// into an m-stage register: 2^min(m,n) * (2^max(m,n) - 1). The case
/// m = n = 1 is excluded (both cascades there realize the full period 4).
pub fn max_period_bound(n: usize, m: usize) -> Result<u128> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("stage counts must be positive".into()));
    }
    if n == 1 && m == 1 {
        return Err(Error::InvalidInput(
            "the bound excludes the case m = n = 1".into(),
        ));
    }
    let (lo, hi) = (n.min(m) as u32, n.max(m) as u32);
    if hi >= 127 {
        return Err(Error::LengthOverflow);
    }
    Ok((1u128 << lo) * ((1u128 << hi) - 1))
}

/// How [`nu_chi_scan`] samples the De Bruijn cycles of a given dimension.
#[derive(Debug, Clone, Copy)]
pub enum ScanMode {
    /// All cycles, available for n <= 4.
    Exhaustive,
    /// `count` cycles generated by seeded randomized cycle joining.
    Sample { count: usize, seed: u64 },
}

/// Observed (X+1)-adic valuations of the cycle polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuScanResult {
    pub n: usize,
    pub values: BTreeSet<u32>,
    /// Whether every De Bruijn cycle of this dimension was examined.
    pub exhaustive: bool,
    pub examined: usize,
}

/// Scans De Bruijn cycles of dimension n and collects the set of
/// (X+1)-adic valuations of their cycle polynomials.
pub fn nu_chi_scan(n: usize, mode: ScanMode) -> Result<NuScanResult> {
    let mut values = BTreeSet::new();
    let mut examined = 0usize;
    let exhaustive = match mode {
        ScanMode::Exhaustive => {
            for spec in all_debruijn(n)? {
                values.insert(nu_of(&spec)?);
                examined += 1;
            }
            true
        }
        ScanMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let spec = debruijn_random(n, &mut rng)?;
                values.insert(nu_of(&spec)?);
                examined += 1;
            }
            false
        }
    };
    Ok(NuScanResult {
        n,
        values,
        exhaustive,
        examined,
    })
}

fn nu_of(spec: &FsrSpec) -> Result<u32> {
    let chi = chi_poly(spec)?;
    match valuation(&Poly2::x_plus_one(), &chi)? {
        Valuation::Finite(v) => Ok(v),
        Valuation::Infinity => unreachable!("chi of a De Bruijn cycle is nonzero"),
    }
}
