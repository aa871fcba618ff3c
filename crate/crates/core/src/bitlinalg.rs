//! Dense linear algebra over F2, used as an independent oracle for the
//! block-structure lemmas: companion matrices, matrix powers, kernels,
//! minimal polynomials and primary block profiles.

use crate::error::{Error, Result};
use crate::gf2poly::Poly2;

/// Matrices are oracle-sized; elimination is plain Gauss-Jordan.
pub const DIM_CAP: usize = 256;

/// A row-major bit matrix over F2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Result<Self> {
        let dim = rows.max(cols);
        if dim > DIM_CAP {
            return Err(Error::MatrixTooLarge { dim, cap: DIM_CAP });
        }
        let words_per_row = cols.div_ceil(64).max(1);
        Ok(BitMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = BitMatrix::zero(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words_per_row + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    fn xor_row_into(&self, i: usize, target: &mut [u64]) {
        for (t, s) in target.iter_mut().zip(self.row(i)) {
            *t ^= s;
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j)))
    }
}

/// Companion matrix of a monic polynomial of degree >= 1: ones on the
/// subdiagonal, the low coefficients down the last column.
pub fn companion(p: &Poly2) -> Result<BitMatrix> {
    let n = match p.deg() {
        None | Some(0) => return Err(Error::ConstantModulus),
        Some(n) => n,
    };
    let mut m = BitMatrix::zero(n, n)?;
    for i in 0..n - 1 {
        m.set(i + 1, i, true);
    }
    for i in 0..n {
        if p.coeff(i) {
            m.set(i, n - 1, true);
        }
    }
    Ok(m)
}

pub fn mat_mul(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(a.rows, a.cols, b.rows, b.cols));
    }
    let mut c = BitMatrix::zero(a.rows, b.cols)?;
    for i in 0..a.rows {
        let (head, tail) = c.data.split_at_mut((i + 1) * c.words_per_row);
        let _ = tail;
        let target = &mut head[i * c.words_per_row..];
        for k in 0..a.cols {
            if a.get(i, k) {
                b.xor_row_into(k, target);
            }
        }
    }
    Ok(c)
}

pub fn mat_pow(a: &BitMatrix, k: u128) -> Result<BitMatrix> {
    if a.rows != a.cols {
        return Err(Error::NotSquare(a.rows, a.cols));
    }
    let mut result = BitMatrix::identity(a.rows)?;
    let mut base = a.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = mat_mul(&result, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = mat_mul(&base, &base)?;
        }
    }
    Ok(result)
}

/// A packed bit vector of fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zero(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64).max(1)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVector::zero(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }
}

pub fn mat_vec(a: &BitMatrix, v: &BitVector) -> Result<BitVector> {
    if a.cols != v.len {
        return Err(Error::DimensionMismatch(a.rows, a.cols, v.len, 1));
    }
    let mut out = BitVector::zero(a.rows);
    for i in 0..a.rows {
        let parity = a
            .row(i)
            .iter()
            .zip(&v.words)
            .fold(0u32, |acc, (r, w)| acc ^ (r & w).count_ones());
        out.set(i, parity & 1 == 1);
    }
    Ok(out)
}

/// Rank over F2 by Gaussian elimination on a copy.
fn rank(a: &BitMatrix) -> usize {
    let mut rows: Vec<Vec<u64>> = (0..a.rows).map(|i| a.row(i).to_vec()).collect();
    let mut rank = 0;
    for col in 0..a.cols {
        let word = col / 64;
        let mask = 1u64 << (col % 64);
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & mask != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[word] & mask != 0 {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Dimension of the kernel of a square matrix.
pub fn kernel_dim(a: &BitMatrix) -> Result<usize> {
    if a.rows != a.cols {
        return Err(Error::NotSquare(a.rows, a.cols));
    }
    Ok(a.cols - rank(a))
}

/// Evaluates p at a square matrix: sum of p_i * A^i over F2.
pub fn eval_poly_at_matrix(p: &Poly2, a: &BitMatrix) -> Result<BitMatrix> {
    if a.rows != a.cols {
        return Err(Error::NotSquare(a.rows, a.cols));
    }
    // Horner from the top coefficient down.
    let mut acc = BitMatrix::zero(a.rows, a.cols)?;
    let Some(d) = p.deg() else {
        return Ok(acc);
    };
    for i in (0..=d).rev() {
        acc = mat_mul(&acc, a)?;
        if p.coeff(i) {
            for j in 0..a.rows {
                let v = acc.get(j, j);
                acc.set(j, j, !v);
            }
        }
    }
    Ok(acc)
}

/// Minimal monic polynomial that annihilates the Krylov sequence of `v`.
///
/// Maintains a pivot-indexed basis of reduced Krylov vectors, each tagged
/// with the exact polynomial combination that produced it from `v`.
fn vector_annihilator(a: &BitMatrix, v: &BitVector) -> Result<Poly2> {
    let n = a.rows;
    let mut by_pivot: Vec<Option<(BitVector, Poly2)>> = vec![None; n];
    let mut cur = v.clone(); // the true Krylov vector A^k v
    let mut k = 0usize;
    loop {
        let mut w = cur.clone();
        let mut wp = Poly2::monomial(k);
        while let Some(pivot) = (0..n).find(|&i| w.get(i)) {
            let Some((b, bp)) = &by_pivot[pivot] else { break };
            for (x, y) in w.words.iter_mut().zip(&b.words) {
                *x ^= y;
            }
            wp = wp.add(bp);
        }
        if w.is_zero() {
            return Ok(wp);
        }
        let pivot = (0..n).find(|&i| w.get(i)).unwrap();
        by_pivot[pivot] = Some((w, wp));
        if k > n {
            return Err(Error::InvalidInput(
                "annihilator search exceeded the space dimension".into(),
            ));
        }
        cur = mat_vec(a, &cur)?;
        k += 1;
    }
}

/// Minimal polynomial of a square matrix: the lcm of the annihilators of the
/// standard basis vectors.
pub fn min_poly(a: &BitMatrix) -> Result<Poly2> {
    if a.rows != a.cols {
        return Err(Error::NotSquare(a.rows, a.cols));
    }
    if a.rows == 0 {
        return Ok(Poly2::one());
    }
    let mut m = Poly2::one();
    for i in 0..a.rows {
        let ann = vector_annihilator(a, &BitVector::unit(a.rows, i))?;
        let g = m.gcd(&ann)?;
        m = m.mul(&ann).divrem(&g)?.0;
        if m.deg() == Some(a.rows) {
            break;
        }
    }
    Ok(m)
}

/// Number of primary rational canonical blocks Comp(q^j) of `a` for each
/// exponent j, recovered from kernel-dimension differences of q(A)^j.
/// Returns (exponent, block count) pairs, largest exponent first.
pub fn primary_block_profile(a: &BitMatrix, q: &Poly2) -> Result<Vec<(u32, usize)>> {
    if a.rows != a.cols {
        return Err(Error::NotSquare(a.rows, a.cols));
    }
    let dq = match q.deg() {
        None | Some(0) => return Err(Error::NotFactorable),
        Some(d) => d,
    };
    let n = eval_poly_at_matrix(q, a)?;
    // blocks_ge[j] = number of blocks with exponent >= j+1.
    let mut blocks_ge: Vec<usize> = Vec::new();
    let mut npow = n.clone();
    let mut prev_kernel = 0usize;
    loop {
        let k = kernel_dim(&npow)?;
        let diff = k - prev_kernel;
        if diff == 0 {
            break;
        }
        if diff % dq != 0 {
            return Err(Error::InvalidInput(
                "kernel growth is not a multiple of deg q; q is not irreducible here".into(),
            ));
        }
        blocks_ge.push(diff / dq);
        prev_kernel = k;
        if blocks_ge.len() > a.rows {
            break;
        }
        npow = mat_mul(&npow, &n)?;
    }
    let mut out = Vec::new();
    for j in (0..blocks_ge.len()).rev() {
        let above = if j + 1 < blocks_ge.len() { blocks_ge[j + 1] } else { 0 };
        let exact = blocks_ge[j] - above;
        if exact > 0 {
            out.push((j as u32 + 1, exact));
        }
    }
    Ok(out)
}
