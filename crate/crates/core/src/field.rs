//! Dense matrices over prime fields GF(p).
//!
//! Every computation in the crate bottoms out here. Arithmetic is exact and
//! all canonical forms are deterministic: row reduction always picks the
//! lowest-index pivot, so kernels, images and complements come out the same
//! bit for bit on every run.
//!
//! GF(2) matrices are row-reduced and multiplied on bit-packed rows; the
//! small odd primes 3, 5 and 7 get monomorphized reduction so the compiler can
//! strength-reduce the modulus. Everything else goes through a `u64` path.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{dim_err, Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let m = p as u64;
    let mut acc = 1u64 % m;
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

/// Multiplicative inverse of a nonzero residue.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Rows in echelon form, grown one vector at a time; for membership tests
/// and greedy independent subsets.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    p: u32,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub(crate) fn new(p: u32) -> Self {
        Echelon { p, rows: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the rows so far.
    pub(crate) fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p as u64;
        let mut w = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = w[*pivot] as u64;
            if c != 0 {
                let f = p - c;
                for (x, &r) in w.iter_mut().zip(row).skip(*pivot) {
                    if r != 0 {
                        *x = ((*x as u64 + f * r as u64) % p) as u32;
                    }
                }
            }
        }
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pivot], self.p) as u64;
        for x in w.iter_mut().skip(pivot) {
            *x = ((*x as u64 * inv) % p) as u32;
        }
        self.rows.push((pivot, w));
        true
    }
}

/// Reduce a signed integer into `0..p`.
pub fn residue(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

trait Reducer: Copy {
    fn p(self) -> u32;
    /// `(a + f * b) mod p` for residues `a, f, b`.
    fn mul_add(self, a: u32, f: u32, b: u32) -> u32;
}

#[derive(Clone, Copy)]
struct Const<const P: u32>;

impl<const P: u32> Reducer for Const<P> {
    #[inline(always)]
    fn p(self) -> u32 {
        P
    }
    #[inline(always)]
    fn mul_add(self, a: u32, f: u32, b: u32) -> u32 {
        (a + f * b) % P
    }
}

#[derive(Clone, Copy)]
struct Dyn(u32);

impl Reducer for Dyn {
    #[inline(always)]
    fn p(self) -> u32 {
        self.0
    }
    #[inline(always)]
    fn mul_add(self, a: u32, f: u32, b: u32) -> u32 {
        ((a as u64 + f as u64 * b as u64) % self.0 as u64) as u32
    }
}

macro_rules! dispatch {
    ($p:expr, $f:ident ( $($arg:expr),* )) => {
        match $p {
            3 => $f(Const::<3>, $($arg),*),
            5 => $f(Const::<5>, $($arg),*),
            7 => $f(Const::<7>, $($arg),*),
            p => $f(Dyn(p), $($arg),*),
        }
    };
}

/// A dense `rows × cols` matrix over GF(p), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

/// Outcome of solving `A X = B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// `particular` satisfies `A X = B`; the columns of `kernel` span `ker A`.
    Consistent {
        particular: Matrix,
        kernel: Matrix,
    },
    Inconsistent,
}

impl Solution {
    pub fn particular(&self) -> Option<&Matrix> {
        match self {
            Solution::Consistent { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }

    pub fn into_particular(self) -> Option<Matrix> {
        match self {
            Solution::Consistent { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }
}

/// `P = {(a, b) : f(a) = g(b)}` with its two projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    /// Columns form a basis of `P` inside `A ⊕ B`.
    pub basis: Matrix,
    pub proj_a: Matrix,
    pub proj_b: Matrix,
}

impl Matrix {
    pub fn new(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if data.len() != rows * cols {
            return dim_err(format!("{} entries supplied for a {rows}x{cols} matrix", data.len()));
        }
        if let Some(bad) = data.iter().find(|&&e| e >= p) {
            return Err(Error::DimensionMismatch(format!("entry {bad} is not a residue mod {p}")));
        }
        Ok(Matrix { p, rows, cols, data })
    }

    /// Build from nested rows of integers, reducing each entry mod `p`.
    /// A zero-row input yields a `0 × cols` matrix only through [`Matrix::zeros`].
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return dim_err(format!("row {i} has {} entries, expected {cols}", r.len()));
            }
            data.extend(r.iter().map(|&x| residue(x, p)));
        }
        Ok(Matrix { p, rows: rows.len(), cols, data })
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        assert!(is_prime(p), "modulus {p} is not prime");
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Column vector.
    pub fn column_vector(p: u32, entries: &[u32]) -> Self {
        let mut m = Self::zeros(p, entries.len(), 1);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i] = e % p;
        }
        m
    }

    /// Unit column vector `e_i` of length `n`.
    pub fn unit(p: u32, n: usize, i: usize) -> Self {
        let mut m = Self::zeros(p, n, 1);
        m.data[i] = 1;
        m
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    fn check_same(&self, other: &Matrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same(other)?;
        if self.shape() != other.shape() {
            return dim_err(format!("add {:?} + {:?}", self.shape(), other.shape()));
        }
        let p = self.p;
        let data =
            self.data.iter().zip(&other.data).map(|(&a, &b)| ((a as u64 + b as u64) % p as u64) as u32).collect();
        Ok(Matrix { p, rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let p = self.p as u64;
        let c = c as u64 % p;
        Matrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| (a as u64 * c % p) as u32).collect(),
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return dim_err(format!("multiply {:?} * {:?}", self.shape(), other.shape()));
        }
        if self.p == 2 {
            return Ok(mul_gf2(self, other));
        }
        Ok(dispatch!(self.p, mul_generic(self, other)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Kronecker product; the row and column index of `self` is the major one.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "modulus mismatch in kron");
        let p = self.p as u64;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(self.p, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j) as u64;
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    let row = (i * other.rows + k) * c + j * other.cols;
                    for l in 0..other.cols {
                        out.data[row + l] = (a * other.get(k, l) as u64 % p) as u32;
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation. All blocks must share the row count.
    pub fn hstack(p: u32, blocks: &[&Matrix]) -> Result<Matrix> {
        let rows = match blocks.first() {
            Some(b) => b.rows,
            None => return Ok(Matrix::zeros(p, 0, 0)),
        };
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let mut offset = 0;
        for b in blocks {
            if b.p != p {
                return Err(Error::ModulusMismatch(p, b.p));
            }
            if b.rows != rows {
                return dim_err(format!("hstack rows {} vs {}", b.rows, rows));
            }
            for i in 0..rows {
                out.data[i * cols + offset..i * cols + offset + b.cols].copy_from_slice(b.row(i));
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation. All blocks must share the column count.
    pub fn vstack(p: u32, blocks: &[&Matrix]) -> Result<Matrix> {
        let cols = match blocks.first() {
            Some(b) => b.cols,
            None => return Ok(Matrix::zeros(p, 0, 0)),
        };
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.p != p {
                return Err(Error::ModulusMismatch(p, b.p));
            }
            if b.cols != cols {
                return dim_err(format!("vstack cols {} vs {}", b.cols, cols));
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(Matrix { p, rows, cols, data })
    }

    pub fn block_diag(p: u32, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Overwrite the block whose top-left corner is `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            let start = (r0 + i) * self.cols + c0;
            self.data[start..start + block.cols].copy_from_slice(block.row(i));
        }
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut out = Matrix::zeros(self.p, r1 - r0, c1 - c0);
        for i in r0..r1 {
            let src = &self.data[i * self.cols + c0..i * self.cols + c1];
            out.data[(i - r0) * (c1 - c0)..(i - r0 + 1) * (c1 - c0)].copy_from_slice(src);
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.select_columns(&[j])
    }

    /// Row-major flattening as a `1 × (rows·cols)` row vector.
    pub fn flatten(&self) -> Matrix {
        Matrix { p: self.p, rows: 1, cols: self.data.len(), data: self.data.clone() }
    }

    /// Inverse of [`Matrix::flatten`].
    pub fn reshape(&self, rows: usize, cols: usize) -> Matrix {
        assert_eq!(rows * cols, self.data.len(), "reshape size mismatch");
        Matrix { p: self.p, rows, cols, data: self.data.clone() }
    }

    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let pivots = if self.p == 2 { rref_gf2(&mut reduced) } else { dispatch!(self.p, rref_generic(&mut reduced)) };
        Rref { reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns span `ker(self)`; one column per free variable of the rref,
    /// with that free variable set to one.
    pub fn kernel_basis(&self) -> Matrix {
        let rref = self.rref();
        kernel_from_rref(&rref, self.cols)
    }

    /// Solve `self · X = b` for a matrix right-hand side.
    pub fn solve(&self, b: &Matrix) -> Result<Solution> {
        self.check_same(b)?;
        if self.rows != b.rows {
            return dim_err(format!("solve rows {} vs {}", self.rows, b.rows));
        }
        let n = self.cols;
        let aug = Matrix::hstack(self.p, &[self, b])?;
        let rref = aug.rref();
        if rref.pivots.iter().any(|&c| c >= n) {
            return Ok(Solution::Inconsistent);
        }
        let mut particular = Matrix::zeros(self.p, n, b.cols);
        for (i, &c) in rref.pivots.iter().enumerate() {
            for k in 0..b.cols {
                particular.data[c * b.cols + k] = rref.reduced.get(i, n + k);
            }
        }
        // The left block of rref([A|b]) is rref(A) whenever the system is consistent.
        let left = Rref { reduced: rref.reduced.submatrix(0, rref.reduced.rows, 0, n), pivots: rref.pivots.clone() };
        let kernel = kernel_from_rref(&left, n);
        Ok(Solution::Consistent { particular, kernel })
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn column_space(&self) -> Matrix {
        let rref = self.rref();
        self.select_columns(&rref.pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.p, &[self, &Matrix::identity(self.p, n)]).ok()?;
        let rref = aug.rref();
        if rref.pivots.len() < n || rref.pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(rref.reduced.submatrix(0, n, n, 2 * n))
    }

    /// Standard basis vectors completing the column space of `self` to the
    /// whole ambient space, lowest indices first. Returned as columns.
    pub fn complement_basis(&self) -> Matrix {
        let n = self.rows;
        let aug = Matrix::hstack(self.p, &[self, &Matrix::identity(self.p, n)]).expect("shapes agree by construction");
        let pivots = aug.rref().pivots;
        let extra: Vec<usize> = pivots.iter().filter(|&&c| c >= self.cols).map(|&c| c - self.cols).collect();
        Matrix::identity(self.p, n).select_columns(&extra)
    }

    /// Coordinates of the columns of `v` in terms of the (independent)
    /// columns of `basis`, or `None` if some column lies outside the span.
    pub fn coordinates(basis: &Matrix, v: &Matrix) -> Result<Option<Matrix>> {
        Ok(basis.solve(v)?.into_particular())
    }

    /// Whether every column of `self` lies in the column space of `other`.
    pub fn columns_in_span_of(&self, other: &Matrix) -> Result<bool> {
        Ok(matches!(other.solve(self)?, Solution::Consistent { .. }))
    }

    pub fn pullback(f: &Matrix, g: &Matrix) -> Result<Pullback> {
        f.check_same(g)?;
        if f.rows != g.rows {
            return dim_err(format!("pullback legs land in dimensions {} and {}", f.rows, g.rows));
        }
        let block = Matrix::hstack(f.p, &[f, &-g])?;
        let basis = block.kernel_basis();
        let proj_a = basis.submatrix(0, f.cols, 0, basis.cols);
        let proj_b = basis.submatrix(f.cols, f.cols + g.cols, 0, basis.cols);
        Ok(Pullback { basis, proj_a, proj_b })
    }
}

fn kernel_from_rref(rref: &Rref, n: usize) -> Matrix {
    let p = rref.reduced.p;
    let mut is_pivot = vec![false; n];
    for &c in &rref.pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut k = Matrix::zeros(p, n, free.len());
    for (col, &j) in free.iter().enumerate() {
        k.data[j * free.len() + col] = 1;
        for (i, &c) in rref.pivots.iter().enumerate() {
            let e = rref.reduced.get(i, j);
            if e != 0 {
                k.data[c * free.len() + col] = p - e;
            }
        }
    }
    k
}

fn rref_generic<R: Reducer>(red: R, m: &mut Matrix) -> Vec<usize> {
    let p = red.p();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in c..cols {
                m.data.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(m.data[r * cols + c], p);
        if inv != 1 {
            for j in c..cols {
                let v = m.data[r * cols + j];
                m.data[r * cols + j] = red.mul_add(0, inv, v);
            }
        }
        let (before, rest) = m.data.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let pivot_tail = &pivot_row[c..];
        for row in before.chunks_exact_mut(cols).chain(after.chunks_exact_mut(cols)) {
            let e = row[c];
            if e == 0 {
                continue;
            }
            let f = p - e;
            for (a, &b) in row[c..].iter_mut().zip(pivot_tail) {
                *a = red.mul_add(*a, f, b);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn pack_gf2(m: &Matrix) -> (Vec<u64>, usize) {
    let words = m.cols.div_ceil(64).max(1);
    let mut bits = vec![0u64; m.rows * words];
    for i in 0..m.rows {
        for j in 0..m.cols {
            if m.data[i * m.cols + j] & 1 == 1 {
                bits[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    (bits, words)
}

fn unpack_gf2(bits: &[u64], words: usize, m: &mut Matrix) {
    for i in 0..m.rows {
        for j in 0..m.cols {
            m.data[i * m.cols + j] = ((bits[i * words + j / 64] >> (j % 64)) & 1) as u32;
        }
    }
}

fn rref_gf2(m: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let (mut bits, words) = pack_gf2(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(piv) = (r..rows).find(|&i| bits[i * words + w] & b != 0) else {
            continue;
        };
        if piv != r {
            for k in 0..words {
                bits.swap(piv * words + k, r * words + k);
            }
        }
        let pivot_row: Vec<u64> = bits[r * words..(r + 1) * words].to_vec();
        for i in 0..rows {
            if i != r && bits[i * words + w] & b != 0 {
                for k in w..words {
                    bits[i * words + k] ^= pivot_row[k];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    unpack_gf2(&bits, words, m);
    pivots
}

fn mul_gf2(a: &Matrix, b: &Matrix) -> Matrix {
    let (bbits, words) = pack_gf2(b);
    let mut out = vec![0u64; a.rows * words];
    for i in 0..a.rows {
        let acc = &mut out[i * words..(i + 1) * words];
        for k in 0..a.cols {
            if a.data[i * a.cols + k] & 1 == 1 {
                for (x, y) in acc.iter_mut().zip(&bbits[k * words..(k + 1) * words]) {
                    *x ^= y;
                }
            }
        }
    }
    let mut m = Matrix::zeros(2, a.rows, b.cols);
    unpack_gf2(&out, words, &mut m);
    m
}

fn mul_generic<R: Reducer>(red: R, a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(red.p(), a.rows, b.cols);
    let n = b.cols;
    for i in 0..a.rows {
        let acc = &mut out.data[i * n..(i + 1) * n];
        for k in 0..a.cols {
            let f = a.data[i * a.cols + k];
            if f == 0 {
                continue;
            }
            for (x, &y) in acc.iter_mut().zip(&b.data[k * n..(k + 1) * n]) {
                *x = red.mul_add(*x, f, y);
            }
        }
    }
    out
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        let p = self.p;
        Matrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<GF({})>{}x{} {:?}", self.p, self.rows, self.cols, self.to_rows())
    }
}
