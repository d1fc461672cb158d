//! Dense matrices over a scalar backend and the graded degree blocks.
//!
//! A degree-`d` block at row level `p` and column level `q = p - d` stores
//! the coefficients of `sum M[mu,nu] s_mu s_nu^*` over all words of lengths
//! `p` and `q`. Level raising is the simultaneous suffix expansion
//! `s_mu s_nu^* = sum_a s_{mu a} s_{nu a}^*`, i.e. a Kronecker product with
//! the 2x2 identity on the suffix-fastest index layout.

use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::{Error, Result};
use crate::scalar::{Backend, CRat, Entry, Scalar, C64};

static LEVEL_CAP: AtomicU32 = AtomicU32::new(DEFAULT_LEVEL_CAP);

pub const DEFAULT_LEVEL_CAP: u32 = 16;

/// Configured maximum word level (per matrix side). Exceeding it is an
/// explicit resource error, never silent truncation.
pub fn level_cap() -> u32 {
    LEVEL_CAP.load(Ordering::Relaxed)
}

pub fn set_level_cap(cap: u32) {
    LEVEL_CAP.store(cap, Ordering::Relaxed);
}

pub fn check_level(level: u32) -> Result<()> {
    let cap = level_cap();
    if level > cap {
        Err(Error::LevelCapExceeded { level, cap })
    } else {
        Ok(())
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Entry> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).conj();
            }
        }
        out
    }

    /// Plain transpose (no conjugation); used to pick the cheaper matmul side.
    fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        out
    }

    /// `self (x) I_{2^k}` on the suffix-fastest layout: the simultaneous
    /// suffix expansion by `k` levels.
    pub fn kron_raise(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let s = 1usize << k;
        let mut out = Self::zeros(self.rows * s, self.cols * s);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if x.is_zero() {
                    continue;
                }
                for t in 0..s {
                    out.data[(r * s + t) * (self.cols * s) + c * s + t] = x.clone();
                }
            }
        }
        out
    }

    /// Gustavson-style product skipping zero entries of `self`; cost is
    /// `nnz(self) * cols(other)`.
    fn mul_axpy(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let out_row = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b_row = &other.data[k * oc..(k + 1) * oc];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    if !b.is_zero() {
                        *o = o.add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Matrix product, choosing the orientation whose sparse side drives the
    /// loop. `C = (B^t A^t)^t` costs `nnz(B) * rows(A)` instead of
    /// `nnz(A) * cols(B)`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "inner dimension mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let nnz_a = self.nnz();
        let nnz_b = other.nnz();
        let cost_direct = nnz_a.saturating_mul(other.cols);
        let cost_flipped = nnz_b.saturating_mul(self.rows);
        // The transposes themselves cost two dense passes; only flip when it
        // actually wins by a margin.
        if cost_flipped.saturating_mul(2) < cost_direct {
            other.transpose().mul_axpy(&self.transpose()).transpose()
        } else {
            self.mul_axpy(other)
        }
    }

    /// True when the matrix equals `M' (x) I_2`, i.e. one suffix level can be
    /// stripped from both sides.
    fn is_suffix_expansion(&self) -> bool {
        if self.rows < 2 || self.cols < 2 || self.rows % 2 != 0 || self.cols % 2 != 0 {
            return false;
        }
        for r in 0..self.rows / 2 {
            for c in 0..self.cols / 2 {
                if !self.get(2 * r, 2 * c + 1).is_zero() || !self.get(2 * r + 1, 2 * c).is_zero() {
                    return false;
                }
                if self.get(2 * r, 2 * c) != self.get(2 * r + 1, 2 * c + 1) {
                    return false;
                }
            }
        }
        true
    }

    fn strip_suffix_level(&self) -> Self {
        let mut out = Self::zeros(self.rows / 2, self.cols / 2);
        for r in 0..out.rows {
            for c in 0..out.cols {
                out.data[r * out.cols + c] = self.get(2 * r, 2 * c).clone();
            }
        }
        out
    }
}

/// Backend-tagged block payload.
#[derive(Debug, Clone, PartialEq)]
pub enum BlockData {
    Exact(Mat<CRat>),
    F64(Mat<C64>),
}

impl BlockData {
    pub fn backend(&self) -> Backend {
        match self {
            BlockData::Exact(_) => Backend::Exact,
            BlockData::F64(_) => Backend::F64,
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            BlockData::Exact(m) => m.rows(),
            BlockData::F64(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            BlockData::Exact(m) => m.cols(),
            BlockData::F64(m) => m.cols(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            BlockData::Exact(m) => m.is_zero(),
            BlockData::F64(m) => m.is_zero(),
        }
    }
}

macro_rules! on_pair {
    ($a:expr, $b:expr, $ma:ident, $mb:ident, $body:expr) => {
        match ($a, $b) {
            (BlockData::Exact($ma), BlockData::Exact($mb)) => BlockData::Exact($body),
            (BlockData::F64($ma), BlockData::F64($mb)) => BlockData::F64($body),
            _ => unreachable!("mixed backends must be rejected before block ops"),
        }
    };
}

macro_rules! on_one {
    ($a:expr, $m:ident, $body:expr) => {
        match $a {
            BlockData::Exact($m) => BlockData::Exact($body),
            BlockData::F64($m) => BlockData::F64($body),
        }
    };
}

/// A single graded block: degree `d`, levels `p >= max(d,0)` (rows) and
/// `q = p - d >= 0` (columns), with a `2^p x 2^q` coefficient matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeBlock {
    degree: i64,
    row_level: u32,
    data: BlockData,
}

impl DegreeBlock {
    pub fn new(degree: i64, row_level: u32, data: BlockData) -> Result<Self> {
        let col_level = row_level as i64 - degree;
        if col_level < 0 || (row_level as i64) < degree.max(0) {
            return Err(Error::BadParameter(format!(
                "row level {row_level} incompatible with degree {degree}"
            )));
        }
        check_level(row_level)?;
        check_level(col_level as u32)?;
        if data.rows() != 1usize << row_level || data.cols() != 1usize << (col_level as u32) {
            return Err(Error::BadParameter(format!(
                "block shape {}x{} does not match levels ({}, {})",
                data.rows(),
                data.cols(),
                row_level,
                col_level
            )));
        }
        Ok(DegreeBlock {
            degree,
            row_level,
            data,
        })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn row_level(&self) -> u32 {
        self.row_level
    }

    pub fn col_level(&self) -> u32 {
        (self.row_level as i64 - self.degree) as u32
    }

    pub fn data(&self) -> &BlockData {
        &self.data
    }

    pub fn backend(&self) -> Backend {
        self.data.backend()
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_zero()
    }

    /// Raise both levels by `k` (suffix expansion).
    pub fn raised(&self, k: u32) -> Result<Self> {
        check_level(self.row_level + k)?;
        check_level(self.col_level() + k)?;
        let data = on_one!(&self.data, m, m.kron_raise(k));
        Ok(DegreeBlock {
            degree: self.degree,
            row_level: self.row_level + k,
            data,
        })
    }

    /// Strip every removable suffix level; canonical minimal-level form.
    pub fn reduced(mut self) -> Self {
        loop {
            if self.row_level == 0 || self.col_level() == 0 {
                return self;
            }
            let reducible = match &self.data {
                BlockData::Exact(m) => m.is_suffix_expansion(),
                BlockData::F64(m) => m.is_suffix_expansion(),
            };
            if !reducible {
                return self;
            }
            self.data = on_one!(&self.data, m, m.strip_suffix_level());
            self.row_level -= 1;
        }
    }

    /// Sum after raising both blocks to a common level.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.backend() != other.backend() {
            return Err(Error::BackendMismatch);
        }
        assert_eq!(self.degree, other.degree, "degree mismatch in block add");
        let level = self.row_level.max(other.row_level);
        let a = self.raised(level - self.row_level)?;
        let b = other.raised(level - other.row_level)?;
        let data = on_pair!(&a.data, &b.data, ma, mb, ma.add(mb));
        Ok(DegreeBlock {
            degree: self.degree,
            row_level: level,
            data,
        })
    }

    /// Product after matching `self`'s column level with `other`'s row level.
    /// Degrees add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.backend() != other.backend() {
            return Err(Error::BackendMismatch);
        }
        let inner = self.col_level().max(other.row_level);
        let a = self.raised(inner - self.col_level())?;
        let b = other.raised(inner - other.row_level)?;
        let data = on_pair!(&a.data, &b.data, ma, mb, ma.matmul(mb));
        DegreeBlock::new(self.degree + other.degree, a.row_level, data)
    }

    pub fn neg(&self) -> Self {
        DegreeBlock {
            degree: self.degree,
            row_level: self.row_level,
            data: on_one!(&self.data, m, m.neg()),
        }
    }

    pub fn adjoint(&self) -> Self {
        DegreeBlock {
            degree: -self.degree,
            row_level: self.col_level(),
            data: on_one!(&self.data, m, m.adjoint()),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        let data = match (&self.data, c) {
            (BlockData::Exact(m), Scalar::Exact(z)) => BlockData::Exact(m.scale(z)),
            (BlockData::F64(m), Scalar::F64(z)) => BlockData::F64(m.scale(z)),
            _ => return Err(Error::BackendMismatch),
        };
        Ok(DegreeBlock {
            degree: self.degree,
            row_level: self.row_level,
            data,
        })
    }

    pub fn scale_rational(&self, r: &num::BigRational) -> Self {
        DegreeBlock {
            degree: self.degree,
            row_level: self.row_level,
            data: on_one!(&self.data, m, m.map(|x| x.scale_rational(r))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::complex::Complex;

    fn c(x: f64) -> C64 {
        Complex::new(x, 0.0)
    }

    #[test]
    fn kron_raise_layout() {
        // [[a]] raised one level -> diag(a, a)
        let m = Mat::from_rows(vec![vec![c(3.0)]]);
        let r = m.kron_raise(1);
        assert_eq!(r.rows(), 2);
        assert_eq!(*r.get(0, 0), c(3.0));
        assert_eq!(*r.get(1, 1), c(3.0));
        assert_eq!(*r.get(0, 1), c(0.0));
    }

    #[test]
    fn suffix_expansion_roundtrip() {
        let m = Mat::from_rows(vec![vec![c(1.0), c(2.0)], vec![c(0.0), c(-1.0)]]);
        let raised = m.kron_raise(2);
        assert!(raised.is_suffix_expansion());
        assert_eq!(raised.strip_suffix_level().strip_suffix_level(), m);
        assert!(!m.is_suffix_expansion());
    }

    #[test]
    fn matmul_matches_naive() {
        let a = Mat::from_rows(vec![
            vec![c(1.0), c(0.0), c(2.0)],
            vec![c(0.0), c(3.0), c(0.0)],
        ]);
        let b = Mat::from_rows(vec![
            vec![c(1.0), c(1.0)],
            vec![c(0.0), c(2.0)],
            vec![c(5.0), c(0.0)],
        ]);
        let p = a.matmul(&b);
        assert_eq!(*p.get(0, 0), c(11.0));
        assert_eq!(*p.get(0, 1), c(1.0));
        assert_eq!(*p.get(1, 0), c(0.0));
        assert_eq!(*p.get(1, 1), c(6.0));
    }

    #[test]
    fn level_cap_is_enforced() {
        let m = Mat::<C64>::zeros(2, 2);
        let blk = DegreeBlock::new(0, 1, BlockData::F64(m)).unwrap();
        let err = blk.raised(level_cap()).unwrap_err();
        assert!(matches!(err, Error::LevelCapExceeded { .. }));
    }
}
