//! Dense matrices over prime fields.
//!
//! Matrices over GF(2) keep each row as packed 64-bit words and eliminate
//! with word-wide XOR; every other prime uses one `u16` residue per entry.
//! The representation is chosen by the field and is not observable through
//! the public API.
//!
//! Vectors are plain `&[u32]` / `Vec<u32>` slices of residues. The
//! vectorisation convention used by [`Matrix::sylvester_operator`] stacks
//! columns: entry `(i, j)` of an `m x n` matrix sits at index `j * m + i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Storage {
    Bits { words: Vec<u64>, stride: usize },
    Residues(Vec<u16>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    storage: Storage,
}

/// Rank, nullity and pivot columns of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    pub rank: usize,
    pub nullity: usize,
    pub pivot_columns: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        let storage = if field.is_binary() {
            let stride = cols.div_ceil(WORD);
            Storage::Bits {
                words: vec![0; rows * stride],
                stride,
            }
        } else {
            Storage::Residues(vec![0; rows * cols])
        };
        Matrix {
            rows,
            cols,
            field,
            storage,
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of residues. Every entry must already be
    /// reduced modulo `p`.
    pub fn from_rows(field: Field, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= field.p() {
                    return Err(Error::EntryOutOfRange {
                        value: v as u64,
                        p: field.p(),
                    });
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from integer rows, reducing each entry modulo `p`.
    pub fn from_integer_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let reduced: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.reduce_signed(v)).collect())
            .collect();
        Self::from_rows(field, &reduced)
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn ensure_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        match &self.storage {
            Storage::Bits { words, stride } => ((words[i * stride + j / WORD] >> (j % WORD)) & 1) as u32,
            Storage::Residues(v) => v[i * self.cols + j] as u32,
        }
    }

    /// Sets entry `(i, j)` to `v mod p`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        let v = self.field.reduce(v as u64);
        match &mut self.storage {
            Storage::Bits { words, stride } => {
                let w = &mut words[i * *stride + j / WORD];
                let bit = 1u64 << (j % WORD);
                if v == 1 {
                    *w |= bit;
                } else {
                    *w &= !bit;
                }
            }
            Storage::Residues(data) => data[i * self.cols + j] = v as u16,
        }
    }

    pub fn row(&self, i: usize) -> Vec<u32> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Storage::Bits { words, .. } => words.iter().all(|&w| w == 0),
            Storage::Residues(v) => v.iter().all(|&x| x == 0),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        self.field.check_same(other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = self.field;
        Ok(Matrix::from_fn(f, self.rows, self.cols, |i, j| {
            f.add(self.get(i, j), other.get(i, j))
        }))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = self.field;
        Ok(Matrix::from_fn(f, self.rows, self.cols, |i, j| {
            f.sub(self.get(i, j), other.get(i, j))
        }))
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        let c = f.reduce(c as u64);
        Matrix::from_fn(f, self.rows, self.cols, |i, j| f.mul(c, self.get(i, j)))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.check_same(other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        match (&mut out.storage, &other.storage) {
            (Storage::Bits { words: dst, stride }, Storage::Bits { words: src, .. }) => {
                let stride = *stride;
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        if self.get(i, k) == 1 {
                            for w in 0..stride {
                                dst[i * stride + w] ^= src[k * stride + w];
                            }
                        }
                    }
                }
            }
            _ => {
                let f = self.field;
                for i in 0..self.rows {
                    for j in 0..other.cols {
                        let mut acc = 0u64;
                        for k in 0..self.cols {
                            acc += self.get(i, k) as u64 * other.get(k, j) as u64;
                            if acc >= 1 << 62 {
                                acc %= f.p() as u64;
                            }
                        }
                        out.set(i, j, f.reduce(acc));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                let acc = (0..self.cols).fold(0u64, |acc, j| {
                    (acc + self.get(i, j) as u64 * f.reduce(v[j] as u64) as u64) % f.p() as u64
                });
                acc as u32
            })
            .collect())
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i, j] * other`.
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.field.check_same(other.field)?;
        let f = self.field;
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Matrix::zeros(f, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.set(i * r2 + k, j * c2 + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `X -> AX - XB` on column-stacked `m x n` matrices `X`,
    /// i.e. `I_n (x) A - B^T (x) I_m`.
    pub fn sylvester_operator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.field.check_same(b.field)?;
        a.ensure_square()?;
        b.ensure_square()?;
        let (m, n) = (a.rows, b.rows);
        let left = Matrix::identity(a.field, n).kronecker(a)?;
        let right = b.transpose().kronecker(&Matrix::identity(a.field, m))?;
        left.sub(&right)
    }

    /// Reduced row-echelon form together with its rank profile.
    ///
    /// Pivots are chosen deterministically: columns are scanned left to
    /// right and the first row (top to bottom) with a nonzero entry in the
    /// current column becomes the pivot row.
    pub fn rref(&self) -> (Matrix, RankProfile) {
        let mut m = self.clone();
        let pivots = m.reduce_in_place();
        let rank = pivots.len();
        let profile = RankProfile {
            rank,
            nullity: self.cols - rank,
            pivot_columns: pivots,
        };
        (m, profile)
    }

    pub fn rank_profile(&self) -> RankProfile {
        self.rref().1
    }

    pub fn rank(&self) -> usize {
        self.rank_profile().rank
    }

    pub fn nullity(&self) -> usize {
        self.rank_profile().nullity
    }

    fn reduce_in_place(&mut self) -> Vec<usize> {
        let (rows, cols, field) = (self.rows, self.cols, self.field);
        match &mut self.storage {
            Storage::Bits { words, stride } => rref_bits(words, *stride, rows, cols),
            Storage::Residues(data) => rref_residues(data, rows, cols, field),
        }
    }

    /// Solves `M x = b`. Returns `None` when `b` is outside the column space;
    /// otherwise the solution with every free variable set to zero.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, f.reduce(b[i] as u64));
        }
        let pivots = aug.reduce_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// Basis of the null space, one vector per free column (in increasing
    /// column order), with that free variable set to 1 and the others to 0.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let (r, profile) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &profile.pivot_columns {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (row, &pc) in profile.pivot_columns.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }
}

fn rref_bits(words: &mut [u64], stride: usize, rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut pivot_row = vec![0u64; stride];
    for c in 0..cols {
        if r == rows {
            break;
        }
        let w = c / WORD;
        let bit = 1u64 << (c % WORD);
        let Some(found) = (r..rows).find(|&i| words[i * stride + w] & bit != 0) else {
            continue;
        };
        if found != r {
            for k in w..stride {
                words.swap(found * stride + k, r * stride + k);
            }
        }
        // Rows at or below r are zero left of column c, so only words from w on matter.
        pivot_row[w..].copy_from_slice(&words[r * stride + w..(r + 1) * stride]);
        for i in 0..rows {
            if i != r && words[i * stride + w] & bit != 0 {
                let row = &mut words[i * stride + w..(i + 1) * stride];
                for (dst, src) in row.iter_mut().zip(&pivot_row[w..]) {
                    *dst ^= src;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rref_residues(data: &mut [u16], rows: usize, cols: usize, f: Field) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if found != r {
            for k in c..cols {
                data.swap(found * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(data[r * cols + c] as u32);
        for k in c..cols {
            data[r * cols + k] = f.mul(data[r * cols + k] as u32, inv) as u16;
        }
        for i in 0..rows {
            let factor = data[i * cols + c] as u32;
            if i == r || factor == 0 {
                continue;
            }
            for k in c..cols {
                let sub = f.mul(factor, data[r * cols + k] as u32);
                data[i * cols + k] = f.sub(data[i * cols + k] as u32, sub) as u16;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}; {}x{}] {:?}", self.field, self.rows, self.cols, self.to_rows())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
