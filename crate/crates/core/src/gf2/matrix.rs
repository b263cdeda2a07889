use std::fmt;

use super::vector::{parity, words_for, Gf2Vector, WORD_BITS};
use crate::error::{ensure_dim, Error, Result};

/// A dense row-major matrix over GF(2).
///
/// Each row is packed like a [`Gf2Vector`]: entry `(i, j)` is bit `j` of row
/// `i`. For `cols <= 64` a row's integer encoding is `sum_j a_ij 2^j`, which
/// is also the JSON encoding.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix with `cols <= 64` from integer-encoded rows.
    pub fn from_row_u64s(cols: usize, rows: &[u64]) -> Result<Self> {
        if cols > 64 {
            return Err(Error::CapExceeded { what: "integer-encoded matrix columns", limit: 64, requested: cols });
        }
        let mut m = Self::zeros(rows.len(), cols);
        for (i, &r) in rows.iter().enumerate() {
            if cols < 64 && r >> cols != 0 {
                return Err(Error::InvalidInput(format!("row {i} encoding {r} does not fit in {cols} columns")));
            }
            if cols > 0 {
                m.data[i * m.stride] = r;
            }
        }
        Ok(m)
    }

    /// Square matrix whose columns are the given vectors (integer encoded).
    pub fn from_columns_u64(n: usize, columns: &[u64]) -> Result<Self> {
        let mut m = Self::zeros(n, columns.len());
        for (j, &c) in columns.iter().enumerate() {
            if n < 64 && c >> n != 0 {
                return Err(Error::InvalidInput(format!("column {j} encoding {c} does not fit in {n} rows")));
            }
            for i in 0..n {
                if (c >> i) & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
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
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_vector(&self, i: usize) -> Gf2Vector {
        Gf2Vector::from_words(self.cols, self.row(i).to_vec()).expect("row tail is clear")
    }

    /// Integer encoding of row `i`; `cols` must be at most 64.
    #[inline]
    pub fn row_u64(&self, i: usize) -> u64 {
        debug_assert!(self.cols <= 64);
        if self.cols == 0 {
            0
        } else {
            self.data[i * self.stride]
        }
    }

    pub fn row_u64s(&self) -> Vec<u64> {
        (0..self.rows).map(|i| self.row_u64(i)).collect()
    }

    /// Integer encoding of column `j`; `rows` must be at most 64.
    pub fn column_u64(&self, j: usize) -> u64 {
        debug_assert!(self.rows <= 64);
        (0..self.rows).fold(0, |acc, i| acc | (u64::from(self.get(i, j)) << i))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * s);
        head[lo * s..(lo + 1) * s].swap_with_slice(&mut tail[..s]);
    }

    /// `row[dst] ^= row[src]`.
    #[inline]
    pub(crate) fn add_row(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (src_row, dst_row) = if src < dst {
            let (head, tail) = self.data.split_at_mut(dst * s);
            (&head[src * s..(src + 1) * s], &mut tail[..s])
        } else {
            let (head, tail) = self.data.split_at_mut(src * s);
            (&tail[..s], &mut head[dst * s..(dst + 1) * s])
        };
        for (d, v) in dst_row.iter_mut().zip(src_row) {
            *d ^= v;
        }
    }

    pub fn mul_vec(&self, x: &Gf2Vector) -> Result<Gf2Vector> {
        ensure_dim(self.cols, x.len())?;
        let mut out = Gf2Vector::zeros(self.rows);
        for i in 0..self.rows {
            let acc = self.row(i).iter().zip(x.words()).fold(0u64, |acc, (a, b)| acc ^ (a & b));
            if parity(acc) == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Applies the matrix to an integer-encoded vector (`rows, cols <= 64`).
    #[inline]
    pub fn apply_u64(&self, x: u64) -> u64 {
        debug_assert!(self.rows <= 64 && self.cols <= 64);
        let mut out = 0u64;
        for i in 0..self.rows {
            out |= u64::from(parity(self.row_u64(i) & x)) << i;
        }
        out
    }

    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        ensure_dim(self.cols, rhs.rows)?;
        let mut out = Gf2Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (src, dst) = (rhs.row(k), i * out.stride);
                    for (w, v) in out.data[dst..dst + out.stride].iter_mut().zip(src) {
                        *w ^= v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn add(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        ensure_dim(self.rows, rhs.rows)?;
        ensure_dim(self.cols, rhs.cols)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a ^= b;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Symmetric with zero diagonal: the matrix of an alternating form.
    pub fn is_alternating(&self) -> bool {
        self.is_symmetric() && (0..self.rows).all(|i| !self.get(i, i))
    }

    pub fn rank(&self) -> usize {
        if self.cols <= 64 {
            return rank_of_rows(&self.row_u64s());
        }
        let mut m = self.clone();
        m.forward_eliminate().len()
    }

    /// Row-reduces in place (forward only) and returns the pivot columns.
    pub(crate) fn forward_eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for i in r + 1..self.rows {
                if self.get(i, c) {
                    self.add_row(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Gf2Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Gf2Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            aug.set(i, n + i, true);
        }
        for c in 0..n {
            let p = (c..n).find(|&i| aug.get(i, c))?;
            aug.swap_rows(c, p);
            for i in 0..n {
                if i != c && aug.get(i, c) {
                    aug.add_row(c, i);
                }
            }
        }
        let mut inv = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if aug.get(i, n + j) {
                    inv.set(i, j, true);
                }
            }
        }
        Some(inv)
    }

    /// The bilinear form `x^T M y`, integer-encoded arguments (`n <= 64`).
    #[inline]
    pub fn bilinear_u64(&self, x: u64, y: u64) -> u8 {
        parity(x & self.apply_u64(y))
    }

    /// The pulled-back form `f^T M f`, i.e. `(x, y) -> M(f x, f y)`.
    pub fn congruence(&self, f: &Gf2Matrix) -> Result<Gf2Matrix> {
        f.transpose().mul(&self.mul(f)?)
    }
}

/// Rank of the integer-encoded rows (each at most 64 bits wide).
pub(crate) fn rank_of_rows(rows: &[u64]) -> usize {
    // pivots[b] holds a reduced row whose highest set bit is b.
    let mut pivots = [0u64; 64];
    let mut rank = 0;
    for &row in rows {
        let mut v = row;
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if pivots[top] == 0 {
                pivots[top] = v;
                rank += 1;
                break;
            }
            v ^= pivots[top];
        }
    }
    rank
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trips() {
        let m = Gf2Matrix::from_row_u64s(3, &[0b011, 0b110, 0b001]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Gf2Matrix::identity(3));
        assert_eq!(inv.mul(&m).unwrap(), Gf2Matrix::identity(3));
        let singular = Gf2Matrix::from_row_u64s(2, &[0b11, 0b11]).unwrap();
        assert!(singular.inverse().is_none());
        assert_eq!(singular.rank(), 1);
    }

    #[test]
    fn apply_matches_mul_vec() {
        let m = Gf2Matrix::from_row_u64s(4, &[0b1011, 0b0110, 0b1111]).unwrap();
        for x in 0..16u64 {
            let v = Gf2Vector::from_u64(4, x).unwrap();
            assert_eq!(m.mul_vec(&v).unwrap().to_u64().unwrap(), m.apply_u64(x));
        }
    }

    #[test]
    fn linearity() {
        let m = Gf2Matrix::from_row_u64s(5, &[3, 17, 30, 9, 22]).unwrap();
        for x in 0..32u64 {
            for y in 0..32u64 {
                assert_eq!(m.apply_u64(x ^ y), m.apply_u64(x) ^ m.apply_u64(y));
            }
        }
    }

    #[test]
    fn columns_and_rows_agree() {
        let m = Gf2Matrix::from_columns_u64(3, &[0b001, 0b011, 0b100]).unwrap();
        assert_eq!(m.row_u64s(), vec![0b011, 0b010, 0b100]);
        assert_eq!(m.column_u64(1), 0b011);
    }

    #[test]
    fn wide_rows_swap_and_add() {
        let mut m = Gf2Matrix::zeros(3, 130);
        m.set(0, 129, true);
        m.set(2, 0, true);
        m.swap_rows(0, 2);
        assert!(m.get(0, 0) && m.get(2, 129));
        m.add_row(2, 0);
        assert!(m.get(0, 129));
        m.add_row(0, 2);
        assert!(!m.get(2, 129) && m.get(2, 0));
    }
}
