use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::Ring;

/// Dense row-major matrix whose entries are kept canonical for its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_vec(ring: &Ring, rows: usize, cols: usize, data: Vec<BigInt>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        let data = data.into_iter().map(|a| ring.reduce_owned(a)).collect();
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_fn(
        ring: &Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> BigInt,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(ring.reduce_owned(f(i, j)));
            }
        }
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Rows given as small integers; all rows must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(ring: &Ring, rows: &[R]) -> Matrix {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&a| BigInt::from(a)));
        }
        Matrix::from_vec(ring, rows.len(), cols, data)
    }

    pub fn column_vector(ring: &Ring, entries: Vec<BigInt>) -> Matrix {
        let n = entries.len();
        Matrix::from_vec(ring, n, 1, entries)
    }

    pub fn diagonal(ring: &Ring, entries: &[BigInt]) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(ring, n, n);
        for (i, a) in entries.iter().enumerate() {
            m.set(i, i, a.clone());
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: BigInt) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = self.ring.reduce_owned(a);
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| *self.get(i, j) == BigInt::from((i == j) as i64)))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &BigInt) -> Matrix {
        Matrix::from_vec(
            &self.ring,
            self.rows,
            self.cols,
            self.data.iter().map(|a| a * c).collect(),
        )
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ring, rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Matrix::from_fn(&self.ring, r1 - r0, c1 - c0, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols);
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let first = parts.first().expect("hstack of nothing");
        let rows = first.rows;
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(&first.ring, rows, cols);
        let mut c = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            assert_eq!(m.ring, first.ring, "hstack ring mismatch");
            out.set_block(0, c, m);
            c += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let first = parts.first().expect("vstack of nothing");
        let cols = first.cols;
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(&first.ring, rows, cols);
        let mut r = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.set_block(r, 0, m);
            r += m.rows;
        }
        out
    }

    /// Horizontal concatenation of column blocks; `rows` fixes the shape when empty.
    pub fn from_columns(ring: &Ring, rows: usize, cols: &[Matrix]) -> Matrix {
        if cols.is_empty() {
            return Matrix::zeros(ring, rows, 0);
        }
        let refs: Vec<&Matrix> = cols.iter().collect();
        Matrix::hstack(&refs)
    }

    pub fn block_diagonal(ring: &Ring, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    /// Column-major flattening into a single column.
    pub fn vectorize(&self) -> Matrix {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j).clone());
            }
        }
        Matrix::from_vec(&self.ring, self.rows * self.cols, 1, v)
    }

    /// Inverse of [`Matrix::vectorize`] applied to rows `offset..offset+rows*cols` of column `col`.
    pub fn unvectorize(v: &Matrix, col: usize, offset: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(v.ring(), rows, cols, |i, j| v.get(offset + j * rows + i, col).clone())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let v = &self.data[dst * self.cols + j] + c * s;
            self.data[dst * self.cols + j] = self.ring.reduce_owned(v);
        }
    }

    /// `col[dst] += c * col[src]`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let v = &self.data[i * self.cols + dst] + c * s;
            self.data[i * self.cols + dst] = self.ring.reduce_owned(v);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[i * self.cols + j] * c;
            self.data[i * self.cols + j] = self.ring.reduce_owned(v);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + j] * c;
            self.data[i * self.cols + j] = self.ring.reduce_owned(v);
        }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        Matrix::from_vec(
            &self.ring,
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        )
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut data = vec![BigInt::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Matrix::from_vec(&self.ring, self.rows, rhs.cols, data)
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix::from_vec(
            &self.ring,
            self.rows,
            self.cols,
            self.data.iter().map(|a| -a).collect(),
        )
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
