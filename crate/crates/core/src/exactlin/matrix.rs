use std::fmt;

use num_bigint::BigInt;

use super::scalar::{narrow, Overflow, Scalar};

/// Dense row-major integer matrix.
///
/// A `0 x c` matrix is a legal value; its kernel is the whole ambient space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Arbitrary-precision integer matrix.
pub type IntMatrix = Matrix<BigInt>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::from_i64(1));
        }
        m
    }

    /// The `0 x cols` empty matrix.
    pub fn empty(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    /// Builds a matrix from row vectors. `cols` is needed to give an empty
    /// row list its width.
    ///
    /// Panics if a row has the wrong length.
    pub fn from_rows<R: AsRef<[T]>>(cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "row length {} does not match column count {}", r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Self {
        let rows: Vec<Vec<T>> =
            rows.iter().map(|r| r.as_ref().iter().map(|&v| T::from_i64(v)).collect()).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`
    pub fn row_sub_mul(&mut self, dst: usize, q: &T, src: usize) -> Result<(), Overflow> {
        for c in 0..self.cols {
            let v = self.get(dst, c).sub_mul(q, self.get(src, c))?;
            self.set(dst, c, v);
        }
        Ok(())
    }

    /// `col[dst] -= q * col[src]`
    pub fn col_sub_mul(&mut self, dst: usize, q: &T, src: usize) -> Result<(), Overflow> {
        for r in 0..self.rows {
            let v = self.get(r, dst).sub_mul(q, self.get(r, src))?;
            self.set(r, dst, v);
        }
        Ok(())
    }

    pub fn negate_row(&mut self, r: usize) -> Result<(), Overflow> {
        for c in 0..self.cols {
            let v = self.get(r, c).neg()?;
            self.set(r, c, v);
        }
        Ok(())
    }

    pub fn negate_col(&mut self, c: usize) -> Result<(), Overflow> {
        for r in 0..self.rows {
            let v = self.get(r, c).neg()?;
            self.set(r, c, v);
        }
        Ok(())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).add(&a.mul(rhs.get(k, j))?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        *v == T::from_i64(1)
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Result<Vec<T>, Overflow> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![T::zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.add(&a.mul(self.get(k, j))?)?;
            }
        }
        Ok(out)
    }

    pub fn to_bigint(&self) -> IntMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::to_bigint).collect(),
        }
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }
}

impl IntMatrix {
    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::from(1);
        }
        let mut a = self.clone();
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::from(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    /// Narrow every entry to `i64`, if all fit.
    pub fn try_narrow(&self) -> Option<Matrix<i64>> {
        let data = self.data.iter().map(narrow).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, data })
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 {
            return write!(f, "[](0x{})", self.cols);
        }
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", v)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
