use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};

use super::matrix::{IntMatrix, Matrix};
use super::scalar::{Overflow, Scalar};
use crate::error::{Error, Result};

/// Smith normal form with its unimodular transforms: `left * A * right = diag`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub diag: IntMatrix,
    /// Positive elementary divisors `d1 | d2 | ... | dr`, `r = rank(A)`.
    pub divisors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

struct Work<T> {
    d: Matrix<T>,
    left: Option<Matrix<T>>,
    right: Option<Matrix<T>>,
}

impl<T: Scalar> Work<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(l) = &mut self.left {
            l.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(r) = &mut self.right {
            r.swap_cols(a, b);
        }
    }

    fn row_sub_mul(&mut self, dst: usize, q: &T, src: usize) -> std::result::Result<(), Overflow> {
        self.d.row_sub_mul(dst, q, src)?;
        if let Some(l) = &mut self.left {
            l.row_sub_mul(dst, q, src)?;
        }
        Ok(())
    }

    fn col_sub_mul(&mut self, dst: usize, q: &T, src: usize) -> std::result::Result<(), Overflow> {
        self.d.col_sub_mul(dst, q, src)?;
        if let Some(r) = &mut self.right {
            r.col_sub_mul(dst, q, src)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) -> std::result::Result<(), Overflow> {
        self.d.negate_row(r)?;
        if let Some(l) = &mut self.left {
            l.negate_row(r)?;
        }
        Ok(())
    }
}

fn abs_less<T: Scalar>(a: &T, b: &T) -> std::result::Result<bool, Overflow> {
    Ok(a.abs()? < b.abs()?)
}

/// Diagonalizes in place. Pivot choice: smallest nonzero absolute value,
/// which keeps intermediate entries small.
fn diagonalize<T: Scalar>(w: &mut Work<T>) -> std::result::Result<Vec<T>, Overflow> {
    let (n, l) = (w.d.nrows(), w.d.ncols());
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < n.min(l) {
        // Global minimum of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..l {
                let v = w.d.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !abs_less(v, w.d.get(bi, bj))? => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);

        loop {
            let pivot = w.d.get(t, t).clone();
            let mut residue = false;
            for i in t + 1..n {
                if !w.d.get(i, t).is_zero() {
                    let q = w.d.get(i, t).div_floor(&pivot);
                    w.row_sub_mul(i, &q, t)?;
                    residue |= !w.d.get(i, t).is_zero();
                }
            }
            for j in t + 1..l {
                if !w.d.get(t, j).is_zero() {
                    let q = w.d.get(t, j).div_floor(&pivot);
                    w.col_sub_mul(j, &q, t)?;
                    residue |= !w.d.get(t, j).is_zero();
                }
            }
            if residue {
                // Bring the smallest leftover of row/column t to the pivot.
                let mut best = (t, t);
                for i in t + 1..n {
                    let v = w.d.get(i, t);
                    if !v.is_zero() && abs_less(v, w.d.get(best.0, best.1))? {
                        best = (i, t);
                    }
                }
                for j in t + 1..l {
                    let v = w.d.get(t, j);
                    if !v.is_zero() && abs_less(v, w.d.get(best.0, best.1))? {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // Pivot must divide the whole trailing block.
            let offender = (t + 1..n).find(|&i| (t + 1..l).any(|j| !w.d.get(i, j).divisible_by(&pivot)));
            match offender {
                Some(i) => {
                    // row t += row i
                    w.row_sub_mul(t, &T::from_i64(-1), i)?;
                }
                None => break,
            }
        }
        if w.d.get(t, t).is_negative() {
            w.negate_row(t)?;
        }
        divisors.push(w.d.get(t, t).clone());
        t += 1;
    }
    Ok(divisors)
}

/// `(left, right, diag, divisors)`
type SmithParts<T> = (Matrix<T>, Matrix<T>, Matrix<T>, Vec<T>);

fn smith_generic<T: Scalar>(a: &Matrix<T>) -> std::result::Result<SmithParts<T>, Overflow> {
    let mut w = Work {
        d: a.clone(),
        left: Some(Matrix::identity(a.nrows())),
        right: Some(Matrix::identity(a.ncols())),
    };
    let divisors = diagonalize(&mut w)?;
    Ok((w.left.unwrap(), w.right.unwrap(), w.d, divisors))
}

/// Smith normal form of `a`, including the transforms.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    if let Some(small) = a.try_narrow() {
        if let Ok((left, right, diag, divisors)) = smith_generic(&small) {
            return SmithDecomposition {
                left: left.to_bigint(),
                right: right.to_bigint(),
                diag: diag.to_bigint(),
                divisors: divisors.iter().map(Scalar::to_bigint).collect(),
            };
        }
    }
    let (left, right, diag, divisors) = smith_generic(a).expect("BigInt arithmetic cannot overflow");
    SmithDecomposition { left, right, diag, divisors }
}

/// Elementary divisors only (no transforms tracked).
pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    if let Some(small) = a.try_narrow() {
        if let Ok(d) = small_divisors(&small) {
            return d.into_iter().map(BigInt::from).collect();
        }
    }
    let mut w = Work { d: a.clone(), left: None, right: None };
    diagonalize(&mut w).expect("BigInt arithmetic cannot overflow")
}

/// Fixed-width elementary divisors; `Overflow` means retry with `BigInt`.
pub fn small_divisors(a: &Matrix<i64>) -> std::result::Result<Vec<i64>, Overflow> {
    let mut w = Work { d: a.clone(), left: None, right: None };
    diagonalize(&mut w)
}

/// `m^(cols - r) * prod gcd(d_i, m)` for the given divisors.
pub fn kernel_count_from_divisors(cols: usize, divisors: &[BigInt], m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::InvalidModulus);
    }
    let mb = BigInt::from(m);
    let mut count = BigInt::one();
    for d in divisors {
        count *= Signed::abs(d).gcd(&mb);
    }
    count *= mb.pow((cols - divisors.len()) as u32);
    Ok(count.to_biguint().expect("kernel sizes are positive"))
}

/// Number of `k` in `((1/m)Z / Z)^cols` with `A k = 0`.
pub fn kernel_count(a: &IntMatrix, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::InvalidModulus);
    }
    kernel_count_from_divisors(a.ncols(), &elementary_divisors(a), m)
}
