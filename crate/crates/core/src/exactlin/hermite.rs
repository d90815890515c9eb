use num_bigint::BigInt;

use super::matrix::IntMatrix;
use super::scalar::{Overflow, Scalar};

/// Canonical basis of the row lattice generated by a matrix.
///
/// The basis is in row-style Hermite normal form: echelon shape, positive
/// pivots, entries above each pivot reduced into `[0, pivot)`, zero rows
/// dropped. Two matrices generate the same lattice iff their `RowLattice`
/// values are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowLattice {
    basis: IntMatrix,
}

impl RowLattice {
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.basis.ncols()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        in_row_lattice(v, self)
    }
}

/// Row-style Hermite normal form of a list of rows (all of length `cols`).
pub fn hnf_rows<T: Scalar>(mut m: Vec<Vec<T>>, cols: usize) -> Result<Vec<Vec<T>>, Overflow> {
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if m[i][c].abs()? >= m[b][c].abs()? => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    sub_mul_row(&mut m, i, &q, r)?;
                    done &= m[i][c].is_zero();
                }
            }
            if done {
                if m[r][c].is_negative() {
                    for v in m[r].iter_mut() {
                        *v = v.neg()?;
                    }
                }
                for i in 0..r {
                    let q = m[i][c].div_floor(&m[r][c]);
                    if !q.is_zero() {
                        sub_mul_row(&mut m, i, &q, r)?;
                    }
                }
                r += 1;
                break;
            }
        }
    }
    m.truncate(r);
    Ok(m)
}

fn sub_mul_row<T: Scalar>(m: &mut [Vec<T>], dst: usize, q: &T, src: usize) -> Result<(), Overflow> {
    let (d, s) = if dst < src {
        let (a, b) = m.split_at_mut(src);
        (&mut a[dst], &b[0])
    } else {
        let (a, b) = m.split_at_mut(dst);
        (&mut b[0], &a[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        *x = x.sub_mul(q, y)?;
    }
    Ok(())
}

/// Membership of `v` in the lattice spanned by an HNF basis.
pub fn hnf_contains<T: Scalar>(basis: &[Vec<T>], v: &[T]) -> Result<bool, Overflow> {
    let mut w = v.to_vec();
    let mut col = 0;
    for row in basis {
        let p = row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
        if w[col..p].iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
        if !w[p].divisible_by(&row[p]) {
            return Ok(false);
        }
        let q = w[p].div_floor(&row[p]);
        if !q.is_zero() {
            for (x, y) in w.iter_mut().zip(row.iter()) {
                *x = x.sub_mul(&q, y)?;
            }
        }
        col = p + 1;
    }
    Ok(w.iter().all(Scalar::is_zero))
}

/// Canonical row lattice of `a`.
pub fn rhnf(a: &IntMatrix) -> RowLattice {
    let cols = a.ncols();
    if let Some(small) = a.try_narrow() {
        if let Ok(rows) = hnf_rows(small.row_vecs(), cols) {
            let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            return RowLattice { basis: IntMatrix::from_rows(cols, &rows) };
        }
    }
    let rows = hnf_rows(a.row_vecs(), cols).expect("BigInt arithmetic cannot overflow");
    RowLattice { basis: IntMatrix::from_rows(cols, &rows) }
}

/// Is `v` an integer combination of the basis rows of `lattice`?
pub fn in_row_lattice(v: &[BigInt], lattice: &RowLattice) -> bool {
    assert_eq!(v.len(), lattice.ncols(), "vector length does not match lattice dimension");
    hnf_contains(&lattice.basis.row_vecs(), v).expect("BigInt arithmetic cannot overflow")
}

/// `Lambda_R(a) == Lambda_R(b)`
pub fn row_lattice_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.ncols(), b.ncols(), "column counts differ");
    rhnf(a) == rhnf(b)
}

/// `v` or `-v`, whichever has a positive first nonzero coordinate.
pub fn sign_normalize<T: Scalar>(v: &[T]) -> Vec<T> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => v.iter().map(|x| x.neg().expect("negation of a vector entry overflowed")).collect(),
        _ => v.to_vec(),
    }
}
