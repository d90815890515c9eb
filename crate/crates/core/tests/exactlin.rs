use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use exlie::exactlin::{
    elementary_divisors, hnf_rows, in_row_lattice, kernel_count, rhnf, row_lattice_equal, small_divisors, snf, IntMatrix,
    Matrix,
};
use exlie::Error;

fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(cols, rows)| {
        (Just(cols), prop::collection::vec(prop::collection::vec(-4i64..=4, cols), rows))
    })
}

fn brute_kernel(rows: &[Vec<i64>], cols: usize, m: i64) -> u64 {
    let total = (m as u64).pow(cols as u32);
    (0..total)
        .filter(|&idx| {
            let mut rest = idx;
            let k: Vec<i64> = (0..cols)
                .map(|_| {
                    let d = (rest % m as u64) as i64;
                    rest /= m as u64;
                    d
                })
                .collect();
            rows.iter().all(|r| r.iter().zip(&k).map(|(a, b)| a * b).sum::<i64>().rem_euclid(m) == 0)
        })
        .count() as u64
}

fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.checked_mul(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, ..ProptestConfig::default() })]

    #[test]
    fn smith_axioms_and_kernel_counts((cols, rows) in small_matrix(), m in 1u64..=6) {
        let a = IntMatrix::from_i64_rows(cols, &rows);
        let d = snf(&a);

        prop_assert_eq!(mul(&mul(&d.left, &a), &d.right), d.diag.clone());
        prop_assert_eq!(d.left.determinant().abs(), BigInt::from(1));
        prop_assert_eq!(d.right.determinant().abs(), BigInt::from(1));
        for r in 0..d.diag.nrows() {
            for c in 0..d.diag.ncols() {
                let x = d.diag.get(r, c);
                if r != c {
                    prop_assert!(x.is_zero());
                } else if r < d.rank() {
                    prop_assert_eq!(x, &d.divisors[r]);
                } else {
                    prop_assert!(x.is_zero());
                }
            }
        }
        for w in d.divisors.windows(2) {
            prop_assert!(w[0].is_positive() && (&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(elementary_divisors(&a), d.divisors.clone());

        let brute = brute_kernel(&rows, cols, m as i64);
        prop_assert_eq!(kernel_count(&a, m).unwrap(), BigUint::from(brute));

        let lattice = rhnf(&a);
        prop_assert_eq!(lattice.rank(), d.rank());
        prop_assert!(row_lattice_equal(&a, lattice.basis()));
        for r in 0..a.nrows() {
            prop_assert!(in_row_lattice(a.row(r), &lattice));
        }
    }

    #[test]
    fn hermite_form_ignores_row_order((cols, rows) in small_matrix()) {
        let mut rev = rows.clone();
        rev.reverse();
        prop_assert_eq!(hnf_rows(rows.clone(), cols).unwrap(), hnf_rows(rev, cols).unwrap());
        // Adding a combination of existing rows leaves the lattice alone.
        let combo: Vec<i64> = (0..cols).map(|c| rows.iter().map(|r| 3 * r[c]).sum()).collect();
        let mut more = rows.clone();
        more.push(combo);
        prop_assert_eq!(hnf_rows(rows, cols).unwrap(), hnf_rows(more, cols).unwrap());
    }
}

#[test]
fn fixed_width_overflow_falls_back_to_bigint() {
    let big = i64::MAX / 2;
    let a = Matrix::<i64>::from_rows(2, &[[big, 1], [1, big]]);
    // Eliminating against the unit pivot needs big^2.
    assert!(small_divisors(&a).is_err());
    let b = BigInt::from(big);
    assert_eq!(elementary_divisors(&a.to_bigint()), vec![BigInt::from(1), &b * &b - 1]);
    let d = snf(&a.to_bigint());
    assert_eq!(mul(&mul(&d.left, &a.to_bigint()), &d.right), d.diag);
}

#[test]
fn zero_modulus_is_rejected() {
    let a = IntMatrix::from_i64_rows(2, &[[1, 2]]);
    assert!(matches!(kernel_count(&a, 0), Err(Error::InvalidModulus)));
}

#[test]
fn documented_examples() {
    let a = IntMatrix::from_i64_rows(2, &[[2, 0], [0, 3]]);
    assert_eq!(elementary_divisors(&a), vec![BigInt::from(1), BigInt::from(6)]);
    assert_eq!(kernel_count(&a, 6).unwrap(), BigUint::from(6u8));
    let empty = IntMatrix::from_i64_rows::<[i64; 3]>(3, &[]);
    assert_eq!(kernel_count(&empty, 5).unwrap(), BigUint::from(125u8));
}
