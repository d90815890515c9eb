//! Exact integer linear algebra: Smith and row-Hermite normal forms, kernel
//! counting over `((1/m)Z / Z)^l`, and row-lattice membership.
//!
//! Every routine has a fixed-width `i64` fast path with checked arithmetic
//! that falls back to `BigInt` on overflow, so results are always exact.

mod hermite;
mod matrix;
mod scalar;
mod smith;

pub use hermite::{hnf_contains, hnf_rows, in_row_lattice, rhnf, row_lattice_equal, sign_normalize, RowLattice};
pub use matrix::{IntMatrix, Matrix};
pub use scalar::{narrow, Overflow, Scalar};
pub use smith::{
    elementary_divisors, kernel_count, kernel_count_from_divisors, small_divisors, snf, SmithDecomposition,
};
