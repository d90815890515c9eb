//! Exact quasi-polynomials: gcd expressions, per-residue polynomial fits,
//! period detection, evaluation and table output.

mod gcdexpr;
mod poly;
mod quasi;

pub use gcdexpr::GcdExpression;
pub use poly::{parse_poly, Poly};
pub use quasi::{
    emit_table, fit, residue_label, EmitOptions, QuasiPolynomial, QuasiPolynomialJson, ResidueJson, TableFormat,
};

