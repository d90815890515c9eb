//! `N(G, m)` by Burnside's lemma over the Weyl group conjugacy classes.
//!
//! Each class representative `w` gives a homogeneous integer system whose
//! solutions in `((1/m)Z / Z)^l` are the torus points fixed by `w`. Its
//! elementary divisors are computed once and reused for every `m`.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{elementary_divisors, kernel_count, kernel_count_from_divisors, IntMatrix, Matrix};
use crate::quasipoly::{fit, GcdExpression, QuasiPolynomial};
use crate::rootdata::{GroupType, WeightSystem};
use crate::weylgroup::{conjugacy_classes, ConjugacyClassTable, EmbeddedSource, WeylElement, WeylGroup};

/// The fixed-point system of one Weyl group element.
#[derive(Debug, Clone)]
pub struct FixSystem {
    pub element: WeylElement,
    /// `l` columns; `Fix(w)` is its kernel over `((1/m)Z / Z)^l`.
    pub matrix: IntMatrix,
}

impl FixSystem {
    pub fn divisors(&self) -> Vec<u64> {
        nonzero_divisors(&self.matrix)
    }

    pub fn count(&self, m: u64) -> Result<BigUint> {
        kernel_count(&self.matrix, m)
    }
}

fn nonzero_divisors(a: &IntMatrix) -> Vec<u64> {
    elementary_divisors(a).iter().map(|d| d.to_u64().expect("small elementary divisors")).collect()
}

/// For each spanning index `i`: nothing if `sigma(i) = i`, `2 v_i` if
/// `sigma(i) = -i`, and `v_i -/+ v_j` if `sigma(i) = ±j` with `j != i`.
/// Zero and repeated rows are kept.
pub fn fix_matrix(w: &WeylElement, ws: &WeightSystem) -> Result<FixSystem> {
    if w.group != ws.group || w.sigma.len() != ws.u() {
        return Err(Error::Integrity(format!("element of {} used with weights of {}", w.group, ws.group)));
    }
    let l = ws.rank();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for &i in &ws.spanning {
        let img = w.sigma.image(i + 1);
        let j = img.unsigned_abs() as usize - 1;
        let sign = img.signum() as i64;
        if j == i {
            if sign < 0 {
                rows.push(ws.vectors[i].iter().map(|x| 2 * x).collect());
            }
        } else {
            rows.push(ws.vectors[i].iter().zip(&ws.vectors[j]).map(|(a, b)| a - sign * b).collect());
        }
    }
    Ok(FixSystem { element: w.clone(), matrix: IntMatrix::from_i64_rows(l, &rows) })
}

/// `|Fix(w)|` among the torus points of order dividing `m`.
pub fn fix_count(w: &WeylElement, ws: &WeightSystem, m: u64) -> Result<BigUint> {
    fix_matrix(w, ws)?.count(m)
}

/// `kaction - I`; its kernel equals that of [`fix_matrix`]. Kept as an
/// independent cross-check.
pub fn kaction_fix_matrix(w: &WeylElement) -> IntMatrix {
    let l = w.kaction.nrows();
    let mut d = Matrix::<i64>::zeros(l, l);
    for r in 0..l {
        for c in 0..l {
            let v = w.kaction.get(r, c) - i64::from(r == c);
            d.set(r, c, v);
        }
    }
    d.to_bigint()
}

/// One conjugacy class reduced to what the Burnside sum needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassKernel {
    pub size: u64,
    pub word: Vec<usize>,
    /// Elementary divisors of the fixed-point system (all nonzero).
    pub divisors: Vec<u64>,
}

/// Burnside counter with per-class divisors precomputed.
#[derive(Debug, Clone)]
pub struct BurnsideCounter {
    group: GroupType,
    rank: usize,
    order: u64,
    classes: Vec<ClassKernel>,
}

impl BurnsideCounter {
    pub fn from_table(wg: &WeylGroup, table: &ConjugacyClassTable) -> Result<Self> {
        let ws = wg.weights();
        let classes = table
            .classes
            .iter()
            .map(|c| {
                let fs = fix_matrix(&c.representative, ws)?;
                Ok(ClassKernel { size: c.size, word: c.representative.word.clone(), divisors: fs.divisors() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { group: wg.group(), rank: wg.rank(), order: wg.group().weyl_order(), classes })
    }

    /// From the validated embedded class data.
    pub fn new(g: GroupType) -> Result<Self> {
        let wg = WeylGroup::new(g);
        let table = conjugacy_classes(&wg, &EmbeddedSource)?;
        Self::from_table(&wg, &table)
    }

    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn classes(&self) -> &[ClassKernel] {
        &self.classes
    }

    /// `sum |c| |Fix(w_c)|` before division by `|W|`.
    pub fn burnside_sum(&self, m: u64) -> Result<BigUint> {
        if m == 0 {
            return Err(Error::InvalidModulus);
        }
        let terms = self
            .classes
            .par_iter()
            .map(|c| {
                let d: Vec<BigInt> = c.divisors.iter().map(|&x| BigInt::from(x)).collect();
                Ok(kernel_count_from_divisors(self.rank, &d, m)? * c.size)
            })
            .collect::<Result<Vec<BigUint>>>()?;
        Ok(terms.into_iter().sum())
    }

    pub fn n_gm(&self, m: u64) -> Result<BigUint> {
        let sum = self.burnside_sum(m)?;
        let (q, r) = sum.div_rem(&BigUint::from(self.order));
        if !r.is_zero() {
            return Err(Error::Integrity(format!(
                "Burnside sum {} for {} at m = {} is not divisible by |W| = {}",
                sum, self.group, m, self.order
            )));
        }
        Ok(q)
    }

    /// `(1/|W|) sum |c| m^(l - r_c) prod gcd(d, m)`.
    pub fn symbolic(&self) -> GcdExpression {
        let mut e = GcdExpression::zero();
        let inv = BigRational::new(1.into(), self.order.into());
        for c in &self.classes {
            e.add(&GcdExpression::kernel(self.rank, &c.divisors).scaled(&(&inv * BigInt::from(c.size))));
        }
        e
    }

    /// Per-residue fit over the given period, verified on held-out samples.
    pub fn quasipolynomial(&self, period: u64) -> Result<QuasiPolynomial> {
        fit(|m| Ok(BigInt::from(self.n_gm(m)?)), self.rank, period)
    }
}

/// Periods of the published `N(G, m)` tables.
pub fn table_period(g: GroupType) -> u64 {
    match g {
        GroupType::G2 | GroupType::E6 => 6,
        GroupType::F4 | GroupType::E7 => 12,
        GroupType::E8 => 60,
    }
}

/// Shared counter per group, built on first use.
pub fn burnside_counter(g: GroupType) -> Result<&'static BurnsideCounter> {
    static CELLS: [OnceLock<BurnsideCounter>; 5] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = GroupType::ALL.iter().position(|&h| h == g).expect("every group is listed");
    let cell = &CELLS[idx];
    if let Some(c) = cell.get() {
        return Ok(c);
    }
    let built = BurnsideCounter::new(g)?;
    Ok(cell.get_or_init(|| built))
}

/// Number of conjugacy classes of elements `x` with `x^m = 1`.
pub fn n_gm(g: GroupType, m: u64) -> Result<BigUint> {
    burnside_counter(g)?.n_gm(m)
}

pub fn n_gm_symbolic(g: GroupType) -> Result<GcdExpression> {
    Ok(burnside_counter(g)?.symbolic())
}

/// Degree-`l` quasi-polynomial with the published period.
pub fn n_gm_quasipoly(g: GroupType) -> Result<QuasiPolynomial> {
    burnside_counter(g)?.quasipolynomial(table_period(g))
}
