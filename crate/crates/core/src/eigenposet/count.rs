use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rootdata::{weight_system, GroupType};
use crate::weylgroup::{conjugacy_classes, ConjugacyClassTable, EmbeddedSource, WeylElement, WeylGroup};

use super::cache::{load_or_build, CACHE_DIR_ENV};
use super::pmatrix::s_w;
use super::poset::{ensure_supported, MPoset};
use crate::quasipoly::GcdExpression;

/// `|Fix_s(w)|`: torus points of order dividing `m` fixed by `w` with `s`
/// distinct eigenvalues.
pub fn fix_s_count(w: &WeylElement, m: u64, s: u32, poset: &MPoset) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::InvalidModulus);
    }
    let sw = s_w(w, poset.weights(), poset.p_matrix())?;
    Ok(poset
        .containing_rows(&sw)
        .ones()
        .filter(|&t| poset.nodes()[t].svalue == s)
        .map(|t| poset.f_m(t, m))
        .sum())
}

/// Burnside data for `N(G, m, s)` on top of a poset: per `s`, the class
/// weighted sum of the `f` coefficients.
#[derive(Debug)]
pub struct EigenCounter {
    poset: Arc<MPoset>,
    order: u64,
    /// `weight(S) = sum_c |c| [S ⪯ S_{w_c}]`
    node_weight: Vec<u64>,
    /// Per `s` (index `s - 1`), coefficients over the poset's kernel types.
    by_s: Vec<Vec<BigInt>>,
}

impl EigenCounter {
    pub fn new(poset: Arc<MPoset>, table: &ConjugacyClassTable) -> Result<Self> {
        let n = poset.len();
        let mut node_weight = vec![0u64; n];
        for c in &table.classes {
            let sw = s_w(&c.representative, poset.weights(), poset.p_matrix())?;
            for t in poset.containing_rows(&sw).ones() {
                node_weight[t] += c.size;
            }
        }
        let s_max = poset.s_max() as usize;
        let ntypes = poset.kernel_types().len();
        let mut by_s = vec![vec![BigInt::zero(); ntypes]; s_max];
        for (t, node) in poset.nodes().iter().enumerate() {
            if node_weight[t] == 0 {
                continue;
            }
            let row = &mut by_s[node.svalue as usize - 1];
            for &(ty, c) in poset.f_coefficients(t) {
                row[ty] += BigInt::from(c) * node_weight[t];
            }
        }
        Ok(Self { order: poset.group().weyl_order(), poset, node_weight, by_s })
    }

    pub fn poset(&self) -> &MPoset {
        &self.poset
    }

    pub fn s_max(&self) -> u32 {
        self.by_s.len() as u32
    }

    pub fn node_weight(&self, t: usize) -> u64 {
        self.node_weight[t]
    }

    fn check_s(&self, s: u32) -> Result<usize> {
        if s == 0 || s > self.s_max() {
            return Err(Error::OutOfRange(format!(
                "s = {} is outside 1..={} for {}",
                s,
                self.s_max(),
                self.poset.group()
            )));
        }
        Ok(s as usize - 1)
    }

    pub fn n_gms(&self, m: u64, s: u32) -> Result<BigUint> {
        if m == 0 {
            return Err(Error::InvalidModulus);
        }
        let row = &self.by_s[self.check_s(s)?];
        let types = self.poset.kernel_types();
        let sum: BigInt = row.iter().zip(types).filter(|(c, _)| !c.is_zero()).map(|(c, ty)| c * ty.eval(m)).sum();
        let (q, r) = sum.div_rem(&BigInt::from(self.order));
        if !r.is_zero() || q.is_negative() {
            return Err(Error::Integrity(format!(
                "Burnside sum {} for {} at m = {}, s = {} is not a nonnegative multiple of |W| = {}",
                sum,
                self.poset.group(),
                m,
                s,
                self.order
            )));
        }
        Ok(q.to_biguint().expect("checked nonnegative"))
    }

    /// `N(G, m, s)` as an exact gcd expression in `m`.
    pub fn n_gms_symbolic(&self, s: u32) -> Result<GcdExpression> {
        let row = &self.by_s[self.check_s(s)?];
        let mut e = GcdExpression::zero();
        for (c, ty) in row.iter().zip(self.poset.kernel_types()) {
            if !c.is_zero() {
                e.add_term(BigRational::new(c.clone(), BigInt::from(self.order)), ty.power, &ty.divisors);
            }
        }
        Ok(e)
    }
}

type Memo = Mutex<HashMap<(GroupType, Option<PathBuf>), Arc<EigenCounter>>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// The counter for `g`, built once per process. With a cache directory the
/// poset is loaded from (or written to) disk.
pub fn eigen_counter(g: GroupType, cache_dir: Option<&Path>) -> Result<Arc<EigenCounter>> {
    ensure_supported(g)?;
    let key = (g, cache_dir.map(Path::to_path_buf));
    if let Some(c) = memo().lock().expect("memo lock").get(&key) {
        return Ok(c.clone());
    }
    let ws = weight_system(g);
    let poset = Arc::new(load_or_build(&ws, cache_dir)?);
    let table = conjugacy_classes(&WeylGroup::new(g), &EmbeddedSource)?;
    let counter = Arc::new(EigenCounter::new(poset, &table)?);
    Ok(memo().lock().expect("memo lock").entry(key).or_insert(counter).clone())
}

/// Cache directory from the environment, if set.
pub fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Conjugacy classes of elements `x` with `x^m = 1` and `s` distinct
/// eigenvalues (G2 and F4).
pub fn n_gms(g: GroupType, m: u64, s: u32) -> Result<BigUint> {
    eigen_counter(g, default_cache_dir().as_deref())?.n_gms(m, s)
}

pub fn n_gms_symbolic(g: GroupType, s: u32) -> Result<GcdExpression> {
    eigen_counter(g, default_cache_dir().as_deref())?.n_gms_symbolic(s)
}
