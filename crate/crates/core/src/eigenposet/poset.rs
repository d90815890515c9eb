use std::collections::{BTreeMap, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{hnf_contains, hnf_rows, kernel_count_from_divisors, rhnf, small_divisors, IntMatrix, Matrix, RowLattice};
use crate::quasipoly::GcdExpression;
use crate::rootdata::{GroupType, WeightSystem};

use super::pmatrix::{build_p_matrix, s_value, PMatrix};

/// A closed row subset of `P`: every `P` row in its lattice is in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MNode {
    /// Sorted `P` row indices.
    pub rowset: Vec<usize>,
    /// Nonzero elementary divisors of the stacked rows.
    pub divisors: Vec<u64>,
    pub rank: usize,
    pub svalue: u32,
    /// Hermite basis of the row lattice.
    pub basis: Vec<Vec<i64>>,
    /// A smallest set of rows generating the lattice.
    pub generators: Vec<usize>,
}

impl MNode {
    pub fn lattice(&self, cols: usize) -> RowLattice {
        rhnf(&IntMatrix::from_i64_rows(cols, &self.basis))
    }

    /// Number of solutions of the stacked system over `((1/m)Z / Z)^l`.
    pub fn g_m(&self, cols: usize, m: u64) -> Result<BigUint> {
        let d: Vec<BigInt> = self.divisors.iter().map(|&x| BigInt::from(x)).collect();
        kernel_count_from_divisors(cols, &d, m)
    }

    /// `m^(l - r) prod gcd(d_i, m)`.
    pub fn g_sym(&self, cols: usize) -> GcdExpression {
        GcdExpression::kernel(cols, &self.divisors)
    }
}

/// Kernel-size shape shared by many nodes: `m^power prod gcd(d, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelType {
    pub power: u32,
    /// Divisors greater than 1.
    pub divisors: Vec<u64>,
}

impl KernelType {
    fn of(node: &MNode, cols: usize) -> Self {
        KernelType {
            power: (cols - node.rank) as u32,
            divisors: node.divisors.iter().copied().filter(|&d| d > 1).collect(),
        }
    }

    pub fn eval(&self, m: u64) -> BigInt {
        let mut v = BigInt::from(m).pow(self.power);
        for d in &self.divisors {
            v *= d.gcd(&m);
        }
        v
    }
}

fn overflow(what: &str) -> Error {
    Error::Integrity(format!("integer overflow while computing {}", what))
}

pub(crate) fn lattice_key(rows: Vec<Vec<i64>>, cols: usize) -> Result<Vec<Vec<i64>>> {
    if let Ok(h) = hnf_rows(rows.clone(), cols) {
        return Ok(h);
    }
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let h = hnf_rows(big, cols).expect("BigInt arithmetic cannot overflow");
    h.iter()
        .map(|r| r.iter().map(|x| i64::try_from(x).map_err(|_| overflow("a lattice basis"))).collect())
        .collect()
}

pub(crate) fn basis_contains(basis: &[Vec<i64>], v: &[i64]) -> bool {
    match hnf_contains(basis, v) {
        Ok(b) => b,
        Err(_) => {
            let bb: Vec<Vec<BigInt>> = basis.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let bv: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            hnf_contains(&bb, &bv).expect("BigInt arithmetic cannot overflow")
        }
    }
}

fn rowset_of(basis: &[Vec<i64>], p: &PMatrix) -> Vec<usize> {
    (0..p.len()).filter(|&r| basis_contains(basis, &p.rows[r])).collect()
}

fn divisors_of_basis(basis: &[Vec<i64>], cols: usize) -> Result<Vec<u64>> {
    let d = small_divisors(&Matrix::from_rows(cols, basis)).map_err(|_| overflow("elementary divisors"))?;
    Ok(d.into_iter().map(|x| x.unsigned_abs()).collect())
}

/// The node with rowset `Λ_R(rows) ∩ row(P)`.
pub fn closure(rows: &[usize], p: &PMatrix, ws: &WeightSystem) -> Result<MNode> {
    let cols = p.ncols();
    let basis = lattice_key(rows.iter().map(|&r| p.rows[r].clone()).collect(), cols)?;
    node_from_basis(basis, rows.to_vec(), p, ws)
}

fn node_from_basis(basis: Vec<Vec<i64>>, generators: Vec<usize>, p: &PMatrix, ws: &WeightSystem) -> Result<MNode> {
    let cols = p.ncols();
    let rowset = rowset_of(&basis, p);
    let divisors = divisors_of_basis(&basis, cols)?;
    let svalue = s_value(&rowset, p, ws);
    Ok(MNode { rank: basis.len(), rowset, divisors, svalue, basis, generators })
}

type LatticeKey = Vec<Vec<i64>>;

/// Every lattice generated by rows of `P`, found by adding one row at a
/// time. Each lattice carries the lexicographically smallest among its
/// shortest generating row lists.
fn enumerate_lattices(p: &PMatrix) -> Result<Vec<(LatticeKey, Vec<usize>)>> {
    let cols = p.ncols();
    let mut all: Vec<(LatticeKey, Vec<usize>)> = vec![(Vec::new(), Vec::new())];
    let mut known: HashSet<LatticeKey> = HashSet::from([Vec::new()]);
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        let mut layer: BTreeMap<LatticeKey, Vec<usize>> = BTreeMap::new();
        for chunk in frontier.chunks(256) {
            let found: Vec<Result<(LatticeKey, Vec<usize>)>> = chunk
                .par_iter()
                .flat_map_iter(|&idx| {
                    let (basis, gens) = &all[idx];
                    let known = &known;
                    (0..p.len()).filter_map(move |r| {
                        if basis_contains(basis, &p.rows[r]) {
                            return None;
                        }
                        let mut rows = basis.clone();
                        rows.push(p.rows[r].clone());
                        match lattice_key(rows, cols) {
                            Ok(key) if known.contains(&key) => None,
                            Ok(key) => {
                                let mut g = gens.clone();
                                g.push(r);
                                g.sort_unstable();
                                Some(Ok((key, g)))
                            }
                            Err(e) => Some(Err(e)),
                        }
                    })
                })
                .collect();
            for item in found {
                let (key, g) = item?;
                match layer.get_mut(&key) {
                    Some(old) if *old <= g => {}
                    Some(old) => *old = g,
                    None => {
                        layer.insert(key, g);
                    }
                }
            }
        }
        frontier.clear();
        for (key, g) in layer {
            known.insert(key.clone());
            frontier.push(all.len());
            all.push((key, g));
        }
    }
    Ok(all)
}

/// Smallest `r` such that every lattice generated by rows of `P` is
/// generated by at most `r` of them.
pub fn find_r(p: &PMatrix) -> Result<usize> {
    Ok(enumerate_lattices(p)?.iter().map(|(_, g)| g.len()).max().unwrap_or(0).max(1))
}

/// The closed row subsets of `P`, ordered by reverse containment.
#[derive(Debug, Clone)]
pub struct MPoset {
    p: PMatrix,
    ws: WeightSystem,
    nodes: Vec<MNode>,
    by_rowset: HashMap<Vec<usize>, usize>,
    /// Per `P` row, the nodes containing it.
    containing: Vec<FixedBitSet>,
    types: Vec<KernelType>,
    node_type: Vec<usize>,
    /// `f(S) = sum c * g_type`, sparse over `types`.
    f_coeffs: Vec<Vec<(usize, i64)>>,
}

pub(crate) fn ensure_supported(g: GroupType) -> Result<()> {
    match g {
        GroupType::G2 | GroupType::F4 => Ok(()),
        _ => Err(Error::Refused {
            group: g,
            reason: "the closed-subset poset is only constructed for G2 and F4; for E6, E7 and E8 the \
                     candidate submatrices of P are far too numerous (already about 6e14 seven-row subsets for E6)"
                .into(),
        }),
    }
}

/// Builds the poset from scratch (G2 and F4 only).
pub fn build_m_poset(ws: &WeightSystem) -> Result<MPoset> {
    ensure_supported(ws.group)?;
    let p = build_p_matrix(ws);
    let lattices = enumerate_lattices(&p)?;
    let nodes = lattices
        .into_par_iter()
        .map(|(basis, gens)| node_from_basis(basis, gens, &p, ws))
        .collect::<Result<Vec<_>>>()?;
    MPoset::from_nodes(p, ws.clone(), nodes)
}

impl MPoset {
    /// Sorts the nodes canonically and derives the order and Möbius data.
    pub(crate) fn from_nodes(p: PMatrix, ws: WeightSystem, mut nodes: Vec<MNode>) -> Result<Self> {
        nodes.sort_by(|a, b| (a.rowset.len(), &a.rowset).cmp(&(b.rowset.len(), &b.rowset)));
        let n = nodes.len();
        let mut by_rowset = HashMap::with_capacity(n);
        for (i, node) in nodes.iter().enumerate() {
            if by_rowset.insert(node.rowset.clone(), i).is_some() {
                return Err(Error::Integrity(format!("rowset {:?} appears twice", node.rowset)));
            }
        }
        let mut containing = vec![FixedBitSet::with_capacity(n); p.len()];
        for (i, node) in nodes.iter().enumerate() {
            for &r in &node.rowset {
                containing[r].insert(i);
            }
        }
        let cols = p.ncols();
        let mut types: Vec<KernelType> = nodes.iter().map(|nd| KernelType::of(nd, cols)).collect();
        types.sort();
        types.dedup();
        let type_index: HashMap<&KernelType, usize> = types.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let node_type: Vec<usize> = nodes.iter().map(|nd| type_index[&KernelType::of(nd, cols)]).collect();
        let mut poset =
            MPoset { p, ws, nodes, by_rowset, containing, types, node_type, f_coeffs: vec![Vec::new(); n] };
        poset.compute_f_coeffs()?;
        Ok(poset)
    }

    /// `c_S = e_type(S) - sum_{T < S} c_T`, largest rowsets first. This is
    /// the Möbius inversion of `g = sum_{T ⪯ S} f` carried out on the kernel
    /// types instead of on numbers.
    fn compute_f_coeffs(&mut self) -> Result<()> {
        let n = self.nodes.len();
        let ntypes = self.types.len();
        let mut by_size: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, nd) in self.nodes.iter().enumerate() {
            by_size.entry(nd.rowset.len()).or_default().push(i);
        }
        for (_, level) in by_size.into_iter().rev() {
            let computed: Vec<Result<Vec<(usize, i64)>>> = level
                .par_iter()
                .map(|&s| {
                    let mut acc = vec![0i128; ntypes];
                    for t in self.down_set(s).ones() {
                        if t != s {
                            for &(ty, c) in &self.f_coeffs[t] {
                                acc[ty] -= c as i128;
                            }
                        }
                    }
                    acc[self.node_type[s]] += 1;
                    acc.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(ty, &c)| Ok((ty, i64::try_from(c).map_err(|_| overflow("Möbius coefficients"))?)))
                        .collect()
                })
                .collect();
            for (&s, c) in level.iter().zip(computed) {
                self.f_coeffs[s] = c?;
            }
        }
        debug_assert_eq!(self.f_coeffs.len(), n);
        Ok(())
    }

    pub fn group(&self) -> GroupType {
        self.p.group
    }

    pub fn p_matrix(&self) -> &PMatrix {
        &self.p
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.ws
    }

    pub fn nodes(&self) -> &[MNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ncols(&self) -> usize {
        self.p.ncols()
    }

    /// Largest generator count over all nodes.
    pub fn r(&self) -> usize {
        self.nodes.iter().map(|n| n.generators.len()).max().unwrap_or(0).max(1)
    }

    /// `s` of the empty node: the eigenvalue count of a generic torus point.
    pub fn s_max(&self) -> u32 {
        self.nodes[0].svalue
    }

    pub fn find(&self, rowset: &[usize]) -> Option<usize> {
        self.by_rowset.get(rowset).copied()
    }

    /// `t ⪯ s`: the rowset of `t` contains that of `s`.
    pub fn precedes(&self, t: usize, s: usize) -> bool {
        self.nodes[s].rowset.iter().all(|&r| self.containing[r].contains(t))
    }

    /// Nodes whose rowsets contain all of `rows`.
    pub fn containing_rows(&self, rows: &[usize]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.nodes.len());
        set.insert_range(..);
        for &r in rows {
            set.intersect_with(&self.containing[r]);
        }
        set
    }

    /// `{T : T ⪯ S}`, including `S`.
    pub fn down_set(&self, s: usize) -> FixedBitSet {
        self.containing_rows(&self.nodes[s].rowset)
    }

    pub fn kernel_types(&self) -> &[KernelType] {
        &self.types
    }

    /// `f(S)` as `(type index, coefficient)` pairs.
    pub fn f_coefficients(&self, s: usize) -> &[(usize, i64)] {
        &self.f_coeffs[s]
    }

    pub fn g_m(&self, s: usize, m: u64) -> Result<BigUint> {
        self.nodes[s].g_m(self.ncols(), m)
    }

    pub fn g_sym(&self, s: usize) -> GcdExpression {
        self.nodes[s].g_sym(self.ncols())
    }

    /// Number of torus points of order dividing `m` whose vanishing rows are
    /// exactly the rowset of `S`.
    pub fn f_m(&self, s: usize, m: u64) -> BigInt {
        self.f_coeffs[s].iter().map(|&(t, c)| self.types[t].eval(m) * c).sum()
    }

    pub fn f_sym(&self, s: usize) -> GcdExpression {
        let mut e = GcdExpression::zero();
        for &(t, c) in &self.f_coeffs[s] {
            let ty = &self.types[t];
            e.add_term(BigRational::from_integer(c.into()), ty.power, &ty.divisors);
        }
        e
    }

    /// `μ(T, S)` for every `T ⪯ S`, from `μ(S,S) = 1` and
    /// `μ(T,S) = -sum_{T < U ⪯ S} μ(U,S)`.
    pub fn mobius_column(&self, s: usize) -> Vec<(usize, i64)> {
        let mut down: Vec<usize> = self.down_set(s).ones().collect();
        down.sort_by_key(|&t| self.nodes[t].rowset.len());
        let mut mu: Vec<(usize, i64)> = Vec::with_capacity(down.len());
        for &t in &down {
            if t == s {
                mu.push((t, 1));
                continue;
            }
            let sum: i64 = mu.iter().filter(|&&(u, _)| self.precedes(t, u)).map(|&(_, v)| v).sum();
            mu.push((t, -sum));
        }
        mu
    }

    pub fn mobius(&self, t: usize, s: usize) -> i64 {
        if !self.precedes(t, s) {
            return 0;
        }
        self.mobius_column(s).into_iter().find(|&(u, _)| u == t).map(|(_, v)| v).unwrap_or(0)
    }

    /// `f_m(S) = sum_{T ⪯ S} μ(T,S) g_m(T)`, evaluated literally.
    pub fn f_m_by_mobius(&self, s: usize, m: u64) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (t, mu) in self.mobius_column(s) {
            total += BigInt::from(self.g_m(t, m)?) * mu;
        }
        Ok(total)
    }
}
