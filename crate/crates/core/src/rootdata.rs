//! Root and weight data for the exceptional types.
//!
//! Simple roots are numbered in the Bourbaki convention:
//!
//! ```text
//! G2:  1 ≡> 2          (1 short)        F4:  1 - 2 => 3 - 4   (3, 4 short)
//!
//! E6..E8:  1 - 3 - 4 - 5 - 6 - 7 - 8
//!                  |
//!                  2
//! ```
//!
//! Weights are written in fundamental-weight coordinates, so the weight
//! `v` contributes the torus eigenvalue `exp(2 pi i v.k)` at the point with
//! coordinates `k` along the simple coroots. Everything here is generated
//! from the Cartan matrix alone.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exactlin::{hnf_rows, rhnf, sign_normalize, small_divisors, IntMatrix, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupType {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl GroupType {
    pub const ALL: [GroupType; 5] = [GroupType::G2, GroupType::F4, GroupType::E6, GroupType::E7, GroupType::E8];

    pub fn rank(self) -> usize {
        match self {
            GroupType::G2 => 2,
            GroupType::F4 => 4,
            GroupType::E6 => 6,
            GroupType::E7 => 7,
            GroupType::E8 => 8,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(self) -> u64 {
        match self {
            GroupType::G2 => 12,
            GroupType::F4 => 1152,
            GroupType::E6 => 51_840,
            GroupType::E7 => 2_903_040,
            GroupType::E8 => 696_729_600,
        }
    }

    /// Number of conjugacy classes of the Weyl group.
    pub fn class_count(self) -> usize {
        match self {
            GroupType::G2 => 6,
            GroupType::F4 => 25,
            GroupType::E6 => 25,
            GroupType::E7 => 60,
            GroupType::E8 => 112,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupType::G2 => "G2",
            GroupType::F4 => "F4",
            GroupType::E6 => "E6",
            GroupType::E7 => "E7",
            GroupType::E8 => "E8",
        }
    }

    /// Highest weight of the smallest faithful representation.
    fn dominant_weight(self) -> Vec<i64> {
        let mut w = vec![0; self.rank()];
        match self {
            GroupType::G2 | GroupType::E6 => w[0] = 1,
            GroupType::F4 | GroupType::E7 | GroupType::E8 => *w.last_mut().unwrap() = 1,
        }
        w
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "G2" => Ok(GroupType::G2),
            "F4" => Ok(GroupType::F4),
            "E6" => Ok(GroupType::E6),
            "E7" => Ok(GroupType::E7),
            "E8" => Ok(GroupType::E8),
            _ => Err(Error::UnknownGroup(s.to_string())),
        }
    }
}

/// Row `i` is the simple root `alpha_i` in fundamental-weight coordinates,
/// i.e. entry `(i, j)` is `<alpha_i, alpha_j^vee>`.
pub fn cartan_rows(g: GroupType) -> Vec<Vec<i64>> {
    match g {
        GroupType::G2 => vec![vec![2, -1], vec![-3, 2]],
        GroupType::F4 => vec![vec![2, -1, 0, 0], vec![-1, 2, -2, 0], vec![0, -1, 2, -1], vec![0, 0, -1, 2]],
        GroupType::E6 | GroupType::E7 | GroupType::E8 => {
            let n = g.rank();
            let mut a = vec![vec![0; n]; n];
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = 2;
            }
            let mut edges = vec![(1, 3), (3, 4), (2, 4), (4, 5)];
            edges.extend((5..n).map(|i| (i, i + 1)));
            for (i, j) in edges {
                a[i - 1][j - 1] = -1;
                a[j - 1][i - 1] = -1;
            }
            a
        }
    }
}

pub fn cartan_matrix(g: GroupType) -> IntMatrix {
    IntMatrix::from_i64_rows(g.rank(), &cartan_rows(g))
}

/// Simple reflection `s_i` acting on a weight (fundamental-weight coordinates).
pub fn reflect(cartan: &[Vec<i64>], i: usize, weight: &[i64]) -> Vec<i64> {
    let c = weight[i];
    weight.iter().zip(&cartan[i]).map(|(w, a)| w - c * a).collect()
}

/// Matrix of `s_i` acting on row vectors from the right: `v -> v * M`.
pub fn reflection_matrix(cartan: &[Vec<i64>], i: usize) -> Matrix<i64> {
    let n = cartan.len();
    let mut m = Matrix::<i64>::identity(n);
    for (j, a) in cartan[i].iter().enumerate() {
        let v = *m.get(i, j) - a;
        m.set(i, j, v);
    }
    m
}

/// Weyl orbit of `start` under the simple reflections, breadth-first.
pub fn weyl_orbit(cartan: &[Vec<i64>], start: &[i64]) -> Vec<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    while let Some(w) = queue.pop_front() {
        for i in 0..cartan.len() {
            let r = reflect(cartan, i, &w);
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
        order.push(w);
    }
    order
}

/// The torus exponent vectors of the smallest faithful representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    pub group: GroupType,
    /// `v_1 .. v_u`, one per `±` pair for paired types.
    pub vectors: Vec<Vec<i64>>,
    /// Number of constant-1 diagonal slots (zero weights).
    pub one_slots: usize,
    /// Diagonal comes in `exp(±2 pi i P_j)` pairs.
    pub paired: bool,
    /// `l` zero-based indices into `vectors` whose rows span the weight lattice.
    pub spanning: Vec<usize>,
}

impl WeightSystem {
    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn u(&self) -> usize {
        self.vectors.len()
    }

    /// Locate `v` among the weights: `Some(j)` for `v_j`, `Some(-j)` for
    /// `-v_j` (paired types), one-based.
    pub fn locate(&self, v: &[i64]) -> Option<i64> {
        for (j, w) in self.vectors.iter().enumerate() {
            if w.as_slice() == v {
                return Some(j as i64 + 1);
            }
            if self.paired && w.iter().zip(v).all(|(a, b)| *a == -*b) {
                return Some(-(j as i64 + 1));
            }
        }
        None
    }

    /// Same data with a different spanning index list.
    pub fn with_spanning(&self, spanning: Vec<usize>) -> Result<WeightSystem> {
        let rows: Vec<&Vec<i64>> = spanning.iter().map(|&i| &self.vectors[i]).collect();
        let sub = IntMatrix::from_i64_rows(self.rank(), &rows);
        if spanning.len() != self.rank() || rhnf(&sub) != rhnf(&self.stack()) {
            return Err(Error::Integrity(format!("indices {:?} do not span the weight lattice", spanning)));
        }
        Ok(WeightSystem { spanning, ..self.clone() })
    }

    /// All weight vectors stacked as a `u x l` matrix.
    pub fn stack(&self) -> IntMatrix {
        IntMatrix::from_i64_rows(self.rank(), &self.vectors)
    }
}

pub fn weight_system(g: GroupType) -> WeightSystem {
    let cartan = cartan_rows(g);
    let orbit = weyl_orbit(&cartan, &g.dominant_weight());
    let paired = g != GroupType::E6;
    let mut vectors: Vec<Vec<i64>> = Vec::new();
    let mut seen = HashSet::new();
    for w in orbit {
        let key = if paired { sign_normalize(&w) } else { w };
        if seen.insert(key.clone()) {
            vectors.push(key);
        }
    }
    let one_slots = match g {
        GroupType::G2 | GroupType::F4 => 1,
        GroupType::E6 | GroupType::E7 => 0,
        GroupType::E8 => 8,
    };
    let mut ws = WeightSystem { group: g, vectors, one_slots, paired, spanning: Vec::new() };
    ws.spanning = spanning_indices(&ws).expect("weight data always contains a lattice basis");
    ws
}

/// Lexicographically first `l`-subset of weights forming a basis of the
/// lattice spanned by all weights (zero-based indices).
pub fn spanning_indices(ws: &WeightSystem) -> Result<Vec<usize>> {
    let l = ws.rank();
    let full = hnf_rows(ws.vectors.clone(), l).map_err(|_| Error::Integrity("overflow in weight lattice".into()))?;
    let unimodular = full.len() == l && (0..l).all(|i| full[i][i] == 1);
    let mut chosen = Vec::with_capacity(l);
    if search_basis(ws, unimodular, 0, &mut chosen) {
        Ok(chosen)
    } else {
        Err(Error::Integrity(format!("no {}-subset of the {} weights spans the weight lattice", l, ws.group)))
    }
}

fn search_basis(ws: &WeightSystem, unimodular: bool, from: usize, chosen: &mut Vec<usize>) -> bool {
    let l = ws.rank();
    if chosen.len() == l {
        let rows: Vec<&Vec<i64>> = chosen.iter().map(|&i| &ws.vectors[i]).collect();
        return rhnf(&IntMatrix::from_i64_rows(l, &rows)) == rhnf(&ws.stack());
    }
    for i in from..ws.u() {
        if ws.u() - i < l - chosen.len() {
            break;
        }
        chosen.push(i);
        let rows: Vec<Vec<i64>> = chosen.iter().map(|&j| ws.vectors[j].clone()).collect();
        let d = small_divisors(&Matrix::from_rows(l, &rows)).expect("small weight entries");
        // Part of a basis of Z^l iff independent and saturated.
        let ok = d.len() == chosen.len() && (!unimodular || d.iter().all(|&x| x == 1));
        if ok && search_basis(ws, unimodular, i + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Diagonal exponents of the torus element with coordinates `k_i / m`,
/// as rationals reduced into `[0, 1)`.
pub fn torus_eigen_exponents(ws: &WeightSystem, k: &[i64], m: i64) -> Vec<Ratio<i64>> {
    torus_exponent_residues(ws, k, m).into_iter().map(|r| Ratio::new(r, m)).collect()
}

/// Same as [`torus_eigen_exponents`] but as numerators modulo `m`.
pub fn torus_exponent_residues(ws: &WeightSystem, k: &[i64], m: i64) -> Vec<i64> {
    let mut out = vec![0; ws.one_slots];
    for v in &ws.vectors {
        let p: i64 = v.iter().zip(k).map(|(a, b)| a * b).sum::<i64>().rem_euclid(m);
        out.push(p);
        if ws.paired {
            out.push((-p).rem_euclid(m));
        }
    }
    out
}

/// Number of distinct eigenvalues of the torus element `t(k/m)`.
pub fn distinct_eigenvalues(ws: &WeightSystem, k: &[i64], m: i64) -> usize {
    let mut r = torus_exponent_residues(ws, k, m);
    r.sort_unstable();
    r.dedup();
    r.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::row_lattice_equal;
    use num_bigint::BigInt;

    #[test]
    fn cartan_determinants() {
        let g2 = cartan_matrix(GroupType::G2);
        assert_eq!(g2.determinant(), BigInt::from(1));
        assert_eq!(g2.get(0, 1) * g2.get(1, 0), BigInt::from(3));
        assert_eq!(cartan_matrix(GroupType::F4).determinant(), BigInt::from(1));
        assert_eq!(cartan_matrix(GroupType::E6).determinant(), BigInt::from(3));
        assert_eq!(cartan_matrix(GroupType::E7).determinant(), BigInt::from(2));
        assert_eq!(cartan_matrix(GroupType::E8).determinant(), BigInt::from(1));
        for g in GroupType::ALL {
            let c = cartan_matrix(g);
            assert!((0..g.rank()).all(|i| *c.get(i, i) == BigInt::from(2)));
        }
    }

    #[test]
    fn g2_weights_match_the_seven_dimensional_torus() {
        let ws = weight_system(GroupType::G2);
        assert_eq!(ws.vectors, vec![vec![1, 0], vec![1, -1], vec![2, -1]]);
        assert_eq!(ws.spanning, vec![0, 1]);
        assert!(ws.paired);
        assert_eq!(ws.one_slots, 1);
    }

    #[test]
    fn weight_counts() {
        let expect = [(GroupType::G2, 3, 1, true), (GroupType::F4, 12, 1, true), (GroupType::E6, 27, 0, false),
            (GroupType::E7, 28, 0, true), (GroupType::E8, 120, 8, true)];
        for (g, u, ones, paired) in expect {
            let ws = weight_system(g);
            assert_eq!(ws.u(), u, "{}", g);
            assert_eq!(ws.one_slots, ones);
            assert_eq!(ws.paired, paired);
        }
    }

    #[test]
    fn weights_are_distinct_nonzero_and_unpaired_by_sign() {
        for g in GroupType::ALL {
            let ws = weight_system(g);
            let mut seen = HashSet::new();
            for v in &ws.vectors {
                assert!(v.iter().any(|&x| x != 0));
                if ws.paired {
                    assert_eq!(&sign_normalize(v), v);
                    assert!(seen.insert(v.clone()));
                } else {
                    let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                    assert!(!seen.contains(&neg), "E6 weights are never negatives of each other");
                    assert!(seen.insert(v.clone()));
                }
            }
        }
    }

    #[test]
    fn spanning_subsets_generate_the_full_stack() {
        for g in GroupType::ALL {
            let ws = weight_system(g);
            assert_eq!(ws.spanning.len(), g.rank());
            let rows: Vec<&Vec<i64>> = ws.spanning.iter().map(|&i| &ws.vectors[i]).collect();
            assert!(row_lattice_equal(&IntMatrix::from_i64_rows(g.rank(), &rows), &ws.stack()), "{}", g);
        }
    }

    #[test]
    fn g2_eigenvalue_counts() {
        let ws = weight_system(GroupType::G2);
        assert_eq!(distinct_eigenvalues(&ws, &[1, 0], 3), 3);
        assert_eq!(distinct_eigenvalues(&ws, &[0, 0], 7), 1);
        let ex = torus_eigen_exponents(&ws, &[1, 0], 2);
        assert_eq!(ex.len(), 7);
        assert_eq!(ex.iter().filter(|r| **r == Ratio::new(1, 2)).count(), 4);
        assert_eq!(distinct_eigenvalues(&ws, &[1, 0], 2), 2);
        for g in GroupType::ALL {
            let ws = weight_system(g);
            assert_eq!(distinct_eigenvalues(&ws, &vec![0; g.rank()], 5), 1);
        }
    }

    #[test]
    fn g2_torus_diagonal_matches_the_explicit_form() {
        // diag(e(k1), e(-(k1-k2)), e(2k1-k2), 1, e(-(2k1-k2)), e(k1-k2), e(-k1))
        let explicit = [vec![1, 0], vec![-1, 1], vec![2, -1], vec![-2, 1], vec![1, -1], vec![-1, 0]];
        let ws = weight_system(GroupType::G2);
        let mut ours: Vec<Vec<i64>> = ws.vectors.iter().flat_map(|v| [v.clone(), v.iter().map(|x| -x).collect()]).collect();
        let mut theirs = explicit.to_vec();
        ours.sort();
        theirs.sort();
        assert_eq!(ours, theirs);
    }

    #[test]
    fn group_names_round_trip() {
        for g in GroupType::ALL {
            assert_eq!(g.name().parse::<GroupType>().unwrap(), g);
        }
        assert!("A2".parse::<GroupType>().is_err());
    }
}
