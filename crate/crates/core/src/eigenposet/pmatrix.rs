use std::collections::HashMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactlin::{sign_normalize, IntMatrix};
use crate::rootdata::{GroupType, WeightSystem};
use crate::weylgroup::WeylElement;

/// Which eigenvalue coincidence a `P` row encodes (one-based weight indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowTag {
    /// `v_i + v_j`
    Sum(usize, usize),
    /// `v_i - v_j`
    Diff(usize, usize),
    /// `v_i`
    Single(usize),
    /// `2 v_i`
    Double(usize),
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowTag::Sum(i, j) => write!(f, "v{}+v{}", i, j),
            RowTag::Diff(i, j) => write!(f, "v{}-v{}", i, j),
            RowTag::Single(i) => write!(f, "v{}", i),
            RowTag::Double(i) => write!(f, "2v{}", i),
        }
    }
}

/// The distinct (up to sign) vectors `v_i ± v_j`, `v_i`, `2 v_i`.
///
/// A torus point `k` has a repeated eigenvalue exactly when some row `p`
/// satisfies `p . k ≡ 0`. Every algebraic form that produced a row is kept
/// in its tag list, so coincidences like `v_1 + v_2 = v_3` lose nothing.
#[derive(Debug, Clone)]
pub struct PMatrix {
    pub group: GroupType,
    pub rows: Vec<Vec<i64>>,
    pub tags: Vec<Vec<RowTag>>,
    index: HashMap<Vec<i64>, usize>,
}

impl PMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ncols(&self) -> usize {
        self.group.rank()
    }

    /// Row index of `±v`.
    pub fn find(&self, v: &[i64]) -> Option<usize> {
        self.index.get(&sign_normalize(v)).copied()
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_i64_rows(self.ncols(), &self.rows)
    }

    /// Stacked rows of a row subset.
    pub fn submatrix(&self, rows: &[usize]) -> IntMatrix {
        let sel: Vec<&Vec<i64>> = rows.iter().map(|&i| &self.rows[i]).collect();
        IntMatrix::from_i64_rows(self.ncols(), &sel)
    }

    /// One row per line, entries space separated.
    pub fn canonical_text(&self) -> String {
        let mut s = format!("{} {}\n", self.group, self.ncols());
        for r in &self.rows {
            let t: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&t.join(" "));
            s.push('\n');
        }
        s
    }

    /// SHA-256 of [`canonical_text`](Self::canonical_text), hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }
}

/// Rows in generation order: `v_1 .. v_u`, then for each `i`: `2 v_i`, and
/// `v_i - v_j`, `v_i + v_j` for `j > i`. Repeats (up to sign) only add a tag.
pub fn build_p_matrix(ws: &WeightSystem) -> PMatrix {
    let mut p = PMatrix { group: ws.group, rows: Vec::new(), tags: Vec::new(), index: HashMap::new() };
    let push = |p: &mut PMatrix, v: Vec<i64>, tag: RowTag| {
        if v.iter().all(|&x| x == 0) {
            return;
        }
        let key = sign_normalize(&v);
        match p.index.get(&key) {
            Some(&i) => {
                if !p.tags[i].contains(&tag) {
                    p.tags[i].push(tag);
                }
            }
            None => {
                p.index.insert(key.clone(), p.rows.len());
                p.rows.push(key);
                p.tags.push(vec![tag]);
            }
        }
    };
    let u = ws.u();
    for i in 0..u {
        push(&mut p, ws.vectors[i].clone(), RowTag::Single(i + 1));
    }
    for i in 0..u {
        let vi = &ws.vectors[i];
        push(&mut p, vi.iter().map(|x| 2 * x).collect(), RowTag::Double(i + 1));
        for j in i + 1..u {
            let vj = &ws.vectors[j];
            push(&mut p, vi.iter().zip(vj).map(|(a, b)| a - b).collect(), RowTag::Diff(i + 1, j + 1));
            push(&mut p, vi.iter().zip(vj).map(|(a, b)| a + b).collect(), RowTag::Sum(i + 1, j + 1));
        }
    }
    p
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Number of distinct eigenvalues of a torus point whose set of vanishing
/// `P` rows is exactly `rowset`.
///
/// Builds the equivalence on `H = {0, ½, 1..u}` witnessed by the row tags
/// and applies the count for the group type. For E6, `H = {1..u}` and only
/// difference rows matter. For E7 the count is
/// `2|H/≡| - 4 + [|[0]| > 1] + [|[½]| > 1]`, which covers the case
/// `|[0]| > 1, |[½]| = 1` as `2|H/≡| - 3`.
pub fn s_value(rowset: &[usize], p: &PMatrix, ws: &WeightSystem) -> u32 {
    let u = ws.u();
    let in_set = {
        let mut v = vec![false; p.len()];
        for &r in rowset {
            v[r] = true;
        }
        v
    };
    const ZERO: usize = 0;
    const HALF: usize = 1;
    let h = |i: usize| i + 1; // weight i (one-based) -> H slot
    let mut uf = UnionFind::new(u + 2);
    if p.group == GroupType::E6 {
        for &r in rowset {
            for t in &p.tags[r] {
                if let RowTag::Diff(i, j) = *t {
                    uf.union(h(i), h(j));
                }
            }
        }
        let classes: std::collections::HashSet<usize> = (1..=u).map(|i| uf.find(h(i))).collect();
        return classes.len() as u32;
    }
    let single_row: Vec<Option<usize>> = (1..=u).map(|i| p.find(&ws.vectors[i - 1])).collect();
    for &r in rowset {
        for t in &p.tags[r] {
            match *t {
                RowTag::Sum(i, j) | RowTag::Diff(i, j) => uf.union(h(i), h(j)),
                RowTag::Single(i) => uf.union(h(i), ZERO),
                RowTag::Double(i) => {
                    let has_single = single_row[i - 1].map(|s| in_set[s]).unwrap_or(false);
                    if !has_single {
                        uf.union(h(i), HALF);
                    }
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..u + 2).map(|x| uf.find(x)).collect();
    let zero_big = roots.iter().filter(|&&r| r == roots[ZERO]).count() > 1;
    let half_big = roots.iter().filter(|&&r| r == roots[HALF]).count() > 1;
    roots.sort_unstable();
    roots.dedup();
    let classes = roots.len() as i64;
    let s = if ws.one_slots > 0 {
        2 * classes - 3 + i64::from(half_big)
    } else {
        2 * classes - 4 + i64::from(zero_big) + i64::from(half_big)
    };
    s as u32
}

/// Rows whose vanishing defines the fixed locus of `w`: for each spanning
/// index `i`, `2 v_i` if `sigma(i) = -i` and `v_i ∓ v_j` if `sigma(i) = ±j`,
/// `j != i`. Sorted row indices, without repeats.
pub fn s_w(w: &WeylElement, ws: &WeightSystem, p: &PMatrix) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for &i in &ws.spanning {
        let img = w.sigma.image(i + 1);
        let j = img.unsigned_abs() as usize - 1;
        let sign = img.signum() as i64;
        let v: Vec<i64> = if j == i {
            if sign > 0 {
                continue;
            }
            ws.vectors[i].iter().map(|x| 2 * x).collect()
        } else {
            ws.vectors[i].iter().zip(&ws.vectors[j]).map(|(a, b)| a - sign * b).collect()
        };
        let r = p
            .find(&v)
            .ok_or_else(|| Error::Integrity(format!("{:?} from element {} is not a row of P", v, w.word_string())))?;
        out.push(r);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
