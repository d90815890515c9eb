use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::rootdata::{cartan_rows, reflection_matrix, weight_system, weyl_orbit, GroupType, WeightSystem};

/// Signed permutation of the weight indices `1..u`.
///
/// `images[j-1] = ±k` means `v_j` is carried to `±v_k`. For E6 all signs are
/// positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    pub fn identity(u: usize) -> Self {
        SignedPermutation { images: (1..=u as i32).collect() }
    }

    /// Checks that the absolute values form a permutation of `1..u`.
    pub fn new(images: Vec<i32>) -> Result<Self> {
        let u = images.len();
        let mut seen = vec![false; u];
        for &x in &images {
            let k = x.unsigned_abs() as usize;
            if k == 0 || k > u || seen[k - 1] {
                return Err(Error::Integrity(format!("{:?} is not a signed permutation", images)));
            }
            seen[k - 1] = true;
        }
        Ok(SignedPermutation { images })
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the one-based index `j`.
    pub fn image(&self, j: usize) -> i32 {
        self.images[j - 1]
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &SignedPermutation) -> SignedPermutation {
        let images = self
            .images
            .iter()
            .map(|&x| x.signum() * other.images[x.unsigned_abs() as usize - 1])
            .collect();
        SignedPermutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i as i32 + 1)
    }

    /// `j -> -j` for every `j`.
    pub fn is_negation(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == -(i as i32 + 1))
    }

    pub fn is_unsigned(&self) -> bool {
        self.images.iter().all(|&x| x > 0)
    }

    /// Cycle type as sorted `(length, multiplicity)` pairs. With
    /// `signed_points` the permutation acts on the `2u` points `±v_j`,
    /// otherwise on the `u` indices (signs ignored).
    pub fn cycle_type(&self, signed_points: bool) -> Vec<(u32, u32)> {
        let u = self.images.len();
        let n = if signed_points { 2 * u } else { u };
        let map = |p: usize| -> usize {
            let (j, neg) = if signed_points { (p / 2, p % 2 == 1) } else { (p, false) };
            let x = self.images[j];
            let k = x.unsigned_abs() as usize - 1;
            if signed_points {
                2 * k + usize::from(neg != (x < 0))
            } else {
                k
            }
        };
        let mut seen = vec![false; n];
        let mut counts: Vec<u32> = vec![0; n + 1];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = map(p);
                len += 1;
            }
            counts[len] += 1;
        }
        compact_cycle_counts(&counts)
    }
}

pub(crate) fn compact_cycle_counts(counts: &[u32]) -> Vec<(u32, u32)> {
    counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(l, &c)| (l as u32, c)).collect()
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// An element of the Weyl group together with its two realizations.
///
/// `kaction` acts on weights written as row vectors: `v -> v * kaction`.
/// It satisfies `v_j * kaction = sign(sigma(j)) * v_|sigma(j)|`, and the
/// torus element `t(k)` is carried to `t(kaction * k)`, so the fixed points
/// of `w` are the kernel of `kaction - I` modulo `Z^l`. Words multiply left
/// to right: the element of `[a, b]` has `kaction = M_a * M_b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub group: GroupType,
    /// One-based simple reflection indices.
    pub word: Vec<usize>,
    pub kaction: Matrix<i64>,
    pub sigma: SignedPermutation,
}

impl WeylElement {
    pub fn is_identity(&self) -> bool {
        self.kaction.is_identity()
    }

    /// Element order, from the cycle type on the signed weights (the weight
    /// representation is faithful).
    pub fn order(&self) -> u64 {
        order_of_cycle_type(&self.sigma.cycle_type(true))
    }

    pub fn word_string(&self) -> String {
        format_word(&self.word)
    }
}

pub(crate) fn order_of_cycle_type(ct: &[(u32, u32)]) -> u64 {
    ct.iter().fold(1u64, |acc, &(l, _)| num_integer::lcm(acc, l as u64))
}

/// `"-"` for the empty word, space separated indices otherwise.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "-".to_string()
    } else {
        word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Product of two elements of the same group.
pub fn compose(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    if a.group != b.group {
        return Err(Error::Integrity(format!("cannot multiply elements of {} and {}", a.group, b.group)));
    }
    let kaction = a.kaction.checked_mul(&b.kaction).map_err(|_| Error::Integrity("overflow composing elements".into()))?;
    let mut word = a.word.clone();
    word.extend_from_slice(&b.word);
    Ok(WeylElement { group: a.group, word, kaction, sigma: a.sigma.then(&b.sigma) })
}

/// Generators, weights and root data for one Weyl group.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    ws: WeightSystem,
    generators: Vec<Matrix<i64>>,
    generator_sigma: Vec<SignedPermutation>,
    /// Simple roots in fundamental-weight coordinates (Cartan rows).
    simple_roots: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    /// Positive multiple of `C^-1 * 1`; `beta . height` has the sign of the
    /// height of the root `beta`.
    height: Vec<i64>,
    locator: HashMap<Vec<i64>, i32>,
}

impl WeylGroup {
    pub fn new(g: GroupType) -> Self {
        Self::with_weights(weight_system(g))
    }

    /// Build on a specific weight system (e.g. with another spanning set).
    pub fn with_weights(ws: WeightSystem) -> Self {
        let g = ws.group;
        let cartan = cartan_rows(g);
        let l = g.rank();
        let generators: Vec<Matrix<i64>> = (0..l).map(|i| reflection_matrix(&cartan, i)).collect();
        let mut locator = HashMap::new();
        for (j, v) in ws.vectors.iter().enumerate() {
            locator.insert(v.clone(), j as i32 + 1);
            if ws.paired {
                locator.insert(v.iter().map(|x| -x).collect(), -(j as i32 + 1));
            }
        }
        let height = height_vector(&cartan);
        let mut roots: Vec<Vec<i64>> = Vec::new();
        for a in &cartan {
            for r in weyl_orbit(&cartan, a) {
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        let positive_roots: Vec<Vec<i64>> = roots.into_iter().filter(|r| dot(r, &height) > 0).collect();
        let mut wg = WeylGroup {
            ws,
            generators,
            generator_sigma: Vec::new(),
            simple_roots: cartan,
            positive_roots,
            height,
            locator,
        };
        wg.generator_sigma = (0..l)
            .map(|i| wg.sigma_of(&wg.generators[i]).expect("simple reflections permute the weights"))
            .collect();
        wg
    }

    pub fn group(&self) -> GroupType {
        self.ws.group
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.ws
    }

    pub fn rank(&self) -> usize {
        self.ws.rank()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn generator(&self, i: usize) -> &Matrix<i64> {
        &self.generators[i - 1]
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            group: self.group(),
            word: Vec::new(),
            kaction: Matrix::identity(self.rank()),
            sigma: SignedPermutation::identity(self.ws.u()),
        }
    }

    /// The simple reflection `s_i`, `1 <= i <= l`.
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        if i == 0 || i > self.rank() {
            return Err(Error::Integrity(format!("{} has no simple reflection {}", self.group(), i)));
        }
        Ok(WeylElement {
            group: self.group(),
            word: vec![i],
            kaction: self.generators[i - 1].clone(),
            sigma: self.generator_sigma[i - 1].clone(),
        })
    }

    /// Element named by a word in the simple reflections.
    pub fn element(&self, word: &[usize]) -> Result<WeylElement> {
        let mut m = Matrix::<i64>::identity(self.rank());
        let mut sigma = SignedPermutation::identity(self.ws.u());
        for &i in word {
            if i == 0 || i > self.rank() {
                return Err(Error::Integrity(format!("{} has no simple reflection {}", self.group(), i)));
            }
            m = self.times_generator(&m, i);
            sigma = sigma.then(&self.generator_sigma[i - 1]);
        }
        Ok(WeylElement { group: self.group(), word: word.to_vec(), kaction: m, sigma })
    }

    /// Element with the given action matrix, named by its canonical reduced word.
    pub fn from_kaction(&self, m: &Matrix<i64>) -> Result<WeylElement> {
        let sigma = self.sigma_of(m)?;
        let word = self.reduced_word(m)?;
        Ok(WeylElement { group: self.group(), word, kaction: m.clone(), sigma })
    }

    pub fn inverse(&self, a: &WeylElement) -> WeylElement {
        let word: Vec<usize> = a.word.iter().rev().copied().collect();
        self.element(&word).expect("reversed word of a valid word")
    }

    /// `m * M_i`
    pub fn times_generator(&self, m: &Matrix<i64>, i: usize) -> Matrix<i64> {
        // M_i differs from the identity only in row i-1.
        let l = self.rank();
        let g = &self.generators[i - 1];
        let mut out = m.clone();
        for r in 0..l {
            let c = *m.get(r, i - 1);
            if c == 0 {
                continue;
            }
            for j in 0..l {
                if j != i - 1 {
                    let v = *out.get(r, j) + c * g.get(i - 1, j);
                    out.set(r, j, v);
                }
            }
            out.set(r, i - 1, -c);
        }
        out
    }

    /// `M_i * m`
    pub fn generator_times(&self, i: usize, m: &Matrix<i64>) -> Matrix<i64> {
        let l = self.rank();
        let mut out = m.clone();
        let cartan = &self.simple_roots[i - 1];
        // Row i-1 of M_i * m is (e_i - alpha_i) * m.
        for j in 0..l {
            let mut v = *m.get(i - 1, j);
            for (k, a) in cartan.iter().enumerate() {
                v -= a * m.get(k, j);
            }
            out.set(i - 1, j, v);
        }
        out
    }

    /// `M_i * m * M_i`
    pub fn conjugate_by_generator(&self, i: usize, m: &Matrix<i64>) -> Matrix<i64> {
        self.times_generator(&self.generator_times(i, m), i)
    }

    /// Locate `v_j * m` among the weights for every `j`.
    pub fn sigma_of(&self, m: &Matrix<i64>) -> Result<SignedPermutation> {
        let images = self
            .ws
            .vectors
            .iter()
            .map(|v| {
                let img = m.vec_mul(v).map_err(|_| Error::Integrity("overflow acting on a weight".into()))?;
                self.locator
                    .get(&img)
                    .copied()
                    .ok_or_else(|| Error::Integrity(format!("{:?} is not a weight of {}", img, self.group())))
            })
            .collect::<Result<Vec<i32>>>()?;
        SignedPermutation::new(images)
    }

    /// `v_j * kaction = ±v_sigma(j)` for all `j`.
    pub fn is_compatible(&self, w: &WeylElement) -> bool {
        self.ws.vectors.iter().enumerate().all(|(j, v)| {
            let s = w.sigma.images[j];
            let target = &self.ws.vectors[s.unsigned_abs() as usize - 1];
            match w.kaction.vec_mul(v) {
                Ok(img) => img.iter().zip(target).all(|(a, b)| *a == i64::from(s.signum()) * b),
                Err(_) => false,
            }
        })
    }

    fn root_is_negative(&self, beta: &[i64]) -> bool {
        dot(beta, &self.height) < 0
    }

    /// `alpha_i * m` is a negative root, i.e. `m` has a reduced word starting with `i`.
    pub fn has_left_descent(&self, m: &Matrix<i64>, i: usize) -> bool {
        let a = &self.simple_roots[i - 1];
        let mut img = vec![0i64; self.rank()];
        for (k, c) in a.iter().enumerate() {
            if *c != 0 {
                for (j, o) in img.iter_mut().enumerate() {
                    *o += c * m.get(k, j);
                }
            }
        }
        self.root_is_negative(&img)
    }

    /// Coxeter length: positive roots sent to negative roots.
    pub fn length(&self, m: &Matrix<i64>) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| m.vec_mul(r).map(|img| self.root_is_negative(&img)).unwrap_or(false))
            .count()
    }

    /// Reduced word that is lexicographically greatest among all reduced
    /// words of the element (greedy largest descent).
    pub fn reduced_word(&self, m: &Matrix<i64>) -> Result<Vec<usize>> {
        let mut cur = m.clone();
        let mut word = Vec::new();
        while !cur.is_identity() {
            let i = (1..=self.rank())
                .rev()
                .find(|&i| self.has_left_descent(&cur, i))
                .ok_or_else(|| Error::Integrity("matrix is not in the Weyl group".into()))?;
            word.push(i);
            cur = self.generator_times(i, &cur);
            if word.len() > self.positive_roots.len() {
                return Err(Error::Integrity("matrix is not in the Weyl group".into()));
            }
        }
        Ok(word)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integer positive multiple of `C^-1 * (1, .., 1)^T`.
fn height_vector(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    // Solve C y = 1 over the rationals.
    let mut a: Vec<Vec<Ratio<i64>>> = cartan
        .iter()
        .map(|row| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.push(Ratio::from_integer(1));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != Ratio::from_integer(0)).expect("Cartan matrices are invertible");
        a.swap(c, p);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c && a[r][c] != Ratio::from_integer(0) {
                let f = a[r][c];
                let src = a[c].clone();
                for (x, s) in a[r].iter_mut().zip(src) {
                    *x -= f * s;
                }
            }
        }
    }
    let y: Vec<Ratio<i64>> = a.iter().map(|r| r[n]).collect();
    let den = y.iter().fold(1i64, |acc, q| num_integer::lcm(acc, *q.denom()));
    y.iter().map(|q| (q * den).to_integer()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        let expect = [(GroupType::G2, 6), (GroupType::F4, 24), (GroupType::E6, 36), (GroupType::E7, 63), (GroupType::E8, 120)];
        for (g, n) in expect {
            assert_eq!(WeylGroup::new(g).positive_roots().len(), n, "{}", g);
        }
    }

    #[test]
    fn generator_products_agree_with_matrix_products() {
        let wg = WeylGroup::new(GroupType::F4);
        let m = wg.element(&[1, 2, 3, 4, 2]).unwrap().kaction;
        for i in 1..=4 {
            assert_eq!(wg.times_generator(&m, i), m.checked_mul(wg.generator(i)).unwrap());
            assert_eq!(wg.generator_times(i, &m), wg.generator(i).checked_mul(&m).unwrap());
        }
    }

    #[test]
    fn reduced_words() {
        let wg = WeylGroup::new(GroupType::G2);
        let w = wg.element(&[1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(wg.reduced_word(&w.kaction).unwrap(), vec![2, 1, 2, 1, 2, 1]);
        let w = wg.element(&[1, 1, 2]).unwrap();
        assert_eq!(wg.reduced_word(&w.kaction).unwrap(), vec![2]);
        assert_eq!(wg.length(&w.kaction), 1);
    }
}
