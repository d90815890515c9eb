//! Class census for E7 and E8 without storing the group.
//!
//! With `H` the parabolic subgroup on all nodes but the last and `f` a class
//! function, the double coset `H b H` contributes `[H b H : H]` copies of the
//! multiset `{ f(b h) : h in H }`, because `f(h1 b h2) = f(b h2 h1)`. So the
//! whole group is covered by `|H|` products per double coset; for E8 that is
//! 5 * 2903040 elements instead of 696729600. Elements are handled as
//! permutations of the signed weights, composed left to right.

use std::collections::{HashMap, VecDeque};

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::rootdata::GroupType;

use super::classes::{charpoly_from_traces, ConjugacyClass, ConjugacyClassTable, Fingerprint};
use super::element::{compact_cycle_counts, WeylGroup};

type Perm = Vec<u8>;
type Key = [u8; 64];

const MAX_CYCLE_PAIRS: usize = 24;
const TRACE_OFFSET: usize = 2 * MAX_CYCLE_PAIRS;

struct Points {
    vectors: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// Coordinates of each point in the basis of spanning weights.
    coef: Vec<Vec<i64>>,
    basis: Vec<usize>,
}

impl Points {
    fn new(wg: &WeylGroup) -> Result<Points> {
        let ws = wg.weights();
        let mut vectors = Vec::with_capacity(2 * ws.u());
        for v in &ws.vectors {
            vectors.push(v.clone());
            vectors.push(v.iter().map(|x| -x).collect());
        }
        let index = vectors.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let b: Vec<Vec<i64>> = ws.spanning.iter().map(|&i| ws.vectors[i].clone()).collect();
        let inv = integer_inverse(&b)?;
        let coef = vectors
            .iter()
            .map(|p| (0..b.len()).map(|j| p.iter().zip(&inv).map(|(x, row)| x * row[j]).sum()).collect())
            .collect();
        let basis = ws.spanning.iter().map(|&i| 2 * i).collect();
        Ok(Points { vectors, index, coef, basis })
    }

    fn image(&self, v: &[i64], m: &Matrix<i64>) -> Result<usize> {
        let img = m.vec_mul(v).map_err(|_| Error::Integrity("overflow".into()))?;
        self.index.get(&img).copied().ok_or_else(|| Error::Integrity(format!("{:?} is not a weight", img)))
    }

    fn generator_perm(&self, wg: &WeylGroup, i: usize) -> Result<Perm> {
        self.vectors.iter().map(|v| self.image(v, wg.generator(i)).map(|p| p as u8)).collect()
    }
}

fn integer_inverse(b: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = b.len();
    let zero = Ratio::from_integer(0);
    let mut a: Vec<Vec<Ratio<i64>>> = b
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.extend((0..n).map(|j| Ratio::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != zero).ok_or_else(|| Error::Integrity("singular weight basis".into()))?;
        a.swap(c, p);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c && a[r][c] != zero {
                let f = a[r][c];
                let src = a[c].clone();
                for (x, s) in a[r].iter_mut().zip(src) {
                    *x -= f * s;
                }
            }
        }
    }
    a.iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|q| if q.is_integer() { Ok(q.to_integer()) } else { Err(Error::Integrity("weight basis is not unimodular".into())) })
                .collect()
        })
        .collect()
}

fn then(a: &[u8], b: &[u8]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

/// All elements of the parabolic subgroup on nodes `1..=nodes`, with words.
fn parabolic_elements(gens: &[Perm], nodes: usize) -> (Vec<Perm>, Vec<Vec<usize>>) {
    let id: Perm = (0..gens[0].len() as u8).collect();
    let mut perms = vec![id.clone()];
    let mut words = vec![Vec::new()];
    let mut seen: HashMap<Perm, ()> = HashMap::from([(id, ())]);
    let mut head = 0;
    while head < perms.len() {
        for i in 1..=nodes {
            let p = then(&perms[head], &gens[i - 1]);
            if !seen.contains_key(&p) {
                seen.insert(p.clone(), ());
                let mut w = words[head].clone();
                w.push(i);
                perms.push(p);
                words.push(w);
            }
        }
        head += 1;
    }
    (perms, words)
}

/// Right coset representatives of `W_(k-1)` in `W_k`, indexed by the orbit
/// of the fundamental weight `omega_k` under `s_1 .. s_k`.
fn transversal(wg: &WeylGroup, gens: &[Perm], k: usize) -> Vec<(Vec<i64>, Vec<usize>, Perm)> {
    let l = wg.rank();
    let mut start = vec![0i64; l];
    start[k - 1] = 1;
    let id: Perm = (0..gens[0].len() as u8).collect();
    let mut out = vec![(start.clone(), Vec::new(), id)];
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::from([(start, ())]);
    let mut head = 0;
    while head < out.len() {
        for i in 1..=k {
            let v = wg.generator(i).vec_mul(&out[head].0).expect("small weights");
            if !seen.contains_key(&v) {
                seen.insert(v.clone(), ());
                let mut w = out[head].1.clone();
                w.push(i);
                let p = then(&out[head].2, &gens[i - 1]);
                out.push((v, w, p));
            }
        }
        head += 1;
    }
    out
}

#[derive(Clone, Copy)]
struct Bucket {
    count: u64,
    first: (u32, u32, u32),
}

fn merge(mut a: HashMap<Key, Bucket>, b: HashMap<Key, Bucket>) -> HashMap<Key, Bucket> {
    for (k, v) in b {
        a.entry(k)
            .and_modify(|e| {
                e.count += v.count;
                e.first = e.first.min(v.first);
            })
            .or_insert(v);
    }
    a
}

fn analyze(p: &[u8], points: &Points, l: usize) -> Option<Key> {
    let mut key = [0u8; 64];
    let mut seen = [false; 256];
    let mut counts = [0u8; 256];
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0usize;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        counts[len] += 1;
    }
    let mut slot = 0;
    for (len, &c) in counts.iter().enumerate() {
        if c > 0 {
            if slot == MAX_CYCLE_PAIRS {
                return None;
            }
            key[2 * slot] = len as u8;
            key[2 * slot + 1] = c;
            slot += 1;
        }
    }
    let mut tr = [0i64; 8];
    for (i, &b) in points.basis.iter().enumerate() {
        let mut x = b;
        for t in tr.iter_mut().take(l) {
            x = p[x] as usize;
            *t += points.coef[x][i];
        }
    }
    for (k, t) in tr.iter().take(l).enumerate() {
        key[TRACE_OFFSET + k] = *t as i8 as u8;
    }
    Some(key)
}

fn decode(key: &Key, l: usize) -> Fingerprint {
    let mut counts = vec![0u32; 256];
    for s in 0..MAX_CYCLE_PAIRS {
        if key[2 * s] > 0 {
            counts[key[2 * s] as usize] = u32::from(key[2 * s + 1]);
        }
    }
    let traces: Vec<i64> = (0..l).map(|k| i64::from(key[TRACE_OFFSET + k] as i8)).collect();
    Fingerprint { cycle_type: compact_cycle_counts(&counts), charpoly: charpoly_from_traces(&traces) }
}

/// Shorten `m` by conjugating with simple reflections while that helps.
fn shorten(wg: &WeylGroup, m: &Matrix<i64>) -> Matrix<i64> {
    let mut cur = m.clone();
    let mut len = wg.length(&cur);
    'outer: loop {
        for i in 1..=wg.rank() {
            let c = wg.conjugate_by_generator(i, &cur);
            let cl = wg.length(&c);
            if cl < len {
                cur = c;
                len = cl;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Conjugacy classes of `W(E7)` or `W(E8)`, separated by [`Fingerprint`].
///
/// Fails if the fingerprint does not separate the expected number of
/// classes. Representatives are the first element met in each class,
/// shortened by conjugation and written as a reduced word.
pub fn class_census(wg: &WeylGroup) -> Result<ConjugacyClassTable> {
    let g = wg.group();
    if !matches!(g, GroupType::E7 | GroupType::E8) {
        return Err(Error::Refused { group: g, reason: "the census covers E7 and E8; enumerate smaller groups".into() });
    }
    let l = wg.rank();
    let points = Points::new(wg)?;
    let gens: Vec<Perm> = (1..=l).map(|i| points.generator_perm(wg, i)).collect::<Result<_>>()?;
    let (base, base_words) = parabolic_elements(&gens, 6);

    let id: Perm = (0..points.vectors.len() as u8).collect();
    let mut middle: Vec<(Vec<usize>, Perm)> = vec![(Vec::new(), id)];
    for k in 7..l {
        let t = transversal(wg, &gens, k);
        middle = middle
            .iter()
            .flat_map(|(w1, p1)| {
                t.iter().map(move |(_, w2, p2)| {
                    let mut w = w1.clone();
                    w.extend_from_slice(w2);
                    (w, then(p1, p2))
                })
            })
            .collect();
    }

    // Double cosets: orbits of the parabolic on the top transversal.
    let top = transversal(wg, &gens, l);
    let pos: HashMap<&Vec<i64>, usize> = top.iter().enumerate().map(|(i, t)| (&t.0, i)).collect();
    let mut orbit_of = vec![usize::MAX; top.len()];
    let mut doubles: Vec<(usize, u64)> = Vec::new();
    for s in 0..top.len() {
        if orbit_of[s] != usize::MAX {
            continue;
        }
        orbit_of[s] = s;
        let mut size = 1u64;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for i in 1..l {
                let v = wg.generator(i).vec_mul(&top[x].0).expect("small weights");
                let y = pos[&v];
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = s;
                    size += 1;
                    queue.push_back(y);
                }
            }
        }
        doubles.push((s, size));
    }
    let h_order = (base.len() * middle.len()) as u64;
    let covered: u64 = doubles.iter().map(|d| d.1).sum::<u64>() * h_order;
    if covered != g.weyl_order() {
        return Err(Error::Integrity(format!("double cosets cover {} elements, |W| = {}", covered, g.weyl_order())));
    }

    let mut buckets: HashMap<Key, Bucket> = HashMap::new();
    for (bi, &(b, weight)) in doubles.iter().enumerate() {
        let bp = &top[b].2;
        let local = (0..base.len())
            .into_par_iter()
            .try_fold(HashMap::new, |mut map: HashMap<Key, Bucket>, ei| {
                let q = then(bp, &base[ei]);
                for (ci, (_, cp)) in middle.iter().enumerate() {
                    let p = then(&q, cp);
                    let key = analyze(&p, &points, l)
                        .ok_or_else(|| Error::Integrity("too many distinct cycle lengths".into()))?;
                    let first = (bi as u32, ei as u32, ci as u32);
                    map.entry(key)
                        .and_modify(|e| {
                            e.count += weight;
                            e.first = e.first.min(first);
                        })
                        .or_insert(Bucket { count: weight, first });
                }
                Ok::<_, Error>(map)
            })
            .try_reduce(HashMap::new, |a, b| Ok(merge(a, b)))?;
        buckets = merge(buckets, local);
    }

    if buckets.len() != g.class_count() {
        return Err(Error::Integrity(format!(
            "fingerprints separate {} classes of {}, expected {}",
            buckets.len(),
            g,
            g.class_count()
        )));
    }
    let mut classes = Vec::with_capacity(buckets.len());
    for (key, bucket) in buckets {
        let (bi, ei, ci) = bucket.first;
        let mut word = top[doubles[bi as usize].0].1.clone();
        word.extend_from_slice(&base_words[ei as usize]);
        word.extend_from_slice(&middle[ci as usize].0);
        let raw = wg.element(&word)?;
        let rep = wg.from_kaction(&shorten(wg, &raw.kaction))?;
        if Fingerprint::of(wg, &rep) != decode(&key, l) {
            return Err(Error::Integrity(format!("fingerprint of {} changed under conjugation", rep.word_string())));
        }
        classes.push(ConjugacyClass { size: bucket.count, representative: rep });
    }
    let mut t = ConjugacyClassTable { group: g, classes };
    t.canonicalize();
    Ok(t)
}
