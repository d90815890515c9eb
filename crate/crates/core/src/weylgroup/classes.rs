use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::rootdata::GroupType;

use super::data::embedded_class_table;
use super::element::{order_of_cycle_type, WeylElement, WeylGroup};
use super::enumerate::{enumerate_group, GroupEnumeration};

/// Conjugation invariant used to tell classes apart: the cycle type on the
/// signed weights and the characteristic polynomial of the action matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub cycle_type: Vec<(u32, u32)>,
    /// `[1, c_1, .., c_l]` for `x^l + c_1 x^(l-1) + .. + c_l`.
    pub charpoly: Vec<i64>,
}

impl Fingerprint {
    pub fn of(wg: &WeylGroup, w: &WeylElement) -> Fingerprint {
        let l = wg.rank();
        let mut traces = Vec::with_capacity(l);
        let mut p = Matrix::<i64>::identity(l);
        for _ in 0..l {
            p = p.checked_mul(&w.kaction).expect("Weyl group matrices stay small");
            traces.push((0..l).map(|i| *p.get(i, i)).sum());
        }
        Fingerprint { cycle_type: w.sigma.cycle_type(wg.weights().paired), charpoly: charpoly_from_traces(&traces) }
    }

    pub fn order(&self) -> u64 {
        order_of_cycle_type(&self.cycle_type)
    }

    pub fn trace(&self) -> i64 {
        -self.charpoly[1]
    }

    pub fn determinant(&self) -> i64 {
        let n = self.charpoly.len() - 1;
        if n.is_multiple_of(2) {
            self.charpoly[n]
        } else {
            -self.charpoly[n]
        }
    }

    /// Points of the signed weight set fixed by the element.
    pub fn fixed_points(&self) -> u32 {
        self.cycle_type.iter().find(|(l, _)| *l == 1).map_or(0, |&(_, c)| c)
    }
}

/// Characteristic polynomial from the power traces `tr(M^1) .. tr(M^n)`
/// (Newton's identities).
pub fn charpoly_from_traces(traces: &[i64]) -> Vec<i64> {
    let mut c = vec![1i64];
    for k in 1..=traces.len() {
        let s: i64 = (1..=k).map(|i| c[k - i] * traces[i - 1]).sum();
        assert_eq!(s % k as i64, 0, "power traces of an integer matrix");
        c.push(-s / k as i64);
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub size: u64,
    pub representative: WeylElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClassTable {
    pub group: GroupType,
    pub classes: Vec<ConjugacyClass>,
}

impl ConjugacyClassTable {
    /// Sort into the canonical order: by size, then by word.
    pub fn canonicalize(&mut self) {
        self.classes.sort_by(|a, b| (a.size, &a.representative.word).cmp(&(b.size, &b.representative.word)));
    }

    pub fn total(&self) -> u128 {
        self.classes.iter().map(|c| u128::from(c.size)).sum()
    }

    /// `(size, word)` records in table order.
    pub fn records(&self) -> Vec<(u64, Vec<usize>)> {
        self.classes.iter().map(|c| (c.size, c.representative.word.clone())).collect()
    }
}

/// One failed invariant of a class table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongGroup { index: usize },
    ClassCount { expected: usize, found: usize },
    SizeSum { expected: u64, found: u128 },
    SizeNotDivisor { index: usize, size: u64 },
    Incompatible { index: usize },
    DuplicateFingerprint { first: usize, second: usize },
    CharacterSum { which: &'static str, expected: i128, found: i128 },
    EnumerationMismatch { index: usize, detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongGroup { index } => write!(f, "class {} belongs to another group", index),
            Violation::ClassCount { expected, found } => {
                write!(f, "class count is {}, expected {}", found, expected)
            }
            Violation::SizeSum { expected, found } => {
                write!(f, "sizes do not sum to |W| (sum {}, |W| = {})", found, expected)
            }
            Violation::SizeNotDivisor { index, size } => {
                write!(f, "size {} of class {} does not divide |W|", size, index)
            }
            Violation::Incompatible { index } => {
                write!(f, "representative of class {} has inconsistent matrix and weight permutation", index)
            }
            Violation::DuplicateFingerprint { first, second } => {
                write!(f, "representatives of classes {} and {} share a fingerprint (not provably non-conjugate)", first, second)
            }
            Violation::CharacterSum { which, expected, found } => {
                write!(f, "class-weighted sum of {} is {}, expected {}", which, found, expected)
            }
            Violation::EnumerationMismatch { index, detail } => {
                write!(f, "class {} disagrees with enumeration: {}", index, detail)
            }
        }
    }
}

/// Check every class-table invariant; an empty list means valid.
pub fn validate_class_table(wg: &WeylGroup, t: &ConjugacyClassTable) -> Vec<Violation> {
    let g = wg.group();
    let order = g.weyl_order();
    let mut out = Vec::new();
    if t.group != g {
        out.push(Violation::WrongGroup { index: 0 });
        return out;
    }
    if t.classes.len() != g.class_count() {
        out.push(Violation::ClassCount { expected: g.class_count(), found: t.classes.len() });
    }
    if t.total() != u128::from(order) {
        out.push(Violation::SizeSum { expected: order, found: t.total() });
    }
    let mut seen: HashMap<Fingerprint, usize> = HashMap::new();
    let (mut tr, mut tr2, mut det, mut fixed) = (0i128, 0i128, 0i128, 0i128);
    for (index, c) in t.classes.iter().enumerate() {
        let w = &c.representative;
        if w.group != g {
            out.push(Violation::WrongGroup { index });
            continue;
        }
        if c.size == 0 || !order.is_multiple_of(c.size) {
            out.push(Violation::SizeNotDivisor { index, size: c.size });
        }
        if !wg.is_compatible(w) {
            out.push(Violation::Incompatible { index });
        }
        let fp = Fingerprint::of(wg, w);
        let size = i128::from(c.size);
        tr += size * i128::from(fp.trace());
        tr2 += size * i128::from(fp.trace()).pow(2);
        det += size * i128::from(fp.determinant());
        fixed += size * i128::from(fp.fixed_points());
        if let Some(&first) = seen.get(&fp) {
            out.push(Violation::DuplicateFingerprint { first, second: index });
        } else {
            seen.insert(fp, index);
        }
    }
    // Orthogonality of the trivial, reflection and sign characters, and
    // transitivity on the signed weights.
    let w = i128::from(order);
    for (which, expected, found) in [
        ("trace", 0, tr),
        ("squared trace", w, tr2),
        ("determinant", 0, det),
        ("fixed weights", w, fixed),
    ] {
        if expected != found {
            out.push(Violation::CharacterSum { which, expected, found });
        }
    }
    out
}

/// A full enumeration together with the class of every element.
pub struct EnumeratedClasses {
    pub table: ConjugacyClassTable,
    pub enumeration: GroupEnumeration,
    /// Index into `table.classes` for every enumerated element.
    pub class_of: Vec<u32>,
}

/// Classes as conjugation orbits under the generators. Each representative
/// is the element of minimal length in its class whose greatest reduced
/// word is lexicographically greatest.
pub fn classes_by_enumeration(wg: &WeylGroup, opt_in_e7: bool) -> Result<EnumeratedClasses> {
    let en = enumerate_group(wg, opt_in_e7)?;
    let n = en.len();
    let l = wg.rank();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        class_of[start] = id;
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let m = en.kaction(x);
            for i in 1..=l {
                let y = en
                    .find(&wg.conjugate_by_generator(i, &m))
                    .ok_or_else(|| Error::Integrity("conjugate left the enumerated group".into()))?;
                if class_of[y] == u32::MAX {
                    class_of[y] = id;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        let min_len = orbit.iter().map(|&x| en.length(x)).min().unwrap_or(0);
        let mut best: Option<Vec<usize>> = None;
        for &x in orbit.iter().filter(|&&x| en.length(x) == min_len) {
            let word = wg.reduced_word(&en.kaction(x))?;
            if best.as_ref().is_none_or(|b| word > *b) {
                best = Some(word);
            }
        }
        let representative = wg.element(&best.unwrap_or_default())?;
        classes.push(ConjugacyClass { size: orbit.len() as u64, representative });
    }
    // Canonical order, with class ids remapped to match.
    let mut perm: Vec<usize> = (0..classes.len()).collect();
    perm.sort_by(|&a, &b| {
        (classes[a].size, &classes[a].representative.word).cmp(&(classes[b].size, &classes[b].representative.word))
    });
    let mut remap = vec![0u32; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        remap[old] = new as u32;
    }
    for c in class_of.iter_mut() {
        *c = remap[*c as usize];
    }
    let classes = perm.into_iter().map(|i| classes[i].clone()).collect();
    Ok(EnumeratedClasses { table: ConjugacyClassTable { group: wg.group(), classes }, enumeration: en, class_of })
}

/// Match a table class-by-class against an enumeration: each representative
/// must land in a distinct enumerated class of the same size.
pub fn match_against_enumeration(t: &ConjugacyClassTable, en: &EnumeratedClasses) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut used: HashMap<u32, usize> = HashMap::new();
    for (index, c) in t.classes.iter().enumerate() {
        let Some(x) = en.enumeration.find(&c.representative.kaction) else {
            out.push(Violation::EnumerationMismatch { index, detail: "representative not found".into() });
            continue;
        };
        let id = en.class_of[x];
        let size = en.table.classes[id as usize].size;
        if size != c.size {
            out.push(Violation::EnumerationMismatch {
                index,
                detail: format!("size {} but its enumerated class has {} elements", c.size, size),
            });
        }
        if let Some(prev) = used.insert(id, index) {
            out.push(Violation::EnumerationMismatch {
                index,
                detail: format!("conjugate to the representative of class {}", prev),
            });
        }
    }
    if en.table.classes.len() != t.classes.len() {
        out.push(Violation::ClassCount { expected: en.table.classes.len(), found: t.classes.len() });
    }
    out
}

/// Where class tables come from.
pub trait ClassSource: Send + Sync {
    fn name(&self) -> &'static str;
    fn class_table(&self, wg: &WeylGroup) -> Result<ConjugacyClassTable>;
}

/// Conjugation orbits of a full enumeration (G2, F4, E6; E7 on opt-in).
pub struct EnumeratedSource {
    pub opt_in_e7: bool,
}

/// The shipped class data file.
pub struct EmbeddedSource;

impl ClassSource for EnumeratedSource {
    fn name(&self) -> &'static str {
        "enumerate"
    }

    fn class_table(&self, wg: &WeylGroup) -> Result<ConjugacyClassTable> {
        Ok(classes_by_enumeration(wg, self.opt_in_e7)?.table)
    }
}

impl ClassSource for EmbeddedSource {
    fn name(&self) -> &'static str {
        "embedded"
    }

    fn class_table(&self, wg: &WeylGroup) -> Result<ConjugacyClassTable> {
        embedded_class_table(wg)
    }
}

pub const CLASS_SOURCES: [&str; 2] = ["embedded", "enumerate"];

pub fn class_source(name: &str, opt_in_e7: bool) -> Result<Box<dyn ClassSource>> {
    match name {
        "embedded" => Ok(Box::new(EmbeddedSource)),
        "enumerate" => Ok(Box::new(EnumeratedSource { opt_in_e7 })),
        _ => Err(Error::UnknownStrategy { kind: "class source", name: name.to_string(), known: CLASS_SOURCES.join(", ") }),
    }
}

/// Class table from `source`, rejected unless it validates.
pub fn conjugacy_classes(wg: &WeylGroup, source: &dyn ClassSource) -> Result<ConjugacyClassTable> {
    let t = source.class_table(wg)?;
    let violations = validate_class_table(wg, &t);
    if violations.is_empty() {
        Ok(t)
    } else {
        let msg: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        Err(Error::Integrity(format!("{} class table ({}): {}", wg.group(), source.name(), msg.join("; "))))
    }
}
