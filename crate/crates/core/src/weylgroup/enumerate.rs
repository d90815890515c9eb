use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::rootdata::GroupType;

use super::element::{WeylElement, WeylGroup};

/// Compact element key: the action matrix, row-major, zero padded.
pub type ElementKey = [i8; 64];

/// Rough peak memory of the E7 enumeration (2.9M keys, index and parents).
pub const E7_ENUMERATION_BYTES: u64 = 600 << 20;

/// Every element of a Weyl group, found breadth first from the identity by
/// right multiplication with the simple reflections.
///
/// Element `0` is the identity and the discovery depth of an element equals
/// its Coxeter length.
pub struct GroupEnumeration {
    group: GroupType,
    keys: Vec<ElementKey>,
    parents: Vec<(u32, u8)>,
    depth: Vec<u8>,
    index: HashMap<ElementKey, u32>,
}

pub fn key_of(m: &Matrix<i64>) -> Result<ElementKey> {
    let mut k = [0i8; 64];
    for (slot, v) in k.iter_mut().zip(m.entries()) {
        *slot = i8::try_from(*v).map_err(|_| Error::Integrity(format!("matrix entry {} does not fit a key", v)))?;
    }
    Ok(k)
}

fn matrix_of(key: &ElementKey, l: usize) -> Matrix<i64> {
    let rows: Vec<Vec<i64>> = (0..l).map(|r| (0..l).map(|c| i64::from(key[r * l + c])).collect()).collect();
    Matrix::from_rows(l, &rows)
}

/// Enumerate `W(g)`. E7 needs `opt_in_e7` (about 2.9 million elements,
/// see [`E7_ENUMERATION_BYTES`]); E8 is always refused.
pub fn enumerate_group(wg: &WeylGroup, opt_in_e7: bool) -> Result<GroupEnumeration> {
    let g = wg.group();
    match g {
        GroupType::E8 => {
            return Err(Error::Refused {
                group: g,
                reason: "enumerating 696729600 elements is not supported; use the embedded class data".into(),
            })
        }
        GroupType::E7 if !opt_in_e7 => {
            return Err(Error::Refused {
                group: g,
                reason: "enumerating 2903040 elements needs an explicit opt-in (--opt-in-e7-enumeration)".into(),
            })
        }
        _ => {}
    }
    let l = wg.rank();
    let order = g.weyl_order() as usize;
    let mut keys = Vec::with_capacity(order);
    let mut parents = Vec::with_capacity(order);
    let mut depth = Vec::with_capacity(order);
    let mut index = HashMap::with_capacity(order);
    let id = key_of(&Matrix::identity(l))?;
    keys.push(id);
    parents.push((0, 0));
    depth.push(0);
    index.insert(id, 0);
    let mut head = 0;
    while head < keys.len() {
        let m = matrix_of(&keys[head], l);
        for i in 1..=l {
            let k = key_of(&wg.times_generator(&m, i))?;
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                e.insert(keys.len() as u32);
                keys.push(k);
                parents.push((head as u32, i as u8));
                depth.push(depth[head] + 1);
            }
        }
        head += 1;
    }
    if keys.len() != order {
        return Err(Error::Integrity(format!("enumerated {} elements of {}, expected {}", keys.len(), g, order)));
    }
    Ok(GroupEnumeration { group: g, keys, parents, depth, index })
}

impl GroupEnumeration {
    pub fn group(&self) -> GroupType {
        self.group
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, idx: usize) -> &ElementKey {
        &self.keys[idx]
    }

    pub fn kaction(&self, idx: usize) -> Matrix<i64> {
        matrix_of(&self.keys[idx], self.group.rank())
    }

    /// Coxeter length of element `idx`.
    pub fn length(&self, idx: usize) -> usize {
        self.depth[idx] as usize
    }

    /// The breadth-first (shortest) word of element `idx`.
    pub fn bfs_word(&self, idx: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.depth[idx] as usize);
        let mut cur = idx;
        while cur != 0 {
            let (p, gen) = self.parents[cur];
            word.push(gen as usize);
            cur = p as usize;
        }
        word.reverse();
        word
    }

    pub fn find(&self, m: &Matrix<i64>) -> Option<usize> {
        key_of(m).ok().and_then(|k| self.index.get(&k)).map(|&i| i as usize)
    }

    pub fn element(&self, wg: &WeylGroup, idx: usize) -> WeylElement {
        wg.element(&self.bfs_word(idx)).expect("enumerated words are valid")
    }
}
