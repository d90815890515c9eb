//! Brute-force ground truth for small `m`: walk the whole torus grid
//! `((1/m)Z / Z)^l`, apply every Weyl group element, and count orbits
//! directly. No normal forms, posets or Möbius inversion are involved.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::rootdata::{distinct_eigenvalues, GroupType};
use crate::weylgroup::{enumerate_group, WeylGroup};

/// Largest `m` the oracle accepts: `m^l |W|` stays around a million steps
/// (G2: 24^2 * 12 ≈ 7e3, F4: 6^4 * 1152 ≈ 1.5e6).
pub fn oracle_budget(g: GroupType) -> Option<u64> {
    match g {
        GroupType::G2 => Some(24),
        GroupType::F4 => Some(6),
        _ => None,
    }
}

/// Orbit counts on the order-`m` grid, split by eigenvalue count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCensus {
    pub group: GroupType,
    pub m: u64,
    pub orbits: u64,
    /// `s -> number of orbits whose points have s distinct eigenvalues`
    pub by_s: BTreeMap<u32, u64>,
}

fn check_budget(g: GroupType, m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidModulus);
    }
    match oracle_budget(g) {
        Some(max) if m <= max => Ok(()),
        Some(max) => Err(Error::Refused { group: g, reason: format!("the brute-force oracle is limited to m <= {}", max) }),
        None => Err(Error::Refused { group: g, reason: "the brute-force oracle only covers G2 and F4".into() }),
    }
}

fn decode(mut idx: u64, m: u64, l: usize) -> Vec<i64> {
    (0..l)
        .map(|_| {
            let d = (idx % m) as i64;
            idx /= m;
            d
        })
        .collect()
}

fn encode(k: &[i64], m: u64) -> u64 {
    k.iter().rev().fold(0, |acc, &d| acc * m + d as u64)
}

/// `kaction * k` reduced mod `m`.
fn act(a: &Matrix<i64>, k: &[i64], m: i64) -> Vec<i64> {
    (0..k.len()).map(|r| (0..k.len()).map(|c| a.get(r, c) * k[c]).sum::<i64>().rem_euclid(m)).collect()
}

/// Counts orbits by picking, in each orbit, the point with the smallest
/// index. Orbit sizes are checked to divide `|W|`.
pub fn orbit_census(g: GroupType, m: u64) -> Result<OrbitCensus> {
    check_budget(g, m)?;
    let wg = WeylGroup::new(g);
    let en = enumerate_group(&wg, false)?;
    let elements: Vec<Matrix<i64>> = (0..en.len()).map(|i| en.kaction(i)).collect();
    let l = wg.rank();
    let order = g.weyl_order();
    let total = m.pow(l as u32);
    let reps = (0..total)
        .into_par_iter()
        .map(|idx| {
            let k = decode(idx, m, l);
            let mut orbit = HashSet::new();
            for a in &elements {
                let img = encode(&act(a, &k, m as i64), m);
                if img < idx {
                    return Ok(None);
                }
                orbit.insert(img);
            }
            if !order.is_multiple_of(orbit.len() as u64) {
                return Err(Error::Integrity(format!("orbit of {:?} has {} points, not dividing |W|", k, orbit.len())));
            }
            Ok(Some(distinct_eigenvalues(wg.weights(), &k, m as i64) as u32))
        })
        .collect::<Result<Vec<Option<u32>>>>()?;
    let mut by_s = BTreeMap::new();
    let mut orbits = 0;
    for s in reps.into_iter().flatten() {
        *by_s.entry(s).or_insert(0) += 1;
        orbits += 1;
    }
    Ok(OrbitCensus { group: g, m, orbits, by_s })
}

/// Number of `W`-orbits on the grid, i.e. `N(G, m)`.
pub fn brute_n_gm(g: GroupType, m: u64) -> Result<u64> {
    Ok(orbit_census(g, m)?.orbits)
}

/// Orbits whose points have exactly `s` distinct eigenvalues.
pub fn brute_n_gms(g: GroupType, m: u64, s: u32) -> Result<u64> {
    Ok(orbit_census(g, m)?.by_s.get(&s).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(brute_n_gm(GroupType::G2, 1).unwrap(), 1);
        assert_eq!(brute_n_gm(GroupType::G2, 6).unwrap(), 7);
        assert_eq!(brute_n_gms(GroupType::G2, 2, 2).unwrap(), 1);
        assert_eq!(brute_n_gms(GroupType::G2, 3, 3).unwrap(), 2);
        assert!(matches!(brute_n_gm(GroupType::F4, 7), Err(Error::Refused { .. })));
        assert!(matches!(brute_n_gm(GroupType::E6, 2), Err(Error::Refused { .. })));
    }

    #[test]
    fn encoding_round_trips() {
        for idx in 0..125 {
            assert_eq!(encode(&decode(idx, 5, 3), 5), idx);
        }
    }
}
