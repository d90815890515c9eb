//! On-disk form of the closed-subset poset.
//!
//! The file is JSON: `{version, group, p_digest, nodes: [{rows, generators,
//! divisors, s}]}` with rows as sign-normalized integer vectors. `p_digest`
//! is the SHA-256 of the canonical text of `P`. Loading recomputes every
//! node (closure, divisors, `s`) and checks that the node set is closed
//! under adding one row, so a tampered or stale file is rejected.

use std::collections::HashSet;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::WeightSystem;

use super::pmatrix::{build_p_matrix, PMatrix};
use super::poset::{basis_contains, build_m_poset, lattice_key, closure, ensure_supported, MNode, MPoset};

pub const CACHE_DIR_ENV: &str = "EXLIE_CACHE_DIR";
const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    group: String,
    p_digest: String,
    nodes: Vec<CacheNode>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheNode {
    rows: Vec<Vec<i64>>,
    generators: Vec<Vec<i64>>,
    divisors: Vec<u64>,
    s: u32,
}

pub fn cache_file_name(p: &PMatrix) -> String {
    format!("poset-{}-{}.json", p.group, &p.digest()[..16])
}

/// Canonical serialization of `poset`.
pub fn poset_to_json(poset: &MPoset) -> Result<String> {
    let p = poset.p_matrix();
    let rows = |ix: &[usize]| ix.iter().map(|&r| p.rows[r].clone()).collect::<Vec<_>>();
    let file = CacheFile {
        version: VERSION,
        group: p.group.to_string(),
        p_digest: p.digest(),
        nodes: poset
            .nodes()
            .iter()
            .map(|n| CacheNode {
                rows: rows(&n.rowset),
                generators: rows(&n.generators),
                divisors: n.divisors.clone(),
                s: n.svalue,
            })
            .collect(),
    };
    Ok(serde_json::to_string(&file)?)
}

/// Parses and fully revalidates a serialized poset against `ws`.
pub fn poset_from_json(text: &str, ws: &WeightSystem) -> Result<MPoset> {
    ensure_supported(ws.group)?;
    let file: CacheFile = serde_json::from_str(text)?;
    let p = build_p_matrix(ws);
    let bad = |what: String| Error::Integrity(format!("poset cache: {}", what));
    if file.version != VERSION {
        return Err(bad(format!("format version {} (expected {})", file.version, VERSION)));
    }
    if file.group != p.group.to_string() {
        return Err(bad(format!("written for {} not {}", file.group, p.group)));
    }
    if file.p_digest != p.digest() {
        return Err(bad("P-matrix digest does not match".into()));
    }
    let index = |v: &Vec<i64>| p.find(v).filter(|&r| &p.rows[r] == v).ok_or_else(|| bad(format!("{:?} is not a row of P", v)));
    let nodes = file
        .nodes
        .par_iter()
        .map(|cn| {
            let mut rowset = cn.rows.iter().map(index).collect::<Result<Vec<_>>>()?;
            rowset.sort_unstable();
            let generators = cn.generators.iter().map(index).collect::<Result<Vec<_>>>()?;
            let node = closure(&generators, &p, ws)?;
            if node.rowset != rowset {
                return Err(bad(format!("rowset {:?} is not the closure of its generators", cn.rows)));
            }
            if node.divisors != cn.divisors {
                return Err(bad(format!("divisors {:?} recorded, {:?} computed", cn.divisors, node.divisors)));
            }
            if node.svalue != cn.s {
                return Err(bad(format!("s = {} recorded, {} computed", cn.s, node.svalue)));
            }
            Ok(node)
        })
        .collect::<Result<Vec<MNode>>>()?;
    check_complete(&nodes, &p).map_err(bad)?;
    MPoset::from_nodes(p, ws.clone(), nodes)
}

/// The empty node is present and adding any row to any node lands on a
/// node, so every lattice generated by rows of `P` is listed.
fn check_complete(nodes: &[MNode], p: &PMatrix) -> std::result::Result<(), String> {
    let keys: HashSet<&Vec<Vec<i64>>> = nodes.iter().map(|n| &n.basis).collect();
    if keys.len() != nodes.len() {
        return Err("a lattice is listed twice".into());
    }
    if !keys.contains(&Vec::new()) {
        return Err("the empty node is missing".into());
    }
    let cols = p.ncols();
    nodes.par_iter().try_for_each(|n| {
        for (r, row) in p.rows.iter().enumerate() {
            if basis_contains(&n.basis, row) {
                continue;
            }
            let mut rows = n.basis.clone();
            rows.push(row.clone());
            let key = lattice_key(rows, cols).map_err(|e| e.to_string())?;
            if !keys.contains(&key) {
                return Err(format!("adding row {} to node {:?} leaves the node set", r, n.rowset));
            }
        }
        Ok(())
    })
}

pub fn save_poset(poset: &MPoset, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(cache_file_name(poset.p_matrix()));
    let tmp = dir.join(format!(".{}.tmp{}", cache_file_name(poset.p_matrix()), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(poset_to_json(poset)?.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}

pub fn load_poset(path: &Path, ws: &WeightSystem) -> Result<MPoset> {
    poset_from_json(&fs::read_to_string(path)?, ws)
}

/// Loads the cached poset for `ws` from `dir`, or builds and stores it. A
/// cache file that fails revalidation is an integrity error, not silently
/// replaced.
pub fn load_or_build(ws: &WeightSystem, dir: Option<&Path>) -> Result<MPoset> {
    let Some(dir) = dir else {
        return build_m_poset(ws);
    };
    ensure_supported(ws.group)?;
    let path = dir.join(cache_file_name(&build_p_matrix(ws)));
    if path.exists() {
        return load_poset(&path, ws)
            .map_err(|e| Error::Integrity(format!("{} ({}); delete the file to rebuild it", e, path.display())));
    }
    let poset = build_m_poset(ws)?;
    save_poset(&poset, dir)?;
    Ok(poset)
}
