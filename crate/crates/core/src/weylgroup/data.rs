//! The shipped conjugacy-class data.
//!
//! One record per line, `GROUP | SIZE | WORD`, where `WORD` lists one-based
//! simple reflection indices separated by spaces (`-` for the identity).
//! Lines starting with `#` are comments. Records are sorted by group, then
//! size, then word.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rootdata::GroupType;

use super::classes::{ConjugacyClass, ConjugacyClassTable};
use super::element::{format_word, WeylGroup};

pub const EMBEDDED_CLASS_DATA: &str = include_str!("../../data/weyl_classes.txt");

pub type ClassRecords = BTreeMap<GroupType, Vec<(u64, Vec<usize>)>>;

pub fn parse_class_data(text: &str) -> Result<ClassRecords> {
    let mut out: ClassRecords = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("class data line {}: {}", n + 1, what));
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        let [group, size, word] = fields[..] else {
            return Err(bad("expected three '|'-separated fields"));
        };
        let group: GroupType = group.parse().map_err(|_| bad("unknown group"))?;
        let size: u64 = size.parse().map_err(|_| bad("bad class size"))?;
        let word: Vec<usize> = if word == "-" {
            Vec::new()
        } else {
            word.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| bad("bad word"))).collect::<Result<_>>()?
        };
        out.entry(group).or_default().push((size, word));
    }
    Ok(out)
}

pub fn format_class_data(tables: &[ConjugacyClassTable]) -> String {
    let mut out = String::from("# Weyl group conjugacy classes: GROUP | SIZE | WORD\n");
    let mut tables: Vec<&ConjugacyClassTable> = tables.iter().collect();
    tables.sort_by_key(|t| t.group);
    for t in tables {
        let mut rec = t.records();
        rec.sort();
        for (size, word) in rec {
            out.push_str(&format!("{} | {} | {}\n", t.group, size, format_word(&word)));
        }
    }
    out
}

/// Class table built from the given records (not validated).
pub fn class_table_from_records(wg: &WeylGroup, records: &ClassRecords) -> Result<ConjugacyClassTable> {
    let g = wg.group();
    let rec = records
        .get(&g)
        .ok_or_else(|| Error::Integrity(format!("class data has no records for {}", g)))?;
    let classes = rec
        .iter()
        .map(|(size, word)| Ok(ConjugacyClass { size: *size, representative: wg.element(word)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjugacyClassTable { group: g, classes })
}

/// Class table from the shipped data file (not validated).
pub fn embedded_class_table(wg: &WeylGroup) -> Result<ConjugacyClassTable> {
    class_table_from_records(wg, &parse_class_data(EMBEDDED_CLASS_DATA)?)
}
