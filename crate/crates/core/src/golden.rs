//! Published reference tables shipped as data files, and their parsers.
//!
//! Formula tables use a small line format:
//!
//! ```text
//! table 11            identifier used in reports
//! group F4
//! quantity ngms       ngm or ngms
//! scale 1152          optional: every cell is this multiple of the value
//! variable k          optional: cell variable (default m)
//! substitute m=6k+3   optional: cells are in the variable, m = a*var + b
//! @ period=6 s=3      block header; s lists one value per cell column
//! 0 | 576m+1152       residues | cell | cell ...
//! ±1,±5 | ...         ±r stands for r and period - r
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::quasipoly::{parse_poly, Poly, QuasiPolynomial};
use crate::rootdata::GroupType;

const FILES: &[(&str, &str)] = &[
    ("3", include_str!("../data/golden/table3.txt")),
    ("5", include_str!("../data/golden/table5.txt")),
    ("6", include_str!("../data/golden/table6.txt")),
    ("7", include_str!("../data/golden/table7.txt")),
    ("8", include_str!("../data/golden/table8.txt")),
    ("9", include_str!("../data/golden/table9.txt")),
    ("11", include_str!("../data/golden/table11.txt")),
    ("djokovic", include_str!("../data/golden/djokovic.txt")),
];

const NODES_FILE: &str = include_str!("../data/golden/table10.txt");
const SW_FILE: &str = include_str!("../data/golden/g2_sw.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Ngm,
    Ngms,
}

#[derive(Debug, Clone)]
pub struct GoldenRow {
    /// Residue label as printed.
    pub label: String,
    pub residues: Vec<u64>,
    /// Cell text as printed, one per column.
    pub cells: Vec<String>,
    pub polys: Vec<Poly>,
}

#[derive(Debug, Clone)]
pub struct GoldenBlock {
    pub period: u64,
    /// Column `s` values; empty for `ngm` tables.
    pub s: Vec<u32>,
    pub rows: Vec<GoldenRow>,
}

#[derive(Debug, Clone)]
pub struct GoldenTable {
    pub id: String,
    pub group: GroupType,
    pub quantity: Quantity,
    pub variable: char,
    /// `m = a * variable + b`.
    pub substitution: Option<(u64, u64)>,
    pub scale: u64,
    pub blocks: Vec<GoldenBlock>,
}

impl GoldenTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut id = None;
        let mut group = None;
        let mut quantity = None;
        let mut variable = 'm';
        let mut substitution = None;
        let mut scale = 1u64;
        let mut blocks: Vec<GoldenBlock> = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: String| Error::Parse(format!("golden table line {}: {}", n + 1, what));
            if let Some(rest) = line.strip_prefix('@') {
                let mut block = GoldenBlock { period: 0, s: Vec::new(), rows: Vec::new() };
                for kv in rest.split_whitespace() {
                    match kv.split_once('=') {
                        Some(("period", v)) => block.period = v.parse().map_err(|_| bad(format!("bad period {:?}", v)))?,
                        Some(("s", v)) => {
                            block.s = v
                                .split(',')
                                .map(|x| x.parse::<u32>().map_err(|_| bad(format!("bad s list {:?}", v))))
                                .collect::<Result<_>>()?
                        }
                        _ => return Err(bad(format!("unknown block attribute {:?}", kv))),
                    }
                }
                if block.period == 0 {
                    return Err(bad("block needs a positive period".into()));
                }
                blocks.push(block);
                continue;
            }
            if let Some(block) = blocks.last_mut() {
                let mut parts = line.split('|').map(str::trim);
                let label = parts.next().unwrap_or_default().to_string();
                let cells: Vec<String> = parts.map(str::to_string).collect();
                let want = block.s.len().max(1);
                if cells.len() != want {
                    return Err(bad(format!("expected {} cells, found {}", want, cells.len())));
                }
                let residues = parse_residue_label(&label, block.period).map_err(|e| bad(e.to_string()))?;
                let polys = cells
                    .iter()
                    .map(|c| parse_poly(c, variable).map_err(|e| bad(e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                block.rows.push(GoldenRow { label, residues, cells, polys });
                continue;
            }
            let (key, value) = line.split_once(' ').ok_or_else(|| bad(format!("unrecognised line {:?}", line)))?;
            let value = value.trim();
            match key {
                "table" => id = Some(value.to_string()),
                "group" => group = Some(value.parse::<GroupType>()?),
                "quantity" => {
                    quantity = Some(match value {
                        "ngm" => Quantity::Ngm,
                        "ngms" => Quantity::Ngms,
                        _ => return Err(bad(format!("unknown quantity {:?}", value))),
                    })
                }
                "scale" => scale = value.parse().map_err(|_| bad(format!("bad scale {:?}", value)))?,
                "variable" => {
                    variable = value.chars().next().filter(|_| value.chars().count() == 1).ok_or_else(|| bad("bad variable".into()))?
                }
                "substitute" => substitution = Some(parse_substitution(value, variable).ok_or_else(|| bad(format!("bad substitution {:?}", value)))?),
                _ => return Err(bad(format!("unknown key {:?}", key))),
            }
        }
        let missing = |what: &str| Error::Parse(format!("golden table is missing its {}", what));
        let t = GoldenTable {
            id: id.ok_or_else(|| missing("table id"))?,
            group: group.ok_or_else(|| missing("group"))?,
            quantity: quantity.ok_or_else(|| missing("quantity"))?,
            variable,
            substitution,
            scale,
            blocks,
        };
        for b in &t.blocks {
            let mut seen = vec![false; b.period as usize];
            for r in b.rows.iter().flat_map(|row| &row.residues) {
                if std::mem::replace(&mut seen[*r as usize], true) {
                    return Err(Error::Parse(format!("table {}: residue {} listed twice", t.id, r)));
                }
            }
            if let Some(r) = seen.iter().position(|x| !x) {
                return Err(Error::Parse(format!("table {}: residue {} mod {} missing", t.id, r, b.period)));
            }
        }
        Ok(t)
    }

    /// `s` values with a column, in file order.
    pub fn columns(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.s.iter().copied()).collect()
    }

    fn locate(&self, s: Option<u32>) -> Result<(&GoldenBlock, usize)> {
        for b in &self.blocks {
            match s {
                None if b.s.is_empty() => return Ok((b, 0)),
                Some(s) => {
                    if let Some(i) = b.s.iter().position(|&x| x == s) {
                        return Ok((b, i));
                    }
                }
                None => {}
            }
        }
        Err(Error::Parse(format!("table {} has no column {:?}", self.id, s)))
    }

    /// The column as a quasi-polynomial in the cell variable, divided by the
    /// scale.
    pub fn quasipolynomial(&self, s: Option<u32>) -> Result<QuasiPolynomial> {
        let (b, col) = self.locate(s)?;
        let mut polys = vec![Poly::zero(); b.period as usize];
        for row in &b.rows {
            for &r in &row.residues {
                polys[r as usize] = row.polys[col].clone();
            }
        }
        let inv = BigRational::new(1.into(), self.scale.into());
        Ok(QuasiPolynomial::new(b.period, polys)?.scale(&inv))
    }

    /// Printed label and cell text used for `m` (or the cell variable).
    pub fn cell(&self, x: u64, s: Option<u32>) -> Result<(&str, &str)> {
        let (b, col) = self.locate(s)?;
        let r = x % b.period;
        let row = b.rows.iter().find(|row| row.residues.contains(&r)).expect("residues are complete");
        Ok((&row.label, &row.cells[col]))
    }

    /// Tabulated value at `x` in the cell variable.
    pub fn value(&self, x: u64, s: Option<u32>) -> Result<BigRational> {
        Ok(self.quasipolynomial(s)?.evaluate_rational(x))
    }
}

fn parse_substitution(text: &str, var: char) -> Option<(u64, u64)> {
    let rhs = text.strip_prefix("m=")?;
    let (a, b) = rhs.split_once('+')?;
    let a = a.strip_suffix(var)?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

/// `"±1,±5"` style labels; `±r` covers `r` and `period - r`.
pub fn parse_residue_label(label: &str, period: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for tok in label.split(',').map(str::trim) {
        let (pm, num) = match tok.strip_prefix('±') {
            Some(rest) => (true, rest),
            None => (false, tok),
        };
        let r: u64 = num.parse().map_err(|_| Error::Parse(format!("bad residue {:?}", tok)))?;
        if r >= period {
            return Err(Error::Parse(format!("residue {} outside period {}", r, period)));
        }
        out.push(r);
        if pm {
            let mirror = (period - r) % period;
            if mirror != r {
                out.push(mirror);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Every shipped formula table.
pub fn golden_tables() -> Result<Vec<GoldenTable>> {
    FILES.iter().map(|(_, text)| GoldenTable::parse(text)).collect()
}

pub fn golden_table(id: &str) -> Result<GoldenTable> {
    let (_, text) = FILES
        .iter()
        .find(|(k, _)| *k == id)
        .ok_or_else(|| Error::Parse(format!("no golden table {:?}", id)))?;
    GoldenTable::parse(text)
}

/// Identifier of the published `N(G, m)` table.
pub fn ngm_table_id(g: GroupType) -> &'static str {
    match g {
        GroupType::G2 => "3",
        GroupType::F4 => "5",
        GroupType::E6 => "6",
        GroupType::E7 => "7",
        GroupType::E8 => "8",
    }
}

/// Identifier of the published `N(G, m, s)` table, if any.
pub fn ngms_table_id(g: GroupType) -> Option<&'static str> {
    match g {
        GroupType::G2 => Some("9"),
        GroupType::F4 => Some("11"),
        _ => None,
    }
}

/// A residue condition `(residues, modulus)` (`None` for `else`) and its value.
pub type Case = (Option<(Vec<u64>, u64)>, Poly);

/// A function of `m` given by residue cases, e.g. `4 if m≡0 mod 4 ; 2 else`.
#[derive(Debug, Clone)]
pub struct CaseFunction {
    pub cases: Vec<Case>,
}

impl CaseFunction {
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad case expression {:?}", text));
        let mut cases = Vec::new();
        for part in text.split(';').map(str::trim) {
            if let Some(f) = part.strip_suffix("else") {
                cases.push((None, parse_poly(f.trim(), 'm')?));
            } else if let Some((f, cond)) = part.split_once(" if ") {
                let cond = cond.trim().strip_prefix("m≡").ok_or_else(bad)?;
                let (rs, modulus) = cond.split_once(" mod ").ok_or_else(bad)?;
                let modulus: u64 = modulus.trim().parse().map_err(|_| bad())?;
                let rs = rs.split(',').map(|r| r.trim().parse::<u64>().map_err(|_| bad())).collect::<Result<_>>()?;
                cases.push((Some((rs, modulus)), parse_poly(f.trim(), 'm')?));
            } else {
                cases.push((None, parse_poly(part, 'm')?));
            }
        }
        Ok(Self { cases })
    }

    pub fn eval(&self, m: u64) -> BigRational {
        for (cond, p) in &self.cases {
            let hit = match cond {
                None => true,
                Some((rs, modulus)) => rs.contains(&(m % modulus)),
            };
            if hit {
                return p.eval(&BigRational::from_integer(BigInt::from(m)));
            }
        }
        BigRational::zero()
    }
}

/// One printed row of the G2 closed-subset table: every listed node has the
/// same `s` and `g_m`.
#[derive(Debug, Clone)]
pub struct GoldenNodeRow {
    pub nodes: Vec<Vec<Vec<i64>>>,
    pub s: u32,
    pub gm: CaseFunction,
}

fn parse_rows(text: &str) -> Result<Vec<Vec<i64>>> {
    let text = text.trim();
    if text == "empty" {
        return Ok(Vec::new());
    }
    let bad = || Error::Parse(format!("bad row list {:?}", text));
    let mut rows = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find('[') {
        let end = rest[start..].find(']').ok_or_else(bad)? + start;
        let row = rest[start + 1..end]
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        rest = &rest[end + 1..];
    }
    if rows.is_empty() {
        return Err(bad());
    }
    Ok(rows)
}

pub fn golden_g2_nodes() -> Result<Vec<GoldenNodeRow>> {
    let mut out = Vec::new();
    for line in NODES_FILE.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let f: Vec<&str> = line.split('|').map(str::trim).collect();
        let [nodes, s, gm] = f[..] else {
            return Err(Error::Parse(format!("bad node line {:?}", line)));
        };
        out.push(GoldenNodeRow {
            nodes: nodes.split(';').map(parse_rows).collect::<Result<_>>()?,
            s: s.parse().map_err(|_| Error::Parse(format!("bad s in {:?}", line)))?,
            gm: CaseFunction::parse(gm)?,
        });
    }
    Ok(out)
}

/// G2 class representative with its published `S_w` rows.
#[derive(Debug, Clone)]
pub struct GoldenSw {
    pub size: u64,
    pub word: Vec<usize>,
    pub rows: Vec<Vec<i64>>,
}

pub fn golden_g2_sw() -> Result<Vec<GoldenSw>> {
    let mut out = Vec::new();
    for line in SW_FILE.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let f: Vec<&str> = line.split('|').map(str::trim).collect();
        let bad = || Error::Parse(format!("bad S_w line {:?}", line));
        let [size, word, rows] = f[..] else {
            return Err(bad());
        };
        let word = if word == "-" {
            Vec::new()
        } else {
            word.split_whitespace().map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?
        };
        out.push(GoldenSw { size: size.parse().map_err(|_| bad())?, word, rows: parse_rows(rows)? });
    }
    Ok(out)
}
