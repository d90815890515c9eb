use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::poly::Poly;

/// A function of `m` that is a polynomial on each residue class mod `period`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    period: u64,
    polys: Vec<Poly>,
}

impl QuasiPolynomial {
    pub fn new(period: u64, polys: Vec<Poly>) -> Result<Self> {
        if period == 0 || polys.len() as u64 != period {
            return Err(Error::Parse(format!(
                "a quasi-polynomial of period {} needs exactly that many residue polynomials (got {})",
                period,
                polys.len()
            )));
        }
        Ok(Self { period, polys })
    }

    /// The same polynomial on every residue.
    pub fn polynomial(p: Poly) -> Self {
        Self { period: 1, polys: vec![p] }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// Polynomial used for `m ≡ r (mod period)`.
    pub fn residue(&self, r: u64) -> &Poly {
        &self.polys[(r % self.period) as usize]
    }

    pub fn degree(&self) -> Option<usize> {
        self.polys.iter().filter_map(Poly::degree).max()
    }

    pub fn evaluate_rational(&self, m: u64) -> BigRational {
        self.residue(m).eval(&BigRational::from_integer(m.into()))
    }

    /// Exact value at `m >= 1`; a non-integer result means the polynomials
    /// are corrupt.
    pub fn evaluate(&self, m: u64) -> Result<BigInt> {
        if m == 0 {
            return Err(Error::InvalidModulus);
        }
        let v = self.evaluate_rational(m);
        if !v.is_integer() {
            return Err(Error::Integrity(format!("quasi-polynomial gives the non-integer {} at m = {}", v, m)));
        }
        Ok(v.to_integer())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { period: self.period, polys: self.polys.iter().map(|p| p.scale(c)).collect() }
    }

    /// Same function over the smallest period dividing the current one.
    pub fn reduce_period(&self) -> Self {
        let mut t = self.period;
        for (p, _) in super::gcdexpr::factorize(self.period) {
            while t.is_multiple_of(p) {
                let cand = t / p;
                if (0..self.period).all(|r| self.polys[r as usize] == self.polys[(r % cand) as usize]) {
                    t = cand;
                } else {
                    break;
                }
            }
        }
        Self { period: t, polys: self.polys[..t as usize].to_vec() }
    }

    /// Residues grouped by identical polynomial, ordered by smallest residue.
    pub fn residue_groups(&self) -> Vec<(Vec<u64>, &Poly)> {
        let mut groups: Vec<(Vec<u64>, &Poly)> = Vec::new();
        for (r, p) in self.polys.iter().enumerate() {
            match groups.iter_mut().find(|(_, q)| *q == p) {
                Some((rs, _)) => rs.push(r as u64),
                None => groups.push((vec![r as u64], p)),
            }
        }
        groups
    }

    /// Least common denominator over all coefficients.
    pub fn common_denominator(&self) -> BigInt {
        self.polys.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator()))
    }

    pub fn to_json_value(&self) -> Result<QuasiPolynomialJson> {
        let residues = self
            .polys
            .iter()
            .enumerate()
            .map(|(r, p)| {
                let den = p.denominator();
                let nums = p.numerators_over(&den).expect("denominator clears its own polynomial");
                let numerator_coeffs = nums
                    .iter()
                    .map(|c| {
                        c.to_i64().ok_or_else(|| Error::Parse(format!("coefficient {} does not fit the JSON schema", c)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let denominator = den
                    .to_u64()
                    .ok_or_else(|| Error::Parse(format!("denominator {} does not fit the JSON schema", den)))?;
                Ok(ResidueJson { r: r as u64, numerator_coeffs, denominator })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuasiPolynomialJson { period: self.period, residues })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json_value()?)?)
    }

    /// Loads the `{period, residues: [{r, numerator_coeffs, denominator}]}` form.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: QuasiPolynomialJson = serde_json::from_str(text)?;
        Self::from_json_value(&doc)
    }

    pub fn from_json_value(doc: &QuasiPolynomialJson) -> Result<Self> {
        let mut polys: Vec<Option<Poly>> = vec![None; doc.period as usize];
        for res in &doc.residues {
            let slot = polys
                .get_mut(res.r as usize)
                .ok_or_else(|| Error::Parse(format!("residue {} outside period {}", res.r, doc.period)))?;
            if slot.is_some() {
                return Err(Error::Parse(format!("residue {} listed twice", res.r)));
            }
            if res.denominator == 0 {
                return Err(Error::Parse(format!("residue {} has denominator 0", res.r)));
            }
            let den = BigInt::from(res.denominator);
            *slot = Some(Poly::new(
                res.numerator_coeffs.iter().map(|&c| BigRational::new(c.into(), den.clone())).collect(),
            ));
        }
        let polys = polys
            .into_iter()
            .enumerate()
            .map(|(r, p)| p.ok_or_else(|| Error::Parse(format!("residue {} missing", r))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(doc.period, polys)
    }
}

/// Serialized form of a [`QuasiPolynomial`]. Coefficients are ascending in
/// the power of `m`; each residue carries its own reduced denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomialJson {
    pub period: u64,
    pub residues: Vec<ResidueJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueJson {
    pub r: u64,
    pub numerator_coeffs: Vec<i64>,
    pub denominator: u64,
}

/// Fits a quasi-polynomial of the given degree and period to `sampler`.
///
/// Residue `r` is interpolated through `degree + 1` samples spaced by
/// `period`, then checked on two more samples. Any disagreement rejects the
/// claimed period with [`Error::FitMismatch`].
pub fn fit<F>(sampler: F, degree: usize, period: u64) -> Result<QuasiPolynomial>
where
    F: Fn(u64) -> Result<BigInt> + Sync,
{
    if period == 0 {
        return Err(Error::InvalidModulus);
    }
    let polys = (0..period)
        .into_par_iter()
        .map(|r| {
            let start = if r == 0 { period } else { r };
            let ms: Vec<u64> = (0..degree as u64 + 3).map(|t| start + t * period).collect();
            let samples = ms.iter().map(|&m| sampler(m)).collect::<Result<Vec<_>>>()?;
            let pts: Vec<(BigRational, BigRational)> = ms
                .iter()
                .zip(&samples)
                .map(|(&m, v)| (BigRational::from_integer(m.into()), BigRational::from_integer(v.clone())))
                .collect();
            let p = Poly::interpolate(&pts[..=degree]);
            for (x, y) in &pts[degree + 1..] {
                let got = p.eval(x);
                if &got != y {
                    return Err(Error::FitMismatch(format!(
                        "residue {} mod {}: degree-{} fit predicts {} at m = {} but the sample is {}",
                        r, period, degree, got, x, y
                    )));
                }
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    QuasiPolynomial::new(period, polys)
}

/// Table layouts for [`emit_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "markdown" | "md" => Ok(Self::Markdown),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::UnknownStrategy {
                kind: "table format",
                name: s.to_string(),
                known: "markdown, csv, json".into(),
            }),
        }
    }
}

/// Rendering knobs for [`emit_table`].
#[derive(Debug, Clone)]
pub struct EmitOptions {
    /// Heading of the value column, e.g. `N(G2,m)`.
    pub label: String,
    pub var: String,
    /// Preferred common denominator (for example `|W|`). Used only if it
    /// clears every coefficient; otherwise the least common one is used.
    pub denominator: Option<BigInt>,
}

impl Default for EmitOptions {
    fn default() -> Self {
        Self { label: "value".into(), var: "m".into(), denominator: None }
    }
}

/// `±r` labels for a residue group; `r` and `period - r` are paired.
pub fn residue_label(residues: &[u64], period: u64) -> String {
    let mut used = vec![false; residues.len()];
    let mut parts = Vec::new();
    for i in 0..residues.len() {
        if used[i] {
            continue;
        }
        let r = residues[i];
        let mirror = (period - r) % period;
        match residues.iter().position(|&x| x == mirror) {
            Some(j) if j != i => {
                used[j] = true;
                parts.push(format!("±{}", r));
            }
            _ => parts.push(r.to_string()),
        }
        used[i] = true;
    }
    parts.join(",")
}

fn display_denominator(qp: &QuasiPolynomial, opts: &EmitOptions) -> BigInt {
    let lcd = qp.common_denominator();
    match &opts.denominator {
        Some(d) if !d.is_zero() && (d % &lcd).is_zero() => d.clone(),
        _ => lcd,
    }
}

/// Deterministic text rendering of `qp`.
pub fn emit_table(qp: &QuasiPolynomial, format: TableFormat, opts: &EmitOptions) -> Result<String> {
    let den = display_denominator(qp, opts);
    let mut out = String::new();
    match format {
        TableFormat::Markdown => {
            writeln!(out, "| {} mod {} | {} |", opts.var, qp.period(), opts.label).unwrap();
            out.push_str("|---|---|\n");
            for (rs, p) in qp.residue_groups() {
                writeln!(out, "| {} | {} |", residue_label(&rs, qp.period()), p.render_over(&opts.var, &den)).unwrap();
            }
        }
        TableFormat::Csv => {
            writeln!(out, "residue,{}", csv_field(&opts.label)).unwrap();
            for (r, p) in qp.polys().iter().enumerate() {
                writeln!(out, "{},{}", r, csv_field(&p.render_over(&opts.var, &den))).unwrap();
            }
        }
        TableFormat::Json => {
            out = qp.to_json()?;
            out.push('\n');
        }
    }
    Ok(out)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
