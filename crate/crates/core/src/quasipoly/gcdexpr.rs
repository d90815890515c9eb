use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::poly::Poly;
use super::quasi::QuasiPolynomial;

/// `sum coef * m^power * prod gcd(d, m)` with exact rational coefficients.
///
/// Terms with the same `(power, divisors)` are merged and zero terms
/// dropped, so structurally equal expressions compare equal. Different
/// divisor bags can still describe the same function of `m` (for example
/// `gcd(2,m)^2 = 3 gcd(2,m) - 2`); [`GcdExpression::same_function`] compares
/// values instead.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GcdExpression {
    terms: BTreeMap<(u32, Vec<u64>), BigRational>,
}

impl GcdExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, 0, &[])
    }

    /// One term; divisors equal to 1 are dropped.
    pub fn term(coef: BigRational, power: u32, divisors: &[u64]) -> Self {
        let mut e = Self::zero();
        e.add_term(coef, power, divisors);
        e
    }

    /// Kernel size `m^(cols - r) * prod gcd(d_i, m)` of a matrix with the
    /// given elementary divisors (`r = divisors.len()`).
    pub fn kernel(cols: usize, divisors: &[u64]) -> Self {
        Self::term(BigRational::one(), (cols - divisors.len()) as u32, divisors)
    }

    pub fn add_term(&mut self, coef: BigRational, power: u32, divisors: &[u64]) {
        assert!(divisors.iter().all(|&d| d > 0), "gcd divisors must be positive");
        let mut bag: Vec<u64> = divisors.iter().copied().filter(|&d| d > 1).collect();
        bag.sort_unstable();
        let key = (power, bag);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&mut self, other: &GcdExpression) {
        for ((p, bag), c) in &other.terms {
            self.add_term(c.clone(), *p, bag);
        }
    }

    pub fn scaled(&self, c: &BigRational) -> GcdExpression {
        let mut out = GcdExpression::zero();
        for ((p, bag), a) in &self.terms {
            out.add_term(a * c, *p, bag);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coef, power, divisors)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, u32, &[u64])> {
        self.terms.iter().map(|((p, bag), c)| (c, *p, bag.as_slice()))
    }

    pub fn evaluate(&self, m: u64) -> BigRational {
        let mb = BigRational::from_integer(m.into());
        self.terms.iter().fold(BigRational::zero(), |acc, ((p, bag), c)| {
            let g: u64 = bag.iter().map(|d| d.gcd(&m)).product();
            acc + c * mb.pow(*p as i32) * BigRational::from_integer(g.into())
        })
    }

    /// Value at `m`, which must be an integer.
    pub fn evaluate_integer(&self, m: u64) -> Result<BigInt> {
        let v = self.evaluate(m);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::Integrity(format!("expression evaluates to the non-integer {} at m = {}", v, m)))
        }
    }

    /// Least common multiple of every divisor in the expression.
    pub fn divisor_lcm(&self) -> u64 {
        self.terms.keys().flat_map(|(_, bag)| bag.iter()).fold(1, |acc, d| acc.lcm(d))
    }

    /// The polynomial in `m` that the expression equals on every `m` with
    /// `gcd(m, L) = g` (`L` = [`divisor_lcm`](Self::divisor_lcm)).
    pub fn polynomial_at_gcd(&self, g: u64) -> Poly {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for ((p, bag), c) in &self.terms {
            let p = *p as usize;
            if coeffs.len() <= p {
                coeffs.resize(p + 1, BigRational::zero());
            }
            let gg: u64 = bag.iter().map(|d| d.gcd(&g)).product();
            coeffs[p] += c * BigRational::from_integer(gg.into());
        }
        Poly::new(coeffs)
    }

    /// Minimal period in `m`. Starts from the divisor lcm and strips prime
    /// factors while the per-gcd polynomials stay consistent.
    pub fn detect_period(&self) -> u64 {
        let l = self.divisor_lcm();
        let divs = divisors_of(l);
        let polys: Vec<(u64, Poly)> = divs.iter().map(|&g| (g, self.polynomial_at_gcd(g))).collect();
        let mut t = l;
        for (p, _) in factorize(l) {
            while t.is_multiple_of(p) {
                let cand = t / p;
                let mut seen: BTreeMap<u64, &Poly> = BTreeMap::new();
                let ok = polys.iter().all(|(g, poly)| match seen.get(&g.gcd(&cand)) {
                    Some(prev) => *prev == poly,
                    None => {
                        seen.insert(g.gcd(&cand), poly);
                        true
                    }
                });
                if !ok {
                    break;
                }
                t = cand;
            }
        }
        t
    }

    /// Expand into per-residue polynomials over the minimal period.
    pub fn to_quasipolynomial(&self) -> QuasiPolynomial {
        let t = self.detect_period();
        let l = self.divisor_lcm();
        let polys = (0..t).map(|r| self.polynomial_at_gcd(r.gcd(&l))).collect();
        QuasiPolynomial::new(t, polys).expect("period and residue count agree")
    }

    /// Equal as functions of `m >= 1`.
    pub fn same_function(&self, other: &GcdExpression) -> bool {
        let mut diff = self.clone();
        diff.add(&other.scaled(&-BigRational::one()));
        let l = diff.divisor_lcm();
        divisors_of(l).into_iter().all(|g| diff.polynomial_at_gcd(g).is_zero())
    }
}

impl fmt::Display for GcdExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((p, bag), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || (*p == 0 && bag.is_empty()) {
                factors.push(a.to_string());
            }
            match p {
                0 => {}
                1 => factors.push("m".into()),
                _ => factors.push(format!("m^{}", p)),
            }
            let mut i = 0;
            while i < bag.len() {
                let run = bag[i..].iter().take_while(|&&d| d == bag[i]).count();
                factors.push(if run == 1 { format!("gcd({},m)", bag[i]) } else { format!("gcd({},m)^{}", bag[i], run) });
                i += run;
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn divisors_of(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let cur = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(cur.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}
