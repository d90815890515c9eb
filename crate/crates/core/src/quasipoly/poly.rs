use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Univariate polynomial with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Poly {
        Poly::new(vec![c])
    }

    pub fn from_int(c: i64) -> Poly {
        Poly::constant(BigRational::from_integer(c.into()))
    }

    /// The variable itself.
    pub fn x() -> Poly {
        Poly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::from_int(1), |acc, _| acc.mul(self))
    }

    /// `p(a x + b)`
    pub fn substitute_linear(&self, a: &BigRational, b: &BigRational) -> Poly {
        let lin = Poly::new(vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| acc.mul(&lin).add(&Poly::constant(c.clone())))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(x.into()))
    }

    /// Least common denominator of the coefficients.
    pub fn denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer numerator coefficients over `den` (which must clear all
    /// denominators).
    pub fn numerators_over(&self, den: &BigInt) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| {
                let v = c * BigRational::from_integer(den.clone());
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }

    /// Lagrange interpolation through `(x_i, y_i)`.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Poly {
        let mut out = Poly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Poly::from_int(1);
            let mut den = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Poly::new(vec![-xj.clone(), BigRational::one()]));
                    den *= xi - xj;
                }
            }
            out = out.add(&basis.scale(&(yi / den)));
        }
        out
    }

    /// Render as `(num)/den` over the given denominator, e.g.
    /// `(m^2+6m+12)/12`; without parentheses when `den == 1`.
    pub fn render_over(&self, var: &str, den: &BigInt) -> String {
        let nums = self.numerators_over(den).expect("denominator clears the coefficients");
        let body = render_integer_poly(&nums, var);
        if den.is_one() || self.is_zero() {
            body
        } else if nums.iter().filter(|c| !c.is_zero()).count() <= 1 && !body.starts_with('-') {
            format!("{}/{}", body, den)
        } else {
            format!("({})/{}", body, den)
        }
    }
}

pub(crate) fn render_integer_poly(nums: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in nums.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        if k == 0 || !a.is_one() {
            out.push_str(&a.to_string());
        }
        match k {
            0 => {}
            1 => out.push_str(var),
            _ => out.push_str(&format!("{}^{}", var, k)),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_over("m", &self.denominator()))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var,
    Op(char),
}

fn tokenize(s: &str, var: char) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("ascii digits")));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            '\u{2212}' => {
                out.push(Tok::Op('-'));
                i += 1;
            }
            _ if c == var => {
                out.push(Tok::Var);
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {:?} in {:?}", c, s))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{} at token {} of {:?}", what, self.pos, self.src))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                self.term()?.scale(&-BigRational::one())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.power()?.as_constant().ok_or_else(|| self.err("division by a non-constant"))?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&d.recip());
                }
                Some(Tok::Op('(')) | Some(Tok::Var) | Some(Tok::Num(_)) => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Num(n)) => {
                    let e = n.to_u32().ok_or_else(|| self.err("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected an integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(BigRational::from_integer(n)))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Parse a polynomial formula in one variable, e.g. `m(m-9)/12+2` or
/// `(k+1)(k+2)(108k^4+648k^3+1395k^2+1269k+480)/120`. Juxtaposition
/// multiplies; `/` must divide by a constant.
pub fn parse_poly(text: &str, var: char) -> Result<Poly> {
    let toks = tokenize(text, var)?;
    let mut p = Parser { toks: &toks, pos: 0, src: text };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}
