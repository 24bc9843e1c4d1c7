//! Univariate polynomials over GF(p).
//!
//! Coefficients are stored in ascending degree order with no trailing
//! zeros, so the zero polynomial is the empty list and has no degree.
//!
//! Text form: terms in descending degree joined by ` + `, `^` for powers
//! and an explicit `c*` prefix for coefficients other than 1, e.g.
//! `x^3 + x + 1` or `2*x^2 + 1`. The zero polynomial prints as `0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

/// Maximum degree accepted by [`Poly::factor`].
pub const FACTOR_DEGREE_CAP: usize = 24;

/// Upper bound on the number of monic candidates tried at a single degree.
const TRIAL_BUDGET: u64 = 1 << 22;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: Field, c: u32) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: Field) -> Self {
        Self::monomial(field, 1, 1)
    }

    pub fn monomial(field: Field, c: u32, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(field, coeffs)
    }

    /// Builds a polynomial from ascending coefficients, reducing modulo `p`.
    pub fn from_coeffs(field: Field, coeffs: Vec<u32>) -> Self {
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| field.reduce(c as u64)).collect();
        trim(&mut coeffs);
        Poly { field, coeffs }
    }

    /// Builds a polynomial from signed integer coefficients (ascending).
    pub fn from_integers(field: Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.reduce_signed(c)).collect())
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(field: Field, roots: &[u32]) -> Self {
        roots.iter().fold(Self::one(field), |acc, &r| {
            &acc * &Self::from_coeffs(field, vec![field.neg(field.reduce(r as u64)), 1])
        })
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0. Only meaningful where
    /// the caller has excluded zero or treats it as contributing nothing.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<u32> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    /// Divides by the leading coefficient; the zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc)),
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        let c = f.reduce(c as u64);
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn eval(&self, at: u32) -> u32 {
        let f = self.field;
        let at = f.reduce(at as u64);
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, at), c))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.field.check_same(divisor.field)?;
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let f = self.field;
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if da < dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(divisor.coeffs[dd]);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; da - dd + 1];
        for k in (0..=da - dd).rev() {
            let c = f.mul(rem[k + dd], inv_lead);
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(rem[k + i], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// True when `self` divides `other` exactly. Zero divides only zero.
    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; `gcd(0, f) = monic(f)` and `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "gcd across fields");
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `f(x + 1)`.
    pub fn shift_one(&self) -> Poly {
        self.shift_by(1)
    }

    /// `f(x + c)`, expanded with binomial coefficients reduced modulo `p`.
    pub fn shift_by(&self, c: u32) -> Poly {
        let f = self.field;
        let c = f.reduce(c as u64);
        let n = self.coeffs.len();
        if n <= 1 {
            return self.clone();
        }
        // binom[k][j] = C(k, j) mod p, built with Pascal's rule.
        let mut binom = vec![vec![0u32; n]; n];
        for k in 0..n {
            binom[k][0] = 1;
            for j in 1..=k {
                binom[k][j] = f.add(binom[k - 1][j - 1], if j < k { binom[k - 1][j] } else { 0 });
            }
        }
        let mut powers = vec![1u32; n];
        for i in 1..n {
            powers[i] = f.mul(powers[i - 1], c);
        }
        let mut out = vec![0u32; n];
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..=k {
                let term = f.mul(a, f.mul(binom[k][j], powers[k - j]));
                out[j] = f.add(out[j], term);
            }
        }
        Poly::from_coeffs(f, out)
    }

    /// Factorisation into monic irreducibles by trial division.
    ///
    /// Candidates are all monic polynomials of degree 1, 2, ... up to half
    /// the degree of the unfactored part. Smaller factors are exhausted
    /// before larger degrees are tried, so every divisor found is
    /// irreducible; whatever remains at the end is irreducible as well.
    pub fn factor(&self) -> Result<Factorization> {
        let Some(deg) = self.degree() else {
            return Err(Error::FactorZero);
        };
        if deg > FACTOR_DEGREE_CAP {
            return Err(Error::DegreeCap {
                degree: deg,
                cap: FACTOR_DEGREE_CAP,
            });
        }
        let f = self.field;
        let unit = self.leading().expect("nonzero");
        let mut rest = self.monic();
        let mut factors = Vec::new();
        let mut d = 1;
        while 2 * d <= rest.degree_or_zero() {
            let count = (f.p() as u64).checked_pow(d as u32).filter(|&c| c <= TRIAL_BUDGET);
            let Some(count) = count else {
                return Err(Error::FactorSearchTooLarge { p: f.p(), degree: d });
            };
            for index in 0..count {
                let candidate = monic_with_index(f, d, index);
                let mut exp = 0;
                loop {
                    let (q, r) = rest.divmod(&candidate)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = q;
                    exp += 1;
                }
                if exp > 0 {
                    factors.push((candidate, exp));
                }
                if 2 * d > rest.degree_or_zero() {
                    break;
                }
            }
            d += 1;
        }
        if rest.degree_or_zero() >= 1 {
            factors.push((rest, 1));
        }
        factors.sort();
        Ok(Factorization { unit, factors })
    }

    /// True when the polynomial has positive degree and no proper factor.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.degree_or_zero() == 0 {
            return Ok(false);
        }
        let fac = self.factor()?;
        Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
    }

    /// Parses the text form. Accepts `+` and `-` between terms, optional
    /// whitespace, and unreduced integer coefficients.
    pub fn parse(field: Field, text: &str) -> Result<Poly> {
        Parser::new(field, text).parse()
    }
}

/// Monic polynomial of the given degree whose lower coefficients are the
/// base-p digits of `index`.
fn monic_with_index(f: Field, degree: usize, mut index: u64) -> Poly {
    let p = f.p() as u64;
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        coeffs.push((index % p) as u32);
        index /= p;
    }
    coeffs.push(1);
    Poly { field: f, coeffs }
}

/// Every monic polynomial of the given degree over `f`.
pub fn all_monic(f: Field, degree: usize) -> impl Iterator<Item = Poly> {
    let count = (f.p() as u64).pow(degree as u32);
    (0..count).map(move |i| monic_with_index(f, degree, i))
}

fn trim(coeffs: &mut Vec<u32>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by field, then degree (zero first), then coefficients from the
/// top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "adding polynomials over different fields");
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(f, (0..n).map(|k| f.add(self.coeff(k), rhs.coeff(k))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "subtracting polynomials over different fields");
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(f, (0..n).map(|k| f.sub(self.coeff(k), rhs.coeff(k))).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "multiplying polynomials over different fields");
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}*x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

/// `unit * prod(factor^exponent)` with distinct monic irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self, field: Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (p, e)| &acc * &p.pow(*e as u32))
    }
}

/// Product form, e.g. `(x + 1)^2 * x`.
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.unit != 1 || self.factors.is_empty() {
            parts.push(self.unit.to_string());
        }
        for (p, e) in self.factors.iter().rev() {
            let base = if p.coeffs.iter().filter(|&&c| c != 0).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            };
            parts.push(if *e == 1 { base } else { format!("{base}^{e}") });
        }
        f.write_str(&parts.join(" * "))
    }
}

struct Parser<'a> {
    field: Field,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(field: Field, text: &'a str) -> Self {
        Parser {
            field,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::PolyParse {
            column: self.pos + 1,
            message: message.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        match digits.parse::<u64>() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("number too large")
            }
        }
    }

    fn term(&mut self) -> Result<(u32, usize)> {
        let f = self.field;
        let mut coeff = 1u32;
        let mut saw_coeff = false;
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            coeff = f.reduce(self.number()?);
            saw_coeff = true;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((coeff, 0));
            }
        }
        match self.peek() {
            Some(b'x') => self.pos += 1,
            _ if saw_coeff => return self.err("expected `x` after `*`"),
            _ => return self.err("expected a term"),
        }
        let mut degree = 1usize;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let d = self.number()?;
            if d > 1 << 20 {
                return self.err("exponent too large");
            }
            degree = d as usize;
        }
        Ok((coeff, degree))
    }

    fn parse(mut self) -> Result<Poly> {
        let f = self.field;
        let mut acc = Poly::zero(f);
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let (c, d) = self.term()?;
            let c = if negate { f.neg(c) } else { c };
            acc = &acc + &Poly::monomial(f, c, d);
            match self.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
            self.pos += 1;
        }
        Ok(acc)
    }
}
