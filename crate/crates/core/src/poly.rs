//! Dense univariate polynomials over `F_q`, the ring `F_q[z]`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Polynomial in `z`, coefficients lowest degree first, never with trailing
/// zeros. The zero polynomial has no coefficients and degree `None`, which
/// orders below every `Some(d)` and plays the role of `-∞`.
#[derive(Clone)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn from_coeffs(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Coefficients given as integers in the prime subfield, low degree first.
    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FieldSpec) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &FieldSpec, c: FieldElement) -> Poly {
        Poly::from_coeffs(field, vec![c])
    }

    pub fn monomial(field: &FieldSpec, c: FieldElement, degree: usize) -> Poly {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Poly::from_coeffs(field, coeffs)
    }

    /// The indeterminate `z`.
    pub fn z(field: &FieldSpec) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    /// Zero or a constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Nonzero constant, i.e. a unit of `F_q[z]`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_default()
    }

    /// Hamming weight of the coefficient vector.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, &s) in out.iter_mut().zip(short) {
            *o = f.add(*o, s);
        }
        Ok(Poly::from_coeffs(f, out))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        self.checked_add(&other.neg_poly())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::from_coeffs(f, out))
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    fn neg_poly(&self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect() }
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let f = &self.field;
        let dv = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lc = f.inv(divisor.lc())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dv {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dv];
        for shift in (0..quot.len()).rev() {
            let top = rem[shift + dv];
            if top.is_zero() {
                continue;
            }
            let factor = f.mul(top, inv_lc);
            quot[shift] = factor;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(rem[shift + i], f.mul(factor, c));
            }
        }
        rem.truncate(dv);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Whether `self` divides `other`. Zero divides only zero.
    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::MalformedInput(format!("{divisor} does not divide {self}")))
        }
    }

    /// Scale to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lc()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    /// Extended Euclid: `(g, s, t)` with `g = s·u + t·v`, `g` monic or zero.
    pub fn xgcd(u: &Poly, v: &Poly) -> Result<(Poly, Poly, Poly)> {
        u.check(v)?;
        let f = &u.field;
        let (mut r0, mut r1) = (u.clone(), v.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.lc()) {
            Ok(inv) => Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv))),
            Err(_) => Ok((r0, s0, t0)),
        }
    }

    pub fn gcd(u: &Poly, v: &Poly) -> Result<Poly> {
        Ok(Poly::xgcd(u, v)?.0)
    }

    /// Dot product `Σ a_i·b_i`.
    pub fn dot(a: &[Poly], b: &[Poly]) -> Result<Poly> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {}",
                a.len(),
                b.len()
            )));
        }
        let field = match a.first() {
            Some(p) => p.field.clone(),
            None => return Err(Error::DimensionMismatch("empty vectors".into())),
        };
        a.iter()
            .zip(b)
            .try_fold(Poly::zero(&field), |acc, (x, y)| acc.checked_add(&x.checked_mul(y)?))
    }

    /// Parse the textual polynomial grammar over `z`. Compound extension
    /// field coefficients of non-constant terms are parenthesised, e.g.
    /// `(a+1)*z^2+a*z+1`.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Poly::zero(field);
        for term in split_top_level(&s, '+')? {
            acc = &acc + &parse_term(field, term)?;
        }
        Ok(acc)
    }
}

/// Split on `sep` outside parentheses.
pub(crate) fn split_top_level(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in '{s}'")));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in '{s}'")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_coeff(field: &FieldSpec, c: &str) -> Result<FieldElement> {
    let inner = c
        .strip_prefix('(')
        .and_then(|c| c.strip_suffix(')'))
        .unwrap_or(c);
    field.parse_element(inner)
}

fn parse_term(field: &FieldSpec, term: &str) -> Result<Poly> {
    let bad = || Error::Parse(format!("bad polynomial term '{term}'"));
    if term.is_empty() {
        return Err(bad());
    }
    let Some(zpos) = term.rfind('z') else {
        return Ok(Poly::constant(field, parse_coeff(field, term)?));
    };
    let (head, tail) = term.split_at(zpos);
    let coeff = match head {
        "" => field.one(),
        h => parse_coeff(field, h.strip_suffix('*').ok_or_else(bad)?)?,
    };
    let degree = match &tail[1..] {
        "" => 1,
        rest => rest
            .strip_prefix('^')
            .and_then(|e| e.parse::<usize>().ok())
            .ok_or_else(bad)?,
    };
    Ok(Poly::monomial(field, coeff, degree))
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, "+")?;
            }
            first = false;
            let zpow = match d {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{d}"),
            };
            if zpow.is_empty() {
                write!(out, "{}", f.format_element(c))?;
            } else if c == f.one() {
                write!(out, "{zpow}")?;
            } else if f.is_compound(c) {
                write!(out, "({})*{zpow}", f.format_element(c))?;
            } else {
                write!(out, "{}*{zpow}", f.format_element(c))?;
            }
        }
        Ok(())
    }
}

// Operator sugar; panics on mismatched fields. Use the `checked_*` methods
// where operands may come from different fields.

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomials over different fields")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomials over different fields")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomials over different fields")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_poly()
    }
}

/// Monic gcd of all entries; zero if every entry is zero.
pub fn vec_content(v: &[Poly]) -> Result<Poly> {
    let Some(first) = v.first() else {
        return Err(Error::DimensionMismatch("empty vector".into()));
    };
    v.iter()
        .try_fold(Poly::zero(first.field()), |g, x| Poly::gcd(&g, x))
}
