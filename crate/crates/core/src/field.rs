//! Exact arithmetic in `F_q = F_p[x]/(m(x))`.
//!
//! Elements are stored as an index into the canonical enumeration of the
//! field: the coefficient vector `(c_0, .., c_{l-1})` in the power basis of
//! the modulus, read low-degree first, is interpreted as a base-`p` numeral
//! with `c_0` the most significant digit. Numeric order on indices is
//! therefore lexicographic order on coefficient vectors, and for prime
//! fields the index is simply the residue.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order. Log/antilog tables are `O(q)`.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
}

#[derive(Debug)]
struct Tables {
    p: u32,
    l: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `place[i] = p^(l-1-i)`, the weight of digit `c_i` in an index.
    place: Vec<u32>,
    one: u32,
    neg: Vec<u32>,
    /// `exp[i] = g^i` for a fixed primitive `g`, doubled to skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field `F_{p^l}` together with its defining modulus.
///
/// Cloning is cheap; all clones share the same arithmetic tables.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.inner.p)
            .field("l", &self.inner.l)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p, low degree first, used only while building a
// field (modulus search, irreducibility, table construction).

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let inv_lc = fp_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = (r[r.len() - 1] as u64 * inv_lc as u64 % p as u64) as u32;
        for (i, &c) in m.iter().enumerate() {
            let sub = (factor as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    // Fermat; p is small.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Every monic polynomial of the given degree, in lexicographic order of
/// the coefficient vector read low-degree first.
fn monic_polys(p: u32, degree: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u32; degree as usize + 1];
        for i in (0..degree as usize).rev() {
            coeffs[i] = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        coeffs[degree as usize] = 1;
        coeffs
    })
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let l = (m.len() - 1) as u32;
    (1..=l / 2).all(|d| monic_polys(p, d).all(|f| !fp_rem(m, &f, p).is_empty()))
}

impl FieldSpec {
    /// Build `F_{p^l}`. When `modulus` is omitted the lexicographically
    /// smallest monic irreducible of degree `l` is chosen (coefficients
    /// compared low degree first). For `l = 1` that is `x`.
    pub fn new(p: u64, l: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if l == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let q = p
            .checked_pow(l)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge(p.saturating_pow(l)))?;
        let p = p as u32;
        let modulus = match modulus {
            Some(m) => {
                let mut m = m.to_vec();
                fp_trim(&mut m);
                if m.is_empty() || m.len() - 1 != l as usize {
                    return Err(Error::DegreeMismatch {
                        expected: l as usize,
                        found: m.len().saturating_sub(1),
                    });
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficient out of range".into()));
                }
                if m[l as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus is not monic".into()));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(format!("{m:?}")));
                }
                m
            }
            None => monic_polys(p, l)
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial exists in every degree"),
        };
        Ok(FieldSpec {
            inner: Arc::new(Tables::build(p, l, q as u32, modulus)),
        })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        FieldSpec::new(p, 1, None)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<FieldSpec> {
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let p = (2..=q)
            .find(|&d| q.is_multiple_of(d))
            .ok_or(Error::NotPrime(q))?;
        let mut l = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            l += 1;
        }
        if r != 1 {
            return Err(Error::NotPrime(q));
        }
        FieldSpec::new(p, l, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.l
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_binary(&self) -> bool {
        self.inner.q == 2
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(self.inner.one)
    }

    /// Element with the given enumeration index.
    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.inner.q).then_some(FieldElement(index))
    }

    /// All elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(FieldElement)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.inner.p as i64;
        let r = n.rem_euclid(p) as u32;
        FieldElement(r * self.inner.place[0])
    }

    /// Coefficient vector `(c_0, .., c_{l-1})` of an element.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        self.inner.digits(a.0)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        let t = &self.inner;
        if coeffs.len() > t.l as usize {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a degree-{} extension",
                coeffs.len(),
                t.l
            )));
        }
        Ok(FieldElement(
            coeffs
                .iter()
                .zip(&t.place)
                .map(|(&c, &w)| (c % t.p) * w)
                .sum(),
        ))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.inner.q
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let t = &*self.inner;
        if t.l == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= t.p { s - t.p } else { s });
        }
        if t.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let mut out = 0;
        for &w in &t.place {
            let da = a.0 / w % t.p;
            let db = b.0 / w % t.p;
            out += (da + db) % t.p * w;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.inner.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let t = &*self.inner;
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.inner;
        let order = t.q - 1;
        Ok(FieldElement(t.exp[((order - t.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// Range-checked arithmetic entry point. `b` is required for binary
    /// operations and ignored for unary ones.
    pub fn arith(
        &self,
        op: FieldOp,
        a: FieldElement,
        b: Option<FieldElement>,
    ) -> Result<FieldElement> {
        if !self.contains(a) || b.is_some_and(|b| !self.contains(b)) {
            return Err(Error::FieldMismatch);
        }
        let need_b = || b.ok_or_else(|| Error::MalformedInput("missing second operand".into()));
        match op {
            FieldOp::Add => Ok(self.add(a, need_b()?)),
            FieldOp::Mul => Ok(self.mul(a, need_b()?)),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Inv => self.inv(a),
        }
    }

    /// First `b` in enumeration order with `b^2 = -1`, if any.
    pub fn sqrt_of_minus_one(&self) -> Option<FieldElement> {
        self.square_roots_of_minus_one().into_iter().next()
    }

    /// Every `b` with `b^2 = -1`, in enumeration order.
    pub fn square_roots_of_minus_one(&self) -> Vec<FieldElement> {
        let target = self.neg(self.one());
        self.elements().filter(|&b| self.square(b) == target).collect()
    }

    /// `"p"` for prime fields, `"p^l"` otherwise.
    pub fn label(&self) -> String {
        if self.inner.l == 1 {
            self.inner.p.to_string()
        } else {
            format!("{}^{}", self.inner.p, self.inner.l)
        }
    }

    /// Render an element: decimal residues for prime fields, a polynomial in
    /// `a` (the residue of `x`) for extensions, e.g. `a^2+2*a`.
    pub fn format_element(&self, e: FieldElement) -> String {
        let t = &*self.inner;
        if t.l == 1 {
            return e.0.to_string();
        }
        let digits = t.digits(e.0);
        let mut terms = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let power = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            terms.push(match (c, power.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => power,
                (_, false) => format!("{c}*{power}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Whether the rendered element needs parentheses when used as a
    /// polynomial coefficient.
    pub fn is_compound(&self, e: FieldElement) -> bool {
        self.inner.l > 1 && self.format_element(e).contains('+')
    }

    /// Parse the element syntax produced by [`FieldSpec::format_element`].
    /// Integers are reduced modulo `p`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let mut acc = self.zero();
        for term in s.split('+') {
            acc = self.add(acc, self.parse_element_term(term)?);
        }
        Ok(acc)
    }

    fn parse_element_term(&self, term: &str) -> Result<FieldElement> {
        let bad = || Error::Parse(format!("bad field element term '{term}'"));
        let t = &*self.inner;
        let (coeff, power) = match term.find('a') {
            None => (term, None),
            Some(pos) => {
                if t.l == 1 {
                    return Err(Error::Parse(format!(
                        "'{term}': the symbol a is only valid in extension fields"
                    )));
                }
                let (head, tail) = term.split_at(pos);
                let coeff = match head {
                    "" => "1",
                    h => h.strip_suffix('*').ok_or_else(bad)?,
                };
                let exp = match &tail[1..] {
                    "" => 1u32,
                    rest => rest
                        .strip_prefix('^')
                        .and_then(|e| e.parse().ok())
                        .ok_or_else(bad)?,
                };
                (coeff, Some(exp))
            }
        };
        if coeff.is_empty() || !coeff.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let c = coeff
            .parse::<u64>()
            .map_err(|_| bad())?
            .rem_euclid(t.p as u64) as i64;
        let c = self.from_int(c);
        match power {
            None => Ok(c),
            Some(exp) => {
                let a = self.generator_residue();
                let mut x = self.one();
                for _ in 0..exp {
                    x = self.mul(x, a);
                }
                Ok(self.mul(c, x))
            }
        }
    }

    /// The residue class of `x`, i.e. the element written `a`.
    pub fn generator_residue(&self) -> FieldElement {
        let t = &*self.inner;
        if t.l == 1 {
            // x ≡ -c0 modulo x + c0.
            return self.from_int(-(t.modulus[0] as i64));
        }
        FieldElement(t.place[1])
    }
}

impl Tables {
    fn digits(&self, mut idx: u32) -> Vec<u32> {
        let mut out = vec![0; self.l as usize];
        for i in (0..self.l as usize).rev() {
            out[i] = idx % self.p;
            idx /= self.p;
        }
        out
    }

    fn index_of_digits(&self, d: &[u32]) -> u32 {
        d.iter().zip(&self.place).map(|(&c, &w)| c * w).sum()
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.l as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let mut r = fp_rem(&prod, &self.modulus, self.p);
        r.resize(self.l as usize, 0);
        self.index_of_digits(&r)
    }

    fn build(p: u32, l: u32, q: u32, modulus: Vec<u32>) -> Tables {
        let place: Vec<u32> = (0..l).map(|i| p.pow(l - 1 - i)).collect();
        let mut t = Tables {
            p,
            l,
            q,
            modulus,
            one: place[0],
            place,
            neg: Vec::new(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        t.neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = t.digits(a).iter().map(|&c| (p - c) % p).collect();
                t.index_of_digits(&d)
            })
            .collect();
        let order = q - 1;
        let mut powers = Vec::with_capacity(order as usize);
        for g in 1..q {
            powers.clear();
            let mut x = t.one;
            loop {
                powers.push(x);
                x = t.slow_mul(x, g);
                if x == t.one {
                    break;
                }
            }
            if powers.len() as u32 == order {
                break;
            }
        }
        debug_assert_eq!(powers.len() as u32, order);
        let mut log = vec![0u32; q as usize];
        for (i, &x) in powers.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        t.exp = powers.iter().chain(powers.iter()).copied().collect();
        t.log = log;
        t
    }
}
