use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{Monomial, TermOrder};
use crate::error::{Error, Result};
use crate::ffield::{FieldElement, PrimeField};

/// A polynomial over F_p, stored order-agnostically as monomial -> nonzero
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, u32>,
    nvars: usize,
    field: PrimeField,
}

impl Polynomial {
    pub fn zero(nvars: usize, field: PrimeField) -> Self {
        Polynomial {
            terms: BTreeMap::new(),
            nvars,
            field,
        }
    }

    pub fn constant(nvars: usize, field: PrimeField, c: i64) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn term(field: PrimeField, m: Monomial, c: i64) -> Self {
        let mut p = Self::zero(m.nvars(), field);
        p.add_term(m, field.reduce(c));
        p
    }

    pub fn var(nvars: usize, field: PrimeField, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), 1)
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms<I>(nvars: usize, field: PrimeField, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let mut p = Self::zero(nvars, field);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial outside the ring");
            p.add_term(m, field.reduce(c));
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let field = self.field;
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let v = field.add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.field
            .element(self.terms.get(m).copied().unwrap_or(0) as i64)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, u32)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
            .map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self, order: &TermOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Terms sorted from greatest to least monomial.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(Monomial, u32)> {
        let mut v: Vec<(Monomial, u32)> = self.terms.iter().map(|(m, c)| (m.clone(), *c)).collect();
        v.sort_by(|a, b| order.compare(&b.0, &a.0));
        v
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(self.nvars, self.field);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.mul(b), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let c = c % self.field.modulus();
        if c == 0 {
            return Polynomial::zero(self.nvars, self.field);
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), self.field.mul(*v, c)))
                .collect(),
            nvars: self.nvars,
            field: self.field,
        }
    }

    /// `u * self` for a monomial `u`.
    pub fn mul_monomial(&self, u: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.mul(u), *c)).collect(),
            nvars: self.nvars,
            field: self.field,
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, self.field, 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self, order: &TermOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field.inv(c).expect("nonzero coefficient")),
        }
    }

    /// The homogeneous component of largest degree.
    pub fn top_component(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.degree() as u32;
        Ok(Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
            nvars: self.nvars,
            field: self.field,
        })
    }

    /// Homogenizes with a new variable appended after the existing ones.
    pub fn homogenize(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.degree() as u32;
        Ok(Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extended((d - m.degree()) as u16), *c))
                .collect(),
            nvars: self.nvars + 1,
            field: self.field,
        })
    }

    /// Sets variable `var` to 1 and removes it from the ring.
    pub fn dehomogenize(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars - 1, self.field);
        for (m, c) in self.terms() {
            out.add_term(m.without(var), c);
        }
        out
    }

    /// Sets variable `var` to 0 and removes it from the ring.
    pub fn substitute_zero(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars - 1, self.field);
        for (m, c) in self.terms() {
            if m.exponent(var) == 0 {
                out.add_term(m.without(var), c);
            }
        }
        out
    }

    /// Reduction into `F_q[x]/(x_1^q, ..., x_n^q)`: drops every term with an
    /// exponent `>= q`.
    pub fn truncate_exponents(&self, q: u16) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.exceeds(q))
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
            nvars: self.nvars,
            field: self.field,
        }
    }

    /// Evaluates at a point of F_p^n.
    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let f = self.field;
        let mut acc = 0;
        for (m, c) in self.terms() {
            let mut t = c;
            for (i, &e) in m.exponents().iter().enumerate() {
                t = f.mul(t, f.pow(point[i], e as u64));
            }
            acc = f.add(acc, t);
        }
        acc
    }

    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> PolyDisplay<'a, S> {
        PolyDisplay { poly: self, names }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials over different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials over different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials over different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.field.modulus() - 1)
    }
}

/// Renders terms from highest to lowest degree (graded lex in index order),
/// negative-looking coefficients `p - c` with `c < p/2` as `- c`.
pub struct PolyDisplay<'a, S> {
    poly: &'a Polynomial,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return f.write_str("0");
        }
        let order = TermOrder::grlex(p.nvars);
        let modulus = p.field.modulus();
        for (k, (m, c)) in p.sorted_terms(&order).into_iter().enumerate() {
            let (neg, mag) = if c > modulus / 2 { (true, modulus - c) } else { (false, c) };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut first = true;
            if mag != 1 || m.is_one() {
                write!(f, "{}", mag)?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(self.names[i].as_ref())?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

/// Default rendering with variables `x1, x2, ...`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<alloc::string::String> =
            (1..=self.nvars).map(|i| alloc::format!("x{}", i)).collect();
        write!(f, "{}", self.display_with(&names))
    }
}
