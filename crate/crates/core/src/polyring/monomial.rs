use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Exponent vector `x_1^{a_1} ... x_n^{a_n}` with its cached total degree.
///
/// The derived `Ord` is a storage order only; term orders live in
/// [`TermOrder`](super::TermOrder).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    /// Multiplies by a single variable.
    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] = m.exps[i].checked_add(1).expect("exponent overflow");
        m.degree += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Appends a variable with the given exponent.
    pub fn extended(&self, exp: u16) -> Monomial {
        let mut exps = self.exps.clone();
        exps.push(exp);
        Monomial {
            exps,
            degree: self.degree + exp as u32,
        }
    }

    /// Drops variable `i`.
    pub fn without(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.remove(i);
        Monomial::new(exps)
    }

    /// Some exponent is at least `q`.
    pub fn exceeds(&self, q: u16) -> bool {
        self.exps.iter().any(|&e| e >= q)
    }
}

/// All monomials of total degree exactly `d` in `n` variables, in a fixed
/// enumeration order (first variable's exponent descending).
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fill(&mut out, &mut cur, 0, d, None);
    out
}

/// Monomials of degree `d` with every exponent below `bound`.
pub fn bounded_monomials_of_degree(n: usize, d: u32, bound: u16) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    fill(&mut out, &mut cur, 0, d, Some(bound));
    out
}

fn fill(out: &mut Vec<Monomial>, cur: &mut [u16], i: usize, rest: u32, bound: Option<u16>) {
    let n = cur.len();
    if n == 0 {
        if rest == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    if i == n - 1 {
        if bound.is_some_and(|b| rest >= b as u32) {
            return;
        }
        cur[i] = rest as u16;
        out.push(Monomial::new(cur.to_vec()));
        cur[i] = 0;
        return;
    }
    let top = match bound {
        Some(b) => rest.min(b as u32 - 1),
        None => rest,
    };
    for e in (0..=top).rev() {
        cur[i] = e as u16;
        fill(out, cur, i + 1, rest - e, bound);
    }
    cur[i] = 0;
}

/// All monomials of degree at most `d`.
pub fn monomials_upto(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// `|M_{<=d}| = C(n + d, n)`.
pub fn count_monomials_upto(n: usize, d: usize) -> Result<u64> {
    binomial((n + d) as u64, n as u64)
}

/// Number of monomials of degree exactly `d`: `C(n - 1 + d, n - 1)`.
pub fn count_monomials_of_degree(n: usize, d: usize) -> Result<u64> {
    if n == 0 {
        return Ok(if d == 0 { 1 } else { 0 });
    }
    binomial((n - 1 + d) as u64, (n - 1) as u64)
}

pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > i64::MAX as u128 {
            return Err(Error::Capacity {
                what: "monomial count",
                limit: i64::MAX as u64,
                detail: alloc::format!("C({}, {})", n, k),
            });
        }
    }
    Ok(acc as u64)
}
