use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GbLimits, GroebnerBasis};
use crate::polyring::{binomial, count_monomials_of_degree, Monomial, PolySystem, TermOrder};

/// Hilbert series data of `R/I` for a homogeneous ideal `I`.
///
/// `HS_{R/I}(t) = numerator(t) / (1 - t)^n = reduced(t) / (1 - t)^krull_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    nvars: usize,
    numerator: Vec<i64>,
    krull_dim: usize,
    reduced: Vec<i64>,
    /// Coefficients of `d^0, d^1, ...` of the Hilbert polynomial of `R/I`,
    /// each to be divided by `hp_denominator`.
    hp_numerators: Vec<i128>,
    hp_denominator: i128,
    index_of_regularity: usize,
}

impl HilbertData {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Coefficients of the numerator over `(1 - t)^n`, lowest degree first.
    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn krull_dim(&self) -> usize {
        self.krull_dim
    }

    /// The numerator over `(1 - t)^D`, which does not vanish at `t = 1`
    /// unless the ideal is the whole ring.
    pub fn reduced_numerator(&self) -> &[i64] {
        &self.reduced
    }

    pub fn hilbert_polynomial(&self) -> (&[i128], i128) {
        (&self.hp_numerators, self.hp_denominator)
    }

    pub fn index_of_regularity(&self) -> usize {
        self.index_of_regularity
    }

    /// `dim (R/I)_d`.
    pub fn quotient_dim(&self, d: usize) -> u64 {
        let mut v: i128 = 0;
        for (k, &c) in self.numerator.iter().enumerate() {
            if k <= d && c != 0 {
                let b = count_monomials_of_degree(self.nvars, d - k).expect("small degree");
                v += c as i128 * b as i128;
            }
        }
        v as u64
    }

    /// `HP_{R/I}(d)`.
    pub fn hilbert_poly_at(&self, d: i64) -> i128 {
        let mut acc: i128 = 0;
        for &c in self.hp_numerators.iter().rev() {
            acc = acc * d as i128 + c;
        }
        acc / self.hp_denominator
    }
}

/// Numerator of `HS_{R/I}` over `(1 - t)^n` for a monomial ideal.
///
/// Splits on a variable `x` dividing a non-linear minimal generator:
/// `N(I) = N(I + (x)) + t N(I : x)`.
pub fn monomial_ideal_numerator(nvars: usize, gens: &[Monomial]) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    numerator_rec(nvars, gens)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn numerator_rec(nvars: usize, gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![0];
    }
    // pick the variable occurring in the most non-linear generators
    let mut counts = vec![0usize; nvars];
    for g in gens.iter().filter(|g| g.degree() > 1) {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let Some((x, _)) = counts.iter().enumerate().filter(|(_, &c)| c > 0).max_by_key(|(_, &c)| c) else {
        // generated by distinct variables
        let mut out = vec![1i64];
        for _ in 0..gens.len() {
            out = mul_one_minus_t(&out);
        }
        return out;
    };
    let xv = Monomial::var(nvars, x);
    let mut plus = gens.clone();
    plus.push(xv.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| if g.exponent(x) > 0 { xv.quotient_of(g).expect("x divides g") } else { g.clone() })
        .collect();
    let a = numerator_rec(nvars, minimalize(plus));
    let b = numerator_rec(nvars, minimalize(colon));
    let mut out = vec![0i64; a.len().max(b.len() + 1)];
    for (k, c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (k, c) in b.iter().enumerate() {
        out[k + 1] += c;
    }
    trim(out)
}

fn mul_one_minus_t(p: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + 1];
    for (k, &c) in p.iter().enumerate() {
        out[k] += c;
        out[k + 1] -= c;
    }
    trim(out)
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Divides by `1 - t`, assuming `p(1) = 0`.
fn div_one_minus_t(p: &[i64]) -> Vec<i64> {
    // p = (1 - t) q  =>  q_k = sum_{j <= k} p_j
    let mut out = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0;
    for &c in &p[..p.len() - 1] {
        acc += c;
        out.push(acc);
    }
    if out.is_empty() {
        out.push(0);
    }
    trim(out)
}

/// Hilbert series data for the numerator of `HS_{R/I}` over `(1 - t)^n`.
pub fn hilbert_data_from_numerator(nvars: usize, numerator: Vec<i64>) -> HilbertData {
    let mut reduced = numerator.clone();
    let mut codim = 0;
    let is_zero = numerator.iter().all(|&c| c == 0);
    if !is_zero {
        while codim < nvars && reduced.iter().sum::<i64>() == 0 {
            reduced = div_one_minus_t(&reduced);
            codim += 1;
        }
    }
    let krull_dim = if is_zero { 0 } else { nvars - codim };
    let (hp_numerators, hp_denominator) = hilbert_polynomial(&reduced, krull_dim);
    // reduced/(1-t)^D = P(t) + R(t)/(1-t)^D with deg R < D; the coefficients
    // of R/(1-t)^D agree with HP for all d >= 0, so HF and HP differ exactly
    // at the degrees of the polynomial part P, whose degree is deg Q - D.
    let deg_q = reduced.len() as i64 - 1;
    let index_of_regularity = if is_zero { 0 } else { (deg_q - krull_dim as i64 + 1).max(0) as usize };
    HilbertData {
        nvars,
        numerator,
        krull_dim,
        reduced,
        hp_numerators,
        hp_denominator,
        index_of_regularity,
    }
}

/// `HP(d) = sum_k q_k C(d - k + D - 1, D - 1)`, expanded in powers of `d`.
fn hilbert_polynomial(q: &[i64], dim: usize) -> (Vec<i128>, i128) {
    if dim == 0 {
        return (vec![0], 1);
    }
    let denom: i128 = (1..dim as i128).product::<i128>().max(1);
    let mut total = vec![0i128; dim];
    for (k, &c) in q.iter().enumerate() {
        if c == 0 {
            continue;
        }
        // prod_{j=1}^{D-1} (d - k + j)
        let mut p = vec![1i128];
        for j in 1..dim {
            let a = j as i128 - k as i128;
            let mut next = vec![0i128; p.len() + 1];
            for (i, &v) in p.iter().enumerate() {
                next[i] += v * a;
                next[i + 1] += v;
            }
            p = next;
        }
        for (i, v) in p.into_iter().enumerate() {
            total[i] += c as i128 * v;
        }
    }
    (total, denom)
}

fn require_homogeneous(gb: &GroebnerBasis) -> Result<()> {
    if !gb.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(())
}

/// `HF_I(d) = dim_k I_d` for the homogeneous ideal with Gröbner basis `gb`.
pub fn hilbert_function(gb: &GroebnerBasis, d: usize) -> Result<u64> {
    require_homogeneous(gb)?;
    let all = count_monomials_of_degree(gb.nvars(), d)?;
    let standard = gb.standard_monomials_of_degree(d as u32).len() as u64;
    Ok(all - standard)
}

pub fn hilbert_series(gb: &GroebnerBasis) -> Result<HilbertData> {
    require_homogeneous(gb)?;
    let num = monomial_ideal_numerator(gb.nvars(), &gb.leading_monomials());
    Ok(hilbert_data_from_numerator(gb.nvars(), num))
}

/// `d_reg(F) = ireg(F^top)`. Note `ireg(I) = ireg(R/I)` because `dim R_d`
/// is a polynomial in `d` for every `d >= 0`.
pub fn degree_of_regularity(system: &PolySystem, limits: GbLimits) -> Result<usize> {
    let top = system.top_system();
    let gb = buchberger(&top, &TermOrder::degrevlex(top.nvars()), limits)?;
    let hd = hilbert_series(&gb)?;
    let ireg = hd.index_of_regularity();
    if hd.krull_dim() == 0 {
        // zero-dimensional: ireg is the least d with I_d = R_d
        debug_assert_eq!(hd.quotient_dim(ireg), 0);
        debug_assert!(ireg == 0 || hd.quotient_dim(ireg - 1) != 0);
    }
    Ok(ireg)
}

/// `C(n - 1 + d, n - 1)` as used by callers comparing against `dim R_d`.
pub fn ring_dim(nvars: usize, d: usize) -> u64 {
    if nvars == 0 {
        return u64::from(d == 0);
    }
    binomial((nvars - 1 + d) as u64, (nvars - 1) as u64).expect("small degree")
}
