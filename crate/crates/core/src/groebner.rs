//! Buchberger's algorithm, reduced Gröbner bases and normal forms.
//!
//! This is the ground truth that the Macaulay-matrix computations are checked
//! against. Polynomials are handled internally as term lists sorted from the
//! greatest to the least monomial under the working order.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ffield::PrimeField;
use crate::polyring::{monomials_of_degree, Monomial, PolySystem, Polynomial, TermOrder};

type Terms = Vec<(Monomial, u32)>;

/// Resource caps for Buchberger's algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbLimits {
    /// Largest degree of a polynomial admitted into the basis.
    pub max_degree: u32,
    /// Number of S-pairs that may be processed.
    pub max_pairs: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits {
            max_degree: 60,
            max_pairs: 1_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    sorted: Vec<Terms>,
    order: TermOrder,
    reduced: bool,
    nvars: usize,
    field: PrimeField,
}

struct Ctx<'a> {
    order: &'a TermOrder,
    field: PrimeField,
}

impl Ctx<'_> {
    /// `a - c * u * b`, merging two sorted term lists.
    fn sub_scaled(&self, a: &[(Monomial, u32)], c: u32, u: &Monomial, b: &[(Monomial, u32)]) -> Terms {
        let f = self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut shifted: Option<(Monomial, u32)> = b.first().map(|(m, v)| (m.mul(u), f.mul(*v, c)));
        while i < a.len() || shifted.is_some() {
            let take_a = match (&shifted, a.get(i)) {
                (None, _) => Ordering::Greater,
                (Some(_), None) => Ordering::Less,
                (Some((sm, _)), Some((am, _))) => self.order.compare(am, sm),
            };
            match take_a {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (sm, sv) = shifted.take().unwrap();
                    out.push((sm, f.neg(sv)));
                    j += 1;
                    shifted = b.get(j).map(|(m, v)| (m.mul(u), f.mul(*v, c)));
                }
                Ordering::Equal => {
                    let (sm, sv) = shifted.take().unwrap();
                    let v = f.sub(a[i].1, sv);
                    if v != 0 {
                        out.push((sm, v));
                    }
                    i += 1;
                    j += 1;
                    shifted = b.get(j).map(|(m, v)| (m.mul(u), f.mul(*v, c)));
                }
            }
        }
        out
    }

    /// Full reduction of `p` modulo monic `basis`.
    fn reduce(&self, mut p: Terms, basis: &[Terms], skip: Option<usize>) -> Terms {
        let mut rem: Terms = Vec::new();
        let mut pos = 0;
        while pos < p.len() {
            let (m, c) = (&p[pos].0, p[pos].1);
            let divisor = basis
                .iter()
                .enumerate()
                .filter(|(k, _)| Some(*k) != skip)
                .find_map(|(_, g)| g[0].0.quotient_of(m).map(|u| (g, u)));
            match divisor {
                Some((g, u)) => {
                    p = self.sub_scaled(&p[pos..], c, &u, g);
                    pos = 0;
                }
                None => {
                    rem.push(p[pos].clone());
                    pos += 1;
                }
            }
        }
        rem
    }

    fn monic(&self, mut p: Terms) -> Terms {
        if let Some(&(_, c)) = p.first() {
            let inv = self.field.inv(c).expect("nonzero lead");
            for t in p.iter_mut() {
                t.1 = self.field.mul(t.1, inv);
            }
        }
        p
    }

    fn spoly(&self, a: &Terms, b: &Terms) -> Terms {
        let lcm = a[0].0.lcm(&b[0].0);
        let ua = a[0].0.quotient_of(&lcm).unwrap();
        let ub = b[0].0.quotient_of(&lcm).unwrap();
        let a_shift: Terms = a.iter().map(|(m, v)| (m.mul(&ua), *v)).collect();
        self.sub_scaled(&a_shift, 1, &ub, b)
    }
}

fn to_sorted(p: &Polynomial, order: &TermOrder) -> Terms {
    p.sorted_terms(order)
}

fn from_sorted(t: &Terms, nvars: usize, field: PrimeField) -> Polynomial {
    Polynomial::from_terms(nvars, field, t.iter().map(|(m, c)| (m.clone(), *c as i64)))
}

/// Computes the reduced Gröbner basis of the ideal generated by `system`.
///
/// Pairs are selected by the normal strategy (smallest lcm first, ties broken
/// by the term order and then by index); pairs with coprime leading monomials
/// are skipped.
pub fn buchberger(system: &PolySystem, order: &TermOrder, limits: GbLimits) -> Result<GroebnerBasis> {
    groebner_of(system.generators(), system.nvars(), system.field(), order, limits)
}

pub fn groebner_of(
    generators: &[Polynomial],
    nvars: usize,
    field: PrimeField,
    order: &TermOrder,
    limits: GbLimits,
) -> Result<GroebnerBasis> {
    if order.nvars() != nvars {
        return Err(Error::RingMismatch {
            left: nvars,
            right: order.nvars(),
        });
    }
    let ctx = Ctx { order, field };
    let mut basis: Vec<Terms> = Vec::new();
    for g in generators {
        let t = ctx.reduce(to_sorted(g, order), &basis, None);
        if !t.is_empty() {
            basis.push(ctx.monic(t));
        }
    }
    // Pair queue keyed by (degree of lcm, index pair); the term-order tie-break
    // is applied when popping.
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((basis[i][0].0.lcm(&basis[j][0].0).degree(), i, j));
        }
    }
    let mut processed = 0usize;
    while let Some(&(deg, _, _)) = pairs.iter().next() {
        // among pairs of minimal lcm degree take the smallest lcm
        let pick = pairs
            .range((deg, 0, 0)..(deg + 1, 0, 0))
            .min_by(|a, b| {
                let la = basis[a.1][0].0.lcm(&basis[a.2][0].0);
                let lb = basis[b.1][0].0.lcm(&basis[b.2][0].0);
                order.compare(&la, &lb).then((a.1, a.2).cmp(&(b.1, b.2)))
            })
            .copied()
            .unwrap();
        pairs.remove(&pick);
        let (_, i, j) = pick;
        if basis[i][0].0.is_coprime(&basis[j][0].0) {
            continue;
        }
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::Capacity {
                what: "S-pairs",
                limit: limits.max_pairs as u64,
                detail: format!("basis size {} when the cap was hit", basis.len()),
            });
        }
        let s = ctx.spoly(&basis[i], &basis[j]);
        let r = ctx.reduce(s, &basis, None);
        if r.is_empty() {
            continue;
        }
        let rdeg = r.iter().map(|(m, _)| m.degree()).max().unwrap();
        if rdeg > limits.max_degree {
            return Err(Error::Capacity {
                what: "Groebner basis degree",
                limit: limits.max_degree as u64,
                detail: format!("new element of degree {} after {} pairs", rdeg, processed),
            });
        }
        let r = ctx.monic(r);
        let k = basis.len();
        for (i2, g) in basis.iter().enumerate() {
            pairs.insert((g[0].0.lcm(&r[0].0).degree(), i2, k));
        }
        basis.push(r);
    }

    // Minimalize: drop elements whose leading monomial is divisible by another's.
    let mut keep: Vec<bool> = alloc::vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j && keep[j] && basis[j][0].0.divides(&basis[i][0].0) {
                // equal leading monomials: keep the earlier one
                if basis[j][0].0 != basis[i][0].0 || j < i {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let minimal: Vec<Terms> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(b, k)| k.then_some(b))
        .collect();
    // Interreduce.
    let mut reduced: Vec<Terms> = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let lead = g[0].clone();
        let tail = ctx.reduce(g[1..].to_vec(), &minimal, Some(i));
        let mut t = Vec::with_capacity(tail.len() + 1);
        t.push(lead);
        t.extend(tail);
        reduced.push(t);
    }
    reduced.sort_by(|a, b| order.compare(&a[0].0, &b[0].0));
    Ok(GroebnerBasis {
        elements: reduced.iter().map(|t| from_sorted(t, nvars, field)).collect(),
        sorted: reduced,
        order: order.clone(),
        reduced: true,
        nvars,
        field,
    })
}

impl GroebnerBasis {
    /// Elements sorted by increasing leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|t| t[0].0.clone()).collect()
    }

    /// Largest degree of an element.
    pub fn max_degree(&self) -> usize {
        self.elements.iter().map(|g| g.degree() as usize).max().unwrap_or(0)
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.sorted.iter().any(|t| t[0].0.is_one())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.elements.iter().all(Polynomial::is_homogeneous)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let ctx = Ctx {
            order: &self.order,
            field: self.field,
        };
        let r = ctx.reduce(to_sorted(f, &self.order), &self.sorted, None);
        from_sorted(&r, self.nvars, self.field)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether `m` lies in the leading-term ideal.
    pub fn in_leading_ideal(&self, m: &Monomial) -> bool {
        self.sorted.iter().any(|t| t[0].0.divides(m))
    }

    /// Checks the Buchberger criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let ctx = Ctx {
            order: &self.order,
            field: self.field,
        };
        for j in 0..self.sorted.len() {
            for i in 0..j {
                let s = ctx.spoly(&self.sorted[i], &self.sorted[j]);
                if !ctx.reduce(s, &self.sorted, None).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Standard monomials (outside the leading-term ideal) of degree `d`.
    pub fn standard_monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars, d)
            .into_iter()
            .filter(|m| !self.in_leading_ideal(m))
            .collect()
    }

    /// `dim_k (F)_{<=d}` for a degree-compatible order: the number of
    /// monomials of degree at most `d` in the leading-term ideal.
    pub fn truncated_ideal_dim(&self, d: usize) -> Result<u64> {
        if !self.order.degree_compatible() {
            return Err(Error::NotDegreeCompatible);
        }
        Ok((0..=d as u32)
            .flat_map(|k| monomials_of_degree(self.nvars, k))
            .filter(|m| self.in_leading_ideal(m))
            .count() as u64)
    }
}

/// Largest degree of an element of the reduced Gröbner basis.
pub fn max_gb_degree(system: &PolySystem, order: &TermOrder, limits: GbLimits) -> Result<usize> {
    Ok(buchberger(system, order, limits)?.max_degree())
}

/// `dim_k (F)_{<=d}` under a degree-compatible order.
pub fn ideal_trunc_dim(system: &PolySystem, d: usize, order: &TermOrder, limits: GbLimits) -> Result<u64> {
    if !order.degree_compatible() {
        return Err(Error::NotDegreeCompatible);
    }
    buchberger(system, order, limits)?.truncated_ideal_dim(d)
}
