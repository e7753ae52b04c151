use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GbLimits, GroebnerBasis};
use crate::linalg::{rank, SparseRow};
use crate::polyring::{Monomial, PolySystem, Polynomial, TermOrder};

/// Graded Betti numbers `β_{i,j}` of `S/I` for `j <= jmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    nvars: usize,
    jmax: usize,
    entries: BTreeMap<(usize, usize), u64>,
    lcm_degree: usize,
    certified: bool,
}

impl BettiTable {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries keyed by `(i, j)`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.entries
    }

    /// Degree of the lcm of the minimal generators of the initial ideal; no
    /// Betti number lives beyond it.
    pub fn lcm_degree(&self) -> usize {
        self.lcm_degree
    }

    /// Whether `jmax` is large enough for the table to be complete as far as
    /// the regularity is concerned.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// `reg(S/I) = max {j - i : β_{i,j} != 0}`; `None` for the zero ring.
    pub fn quotient_regularity(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, j)| j - i).max()
    }

    /// `reg(I) = reg(S/I) + 1`; the unit ideal has regularity 0.
    pub fn ideal_regularity(&self) -> usize {
        self.quotient_regularity().map_or(0, |r| r + 1)
    }

    /// Shifts of the minimal free resolution of the ideal itself:
    /// `(i - 1, j, β_{i,j})` for `i >= 1`.
    pub fn ideal_shifts(&self) -> Vec<(usize, usize, u64)> {
        self.entries
            .iter()
            .filter(|(&(i, _), _)| i >= 1)
            .map(|(&(i, j), &b)| (i - 1, j, b))
            .collect()
    }

    /// `sum_{i,j} (-1)^i β_{i,j} t^j`, the Hilbert series numerator of `S/I`
    /// up to `t^jmax`.
    pub fn euler_numerator(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.jmax + 1];
        for (&(i, j), &b) in &self.entries {
            let b = b as i64;
            out[j] += if i % 2 == 0 { b } else { -b };
        }
        out
    }
}

/// Macaulay2-style grid: columns are homological degrees, rows `j - i`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imax = self.entries.keys().map(|k| k.0).max().unwrap_or(0);
        let rmax = self.quotient_regularity().unwrap_or(0);
        let cell = |v: u64| if v == 0 { String::from(".") } else { format!("{}", v) };
        let mut totals = vec![0u64; imax + 1];
        for (&(i, _), &b) in &self.entries {
            totals[i] += b;
        }
        let width = self
            .entries
            .values()
            .chain(totals.iter())
            .map(|v| format!("{}", v).len())
            .max()
            .unwrap_or(1)
            .max(format!("{}", imax).len());
        let label = format!("{}", rmax).len().max(5) + 1;
        write!(f, "{:>label$}", "", label = label)?;
        for i in 0..=imax {
            write!(f, " {:>w$}", i, w = width)?;
        }
        writeln!(f)?;
        write!(f, "{:>label$}", "total:", label = label)?;
        for t in &totals {
            write!(f, " {:>w$}", t, w = width)?;
        }
        writeln!(f)?;
        for r in 0..=rmax {
            write!(f, "{:>label$}", format!("{}:", r), label = label)?;
            for i in 0..=imax {
                write!(f, " {:>w$}", cell(self.get(i, i + r)), w = width)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Betti numbers of `S/(F)` for homogeneous `F`, from the homology of the
/// Koszul complex on the variables tensored with `S/(F)`. The quotient is
/// represented by standard monomials of a degree reverse lexicographic
/// Gröbner basis, so
///
/// `β_{i,j} = dim K_{i,j} - rank ∂_{i,j} - rank ∂_{i+1,j}`,
/// `K_{i,j} = ⊕_{|T| = i} (S/I)_{j - i}`.
pub fn betti_numbers(system: &PolySystem, jmax: usize, limits: GbLimits) -> Result<BettiTable> {
    if !system.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if jmax < system.max_degree() {
        return Err(Error::Usage(format!(
            "degree cap {} is below the largest generator degree {}",
            jmax,
            system.max_degree()
        )));
    }
    let n = system.nvars();
    let gb = buchberger(system, &TermOrder::degrevlex(n), limits)?;
    let quotient = QuotientBasis::new(&gb, jmax);
    let field = system.field();

    let subsets = Subsets::new(n);
    let dim_k = |i: usize, j: usize| -> usize {
        if j < i || i > n {
            0
        } else {
            subsets.of_size[i].len() * quotient.basis[j - i].len()
        }
    };
    // rank of ∂_{i,j}: K_{i,j} -> K_{i-1,j}
    let boundary_rank = |i: usize, j: usize| -> usize {
        if i == 0 || i > n || j < i {
            return 0;
        }
        let e = j - i;
        let target_len = quotient.basis[e + 1].len();
        if target_len == 0 || quotient.basis[e].is_empty() {
            return 0;
        }
        let mut rows: Vec<SparseRow> = Vec::new();
        for &t in &subsets.of_size[i] {
            let vars: Vec<usize> = (0..n).filter(|&v| t & (1 << v) != 0).collect();
            for m in 0..quotient.basis[e].len() {
                let mut row: SparseRow = Vec::new();
                for (k, &v) in vars.iter().enumerate() {
                    let face = subsets.position[t & !(1 << v)];
                    let sign_neg = k % 2 == 1;
                    for &(c, val) in &quotient.mult[e][m][v] {
                        let val = if sign_neg { field.neg(val) } else { val };
                        row.push(((face * target_len) as u32 + c, val));
                    }
                }
                row.sort_unstable_by_key(|x| x.0);
                rows.push(row);
            }
        }
        rank(field, subsets.of_size[i - 1].len() * target_len, rows)
    };

    let mut entries = BTreeMap::new();
    for j in 0..=jmax {
        let ranks: Vec<usize> = (0..=n + 1).map(|i| boundary_rank(i, j)).collect();
        for i in 0..=n {
            let b = dim_k(i, j) - ranks[i] - ranks[i + 1];
            if b != 0 {
                entries.insert((i, j), b as u64);
            }
        }
    }

    let lcm_degree = gb
        .leading_monomials()
        .iter()
        .fold(Monomial::one(n), |acc, m| acc.lcm(m))
        .degree() as usize;
    let mut table = BettiTable {
        nvars: n,
        jmax,
        entries,
        lcm_degree,
        certified: false,
    };
    // Betti numbers of S/I are bounded by those of S/in(I), which vanish
    // beyond the lcm degree (Taylor resolution).
    table.certified = jmax >= lcm_degree || jmax >= table.ideal_regularity() + n;
    Ok(table)
}

struct Subsets {
    of_size: Vec<Vec<usize>>,
    position: Vec<usize>,
}

impl Subsets {
    fn new(n: usize) -> Self {
        let mut of_size = vec![Vec::new(); n + 1];
        let mut position = vec![0; 1 << n];
        for mask in 0..(1usize << n) {
            let s = mask.count_ones() as usize;
            position[mask] = of_size[s].len();
            of_size[s].push(mask);
        }
        Subsets { of_size, position }
    }
}

/// Standard-monomial bases of `(S/I)_e` for `e <= jmax` and the action of
/// each variable between consecutive degrees.
struct QuotientBasis {
    basis: Vec<Vec<Monomial>>,
    /// `mult[e][m][v]`: normal form of `x_v * basis[e][m]` in `basis[e+1]`.
    mult: Vec<Vec<Vec<SparseRow>>>,
}

impl QuotientBasis {
    fn new(gb: &GroebnerBasis, jmax: usize) -> Self {
        let n = gb.nvars();
        let field = gb.field();
        let basis: Vec<Vec<Monomial>> = (0..=jmax + 1)
            .map(|e| gb.standard_monomials_of_degree(e as u32))
            .collect();
        let index: Vec<BTreeMap<&Monomial, u32>> = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m, i as u32)).collect())
            .collect();
        let mut mult = Vec::with_capacity(jmax + 1);
        for e in 0..=jmax {
            let mut per = Vec::with_capacity(basis[e].len());
            for m in &basis[e] {
                let mut vars = Vec::with_capacity(n);
                for v in 0..n {
                    let u = m.mul_var(v);
                    let row: SparseRow = match index[e + 1].get(&u) {
                        Some(&c) => vec![(c, 1)],
                        None => {
                            let nf = gb.normal_form(&Polynomial::term(field, u, 1));
                            let mut r: SparseRow = nf.terms().map(|(mm, c)| (index[e + 1][mm], c)).collect();
                            r.sort_unstable_by_key(|x| x.0);
                            r
                        }
                    };
                    vars.push(row);
                }
                per.push(vars);
            }
            mult.push(per);
        }
        QuotientBasis { basis, mult }
    }
}

/// Castelnuovo–Mumford regularity of the ideal `(F^h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub value: usize,
    pub certified: bool,
    pub betti: BettiTable,
}

/// Default Betti degree cap: twice the sum of the generator degrees.
pub fn default_jmax(system: &PolySystem) -> usize {
    2 * system.degrees().iter().sum::<usize>()
}

/// A name for the homogenizing variable not already in use.
pub fn homogenizing_name(system: &PolySystem) -> String {
    for cand in ["x0", "t", "h"] {
        if system.var_index(cand).is_none() {
            return String::from(cand);
        }
    }
    let mut k = 0;
    loop {
        let cand = format!("h{}", k);
        if system.var_index(&cand).is_none() {
            return cand;
        }
        k += 1;
    }
}

/// `reg((F^h)) = reg(S/(F^h)) + 1`. Homogeneous systems are used as given.
pub fn cm_regularity(system: &PolySystem, jmax: Option<usize>, limits: GbLimits) -> Result<Regularity> {
    let jmax = jmax.unwrap_or_else(|| default_jmax(system));
    let hsys = if system.is_homogeneous() {
        system.clone()
    } else {
        system.homogenized(&homogenizing_name(system))?
    };
    let betti = betti_numbers(&hsys, jmax, limits)?;
    Ok(Regularity {
        value: betti.ideal_regularity(),
        certified: betti.is_certified(),
        betti,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::PrimeField;

    fn poly(n: usize, p: u64, terms: &[(&[u16], i64)]) -> Polynomial {
        let f = PrimeField::new(p).unwrap();
        Polynomial::from_terms(n, f, terms.iter().map(|(e, c)| (Monomial::new(e.to_vec()), *c)))
    }

    #[test]
    fn complete_intersection_of_quadrics() {
        let s = PolySystem::with_default_names(
            PrimeField::new(7).unwrap(),
            3,
            vec![poly(3, 7, &[(&[2, 0, 0], 1)]), poly(3, 7, &[(&[0, 2, 0], 1), (&[0, 0, 2], 1)])],
        )
        .unwrap();
        let t = betti_numbers(&s, 8, GbLimits::default()).unwrap();
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.get(1, 2), 2);
        assert_eq!(t.get(2, 4), 1);
        assert_eq!(t.entries().len(), 3);
        assert_eq!(t.quotient_regularity(), Some(2));
        assert!(t.is_certified());
    }

    #[test]
    fn maximal_ideal_is_koszul() {
        let s = PolySystem::with_default_names(
            PrimeField::new(5).unwrap(),
            3,
            (0..3).map(|i| Polynomial::var(3, PrimeField::new(5).unwrap(), i)).collect(),
        )
        .unwrap();
        let t = betti_numbers(&s, 4, GbLimits::default()).unwrap();
        for (i, b) in [1, 3, 3, 1].into_iter().enumerate() {
            assert_eq!(t.get(i, i), b);
        }
        assert_eq!(t.ideal_regularity(), 1);
        let shown = alloc::format!("{}", t);
        assert!(shown.contains("total: 1 3 3 1"), "{}", shown);
    }

    #[test]
    fn rejects_inhomogeneous_and_small_cap() {
        let s = PolySystem::with_default_names(
            PrimeField::new(5).unwrap(),
            2,
            vec![poly(2, 5, &[(&[2, 0], 1), (&[0, 1], 1)])],
        )
        .unwrap();
        assert_eq!(betti_numbers(&s, 4, GbLimits::default()), Err(Error::NotHomogeneous));
        let h = s.homogenized("x0").unwrap();
        assert!(matches!(betti_numbers(&h, 1, GbLimits::default()), Err(Error::Usage(_))));
    }
}
