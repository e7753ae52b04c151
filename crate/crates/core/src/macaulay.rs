//! Macaulay matrices and their closure under the Lazard row-addition rule.
//!
//! `lazard_closure(F, d, σ)` alternates row reduction with appending the
//! monomial multiples `u·f_ℓ` (degree at most `d`) of every reduced row
//! `f_ℓ` of degree below `d`, until nothing new appears. For a
//! degree-compatible order the result is the space `V_{F,d}`: the smallest
//! space containing the generators of degree at most `d` and closed under
//! multiplication that stays within degree `d`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ffield::PrimeField;
use crate::linalg::{Echelon, SparseRow};
use crate::polyring::{count_monomials_upto, monomials_upto, Monomial, PolySystem, Polynomial, TermOrder};

/// Largest column count a Macaulay matrix may have.
pub const MAX_COLUMNS: u64 = 200_000;

const NONE: u32 = u32::MAX;

/// The monomials of degree at most `d`, sorted decreasingly: column 0 holds
/// the greatest monomial.
#[derive(Debug)]
pub struct MonomialColumns {
    order: TermOrder,
    degree: usize,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, u32>,
    /// `shift[c * n + i]` is the column of `x_i * monomials[c]`.
    shift: Vec<u32>,
}

impl MonomialColumns {
    pub fn new(nvars: usize, d: usize, order: &TermOrder) -> Result<Self> {
        let count = count_monomials_upto(nvars, d)?;
        if count > MAX_COLUMNS {
            return Err(Error::Capacity {
                what: "Macaulay matrix columns",
                limit: MAX_COLUMNS,
                detail: format!("{} columns for {} variables in degree {}", count, nvars, d),
            });
        }
        let mut monomials = monomials_upto(nvars, d as u32);
        order.sort_descending(&mut monomials);
        let index: BTreeMap<Monomial, u32> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let mut shift = alloc::vec![NONE; monomials.len() * nvars];
        for (c, m) in monomials.iter().enumerate() {
            if (m.degree() as usize) < d {
                for i in 0..nvars {
                    shift[c * nvars + i] = index[&m.mul_var(i)];
                }
            }
        }
        Ok(MonomialColumns {
            order: order.clone(),
            degree: d,
            monomials,
            index,
            shift,
        })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn column_of(&self, m: &Monomial) -> Option<u32> {
        self.index.get(m).copied()
    }

    fn nvars(&self) -> usize {
        self.order.nvars()
    }

    fn col_degree(&self, c: u32) -> usize {
        self.monomials[c as usize].degree() as usize
    }

    /// Sparse row of a polynomial of degree at most `d`.
    pub fn row_of(&self, f: &Polynomial) -> Result<SparseRow> {
        if f.nvars() != self.nvars() {
            return Err(Error::RingMismatch {
                left: self.nvars(),
                right: f.nvars(),
            });
        }
        let mut row: SparseRow = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            match self.index.get(m) {
                Some(&col) => row.push((col, c)),
                None => {
                    return Err(Error::DegreeTooLarge {
                        degree: f.degree() as usize,
                        bound: self.degree,
                    })
                }
            }
        }
        row.sort_unstable_by_key(|e| e.0);
        Ok(row)
    }

    pub fn poly_of(&self, row: &[(u32, u32)], field: PrimeField) -> Polynomial {
        Polynomial::from_terms(
            self.nvars(),
            field,
            row.iter()
                .map(|&(c, v)| (self.monomials[c as usize].clone(), v as i64)),
        )
    }

    /// Multiplies a row by `x_i`. The row's degree must be below `d`.
    fn shift_row(&self, row: &[(u32, u32)], i: usize) -> SparseRow {
        let n = self.nvars();
        // term orders are multiplicative, so column order is preserved
        row.iter().map(|&(c, v)| (self.shift[c as usize * n + i], v)).collect()
    }

    fn mul_row(&self, row: &[(u32, u32)], u: &Monomial) -> SparseRow {
        let n = self.nvars();
        row.iter()
            .map(|&(c, v)| {
                let mut col = c;
                for (i, &e) in u.exponents().iter().enumerate() {
                    for _ in 0..e {
                        col = self.shift[col as usize * n + i];
                    }
                }
                debug_assert_ne!(col, NONE);
                (col, v)
            })
            .collect()
    }

    fn row_degree(&self, row: &[(u32, u32)]) -> usize {
        if self.order.degree_compatible() {
            row.first().map(|&(c, _)| self.col_degree(c)).unwrap_or(0)
        } else {
            row.iter().map(|&(c, _)| self.col_degree(c)).max().unwrap_or(0)
        }
    }
}

/// One row `u·f_i` of a Macaulay matrix.
#[derive(Clone, Debug)]
pub struct MacaulayRow {
    pub generator: usize,
    pub multiplier: Monomial,
    pub polynomial: Polynomial,
}

#[derive(Clone, Debug)]
pub struct MacaulayMatrix {
    pub columns: Vec<Monomial>,
    pub rows: Vec<MacaulayRow>,
}

/// Rows `u·f` for every generator with `deg f <= d` and every monomial `u`
/// with `deg(u·f) <= d`; columns are the monomials of degree at most `d` in
/// decreasing order.
pub fn build_macaulay(system: &PolySystem, d: usize, order: &TermOrder) -> Result<MacaulayMatrix> {
    let cols = MonomialColumns::new(system.nvars(), d, order)?;
    Ok(MacaulayMatrix {
        columns: cols.monomials.clone(),
        rows: macaulay_rows(system, d),
    })
}

fn macaulay_rows(system: &PolySystem, d: usize) -> Vec<MacaulayRow> {
    let mut rows = Vec::new();
    for (k, f) in system.generators().iter().enumerate() {
        let df = f.degree() as usize;
        if df > d {
            continue;
        }
        for u in monomials_upto(system.nvars(), (d - df) as u32) {
            rows.push(MacaulayRow {
                generator: k,
                polynomial: f.mul_monomial(&u),
                multiplier: u,
            });
        }
    }
    rows
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClosureStats {
    /// Rank of the plain Macaulay matrix.
    pub initial_rank: usize,
    /// Independent rows appended by the closure.
    pub rows_added: usize,
    /// Reduction passes (1 for the incremental path).
    pub passes: usize,
}

/// The reduced row echelon form of a closed Macaulay matrix.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    columns: Arc<MonomialColumns>,
    echelon: Echelon,
    field: PrimeField,
    rows: Vec<Polynomial>,
    pivots: Vec<Monomial>,
    stats: ClosureStats,
}

impl EchelonBasis {
    pub fn order(&self) -> &TermOrder {
        &self.columns.order
    }

    pub fn degree(&self) -> usize {
        self.columns.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows as polynomials, sorted by decreasing pivot monomial.
    pub fn rows(&self) -> &[Polynomial] {
        &self.rows
    }

    pub fn pivots(&self) -> &[Monomial] {
        &self.pivots
    }

    pub fn stats(&self) -> ClosureStats {
        self.stats
    }

    pub fn columns(&self) -> &MonomialColumns {
        &self.columns
    }

    pub fn sparse_rows(&self) -> &[SparseRow] {
        self.echelon.rows()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.degree() > self.degree() as i64 {
            return Err(Error::DegreeTooLarge {
                degree: f.degree() as usize,
                bound: self.degree(),
            });
        }
        Ok(self.echelon.contains(&self.columns.row_of(f)?))
    }

    /// `dim (rowspace ∩ R_{<=e})`, valid for degree-compatible orders where
    /// the rows with pivots of degree at most `e` span the intersection.
    pub fn truncated_dim(&self, e: usize) -> Result<usize> {
        if !self.order().degree_compatible() {
            return Err(Error::NotDegreeCompatible);
        }
        Ok(self.pivots.iter().filter(|m| m.degree() as usize <= e).count())
    }

    /// The reduced-echelon invariant: monic rows, distinct pivots, no pivot
    /// monomial in another row's support, every row within degree `d`.
    pub fn is_reduced_echelon(&self) -> bool {
        let d = self.degree() as i64;
        self.echelon.is_reduced()
            && self.rows.iter().all(|r| r.degree() <= d)
            && self
                .rows
                .iter()
                .zip(&self.pivots)
                .all(|(r, p)| r.leading_monomial(self.order()) == Some(p))
    }
}

/// Closes the Macaulay matrix of `system` in degree `d` under `order`.
pub fn lazard_closure(system: &PolySystem, d: usize, order: &TermOrder) -> Result<EchelonBasis> {
    if order.nvars() != system.nvars() {
        return Err(Error::RingMismatch {
            left: system.nvars(),
            right: order.nvars(),
        });
    }
    let cols = Arc::new(MonomialColumns::new(system.nvars(), d, order)?);
    closure_with_columns(system, d, cols)
}

pub(crate) fn closure_with_columns(
    system: &PolySystem,
    d: usize,
    cols: Arc<MonomialColumns>,
) -> Result<EchelonBasis> {
    let field = system.field();
    let n = system.nvars();
    let mut ech = Echelon::new(field, cols.len());
    let mut pending: Vec<usize> = Vec::new();
    for r in macaulay_rows(system, d) {
        if let Some(idx) = ech.insert(&cols.row_of(&r.polynomial)?) {
            pending.push(idx);
        }
    }
    let initial_rank = ech.rank();
    let mut passes = 1;
    if cols.order.degree_compatible() {
        // For a degree-compatible order the echelon rows of degree < d span
        // the part of the space in degree < d, and closing under single
        // variables closes under all monomials.
        pending.retain(|&i| cols.row_degree(&ech.rows()[i]) < d);
        while let Some(idx) = pending.pop() {
            let row = ech.rows()[idx].clone();
            for i in 0..n {
                let shifted = cols.shift_row(&row, i);
                if let Some(k) = ech.insert(&shifted) {
                    if cols.row_degree(&ech.rows()[k]) < d {
                        pending.push(k);
                    }
                }
            }
        }
    } else {
        loop {
            ech.make_reduced();
            let snapshot: Vec<SparseRow> = ech.rows().to_vec();
            let mut added = false;
            for row in &snapshot {
                let deg = cols.row_degree(row);
                if deg >= d {
                    continue;
                }
                for u in monomials_upto(n, (d - deg) as u32).into_iter().skip(1) {
                    if ech.insert(&cols.mul_row(row, &u)).is_some() {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
            passes += 1;
        }
    }
    ech.make_reduced();
    let rows: Vec<Polynomial> = ech.rows().iter().map(|r| cols.poly_of(r, field)).collect();
    let pivots = ech
        .rows()
        .iter()
        .map(|r| cols.monomials[r[0].0 as usize].clone())
        .collect();
    let stats = ClosureStats {
        initial_rank,
        rows_added: ech.rank() - initial_rank,
        passes,
    };
    Ok(EchelonBasis {
        columns: cols,
        echelon: ech,
        field,
        rows,
        pivots,
        stats,
    })
}

/// Whether `f` lies in the row space of `basis`.
pub fn rowspace_contains(basis: &EchelonBasis, f: &Polynomial) -> Result<bool> {
    basis.contains(f)
}

/// `V_{F,d}`, computed as the closure under degree reverse lexicographic order.
pub fn v_space(system: &PolySystem, d: usize) -> Result<EchelonBasis> {
    lazard_closure(system, d, &TermOrder::degrevlex(system.nvars()))
}

impl EchelonBasis {
    pub fn field(&self) -> PrimeField {
        self.field
    }
}
