//! Exact sparse row echelon forms over F_p.
//!
//! Columns are numbered `0..ncols`; a row's leading entry is its smallest
//! column index. Rows are kept as sorted `(column, coefficient)` lists.

use alloc::vec;
use alloc::vec::Vec;

use crate::ffield::PrimeField;

pub type SparseRow = Vec<(u32, u32)>;

const NO_PIVOT: u32 = u32::MAX;

/// A row echelon basis built by incremental insertion.
///
/// Every stored row is monic and its leading column is not the leading column
/// of any other row. Rows are reduced against the rows present when they were
/// inserted, so the form is echelon but not necessarily reduced until
/// [`Echelon::make_reduced`] is called.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<u32>,
}

impl Echelon {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivot_of(&self, col: u32) -> Option<usize> {
        match self.pivot_row[col as usize] {
            NO_PIVOT => None,
            r => Some(r as usize),
        }
    }

    /// Fully reduces `row` against the basis; the result has no entry in a
    /// pivot column.
    pub fn reduce(&self, row: &[(u32, u32)]) -> SparseRow {
        let Some(&(first, _)) = row.first() else {
            return Vec::new();
        };
        let f = self.field;
        let mut acc = vec![0u32; self.ncols];
        let mut last = 0usize;
        for &(c, v) in row {
            acc[c as usize] = f.add(acc[c as usize], v);
            last = last.max(c as usize);
        }
        let mut out = Vec::new();
        let mut c = first as usize;
        while c <= last {
            let v = acc[c];
            if v != 0 {
                match self.pivot_row[c] {
                    NO_PIVOT => out.push((c as u32, v)),
                    r => {
                        for &(cc, w) in &self.rows[r as usize] {
                            let cc = cc as usize;
                            acc[cc] = f.sub_mul(acc[cc], v, w);
                            last = last.max(cc);
                        }
                        debug_assert_eq!(acc[c], 0);
                    }
                }
            }
            c += 1;
        }
        out
    }

    pub fn contains(&self, row: &[(u32, u32)]) -> bool {
        self.reduce(row).is_empty()
    }

    /// Inserts `row` if it is independent of the basis. Returns the index of
    /// the new row.
    pub fn insert(&mut self, row: &[(u32, u32)]) -> Option<usize> {
        let mut r = self.reduce(row);
        if r.is_empty() {
            return None;
        }
        let inv = self.field.inv(r[0].1).expect("nonzero lead");
        for e in r.iter_mut() {
            e.1 = self.field.mul(e.1, inv);
        }
        let idx = self.rows.len();
        self.pivot_row[r[0].0 as usize] = idx as u32;
        self.rows.push(r);
        Some(idx)
    }

    /// Back-substitutes so that no pivot column appears outside its own row,
    /// and sorts rows by pivot column.
    pub fn make_reduced(&mut self) {
        let f = self.field;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        // Process from the last pivot backwards: rows with larger pivots are
        // already fully reduced when they are used.
        let mut acc = vec![0u32; self.ncols];
        for &r in order.iter().rev() {
            let row = core::mem::take(&mut self.rows[r]);
            let lead = row[0].0 as usize;
            let mut last = 0;
            for &(c, v) in &row {
                acc[c as usize] = v;
                last = last.max(c as usize);
            }
            let mut out = Vec::with_capacity(row.len());
            out.push((lead as u32, acc[lead]));
            acc[lead] = 0;
            let mut c = lead + 1;
            while c <= last {
                let v = acc[c];
                if v != 0 {
                    acc[c] = 0;
                    match self.pivot_row[c] {
                        NO_PIVOT => out.push((c as u32, v)),
                        p => {
                            for &(cc, w) in self.rows[p as usize].iter().skip(1) {
                                let cc = cc as usize;
                                acc[cc] = f.sub_mul(acc[cc], v, w);
                                last = last.max(cc);
                            }
                        }
                    }
                }
                c += 1;
            }
            self.rows[r] = out;
        }
        let mut rows: Vec<SparseRow> = order.iter().map(|&r| core::mem::take(&mut self.rows[r])).collect();
        rows.retain(|r| !r.is_empty());
        for p in self.pivot_row.iter_mut() {
            *p = NO_PIVOT;
        }
        for (i, r) in rows.iter().enumerate() {
            self.pivot_row[r[0].0 as usize] = i as u32;
        }
        self.rows = rows;
    }

    /// Whether no pivot column appears in another row.
    pub fn is_reduced(&self) -> bool {
        self.rows.iter().all(|r| {
            r.first().is_some_and(|&(_, v)| v == 1)
                && r.iter().skip(1).all(|&(c, _)| self.pivot_row[c as usize] == NO_PIVOT)
        })
    }
}

/// Rank of a set of sparse rows.
pub fn rank(field: PrimeField, ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(&r);
    }
    e.rank()
}

/// A basis of `{c : sum_k c_k v_k = 0}` for vectors `v_k` with `ncols`
/// coordinates. Each kernel vector is returned sparse over the indices `k`.
///
/// Works by echelonizing `[v_k | e_k]`: rows whose pivot lands in the
/// identity block have a zero image part.
pub fn kernel_basis(field: PrimeField, ncols: usize, vectors: &[SparseRow]) -> Vec<SparseRow> {
    let k = vectors.len();
    let mut e = Echelon::new(field, ncols + k);
    for (i, v) in vectors.iter().enumerate() {
        let mut row = v.clone();
        row.push(((ncols + i) as u32, 1));
        e.insert(&row);
    }
    e.make_reduced();
    e.rows()
        .iter()
        .filter(|r| r[0].0 as usize >= ncols)
        .map(|r| r.iter().map(|&(c, v)| (c - ncols as u32, v)).collect())
        .collect()
}
