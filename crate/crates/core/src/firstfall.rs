//! Syzygies of top components over `B = F_q[x_1..x_n]/(x_1^q, ..., x_n^q)`
//! and the first fall degree.
//!
//! Elements of `B` are polynomials whose exponents are all below `q`; a
//! product is reduced by dropping every monomial with an exponent `>= q`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Echelon, SparseRow};
use crate::polyring::{bounded_monomials_of_degree, Monomial, PolySystem, Polynomial};

/// A homogeneous syzygy `(b_1, ..., b_r)` of degree `d`: every nonzero
/// `b_i` has degree `d - deg f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyVector {
    pub degree: usize,
    pub components: Vec<Polynomial>,
}

impl SyzygyVector {
    /// Whether `sum b_i f_i = 0` in `B`.
    pub fn is_syzygy_of(&self, tops: &[Polynomial], q: u16) -> bool {
        let n = tops.first().map_or(0, Polynomial::nvars);
        let field = tops.first().map(Polynomial::field);
        let Some(field) = field else {
            return true;
        };
        let mut acc = Polynomial::zero(n, field);
        for (b, f) in self.components.iter().zip(tops) {
            acc = &acc + &(b * f).truncate_exponents(q);
        }
        acc.truncate_exponents(q).is_zero()
    }
}

/// Layout of `⊕_i B_{d - d_i}`.
struct Coordinates {
    offsets: Vec<usize>,
    bases: Vec<Vec<Monomial>>,
    index: Vec<BTreeMap<Monomial, u32>>,
    len: usize,
}

impl Coordinates {
    fn new(nvars: usize, degrees: &[usize], d: usize, q: u16) -> Self {
        let mut offsets = Vec::with_capacity(degrees.len());
        let mut bases = Vec::with_capacity(degrees.len());
        let mut index = Vec::with_capacity(degrees.len());
        let mut len = 0;
        for &di in degrees {
            let basis = if di <= d {
                bounded_monomials_of_degree(nvars, (d - di) as u32, q)
            } else {
                Vec::new()
            };
            offsets.push(len);
            len += basis.len();
            index.push(basis.iter().enumerate().map(|(k, m)| (m.clone(), k as u32)).collect());
            bases.push(basis);
        }
        Coordinates {
            offsets,
            bases,
            index,
            len,
        }
    }

    /// Coordinates of a vector whose components are already reduced in `B`
    /// and homogeneous of the right degrees.
    fn row_of(&self, components: &[Polynomial]) -> SparseRow {
        let mut row = Vec::new();
        for (i, b) in components.iter().enumerate() {
            for (m, c) in b.terms() {
                let k = self.index[i][m];
                row.push((self.offsets[i] as u32 + k, c));
            }
        }
        row.sort_unstable_by_key(|e| e.0);
        row
    }

    fn vector_of(&self, row: &[(u32, u32)], tops: &[Polynomial], d: usize) -> SyzygyVector {
        let n = tops[0].nvars();
        let field = tops[0].field();
        let mut comps: Vec<Polynomial> = (0..tops.len()).map(|_| Polynomial::zero(n, field)).collect();
        for &(c, v) in row {
            let c = c as usize;
            let i = (0..self.bases.len())
                .find(|&k| c >= self.offsets[k] && c < self.offsets[k] + self.bases[k].len())
                .expect("coordinate in range");
            comps[i].add_term(self.bases[i][c - self.offsets[i]].clone(), v);
        }
        SyzygyVector {
            degree: d,
            components: comps,
        }
    }
}

fn check_input(ftop: &PolySystem, q: u64) -> Result<u16> {
    let p = ftop.field().modulus() as u64;
    if q != p {
        return Err(Error::Usage(format!("q = {} must equal the field characteristic {}", q, p)));
    }
    if !ftop.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    u16::try_from(q).map_err(|_| Error::Usage(format!("q = {} is too large", q)))
}

fn images(ftop: &PolySystem, coords: &Coordinates, d: usize, q: u16) -> (Vec<SparseRow>, usize) {
    let n = ftop.nvars();
    let target: Vec<Monomial> = bounded_monomials_of_degree(n, d as u32, q);
    let tindex: BTreeMap<&Monomial, u32> = target.iter().enumerate().map(|(k, m)| (m, k as u32)).collect();
    let mut rows = Vec::with_capacity(coords.len);
    for (i, f) in ftop.generators().iter().enumerate() {
        for m in &coords.bases[i] {
            let img = f.mul_monomial(m).truncate_exponents(q);
            let mut row: SparseRow = img.terms().map(|(mm, c)| (tindex[mm], c)).collect();
            row.sort_unstable_by_key(|e| e.0);
            rows.push(row);
        }
    }
    (rows, target.len())
}

/// A basis of `Syz_d`: the kernel of `(b_i) -> sum b_i f_i` from
/// `⊕_i B_{d - d_i}` to `B_d`.
pub fn syz_space(ftop: &PolySystem, d: usize, q: u64) -> Result<Vec<SyzygyVector>> {
    let q = check_input(ftop, q)?;
    let coords = Coordinates::new(ftop.nvars(), &ftop.degrees(), d, q);
    let (rows, ncols) = images(ftop, &coords, d, q);
    let ker = kernel_basis(ftop.field(), ncols, &rows);
    Ok(ker
        .iter()
        .map(|r| coords.vector_of(r, ftop.generators(), d))
        .collect())
}

/// `dim Syz_d` by rank-nullity.
pub fn syz_dim(ftop: &PolySystem, d: usize, q: u64) -> Result<usize> {
    let q = check_input(ftop, q)?;
    let coords = Coordinates::new(ftop.nvars(), &ftop.degrees(), d, q);
    let (rows, ncols) = images(ftop, &coords, d, q);
    let mut e = Echelon::new(ftop.field(), ncols);
    for r in &rows {
        e.insert(r);
    }
    Ok(coords.len - e.rank())
}

/// The generators of the trivial syzygies: Koszul relations
/// `f_i e_j - f_j e_i` and power relations `f_i^{q-1} e_i`, reduced in `B`,
/// with their degrees. Power relations that vanish in `B` are dropped.
pub fn trivial_generators(ftop: &PolySystem, q: u64) -> Result<Vec<SyzygyVector>> {
    let q = check_input(ftop, q)?;
    let gens = ftop.generators();
    let degs = ftop.degrees();
    let n = ftop.nvars();
    let field = ftop.field();
    let reduced: Vec<Polynomial> = gens.iter().map(|f| f.truncate_exponents(q)).collect();
    let zero = || Polynomial::zero(n, field);
    let mut out = Vec::new();
    for j in 0..gens.len() {
        for i in 0..j {
            let mut comps: Vec<Polynomial> = (0..gens.len()).map(|_| zero()).collect();
            comps[j] = reduced[i].clone();
            comps[i] = -&reduced[j];
            if comps.iter().any(|c| !c.is_zero()) {
                out.push(SyzygyVector {
                    degree: degs[i] + degs[j],
                    components: comps,
                });
            }
        }
    }
    for i in 0..gens.len() {
        let mut pw = Polynomial::constant(n, field, 1);
        for _ in 0..q - 1 {
            pw = (&pw * &reduced[i]).truncate_exponents(q);
        }
        if !pw.is_zero() {
            let mut comps: Vec<Polynomial> = (0..gens.len()).map(|_| zero()).collect();
            comps[i] = pw;
            out.push(SyzygyVector {
                degree: q as usize * degs[i],
                components: comps,
            });
        }
    }
    Ok(out)
}

fn triv_echelon(ftop: &PolySystem, d: usize, q: u64, gens: &[SyzygyVector]) -> Result<(Echelon, Coordinates)> {
    let q16 = check_input(ftop, q)?;
    let coords = Coordinates::new(ftop.nvars(), &ftop.degrees(), d, q16);
    let mut e = Echelon::new(ftop.field(), coords.len);
    for g in gens.iter().filter(|g| g.degree <= d) {
        for u in bounded_monomials_of_degree(ftop.nvars(), (d - g.degree) as u32, q16) {
            let comps: Vec<Polynomial> = g
                .components
                .iter()
                .map(|c| c.mul_monomial(&u).truncate_exponents(q16))
                .collect();
            let row = coords.row_of(&comps);
            if !row.is_empty() {
                e.insert(&row);
            }
        }
    }
    Ok((e, coords))
}

/// A basis of `Triv_d`: the span of the monomial multiples `u·g` of degree
/// `d` of the trivial generators. In a graded module the degree-`d` part of
/// a submodule generated by homogeneous elements is spanned by such
/// multiples.
pub fn triv_space(ftop: &PolySystem, d: usize, q: u64) -> Result<Vec<SyzygyVector>> {
    let gens = trivial_generators(ftop, q)?;
    let (mut e, coords) = triv_echelon(ftop, d, q, &gens)?;
    e.make_reduced();
    Ok(e.rows()
        .iter()
        .map(|r| coords.vector_of(r, ftop.generators(), d))
        .collect())
}

pub fn triv_dim(ftop: &PolySystem, d: usize, q: u64) -> Result<usize> {
    let gens = trivial_generators(ftop, q)?;
    Ok(triv_echelon(ftop, d, q, &gens)?.0.rank())
}

/// Default search cap: `q + sum deg f_i^top`.
pub fn default_first_fall_cap(system: &PolySystem, q: u64) -> usize {
    q as usize + system.degrees().iter().sum::<usize>()
}

/// The least `d <= dmax` with `dim Syz_d > dim Triv_d` for the top
/// components of `system`, or `None` if there is none.
pub fn first_fall_degree(system: &PolySystem, q: u64, dmax: usize) -> Result<Option<usize>> {
    let ftop = system.top_system();
    check_input(&ftop, q)?;
    let gens = trivial_generators(&ftop, q)?;
    for d in 0..=dmax {
        let syz = syz_dim(&ftop, d, q)?;
        if syz == 0 {
            continue;
        }
        let triv = triv_echelon(&ftop, d, q, &gens)?.0.rank();
        if syz > triv {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
