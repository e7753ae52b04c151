use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::ffield::PrimeField;

/// An ordered list of nonzero generators `f_1, ..., f_r` over a common ring.
///
/// Order matters: syzygy coordinates `e_i` follow it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    generators: Vec<Polynomial>,
    field: PrimeField,
    var_names: Vec<String>,
}

impl PolySystem {
    pub fn new(field: PrimeField, var_names: Vec<String>, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptySystem);
        }
        if var_names.is_empty() {
            return Err(Error::Usage("a system needs at least one variable".into()));
        }
        for (i, name) in var_names.iter().enumerate() {
            if var_names[..i].contains(name) {
                return Err(Error::Usage(alloc::format!("duplicate variable name {:?}", name)));
            }
        }
        let n = var_names.len();
        for g in &generators {
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if g.field() != field {
                return Err(Error::ModulusMismatch {
                    left: field.modulus(),
                    right: g.field().modulus(),
                });
            }
            if g.nvars() != n {
                return Err(Error::RingMismatch {
                    left: n,
                    right: g.nvars(),
                });
            }
        }
        Ok(PolySystem {
            generators,
            field,
            var_names,
        })
    }

    /// Variables named `x1, ..., xn`.
    pub fn with_default_names(field: PrimeField, nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        let names = (1..=nvars).map(|i| alloc::format!("x{}", i)).collect();
        Self::new(field, names, generators)
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn max_degree(&self) -> usize {
        self.generators.iter().map(|g| g.degree() as usize).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.degree() as usize).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    /// `{f_1^top, ..., f_r^top}` over the same ring.
    pub fn top_system(&self) -> PolySystem {
        PolySystem {
            generators: self
                .generators
                .iter()
                .map(|g| g.top_component().expect("generators are nonzero"))
                .collect(),
            field: self.field,
            var_names: self.var_names.clone(),
        }
    }

    /// `{f_1^h, ..., f_r^h}` with the homogenizing variable appended last.
    pub fn homogenized(&self, var_name: &str) -> Result<PolySystem> {
        let mut names = self.var_names.clone();
        names.push(var_name.to_string());
        let gens = self
            .generators
            .iter()
            .map(Polynomial::homogenize)
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(self.field, names, gens)
    }

    /// Appends the field equations `x_i^p - x_i`.
    pub fn with_field_equations(&self) -> PolySystem {
        let n = self.nvars();
        let p = self.field.modulus() as u16;
        let mut gens = self.generators.clone();
        for i in 0..n {
            let mut e = alloc::vec![0u16; n];
            e[i] = p;
            gens.push(Polynomial::from_terms(
                n,
                self.field,
                [(Monomial::new(e), 1), (Monomial::var(n, i), -1)],
            ));
        }
        PolySystem {
            generators: gens,
            field: self.field,
            var_names: self.var_names.clone(),
        }
    }

    /// Whether every `x_i^p - x_i` is among the generators.
    pub fn contains_field_equations(&self) -> bool {
        let n = self.nvars();
        let fe = self.with_field_equations();
        fe.generators[self.generators.len()..]
            .iter()
            .all(|e| self.generators.contains(e))
            && n > 0
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }
}
