use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    Lex,
    Grlex,
    Degrevlex,
}

impl OrderKind {
    pub fn token(self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::Grlex => "grlex",
            OrderKind::Degrevlex => "drl",
        }
    }
}

/// A term order: a kind plus the ranking of the variables, greatest first.
///
/// `perm[0]` is the index of the greatest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermOrder {
    kind: OrderKind,
    perm: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = alloc::vec![false; n];
        for &v in &perm {
            if v >= n || seen[v] {
                return Err(Error::InvalidOrder(format!(
                    "{:?} is not a permutation of 0..{}",
                    perm, n
                )));
            }
            seen[v] = true;
        }
        Ok(TermOrder { kind, perm })
    }

    /// Variables ranked in index order `x_1 > x_2 > ... > x_n`.
    pub fn standard(kind: OrderKind, nvars: usize) -> Self {
        TermOrder {
            kind,
            perm: (0..nvars).collect(),
        }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        Self::standard(OrderKind::Degrevlex, nvars)
    }

    pub fn grlex(nvars: usize) -> Self {
        Self::standard(OrderKind::Grlex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::standard(OrderKind::Lex, nvars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn degree_compatible(&self) -> bool {
        matches!(self.kind, OrderKind::Grlex | OrderKind::Degrevlex)
    }

    /// The same kind over a ring with one more variable, which is ranked last.
    pub fn extended(&self) -> TermOrder {
        let mut perm = self.perm.clone();
        perm.push(self.perm.len());
        TermOrder {
            kind: self.kind,
            perm,
        }
    }

    /// The order induced on the ring without variable `var`.
    pub fn restricted(&self, var: usize) -> TermOrder {
        let perm = self
            .perm
            .iter()
            .filter(|&&v| v != var)
            .map(|&v| if v > var { v - 1 } else { v })
            .collect();
        TermOrder {
            kind: self.kind,
            perm,
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), self.nvars());
        debug_assert_eq!(b.nvars(), self.nvars());
        let lex = || {
            for &v in &self.perm {
                match a.exponent(v).cmp(&b.exponent(v)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        };
        match self.kind {
            OrderKind::Lex => lex(),
            OrderKind::Grlex => a.degree().cmp(&b.degree()).then_with(lex),
            OrderKind::Degrevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for &v in self.perm.iter().rev() {
                    match a.exponent(v).cmp(&b.exponent(v)) {
                        Ordering::Equal => continue,
                        // smaller exponent in the smallest variable wins
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    /// Sorts monomials from greatest to least.
    pub fn sort_descending(&self, ms: &mut [Monomial]) {
        ms.sort_by(|a, b| self.compare(b, a));
    }
}

/// Prints `drl`, `grlex` or `lex`, plus `:x3>x1>...` if the ranking is not
/// the index order. Variables are printed as `x{index+1}`; use
/// [`TermOrder::display_with`] for named variables.
impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.token())?;
        if self.perm.iter().enumerate().any(|(i, &v)| i != v) {
            f.write_str(":")?;
            for (k, v) in self.perm.iter().enumerate() {
                if k > 0 {
                    f.write_str(">")?;
                }
                write!(f, "x{}", v + 1)?;
            }
        }
        Ok(())
    }
}

impl TermOrder {
    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        OrderDisplay { order: self, names }
    }
}

struct OrderDisplay<'a, S> {
    order: &'a TermOrder,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for OrderDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.order.kind.token())?;
        if self.order.perm.iter().enumerate().any(|(i, &v)| i != v) {
            f.write_str(":")?;
            for (k, &v) in self.order.perm.iter().enumerate() {
                if k > 0 {
                    f.write_str(">")?;
                }
                f.write_str(self.names[v].as_ref())?;
            }
        }
        Ok(())
    }
}
