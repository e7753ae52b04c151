//! Monomials, term orders, polynomials and systems over F_p.

mod monomial;
mod order;
mod polynomial;
mod system;

pub use monomial::{
    binomial, bounded_monomials_of_degree, count_monomials_of_degree, count_monomials_upto,
    monomials_of_degree, monomials_upto, Monomial,
};
pub use order::{OrderKind, TermOrder};
pub use polynomial::{PolyDisplay, Polynomial};
pub use system::PolySystem;
