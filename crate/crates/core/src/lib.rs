//! Complexity invariants of polynomial systems over prime fields.
//!
//! The crate computes and cross-checks the quantities that govern the cost of
//! solving a system with linear-algebra based Gröbner basis algorithms:
//! solving degree, last fall degree, first fall degree, degree of regularity
//! and Castelnuovo–Mumford regularity of the homogenized system.
//!
//! Everything here is pure computation over `alloc`; file formats, reporting
//! and the command line live in the `gbinv` crate.
#![no_std]

extern crate alloc;

pub mod error;
pub mod ffield;
pub mod firstfall;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod macaulay;
pub mod polyring;
pub mod regularity;

pub use error::{Error, Result};
pub use ffield::{FieldElement, PrimeField};
pub use groebner::{GbLimits, GroebnerBasis};
pub use invariants::{Analyzer, InvariantReport, Limits, Outcome};
pub use macaulay::EchelonBasis;
pub use polyring::{Monomial, OrderKind, PolySystem, Polynomial, TermOrder};
