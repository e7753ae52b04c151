//! Hilbert series, degree of regularity and Castelnuovo–Mumford regularity.

mod betti;
mod hilbert;

pub use betti::{betti_numbers, cm_regularity, default_jmax, homogenizing_name, BettiTable, Regularity};
pub use hilbert::{
    degree_of_regularity, hilbert_data_from_numerator, hilbert_function, hilbert_series, monomial_ideal_numerator,
    ring_dim, HilbertData,
};
