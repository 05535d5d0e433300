//! Exact combinatorics of Hibi toric varieties attached to finite
//! distributive lattices: the defining cone and its faces, the singular
//! locus, multiplicities of distinguished points, and Hilbert-series
//! data for square-free initial degenerations.

pub mod cone;
pub mod dlattice;
pub mod grassmann;
pub mod json;
pub mod multiplicity;
pub mod poset;
pub mod report;
pub mod smoothness;
pub mod verify;
