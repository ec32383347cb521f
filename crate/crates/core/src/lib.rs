//! Finite partial magmas, their Hom-associative structures and (weak)
//! partial endomorphisms, and the Hom-algebras they induce on the magma
//! algebra over the rationals.
//!
//! The crate enumerates every partial multiplication table of a small
//! order, classifies the tables up to isomorphism, computes for each class
//! the twisting maps satisfying the homomorphism and Hom-associativity
//! predicates, and checks the corresponding algebra-level statements with
//! exact arithmetic.

pub mod algebra;
pub mod enumerate;
pub mod error;
pub mod fixture;
pub mod iso;
pub mod partial;
pub mod predicates;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use partial::{Element, PartialMagma, PartialMap, TableCode};
pub use predicates::PredicateKind;

/// Work caps for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of tables `(n+1)^(n²)` an enumeration may visit.
    pub max_tables: u128,
    /// Largest number of partial maps `(n+1)^n` an α-set search may visit.
    pub max_maps: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_tables: 1 << 20,
            max_maps: 1 << 20,
        }
    }
}
