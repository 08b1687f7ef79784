//! Brute-force reference implementations over explicit element sets.
//!
//! Nothing here shares code with the lattice layer beyond reading generators
//! and moduli, so agreement between the two is meaningful.

pub mod dense;
pub mod endo;
pub mod search;

pub use dense::{DenseGroup, DenseSet, ORACLE_CAP};
pub use endo::{dense_subgroup, hom_apply, DenseEndogeny, PAIR_CAP};
pub use search::{
    abelian_groups, enumerate_homomorphisms, intersection_failure_witness, search_witness,
    verify_intersection_witness, IntersectionWitness,
};
