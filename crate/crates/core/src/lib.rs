#![no_std]

extern crate alloc;

pub mod arith;
pub mod dimension;
pub mod endogeny;
pub mod error;
pub mod group;
pub mod hom;
pub mod instances;
pub mod laws;
pub mod lattice;
pub mod linearize;
pub mod oracle;
pub mod subgroup;

pub use endogeny::{Endogeny, EndogenySet, NegligibilityBound};
pub use error::{Error, Result};
pub use group::{Ambient, FinAbGroup, GroupElement, Quotient};
pub use hom::Hom;
pub use subgroup::{Coset, Subgroup, SubgroupIso};
