//! Linear algebra over prime fields and the decomposition machinery built
//! on it: lines, projections, transporters, lifting and field extraction.

pub mod algebra;
pub mod field;
pub mod fp;
pub mod lines;
pub mod poly;
pub mod spin;

pub use algebra::{MatrixAlgebra, CLOSURE_CAP};
pub use field::{extract_field, is_field, FieldReport};
pub use fp::{Matrix, Subspace};
pub use lines::{decompose, lift_endomorphism, lines, projection_onto_line, transporter, Decomposition, Line, Lines};
pub use spin::{common_invariant_subspace, is_irreducible, spin};
