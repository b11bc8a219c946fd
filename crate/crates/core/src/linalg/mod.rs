//! Exact scalars over the rationals and prime fields, dense matrices, and
//! subspaces in canonical echelon form.

mod field;
mod matrix;
pub mod poly;
mod sparse;
mod subspace;
pub mod vector;

pub use field::{Field, FieldElem};
pub use matrix::{Eigenspace, Matrix};
pub use sparse::{SparseRow, SparseSystem};
pub use subspace::{quotient_basis, Quotient, Subspace};
