//! Exact integer linear algebra: Smith normal form and finitely presented
//! abelian groups.

mod int;
mod present;
mod snf;
mod sparse;

pub use int::Int;
pub use present::{ModuleElement, PresentedModule, Structure};
pub use snf::{row_basis, kernel_lattice, smith_diagonal, smith_form, SmithForm};
pub use sparse::{vec_add_scaled, vec_is_zero, IntMatrix, SparseRow};
