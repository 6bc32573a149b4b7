//! The rational function field `F_q(t)`, its places, and the specialization
//! homomorphism into the induced module `RP~(k)_F`.

mod induced;
mod place;
mod poly;
mod ratfunc;
pub mod verify;

pub use induced::{accumulate, five_term, parse_expr, DeltaPi, InducedElement, Specializer, Term};
pub use place::{Place, Valuation};
pub use poly::{Poly, PolyRing};
pub use ratfunc::{FunctionField, RationalFunction};
