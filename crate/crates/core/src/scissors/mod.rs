//! Scissors congruence groups, refined pre-Bloch groups and their Bloch subgroups.

mod asym;
mod reduced;
mod tower;
pub mod verify;

pub use asym::AsymSquare;
pub use reduced::Reduced;
pub use tower::{add, add_assign, scale, sub, sub_assign, Element, ScissorsTower};
