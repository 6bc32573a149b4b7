//! Refined scissors congruence groups and refined Bloch groups of finite local
//! rings, computed exactly.

pub mod error;
pub mod rings;
pub mod modz;
pub mod groupring;
pub mod report;
pub mod scissors;
pub mod configspace;
pub mod funcfield;

pub use error::{Error, Result};
pub use modz::{Int, IntMatrix, PresentedModule, SparseRow, Structure};
pub use groupring::{Character, GModule, GroupRingElement};
pub use report::{Check, Report};
