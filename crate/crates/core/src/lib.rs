//! Finite base-structured categories: explicit categories and functors,
//! permutation groups, Grothendieck completions, two-level hierarchies,
//! automorphism 2-groups and finite Klein geometries, all checked by
//! exhaustive enumeration.

pub mod algebra;
pub mod budget;
pub mod catalog;
pub mod category;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod grothendieck;
pub mod hierarchy;
pub mod io;
pub mod report;
pub mod twogroup;

pub use budget::Budget;
pub use error::{Error, Result};
pub use report::{ValidationReport, Violation};
