//! Finite Möbius planes, the metric of their point-circle incidence graph,
//! and exact and approximate searches for resolving, split-resolving and
//! blocking sets.

pub mod bitset;
pub mod certificate;
pub mod cli;
pub mod constructions;
pub mod field;
mod field_table;
pub mod plane;

pub use field::{Field, FieldError};
pub use plane::{AffineResidue, MobiusPlane, PlaneDocument, PlaneError, PlaneModel};
pub mod instance;
pub mod metric;
pub mod solver;
