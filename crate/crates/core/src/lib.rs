//! Ordinal arithmetic, finite posets and lazily presented countable posets
//! for computing and checking lengths of intersections of well orders.

pub mod error;
pub mod ordinal;

pub use error::{Error, Result};
pub mod bound_ops;
pub mod construct;
pub mod harness;
pub mod io;
pub mod oracle;
pub mod poset;
pub mod term;

pub use bound_ops::{bracket_plus, bracket_tilde, theta_plus, theta_tilde, BoundOp};
pub use ordinal::{CnfOrdinal, KOrdinal, OrdinalSet};
