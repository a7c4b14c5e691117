//! Exact recognition, decomposition, Hilbert bases and triangulations for
//! totally equimodular matrices.

pub mod calculus;
pub mod classify;
pub mod cone;
pub mod decompose;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod hilbert;
pub mod hunt;
pub mod io;
pub mod lp;
pub mod triangulate;

pub use error::{Error, Result};
pub use exact::{gcddet, ExactMatrix, IntMatrix, Rat, RowSet};
