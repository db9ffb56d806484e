//! Exact computations around quantum cohomology ladders, action and index
//! bookkeeping of periodic orbits, and carrier assignments for spectral
//! invariants.

pub mod carriers;
pub mod ladders;
pub mod models;
pub mod qalgebra;
pub mod rational;
pub mod rings;
pub mod spectra;
