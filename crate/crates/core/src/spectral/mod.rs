//! Spectral-sequence bookkeeping on the line-configuration complexes.

pub mod h1;
pub mod page;
pub mod step3;
