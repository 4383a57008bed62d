//! Homology of line-configuration complexes over finite prime fields.

pub mod abelian;
pub mod classify;
pub mod complexes;
pub mod error;
pub mod ff;
pub mod families;
pub mod homology;
pub mod int;
pub mod snf;
pub mod spectral;
pub mod sparse;
pub mod lines;
pub mod milnor;
pub mod oracle;
pub mod report;
pub mod stabilizer;
pub mod suites;
mod maybe_rayon;

pub use error::{Error, Result};
