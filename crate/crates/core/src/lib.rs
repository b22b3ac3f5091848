//! Exact computations in the negative half of a quantized enveloping
//! algebra of small simply-laced finite type: PBW, canonical and dual
//! canonical bases, crystal data, preprojective-algebra modules and
//! quantum cluster seeds.

pub mod cache;
pub mod canonical;
pub mod checks;
pub mod cli;
pub mod cluster;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod preproj;
pub mod presets;
pub mod report;
pub mod quiver;
pub mod uqfull;
pub mod uqminus;

pub use error::{Error, Result};
