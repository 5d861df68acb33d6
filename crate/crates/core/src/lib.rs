//! Nested-word path-star graphs: word generators, t-sail witnesses, tree
//! decompositions and small-pattern obstruction searches.

pub mod caps;
pub mod decomposition;
pub mod error;
pub mod graphs;
pub mod obstructions;
pub mod sails;
pub mod words;

pub use caps::Caps;
pub use error::{Error, Obstruction, Result};
