//! Subdivision search for small fixed patterns, the scan for the four
//! patterns that certify unbounded tree-width, wall surgery and the
//! separator check for path-star graphs.

mod kkw;
mod separator;
mod subdivision;
mod walls;

pub use kkw::{kkw_patterns, kkw_scan, KkwReport, PatternStatus};
pub use separator::separator_check;
pub use subdivision::{contains_subdivision, validate_embedding, EmbeddingDefect, SubdivisionEmbedding};
pub use walls::wall_surgery;
