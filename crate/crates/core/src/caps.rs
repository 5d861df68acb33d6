//! Resource limits shared by the exhaustive procedures.
//!
//! Exceeding a cap is always reported as [`Error::Limit`](crate::Error::Limit);
//! nothing is silently truncated.

/// Environment variable that overrides the cap of whichever operation the
/// command line runs.
pub const CAP_ENV: &str = "SAILKIT_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Longest word prefix or iterate that may be materialised.
    pub word_len: usize,
    /// Host size for `find_sail_witness` when `t >= 3`.
    pub sail_search_vertices: usize,
    /// Host size for the exact tree-width oracle.
    pub exact_tw_vertices: usize,
    /// Host size for subdivision containment.
    pub subdivision_host_vertices: usize,
    /// Vertex count of generated walls.
    pub wall_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            word_len: 1_000_000,
            sail_search_vertices: 40,
            exact_tw_vertices: 25,
            subdivision_host_vertices: 60,
            wall_vertices: 100_000,
        }
    }
}

impl Caps {
    /// Reads [`CAP_ENV`] if set to a positive integer.
    pub fn env_override() -> Option<usize> {
        std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
    }
}
