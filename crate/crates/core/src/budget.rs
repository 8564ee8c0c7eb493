use serde::Serialize;

/// Limits for the exponential searches. `Default` gives desk-scale values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Largest `k` for which a cube over `k + 1` positions is enumerated.
    pub cube_bits: usize,
    /// Largest `k` for the cube isomorphism test, which enumerates `2^(3k)` triples.
    pub iso_cube_bits: usize,
    /// Largest order for exhaustive magma/semigroup rank search.
    pub rank_max_order: usize,
    /// Largest subset size tried by exhaustive magma/semigroup rank search.
    pub rank_max_subset: usize,
    /// Largest order for the five-variant subset enumeration.
    pub variant_max_order: usize,
    /// Largest order for permutation-search isomorphism.
    pub brute_iso_max_order: usize,
    /// Candidate / product-count budget shared by the searches.
    pub nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            cube_bits: 24,
            iso_cube_bits: 8,
            rank_max_order: 20,
            rank_max_subset: 6,
            variant_max_order: 12,
            brute_iso_max_order: 8,
            nodes: 50_000_000,
        }
    }
}

impl Budget {
    /// No subset-size cap for rank search (still bounded by `rank_max_order`).
    pub fn unbounded_subsets(mut self) -> Self {
        self.rank_max_subset = usize::MAX;
        self
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.nodes = nodes;
        self
    }
}
