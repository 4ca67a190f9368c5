//! Shared inputs for the benchmarks.

/// Genera benchmarked by every group.
pub const GENERA: [usize; 4] = [2, 5, 10, 20];
