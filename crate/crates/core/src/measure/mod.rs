//! Finite Lebesgue spaces, their automorphisms and the metrics between them.

mod dyadic;
mod metric;
mod perm;
mod space;

pub use dyadic::DyadicFamily;
pub use metric::{halmos_distance, halmos_to_identity, uniform_distance};
pub use perm::Perm;
pub use space::{CellSet, CellSpace};

/// Shortest cycle of `p`.
pub fn min_cycle_length(p: &Perm) -> usize {
    p.min_cycle_length()
}
