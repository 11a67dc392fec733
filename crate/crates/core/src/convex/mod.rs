//! The lattice of convex polyhedra in `ℚ²` under inclusion, and
//! characterizations of its geometric notions from the order alone.

mod hull;
mod poly;
mod universe;

pub use hull::*;
pub use poly::*;
pub use universe::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConvexError {
    #[error("cannot parse constraint {0:?}")]
    Parse(String),
    #[error("empty point set")]
    EmptyInput,
    #[error("projection direction is parallel to the target line")]
    Parallel,
    #[error("the two points coincide")]
    Degenerate,
    #[error("point {0} is not on the target line")]
    NotOnLine(String),
}
