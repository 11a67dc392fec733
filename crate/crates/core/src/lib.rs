//! Workbench for definability in topological lattices.
//!
//! Concrete first-order formulas over interval, convex-set, anti-chain and
//! weak monadic structures, the interpretations of arithmetic they induce,
//! and independent semantic checkers to compare them against.

pub mod antichain;
pub mod convex;
pub mod formula;
pub mod incidence;
pub mod interval;
pub mod margin;
pub mod monadic;
pub mod plane;
pub mod rational;
pub mod report;
pub mod suites;
pub mod tree;
