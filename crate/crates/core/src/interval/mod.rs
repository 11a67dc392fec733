//! The lattice of finite unions of closed rational intervals.

pub mod afg;
pub mod arith;
pub mod betweenness;
pub mod grid;
pub mod set;

pub use afg::{
    afg_host, afg_interpretation, all_interval_sets, decode_afg, encode_afg, host_points,
    interval_poset, AfgTriple,
};
pub use arith::{
    arithmetic_interpretation, code_sizes, coding_width, interval_power, jumps, lattice_add,
    lattice_mul, min_grid_add, min_grid_mul, realize_spectrum, relation_s, relation_s_formula,
    relation_s_masks, size_spectrum, ArithError, ArithOutcome,
};
pub use betweenness::{betweenness_axioms, BetweennessReport};
pub use grid::{atom_between, check_i, check_i_semantic, GridLattice, IReport};
pub use set::{IntervalError, IntervalSet};
