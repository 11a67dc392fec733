//! Weak monadic second-order structures `W(M)`: finite subsets of a base
//! structure with inclusion, atoms and (optionally) setwise products, and the
//! definability results built on them.

pub mod formulas;
pub mod mult;
pub mod power;
pub mod semigroup;
pub mod set;
pub mod size;

pub use mult::{bound_for_products, MultError, PlusDivides};
pub use power::{PowerError, WeakPower};
pub use semigroup::{
    divides, generated_relation, in_generated, is_subsemigroup, is_torsion, powers,
    semigroup_structure, set_product, star_property, torsion_witness, FiniteSemigroup, Membership,
    Semigroup, SemigroupError, TruncatedNat,
};
pub use set::SetMask;
pub use size::{
    addition_on_classes, equal_size_disjoint, equal_size_e, sequence_family_check, SequenceReport,
};

/// Default size cap for set quantifiers.
pub const DEFAULT_CAP: usize = 6;
