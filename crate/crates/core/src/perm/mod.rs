//! Permutation groups: stabilizer chains, classes, normal structure.

mod classes;
mod group;
pub mod normal;
pub mod ops;
mod permutation;
mod quotient;

pub use classes::{conjugacy_classes, ClassData};
pub use group::{build_group, PermGroup};
pub use normal::{
    minimal_normals_and_pi_separability, normal_lattice, separability_from_lattice, ChiefFactor, FactorKind, NormalLattice,
    PiSeparability,
};
pub use ops::{
    centralizer, derived_series_and_solvability, intersection, is_normal, is_solvable,
    normal_closure, stabilizer_and_centralizer, subgroup_by_filter, conjugate_subgroup, derived_subgroup, Target,
};
pub use permutation::Permutation;
pub use quotient::{quotient_rep, Quotient};
