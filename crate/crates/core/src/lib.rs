//! Exact, desk-scale verification of orbit theorems for solvable linear groups
//! and of the bound `|G : O_{π'π}(G)|_π ≤ b(H)²` for Hall π-subgroups `H`.

pub mod arith;
pub mod chars;
mod error;
pub mod field;
pub mod harness;
mod limits;
pub mod linear;
pub mod orbits;
pub mod perm;
pub mod pi;
pub mod radicals;

pub use error::{Error, Result};
pub use limits::Limits;

/// The README and guide code blocks, compiled and run as doctests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/finite-fields.md")]
    pub struct FiniteFields;
    #[doc = include_str!("../../../book/src/permutation-groups.md")]
    pub struct PermutationGroups;
    #[doc = include_str!("../../../book/src/linear-groups.md")]
    pub struct LinearGroups;
    #[doc = include_str!("../../../book/src/radicals-and-hall.md")]
    pub struct RadicalsAndHall;
    #[doc = include_str!("../../../book/src/character-degrees.md")]
    pub struct CharacterDegrees;
    #[doc = include_str!("../../../book/src/orbit-theorems.md")]
    pub struct OrbitTheorems;
    #[doc = include_str!("../../../book/src/harness.md")]
    pub struct Harness;
}
