//! `|G : O_{π'π}(G)|_π ≤ b(H)²` for a Hall π-subgroup `H`.

use serde::Serialize;

use crate::chars::{dixon, DegreeMultiset};
use crate::error::Result;
use crate::perm::{is_solvable, minimal_normals_and_pi_separability, PermGroup};
use crate::pi::{pi_part, PiSet};
use crate::radicals::{hall_subgroup_unchecked, o_pi_prime_pi_with, stream_seed, ClassClosures};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Solvable,
    PiSeparable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub pi: PiSet,
    pub branch: Branch,
    pub group_order: u128,
    pub o_pi_prime_order: u128,
    pub o_pi_prime_pi_order: u128,
    /// `|G : O_{π'π}(G)|_π`.
    pub lhs: u128,
    /// `b(H)²`.
    pub rhs: u128,
    pub b_h: u64,
    pub hall_order: u128,
    pub hall_generators: Vec<String>,
    pub hall_degrees: DegreeMultiset,
    pub dixon_prime: u64,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub enum Inequality {
    Verified { report: InequalityReport, hall: PermGroup },
    /// The group is not π-separable; nothing to check.
    Skipped(String),
}

/// Checks the inequality on `group` for `π`. Groups that are neither solvable
/// nor π-separable are skipped rather than rejected.
pub fn verify_main_inequality(group: &PermGroup, pi: &PiSet, seed: u64) -> Result<Inequality> {
    let branch = if is_solvable(group)? {
        Branch::Solvable
    } else if minimal_normals_and_pi_separability(group, pi)?.separable {
        Branch::PiSeparable
    } else {
        return Ok(Inequality::Skipped(format!("not {{{pi}}}-separable")));
    };
    let closures = ClassClosures::new(group)?;
    verify_main_inequality_with(group, &closures, branch, pi, seed)
}

/// As [`verify_main_inequality`], with the separability already established
/// and class closures reused across π.
pub fn verify_main_inequality_with(
    group: &PermGroup,
    closures: &ClassClosures,
    branch: Branch,
    pi: &PiSet,
    seed: u64,
) -> Result<Inequality> {
    let (upper, lower) = o_pi_prime_pi_with(group, closures, pi)?;
    let lhs = pi_part(group.order() / upper.order(), pi);
    let hall = hall_subgroup_unchecked(group, pi, stream_seed(seed, "hall-subgroup", pi))?;
    let dixon = dixon(&hall, stream_seed(seed, "dixon", pi))?;
    let b = dixon.degrees.max();
    let rhs = (b as u128) * (b as u128);
    let report = InequalityReport {
        pi: pi.clone(),
        branch,
        group_order: group.order(),
        o_pi_prime_order: lower.order(),
        o_pi_prime_pi_order: upper.order(),
        lhs,
        rhs,
        b_h: b,
        hall_order: hall.order(),
        hall_generators: hall.generators().iter().map(|g| g.to_string()).collect(),
        hall_degrees: dixon.degrees,
        dixon_prime: dixon.prime,
        holds: lhs <= rhs,
    };
    Ok(Inequality::Verified { report, hall })
}
