//! π-cores and Hall π-subgroups.
//!
//! `O_π(G)` is the join of those class closures `ncl(g)` that are π-groups.
//! Joins of normal π-subgroups are normal π-subgroups and every element of
//! `O_π(G)` has its class closure inside it, so the join is exactly the core.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::normal::class_closures;
use crate::perm::{
    conjugacy_classes, minimal_normals_and_pi_separability, quotient_rep, ClassData, PermGroup,
    Permutation,
};
use crate::pi::{pi_part, PiSet};

/// Class data and class closures of one group, reusable across many π.
#[derive(Clone, Debug)]
pub struct ClassClosures {
    pub classes: ClassData,
    pub closures: Vec<PermGroup>,
}

impl ClassClosures {
    pub fn new(group: &PermGroup) -> Result<Self> {
        let classes = conjugacy_classes(group)?;
        let closures = class_closures(group, &classes)?;
        Ok(ClassClosures { classes, closures })
    }

    pub fn o_pi(&self, group: &PermGroup, pi: &PiSet) -> Result<PermGroup> {
        let mut core = group.subgroup(Vec::new())?;
        for (i, closure) in self.closures.iter().enumerate() {
            if !pi.is_pi_number(self.classes.rep_orders[i] as u128) {
                continue;
            }
            if pi.is_pi_number(closure.order()) && !closure.is_subgroup_of(&core) {
                core = core.join_with(closure.generators())?;
            }
        }
        debug_assert!(pi.is_pi_number(core.order()));
        Ok(core)
    }
}

/// The largest normal π-subgroup.
pub fn o_pi(group: &PermGroup, pi: &PiSet) -> Result<PermGroup> {
    ClassClosures::new(group)?.o_pi(group, pi)
}

/// `O_{π'π}(G)`: the preimage of `O_π(G/O_{π'}(G))` under the coset action.
/// Also returns `O_{π'}(G)`.
pub fn o_pi_prime_pi(group: &PermGroup, pi: &PiSet) -> Result<(PermGroup, PermGroup)> {
    let closures = ClassClosures::new(group)?;
    o_pi_prime_pi_with(group, &closures, pi)
}

pub fn o_pi_prime_pi_with(
    group: &PermGroup,
    closures: &ClassClosures,
    pi: &PiSet,
) -> Result<(PermGroup, PermGroup)> {
    let complement = pi.complement_for(group.order());
    let lower = closures.o_pi(group, &complement)?;
    let quotient = quotient_rep(group, &lower)?;
    let top = o_pi(&quotient.group, pi)?;
    let preimage = quotient.preimage(&lower, &top)?;
    debug_assert_eq!(preimage.order(), lower.order() * top.order());
    Ok((preimage, lower))
}

/// Deterministic 64-bit stream seed from a user seed, a label and π (FNV-1a).
pub fn stream_seed(seed: u64, label: &str, pi: &PiSet) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    eat(&seed.to_le_bytes());
    eat(label.as_bytes());
    eat(&[0xff]);
    eat(pi.to_string().as_bytes());
    h
}

/// A Hall π-subgroup of a π-separable group. Refuses groups that are not
/// π-separable.
pub fn hall_subgroup(group: &PermGroup, pi: &PiSet, seed: u64) -> Result<PermGroup> {
    let sep = minimal_normals_and_pi_separability(group, pi)?;
    if !sep.separable {
        return Err(Error::NotPiSeparable(pi.to_string()));
    }
    hall_subgroup_unchecked(group, pi, seed)
}

/// Hall search without the separability check; the caller vouches for it.
pub fn hall_subgroup_unchecked(group: &PermGroup, pi: &PiSet, seed: u64) -> Result<PermGroup> {
    let target = pi_part(group.order(), pi);
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, "hall", pi));
    let mut hall = group.subgroup(Vec::new())?;
    let budget = group.limits().hall_budget;
    let mut steps = 0u64;
    while hall.order() < target && steps < budget {
        steps += 1;
        let x = pi_element_part(&group.random_element(&mut rng), pi);
        if x.is_identity() || hall.contains(&x) {
            continue;
        }
        let candidate = hall.join_with(std::slice::from_ref(&x))?;
        if pi.is_pi_number(candidate.order()) {
            hall = candidate;
        }
    }
    if hall.order() == target {
        return Ok(hall);
    }
    exhaustive_hall(group, pi, target).ok_or_else(|| Error::BudgetExhausted {
        what: format!("Hall {{{pi}}}-subgroup of order {target}"),
        budget,
    })
}

/// The π-part `x^m` of `x`, where `m` is the π'-part of the order of `x`.
pub fn pi_element_part(x: &Permutation, pi: &PiSet) -> Permutation {
    let ord = x.order() as u128;
    x.pow((ord / pi_part(ord, pi)) as u64)
}

/// Subgroups generated by a π-class representative and up to two further
/// π-elements.
fn exhaustive_hall(group: &PermGroup, pi: &PiSet, target: u128) -> Option<PermGroup> {
    if target == 1 {
        return group.subgroup(Vec::new()).ok();
    }
    let classes = conjugacy_classes(group).ok()?;
    let pi_elements: Vec<Permutation> = group
        .elements()
        .ok()?
        .into_iter()
        .filter(|x| !x.is_identity() && pi.is_pi_number(x.order() as u128))
        .collect();
    let reps: Vec<&Permutation> = classes
        .reps
        .iter()
        .zip(&classes.rep_orders)
        .filter(|(_, &o)| o > 1 && pi.is_pi_number(o as u128))
        .map(|(r, _)| r)
        .collect();
    for a in reps {
        let h1 = group.subgroup(vec![a.clone()]).ok()?;
        if h1.order() == target {
            return Some(h1);
        }
        for b in &pi_elements {
            if h1.contains(b) {
                continue;
            }
            let h2 = h1.join_with(std::slice::from_ref(b)).ok()?;
            if !pi.is_pi_number(h2.order()) {
                continue;
            }
            if h2.order() == target {
                return Some(h2);
            }
            for c in &pi_elements {
                if h2.contains(c) {
                    continue;
                }
                let h3 = h2.join_with(std::slice::from_ref(c)).ok()?;
                if h3.order() == target {
                    return Some(h3);
                }
            }
        }
    }
    None
}
