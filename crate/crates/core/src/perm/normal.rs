//! Normal-subgroup lattice, minimal normal subgroups and chief series.
//!
//! Every normal subgroup is a union of conjugacy classes and the join of the
//! normal closures of the class representatives it contains, so the lattice
//! is the closure of `{ncl(g_i)}` under joins. Normal subgroups are keyed by
//! the set of classes they contain.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::perm::classes::{conjugacy_classes, ClassData};
use crate::perm::ops::normal_closure;
use crate::perm::PermGroup;
use crate::pi::PiSet;

#[derive(Clone, Debug)]
pub struct NormalSubgroup {
    pub group: PermGroup,
    /// `classes[i]` is true when class `i` lies in the subgroup.
    pub classes: Vec<bool>,
}

impl NormalSubgroup {
    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn is_within(&self, other: &NormalSubgroup) -> bool {
        self.classes
            .iter()
            .zip(&other.classes)
            .all(|(&a, &b)| !a || b)
    }
}

#[derive(Clone, Debug)]
pub struct NormalLattice {
    pub classes: ClassData,
    /// Normal closures of the class representatives, indexed by class.
    pub class_closures: Vec<PermGroup>,
    /// All normal subgroups; entry 0 is the trivial subgroup.
    pub subgroups: Vec<NormalSubgroup>,
}

fn class_mask(classes: &ClassData, sub: &PermGroup) -> Vec<bool> {
    classes.reps.iter().map(|r| sub.contains(r)).collect()
}

/// Normal closures of every class representative.
pub fn class_closures(group: &PermGroup, classes: &ClassData) -> Result<Vec<PermGroup>> {
    classes
        .reps
        .iter()
        .map(|r| normal_closure(group, std::slice::from_ref(r)))
        .collect()
}

pub fn normal_lattice(group: &PermGroup) -> Result<NormalLattice> {
    let classes = conjugacy_classes(group)?;
    let closures = class_closures(group, &classes)?;
    let cap = group.limits().normal_lattice;
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut subgroups: Vec<NormalSubgroup> = Vec::new();

    let mut push = |sub: PermGroup, subgroups: &mut Vec<NormalSubgroup>| -> Result<Option<usize>> {
        let mask = class_mask(&classes, &sub);
        if index.contains_key(&mask) {
            return Ok(None);
        }
        if subgroups.len() >= cap {
            return Err(Error::CapExceeded {
                what: "normal subgroup count",
                value: subgroups.len() as u128 + 1,
                cap: cap as u128,
            });
        }
        index.insert(mask.clone(), subgroups.len());
        subgroups.push(NormalSubgroup {
            group: sub,
            classes: mask,
        });
        Ok(Some(subgroups.len() - 1))
    };

    push(group.subgroup(Vec::new())?, &mut subgroups)?;
    let atoms: Vec<(Vec<bool>, &PermGroup)> = closures
        .iter()
        .map(|c| (class_mask(&classes, c), c))
        .collect();
    for (_, c) in &atoms {
        push((*c).clone(), &mut subgroups)?;
    }
    let mut i = 0;
    while i < subgroups.len() {
        for (mask, atom) in &atoms {
            let inside = mask
                .iter()
                .zip(&subgroups[i].classes)
                .all(|(&a, &b)| !a || b);
            if inside {
                continue;
            }
            let joined = subgroups[i].group.join_with(atom.generators())?;
            push(joined, &mut subgroups)?;
        }
        i += 1;
    }
    Ok(NormalLattice {
        classes,
        class_closures: closures,
        subgroups,
    })
}

impl NormalLattice {
    /// Lattice entries strictly above `below` with nothing strictly between.
    fn covers(&self, below: usize) -> Vec<usize> {
        let above: Vec<usize> = (0..self.subgroups.len())
            .filter(|&j| {
                j != below && self.subgroups[below].is_within(&self.subgroups[j])
            })
            .collect();
        above
            .iter()
            .copied()
            .filter(|&j| {
                !above.iter().any(|&m| {
                    m != j && self.subgroups[m].is_within(&self.subgroups[j])
                })
            })
            .collect()
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<&NormalSubgroup> {
        self.covers(0).into_iter().map(|j| &self.subgroups[j]).collect()
    }

    /// A chief series `1 = N_0 < N_1 < … < N_r = G` (indices into `subgroups`),
    /// choosing the smallest cover at each step.
    pub fn chief_series(&self) -> Vec<usize> {
        let mut series = vec![0usize];
        loop {
            let cur = *series.last().expect("non-empty");
            let mut covers = self.covers(cur);
            if covers.is_empty() {
                return series;
            }
            covers.sort_by_key(|&j| (self.subgroups[j].order(), j));
            series.push(covers[0]);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    /// Order coprime to every prime in π.
    PiPrime,
    /// Elementary abelian of prime-power order, prime in π.
    SolvablePi,
    /// Anything else; the group is not π-separable.
    Obstruction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiefFactor {
    pub lower_order: u128,
    pub upper_order: u128,
    pub factor_order: u128,
    pub solvable: bool,
    pub kind: FactorKind,
}

#[derive(Clone, Debug)]
pub struct PiSeparability {
    pub minimal_normals: Vec<PermGroup>,
    pub separable: bool,
    pub chief_factors: Vec<ChiefFactor>,
}

/// Classifies a chief factor by its order: a chief factor is solvable exactly
/// when its order is a prime power.
pub fn classify_factor(order: u128, pi: &PiSet) -> (bool, FactorKind) {
    let f = factorize(order);
    let solvable = f.len() <= 1;
    let kind = if f.iter().all(|&(p, _)| !pi.contains(p)) {
        FactorKind::PiPrime
    } else if solvable {
        FactorKind::SolvablePi
    } else {
        FactorKind::Obstruction
    };
    (solvable, kind)
}

pub fn minimal_normals_and_pi_separability(group: &PermGroup, pi: &PiSet) -> Result<PiSeparability> {
    let lattice = normal_lattice(group)?;
    Ok(separability_from_lattice(&lattice, pi))
}

pub fn separability_from_lattice(lattice: &NormalLattice, pi: &PiSet) -> PiSeparability {
    let minimal_normals = lattice
        .minimal_normal_subgroups()
        .into_iter()
        .map(|n| n.group.clone())
        .collect();
    let series = lattice.chief_series();
    let chief_factors: Vec<ChiefFactor> = series
        .windows(2)
        .map(|w| {
            let lower = lattice.subgroups[w[0]].order();
            let upper = lattice.subgroups[w[1]].order();
            let (solvable, kind) = classify_factor(upper / lower, pi);
            ChiefFactor {
                lower_order: lower,
                upper_order: upper,
                factor_order: upper / lower,
                solvable,
                kind,
            }
        })
        .collect();
    let separable = chief_factors
        .iter()
        .all(|c| c.kind != FactorKind::Obstruction);
    PiSeparability {
        minimal_normals,
        separable,
        chief_factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::ops::is_normal;
    use crate::perm::Permutation;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            n,
            gens.iter()
                .map(|s| Permutation::from_cycles(n, s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn pi(s: &str) -> PiSet {
        s.parse().unwrap()
    }

    #[test]
    fn s4_lattice() {
        let g = group(4, &["(0 1)", "(0 1 2 3)"]);
        let lat = normal_lattice(&g).unwrap();
        let mut orders: Vec<u128> = lat.subgroups.iter().map(|n| n.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        for n in &lat.subgroups {
            assert!(is_normal(&g, &n.group));
        }
        let sep = minimal_normals_and_pi_separability(&g, &pi("2")).unwrap();
        assert_eq!(sep.minimal_normals.len(), 1);
        assert_eq!(sep.minimal_normals[0].order(), 4);
        assert!(sep.separable);
        let factors: Vec<u128> = sep.chief_factors.iter().map(|c| c.factor_order).collect();
        assert_eq!(factors, vec![4, 3, 2]);
        for p in ["3", "2,3", "5"] {
            assert!(minimal_normals_and_pi_separability(&g, &pi(p)).unwrap().separable);
        }
    }

    #[test]
    fn a5_is_not_2_separable() {
        let a5 = group(5, &["(0 1 2)", "(0 1 2 3 4)"]);
        let sep = minimal_normals_and_pi_separability(&a5, &pi("2")).unwrap();
        assert!(!sep.separable);
        assert_eq!(sep.chief_factors.len(), 1);
        assert_eq!(sep.chief_factors[0].kind, FactorKind::Obstruction);
        assert_eq!(sep.minimal_normals[0].order(), 60);
        assert!(minimal_normals_and_pi_separability(&a5, &pi("7")).unwrap().separable);
    }

    #[test]
    fn a5_times_c7_is_7_separable() {
        let g = group(12, &["(0 1 2)", "(0 1 2 3 4)", "(5 6 7 8 9 10 11)"]);
        assert_eq!(g.order(), 420);
        let sep = minimal_normals_and_pi_separability(&g, &pi("7")).unwrap();
        assert!(sep.separable);
        let mut kinds: Vec<(u128, FactorKind)> =
            sep.chief_factors.iter().map(|c| (c.factor_order, c.kind)).collect();
        kinds.sort_by_key(|k| k.0);
        assert_eq!(kinds, vec![(7, FactorKind::SolvablePi), (60, FactorKind::PiPrime)]);
        let mut minimal: Vec<u128> = sep.minimal_normals.iter().map(|n| n.order()).collect();
        minimal.sort();
        assert_eq!(minimal, vec![7, 60]);
        assert!(!minimal_normals_and_pi_separability(&g, &pi("2,3,5")).unwrap().separable);
    }

    #[test]
    fn minimal_normals_are_minimal() {
        // C2 x C2 x C2: seven minimal normal subgroups of order 2
        let g = group(6, &["(0 1)", "(2 3)", "(4 5)"]);
        let lat = normal_lattice(&g).unwrap();
        assert_eq!(lat.subgroups.len(), 16);
        let minimal = lat.minimal_normal_subgroups();
        assert_eq!(minimal.len(), 7);
        assert!(minimal.iter().all(|n| n.order() == 2));
    }
}
