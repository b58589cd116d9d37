//! Direct checks on `Γ(p^d)` for the small `d` that the counting bound
//! leaves open: every π-subgroup `H` up to conjugacy, counted on H-orbits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linear::{check_hypotheses_with, MatrixGroup, Mode};
use crate::orbits::census::{qualifying_orbits_with, OrbitReport, Unit};
use crate::perm::{PermGroup, Permutation};
use crate::pi::PiSet;
use crate::radicals::o_pi;

/// The `(p, d)` pairs with `f(d) ≤ 0`.
pub const LEFTOVER: [(u64, u32); 5] = [(2, 2), (2, 3), (2, 4), (3, 1), (3, 2)];

#[derive(Clone, Debug, Serialize)]
pub struct GammaCase {
    pub h_order: u128,
    /// Generators of `H` as cycles on the points of `V`.
    pub h_generators: Vec<String>,
    pub report: OrbitReport,
}

/// A subgroup as a bitset over element ranks (groups of order ≤ 128).
#[derive(Clone, Debug)]
pub struct SmallSubgroup {
    pub members: u128,
    pub generators: Vec<Permutation>,
}

/// All subgroups of `group` up to conjugacy, ordered by (order, smallest
/// conjugate bitset). Requires `|group| ≤ 128`.
pub fn subgroups_up_to_conjugacy(group: &PermGroup) -> Result<Vec<SmallSubgroup>> {
    let order = group.order();
    if order > 128 {
        return Err(Error::CapExceeded {
            what: "order for subgroup enumeration",
            value: order,
            cap: 128,
        });
    }
    let elements = group.elements()?;
    let rank = |x: &Permutation| group.rank(x).expect("member") as usize;
    let bits_of = |h: &PermGroup| -> Result<u128> {
        let mut b = 0u128;
        h.for_each_element(|_, x| b |= 1u128 << rank(x))?;
        Ok(b)
    };
    // conj[g][r] = rank of element r conjugated by g
    let conj: Vec<Vec<usize>> = elements
        .iter()
        .map(|g| elements.iter().map(|x| rank(&x.conjugate(g))).collect())
        .collect();
    let canonical = |bits: u128| -> u128 {
        conj.iter()
            .map(|table| {
                let mut c = 0u128;
                for (r, &t) in table.iter().enumerate() {
                    if bits >> r & 1 == 1 {
                        c |= 1u128 << t;
                    }
                }
                c
            })
            .min()
            .expect("non-empty group")
    };

    let mut all: Vec<SmallSubgroup> = vec![SmallSubgroup {
        members: 1u128 << rank(&group.identity()),
        generators: Vec::new(),
    }];
    let mut cyclic = Vec::new();
    for x in &elements {
        let c = group.subgroup(vec![x.clone()])?;
        cyclic.push((bits_of(&c)?, x.clone()));
    }
    let mut i = 0;
    while i < all.len() {
        for (bits, x) in &cyclic {
            if all[i].members & bits == *bits {
                continue;
            }
            let mut gens = all[i].generators.clone();
            gens.push(x.clone());
            let joined = group.subgroup(gens.clone())?;
            let members = bits_of(&joined)?;
            if !all.iter().any(|s| s.members == members) {
                all.push(SmallSubgroup { members, generators: gens });
            }
        }
        i += 1;
    }
    let mut classes: Vec<(u32, u128, SmallSubgroup)> = Vec::new();
    for s in all {
        let key = canonical(s.members);
        if !classes.iter().any(|(_, k, _)| *k == key) {
            classes.push((s.members.count_ones(), key, s));
        }
    }
    classes.sort_by_key(|(n, k, _)| (*n, *k));
    Ok(classes.into_iter().map(|(_, _, s)| s).collect())
}

/// Qualifying H-orbits for every π-subgroup `H ≤ Γ(p^d)` up to conjugacy.
pub fn gamma_direct_check(p: u64, d: u32, pi: &PiSet, mode: Mode) -> Result<Vec<GammaCase>> {
    if !LEFTOVER.contains(&(p, d)) {
        return Err(Error::InvalidParameters(format!(
            "direct checks cover (p, d) in {LEFTOVER:?}, not ({p}, {d})"
        )));
    }
    let m = MatrixGroup::semilinear(p, d, Limits::default())?;
    let g = &m.perm_image()?.group;
    let core = o_pi(g, pi)?;
    let hypothesis = check_hypotheses_with(&m, &core, pi, mode)?;
    let mut out = Vec::new();
    for s in subgroups_up_to_conjugacy(g)? {
        if !pi.is_pi_number(s.members.count_ones() as u128) {
            continue;
        }
        let h = g.subgroup(s.generators.clone())?;
        let report = qualifying_orbits_with(&m, &h, &core, hypothesis.clone(), pi, Unit::H)?;
        out.push(GammaCase {
            h_order: h.order(),
            h_generators: s.generators.iter().map(|x| x.to_string()).collect(),
            report,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(s: &str) -> PiSet {
        s.parse().unwrap()
    }

    #[test]
    fn subgroup_class_counts() {
        // S4: 11 classes of subgroups
        let s4 = PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, "(0 1)").unwrap(),
                Permutation::from_cycles(4, "(0 1 2 3)").unwrap(),
            ],
        )
        .unwrap();
        let classes = subgroups_up_to_conjugacy(&s4).unwrap();
        assert_eq!(classes.len(), 11);
        let orders: Vec<u32> = classes.iter().map(|s| s.members.count_ones()).collect();
        assert_eq!(orders, vec![1, 2, 2, 3, 4, 4, 4, 6, 8, 12, 24]);
        // Γ(8) = C7 ⋊ C3: 1, C3, C7, Γ(8)
        let g = MatrixGroup::semilinear(2, 3, Limits::default()).unwrap();
        let classes = subgroups_up_to_conjugacy(&g.perm_image().unwrap().group).unwrap();
        let orders: Vec<u32> = classes.iter().map(|s| s.members.count_ones()).collect();
        assert_eq!(orders, vec![1, 3, 7, 21]);
    }

    #[test]
    fn gamma_8_galois_case() {
        let cases = gamma_direct_check(2, 3, &pi("2,3"), Mode::Strict).unwrap();
        let c3 = cases.iter().find(|c| c.h_order == 3).unwrap();
        assert_eq!(c3.report.qualifying, 20);
        assert!(cases.iter().all(|c| c.report.threshold_met));
    }

    #[test]
    fn gamma_3_is_a_pi_group() {
        let cases = gamma_direct_check(3, 1, &pi("2,3"), Mode::Strict).unwrap();
        for c in &cases {
            assert_eq!(c.report.o_pi_order, 2);
            assert_eq!(c.report.qualifying, c.report.total_orbits);
        }
        assert_eq!(cases.len(), 2);
    }

    #[test]
    fn all_leftover_cases_meet_the_threshold() {
        for (p, d) in LEFTOVER {
            let primes = crate::arith::prime_divisors(d as u128 * ((p as u128).pow(d) - 1));
            let mut primes = primes;
            if !primes.contains(&p) {
                primes.push(p);
                primes.sort();
            }
            let order = primes.iter().map(|&x| x as u128).product();
            for set in PiSet::all_nonempty_subsets(order) {
                for mode in [Mode::Strict, Mode::Lenient] {
                    for c in gamma_direct_check(p, d, &set, mode).unwrap() {
                        if c.report.hypothesis.eligible {
                            assert!(
                                c.report.threshold_met,
                                "Γ({p}^{d}), π={{{set}}}, |H|={}: {} < {}",
                                c.h_order,
                                c.report.qualifying,
                                c.report.threshold
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_other_parameters() {
        assert!(gamma_direct_check(2, 5, &pi("2"), Mode::Strict).is_err());
    }
}
