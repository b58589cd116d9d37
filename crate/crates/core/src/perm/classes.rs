use crate::arith::lcm;
use crate::error::Result;
use crate::perm::{PermGroup, Permutation};

/// Conjugacy classes of an enumerable group.
///
/// Classes are numbered in order of their smallest-rank element, so class 0
/// is always the identity. The representative of each class is that element.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub reps: Vec<Permutation>,
    pub sizes: Vec<u64>,
    pub rep_orders: Vec<u64>,
    /// `inverse[i]` is the class containing the inverses of class `i`.
    pub inverse: Vec<usize>,
    pub exponent: u64,
    class_of_rank: Vec<u32>,
}

pub fn conjugacy_classes(group: &PermGroup) -> Result<ClassData> {
    group.check_enumerable()?;
    let n = group.order() as usize;
    let mut class_of_rank = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let gens: Vec<(Permutation, Permutation)> = group
        .generators()
        .iter()
        .filter(|s| !s.is_identity())
        .map(|s| (s.clone(), s.inverse()))
        .collect();
    for r in 0..n {
        if class_of_rank[r] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        let x = group.element_at(r as u64);
        class_of_rank[r] = id;
        let mut stack = vec![x.clone()];
        let mut size = 0u64;
        while let Some(y) = stack.pop() {
            size += 1;
            for (s, s_inv) in &gens {
                let z = &(s_inv * &y) * s;
                let rz = group.rank(&z).expect("conjugate stays in the group") as usize;
                if class_of_rank[rz] == u32::MAX {
                    class_of_rank[rz] = id;
                    stack.push(z);
                }
            }
        }
        reps.push(x);
        sizes.push(size);
    }
    let rep_orders: Vec<u64> = reps.iter().map(|x| x.order()).collect();
    let exponent = rep_orders.iter().fold(1, |acc, &o| lcm(acc, o));
    let inverse = reps
        .iter()
        .map(|x| class_of_rank[group.rank(&x.inverse()).expect("member") as usize] as usize)
        .collect();
    Ok(ClassData {
        reps,
        sizes,
        rep_orders,
        inverse,
        exponent,
        class_of_rank,
    })
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Class index of a group element given its rank.
    #[inline]
    pub fn class_of_rank(&self, rank: u64) -> usize {
        self.class_of_rank[rank as usize] as usize
    }

    pub fn class_of(&self, group: &PermGroup, g: &Permutation) -> Option<usize> {
        group.rank(g).map(|r| self.class_of_rank(r))
    }

    /// Ranks of all elements of class `i`.
    pub fn members(&self, i: usize) -> Vec<u64> {
        self.class_of_rank
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c as usize == i)
            .map(|(r, _)| r as u64)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            n,
            gens.iter()
                .map(|s| Permutation::from_cycles(n, s).unwrap())
                .collect(),
        )
        .unwrap()
    }

    /// Oracle: partition all elements by explicit conjugation with every element.
    fn brute_force_class_sizes(g: &PermGroup) -> Vec<u64> {
        let elems = g.elements().unwrap();
        let mut assigned = vec![false; elems.len()];
        let mut sizes = Vec::new();
        for i in 0..elems.len() {
            if assigned[i] {
                continue;
            }
            let mut class = std::collections::HashSet::new();
            for h in &elems {
                class.insert(elems[i].conjugate(h));
            }
            for (j, e) in elems.iter().enumerate() {
                if class.contains(e) {
                    assigned[j] = true;
                }
            }
            sizes.push(class.len() as u64);
        }
        sizes.sort();
        sizes
    }

    #[test]
    fn s4_classes() {
        let g = group(4, &["(0 1)", "(0 1 2 3)"]);
        let c = conjugacy_classes(&g).unwrap();
        let mut sizes = c.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(sizes, brute_force_class_sizes(&g));
        assert_eq!(c.sizes.iter().sum::<u64>(), 24);
        assert_eq!(c.exponent, 12);
        assert!(c.reps[0].is_identity());
    }

    #[test]
    fn c6_has_six_classes() {
        let g = group(6, &["(0 1 2 3 4 5)"]);
        let c = conjugacy_classes(&g).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.sizes.iter().all(|&s| s == 1));
        assert_eq!(c.exponent, 6);
    }

    #[test]
    fn q8_has_five_classes() {
        // Q8 acting regularly on 8 points.
        let g = group(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"]);
        assert_eq!(g.order(), 8);
        let c = conjugacy_classes(&g).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(brute_force_class_sizes(&g), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn inverse_map_is_an_involution_and_sizes_divide() {
        let g = group(7, &["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"]);
        let c = conjugacy_classes(&g).unwrap();
        for i in 0..c.len() {
            assert_eq!(c.inverse[c.inverse[i]], i);
            assert_eq!(g.order() as u64 % c.sizes[i], 0);
        }
        assert_eq!(c.sizes.iter().sum::<u64>(), 21);
        let total: u64 = (0..c.len()).map(|i| c.members(i).len() as u64).sum();
        assert_eq!(total, 21);
    }

    #[test]
    fn class_statistics_do_not_depend_on_generator_order() {
        let a = group(5, &["(0 1 2 3 4)", "(0 1)"]);
        let b = group(5, &["(0 1)", "(0 1 2 3 4)"]);
        let stat = |g: &PermGroup| {
            let c = conjugacy_classes(g).unwrap();
            let mut v: Vec<(u64, u64)> = c.sizes.iter().copied().zip(c.rep_orders.iter().copied()).collect();
            v.sort();
            (v, c.sizes.iter().zip(&c.rep_orders).map(|(s, o)| s * o).sum::<u64>())
        };
        assert_eq!(stat(&a), stat(&b));
    }
}
