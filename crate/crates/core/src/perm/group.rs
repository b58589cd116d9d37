use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::Permutation;

const ABSENT: u32 = u32::MAX;

/// One level of a stabilizer chain: the stabilizer `G^(i)` of the first `i`
/// base points, its strong generators, and the orbit of `base` under it with
/// coset representatives.
#[derive(Clone)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    pos: Vec<u32>,
    trans: Vec<Permutation>,
    trans_inv: Vec<Permutation>,
    /// Number of generators already paired with each orbit point during Schreier–Sims.
    checked: Vec<usize>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut pos = vec![ABSENT; degree];
        pos[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            trans: vec![Permutation::identity(degree)],
            trans_inv: vec![Permutation::identity(degree)],
            checked: vec![0],
        }
    }

    /// Closes the orbit under the current generators, keeping existing
    /// transversal entries.
    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            for s in 0..self.gens.len() {
                let gamma = self.gens[s].image(beta);
                if self.pos[gamma as usize] == ABSENT {
                    let u = &self.trans[i] * &self.gens[s];
                    self.pos[gamma as usize] = self.orbit.len() as u32;
                    self.orbit.push(gamma);
                    self.trans_inv.push(u.inverse());
                    self.trans.push(u);
                    self.checked.push(0);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group with a base and strong generating set.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: u128,
    limits: Limits,
}

/// Builds the group generated by `gens` under default limits.
pub fn build_group(degree: usize, gens: &[Permutation]) -> Result<PermGroup> {
    PermGroup::new(degree, gens.to_vec())
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::with_base(degree, gens, &[], Limits::default())
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: 1,
            limits: Limits::default(),
        }
    }

    pub fn with_limits(degree: usize, gens: Vec<Permutation>, limits: Limits) -> Result<Self> {
        Self::with_base(degree, gens, &[], limits)
    }

    /// Builds with `prefix` as the first base points (duplicates dropped).
    pub fn with_base(
        degree: usize,
        gens: Vec<Permutation>,
        prefix: &[u32],
        limits: Limits,
    ) -> Result<Self> {
        Limits::check("degree", degree as u128, limits.degree as u128)?;
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        if let Some(&b) = prefix.iter().find(|&&b| b as usize >= degree) {
            return Err(Error::InvalidParameters(format!(
                "base point {b} outside degree {degree}"
            )));
        }
        let mut strong: Vec<Permutation> = Vec::new();
        for g in &gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<u32> = Vec::new();
        for &b in prefix {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        for g in &strong {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved().expect("non-identity"));
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
        for (l, level) in levels.iter_mut().enumerate() {
            level.gens = strong
                .iter()
                .filter(|g| base[..l].iter().all(|&b| g.image(b) == b))
                .cloned()
                .collect();
            level.extend_orbit();
        }
        let mut group = PermGroup {
            degree,
            generators: gens,
            levels,
            order: 1,
            limits,
        };
        let top = group.levels.len() as isize - 1;
        group.complete_from(top)?;
        Ok(group)
    }

    /// Schreier–Sims: makes levels `0..=start` complete, assuming the levels
    /// above `start` already are.
    fn complete_from(&mut self, start: isize) -> Result<()> {
        let mut i = start;
        while i >= 0 {
            match self.failing_schreier_generator(i as usize) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let b = h.first_moved().expect("non-identity residue");
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for l in (i as usize + 1)..=j {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].extend_orbit();
                    }
                    i = j as isize;
                }
            }
        }
        let mut order: u128 = 1;
        for level in &self.levels {
            order = order
                .checked_mul(level.orbit.len() as u128)
                .ok_or(Error::CapExceeded {
                    what: "group order",
                    value: u128::MAX,
                    cap: u128::MAX,
                })?;
        }
        self.order = order;
        Ok(())
    }

    fn failing_schreier_generator(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut scratch = Permutation::identity(self.degree);
        let n = self.levels[i].orbit.len();
        for idx in 0..n {
            while self.levels[i].checked[idx] < self.levels[i].gens.len() {
                let level = &self.levels[i];
                let s = &level.gens[level.checked[idx]];
                let gamma = s.image(level.orbit[idx]);
                level.trans[idx].mul_into(s, &mut scratch);
                let g = &scratch * &level.trans_inv[level.pos[gamma as usize] as usize];
                self.levels[i].checked[idx] += 1;
                if g.is_identity() {
                    continue;
                }
                let (h, j) = self.strip(g, i + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it went all the way).
    fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        let mut scratch = Permutation::identity(self.degree);
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let b = g.image(level.base);
            let idx = level.pos[b as usize];
            if idx == ABSENT {
                return (g, l);
            }
            if idx != 0 {
                g.mul_into(&level.trans_inv[idx as usize], &mut scratch);
                std::mem::swap(&mut g, &mut scratch);
            }
        }
        (g, self.levels.len())
    }

    /// Adds a generator, continuing Schreier–Sims from the existing chain.
    pub fn extend(&mut self, g: Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: g.degree(),
            });
        }
        let (h, j) = self.strip(g.clone(), 0);
        if j == self.levels.len() && h.is_identity() {
            return Ok(false);
        }
        self.generators.push(g);
        if j == self.levels.len() {
            let b = h.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in 0..=j {
            self.levels[l].gens.push(h.clone());
            self.levels[l].extend_orbit();
        }
        self.complete_from(j as isize)?;
        Ok(true)
    }

    /// The group generated by `self` and `extra`.
    pub fn join_with(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut out = self.clone();
        for g in extra {
            out.extend(g.clone())?;
        }
        Ok(out)
    }

    /// A subgroup sharing this group's degree and limits.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::with_limits(self.degree, gens, self.limits)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn set_limits(&mut self, limits: Limits) {
        self.limits = limits;
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Fundamental orbit lengths along the chain.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Position of `g` in the canonical element order, or `None` for non-members.
    pub fn rank(&self, g: &Permutation) -> Option<u64> {
        let mut rank: u64 = 0;
        let mut radix: u64 = 1;
        let mut g = g.clone();
        let mut scratch = Permutation::identity(self.degree);
        for level in &self.levels {
            let idx = level.pos[g.image(level.base) as usize];
            if idx == ABSENT {
                return None;
            }
            rank += idx as u64 * radix;
            radix *= level.orbit.len() as u64;
            if idx != 0 {
                g.mul_into(&level.trans_inv[idx as usize], &mut scratch);
                std::mem::swap(&mut g, &mut scratch);
            }
        }
        g.is_identity().then_some(rank)
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn element_at(&self, mut rank: u64) -> Permutation {
        let mut idxs = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let n = level.orbit.len() as u64;
            idxs.push((rank % n) as usize);
            rank /= n;
        }
        let mut g = self.identity();
        for (level, &idx) in self.levels.iter().zip(&idxs).rev() {
            g = &g * &level.trans[idx];
        }
        g
    }

    pub fn check_enumerable(&self) -> Result<()> {
        Limits::check(
            "group order for enumeration",
            self.order,
            self.limits.enumeration_order as u128,
        )
    }

    /// Visits every element exactly once, in increasing rank.
    pub fn for_each_element<F: FnMut(u64, &Permutation)>(&self, mut f: F) -> Result<()> {
        self.check_enumerable()?;
        let k = self.levels.len();
        if k == 0 {
            f(0, &self.identity());
            return Ok(());
        }
        let mut radix = vec![1u64; k];
        for l in 1..k {
            radix[l] = radix[l - 1] * self.levels[l - 1].orbit.len() as u64;
        }
        // partial[d] = product of chosen transversals for levels k-1 down to k-d
        let mut partial: Vec<Permutation> = (0..=k).map(|_| self.identity()).collect();
        let mut idx = vec![0usize; k];
        let mut depth = 0usize;
        loop {
            if depth == k {
                let rank: u64 = (0..k).map(|l| idx[l] as u64 * radix[l]).sum();
                f(rank, &partial[k]);
                // backtrack
                loop {
                    if depth == 0 {
                        return Ok(());
                    }
                    depth -= 1;
                    let l = k - 1 - depth;
                    idx[l] += 1;
                    if idx[l] < self.levels[l].orbit.len() {
                        break;
                    }
                    idx[l] = 0;
                }
            }
            let l = k - 1 - depth;
            let (head, tail) = partial.split_at_mut(depth + 1);
            head[depth].mul_into(&self.levels[l].trans[idx[l]], &mut tail[0]);
            depth += 1;
        }
    }

    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let mut out = Vec::with_capacity(self.order.min(1 << 20) as usize);
        self.for_each_element(|_, g| out.push(g.clone()))?;
        Ok(out)
    }

    /// A uniformly random element (one random coset representative per level).
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity();
        for level in self.levels.iter().rev() {
            let idx = rng.gen_range(0..level.orbit.len());
            g = &g * &level.trans[idx];
        }
        g
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[point as usize] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let y = g.image(out[i]);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// Orbit label for every point; labels count up from 0 in order of the
    /// smallest point of each orbit.
    pub fn orbit_labels(&self) -> (Vec<u32>, Vec<u32>) {
        let mut label = vec![ABSENT; self.degree];
        let mut sizes = Vec::new();
        for start in 0..self.degree {
            if label[start] != ABSENT {
                continue;
            }
            let id = sizes.len() as u32;
            label[start] = id;
            let mut stack = vec![start as u32];
            let mut size = 0u32;
            while let Some(x) = stack.pop() {
                size += 1;
                for g in &self.generators {
                    let y = g.image(x) as usize;
                    if label[y] == ABSENT {
                        label[y] = id;
                        stack.push(y as u32);
                    }
                }
            }
            sizes.push(size);
        }
        (label, sizes)
    }

    /// The pointwise stabilizer of `points`, read off a chain whose base
    /// starts with them.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Result<PermGroup> {
        let rebased = PermGroup::with_base(
            self.degree,
            self.strong_generators().to_vec(),
            points,
            self.limits,
        )?;
        let mut distinct = Vec::new();
        for &p in points {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        let m = distinct.len().min(rebased.levels.len());
        debug_assert!(rebased.levels[..m]
            .iter()
            .zip(&distinct)
            .all(|(l, &p)| l.base == p));
        let levels: Vec<Level> = rebased.levels[m..].to_vec();
        let generators = levels.first().map(|l| l.gens.clone()).unwrap_or_default();
        let order = levels.iter().map(|l| l.orbit.len() as u128).product();
        Ok(PermGroup {
            degree: self.degree,
            generators,
            levels,
            order,
            limits: self.limits,
        })
    }

    /// The regular representation: action of the group on its own elements
    /// (indexed by rank) by right multiplication.
    pub fn regular_representation(&self) -> Result<PermGroup> {
        self.check_enumerable()?;
        let n = self.order as usize;
        Limits::check("degree", n as u128, self.limits.degree as u128)?;
        let elements = self.elements()?;
        let mut ranked = vec![self.identity(); n];
        for e in elements {
            let r = self.rank(&e).expect("member") as usize;
            ranked[r] = e;
        }
        let gens = self
            .generators
            .iter()
            .map(|s| {
                let images = ranked
                    .iter()
                    .map(|e| self.rank(&(e * s)).expect("closed") as u32)
                    .collect();
                Permutation::from_images_unchecked(images)
            })
            .collect();
        PermGroup::with_limits(n, gens, self.limits)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens {:?})",
            self.degree, self.order, self.generators
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::from_cycles(n, s).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::new(4, vec![perm(4, "(0 1)"), perm(4, "(0 1 2 3)")]).unwrap()
    }

    /// Closure oracle: multiply until nothing new appears.
    fn brute_force_order(n: usize, gens: &[Permutation]) -> usize {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut frontier = vec![Permutation::identity(n)];
        seen.insert(Permutation::identity(n));
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = &x * g;
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn symmetric_group_order() {
        assert_eq!(s4().order(), 24);
        let s7 = PermGroup::new(7, vec![perm(7, "(0 1)"), perm(7, "(0 1 2 3 4 5 6)")]).unwrap();
        assert_eq!(s7.order(), 5040);
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(5, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.elements().unwrap(), vec![Permutation::identity(5)]);
        assert!(g.contains(&Permutation::identity(5)));
        assert!(!g.contains(&perm(5, "(0 1)")));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let err = PermGroup::new(4, vec![perm(3, "(0 1)")]).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { expected: 4, got: 3 });
    }

    #[test]
    fn degree_cap_enforced() {
        let limits = Limits {
            degree: 8,
            ..Limits::default()
        };
        assert!(matches!(
            PermGroup::with_limits(9, vec![], limits),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn membership_soundness() {
        let a4 = PermGroup::new(4, vec![perm(4, "(0 1 2)"), perm(4, "(1 2 3)")]).unwrap();
        assert_eq!(a4.order(), 12);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let mut g = Permutation::identity(4);
            for _ in 0..rng.gen_range(1..10) {
                g = &g * &a4.generators()[rng.gen_range(0..2)];
            }
            assert!(a4.contains(&g));
        }
        assert!(!a4.contains(&perm(4, "(0 1)")));
    }

    #[test]
    fn ranks_are_a_bijection() {
        let g = s4();
        let mut seen = vec![false; 24];
        g.for_each_element(|r, e| {
            assert_eq!(g.rank(e), Some(r));
            assert_eq!(&g.element_at(r), e);
            assert!(!seen[r as usize]);
            seen[r as usize] = true;
        })
        .unwrap();
        assert!(seen.iter().all(|&s| s));
        assert_eq!(g.element_at(0), Permutation::identity(4));
    }

    #[test]
    fn enumeration_cap() {
        let mut g = s4();
        g.set_limits(Limits {
            enumeration_order: 10,
            ..Limits::default()
        });
        assert!(matches!(g.elements(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn orders_match_closure_oracle() {
        let cases: Vec<(usize, Vec<&str>)> = vec![
            (6, vec!["(0 1 2)(3 4 5)", "(0 3)(1 4)(2 5)"]),
            (8, vec!["(0 1 2 3)(4 5 6 7)", "(0 4)(1 7)(2 6)(3 5)"]),
            (9, vec!["(0 1 2)", "(3 4 5)", "(0 3 6)(1 4 7)(2 5 8)"]),
            (8, vec!["(0 1)(2 3)", "(4 5)(6 7)", "(0 4)(1 5)(2 6)(3 7)", "(0 2)(1 3)"]),
        ];
        for (n, gens) in cases {
            let gens: Vec<_> = gens.iter().map(|s| perm(n, s)).collect();
            let g = PermGroup::new(n, gens.clone()).unwrap();
            assert_eq!(g.order() as usize, brute_force_order(n, &gens));
            assert_eq!(g.elements().unwrap().iter().collect::<HashSet<_>>().len(), g.order() as usize);
        }
    }

    #[test]
    fn incremental_extension_matches_rebuild() {
        let mut g = PermGroup::new(6, vec![perm(6, "(0 1 2)")]).unwrap();
        assert!(g.extend(perm(6, "(2 3 4 5)")).unwrap());
        assert!(!g.extend(perm(6, "(0 1 2)")).unwrap());
        let h = PermGroup::new(6, vec![perm(6, "(0 1 2)"), perm(6, "(2 3 4 5)")]).unwrap();
        assert_eq!(g.order(), h.order());
        assert_eq!(g.order(), 720);
    }

    #[test]
    fn point_stabilizer_of_s4() {
        let g = s4();
        let st = g.pointwise_stabilizer(&[0]).unwrap();
        assert_eq!(st.order(), 6);
        assert!(st.generators().iter().all(|x| x.image(0) == 0));
        let st2 = g.pointwise_stabilizer(&[0, 1]).unwrap();
        assert_eq!(st2.order(), 2);
        assert_eq!(g.pointwise_stabilizer(&[0, 1, 2]).unwrap().order(), 1);
    }

    #[test]
    fn random_elements_are_members() {
        let g = s4();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            assert!(g.contains(&g.random_element(&mut rng)));
        }
    }

    #[test]
    fn regular_representation_has_same_order() {
        let g = s4();
        let r = g.regular_representation().unwrap();
        assert_eq!(r.degree(), 24);
        assert_eq!(r.order(), 24);
    }

    #[test]
    fn orbit_labels_partition() {
        let g = PermGroup::new(6, vec![perm(6, "(0 1)(2 3)"), perm(6, "(1 2)")]).unwrap();
        let (labels, sizes) = g.orbit_labels();
        assert_eq!(labels, vec![0, 0, 0, 0, 1, 2]);
        assert_eq!(sizes, vec![4, 1, 1]);
    }
}
