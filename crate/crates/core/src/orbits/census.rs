//! Qualifying orbits on `V ⊕ V`.
//!
//! A pair `(v₁, v₂)` is stored as `v₁ + n·v₂`. Its joint centralizer in `H`
//! has order `|H| / |H-orbit|`, and that centralizer lies in `O = O_π(G)`
//! exactly when it equals its intersection with `O`, i.e. when
//! `|H|·|(H∩O)-orbit| = |H∩O|·|H-orbit|`. One labelling pass per group
//! therefore decides every point at once.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linear::{check_hypotheses_with, HypothesisReport, MatrixGroup, Mode, Vector};
use crate::perm::{intersection, PermGroup, Permutation};
use crate::pi::PiSet;
use crate::radicals::o_pi;

/// At most this many witnesses are listed in a report; counts stay exact.
pub const WITNESS_LIMIT: usize = 64;

/// Which group's orbits are counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    #[default]
    H,
    G,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::H => "H",
            Unit::G => "G",
        })
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "H" | "h" => Ok(Unit::H),
            "G" | "g" => Ok(Unit::G),
            other => Err(Error::InvalidParameters(format!("unit must be H or G, got {other:?}"))),
        }
    }
}

/// The orbit threshold of the theorem: 5 when 3 ∈ π, else 3.
pub fn threshold(pi: &PiSet) -> u64 {
    if pi.contains(3) {
        5
    } else {
        3
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub pair: u64,
    pub v1: u64,
    pub v2: u64,
    pub v1_coords: Vector,
    pub v2_coords: Vector,
    /// `|C_H(v₁) ∩ C_H(v₂)|`.
    pub joint_centralizer_order: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnitCount {
    pub total: u64,
    pub qualifying: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub unit: Unit,
    pub pi: PiSet,
    /// `|V ⊕ V|`.
    pub points: u64,
    pub h_order: u128,
    pub o_pi_order: u128,
    pub total_orbits: u64,
    pub qualifying: u64,
    pub threshold: u64,
    pub threshold_met: bool,
    pub h_orbits: UnitCount,
    pub g_orbits: UnitCount,
    /// First qualifying point of each qualifying orbit, in orbit order.
    pub witnesses: Vec<Witness>,
    /// Minimum joint centralizer order over the points of each listed orbit.
    pub joint_centralizer_orders: Vec<u128>,
    pub hypothesis: HypothesisReport,
    pub warnings: Vec<String>,
}

/// Orbit labels of a group on pairs, numbered by smallest pair index.
pub(crate) fn pair_orbits(n: usize, gens: &[&[u32]]) -> (Vec<u32>, Vec<u32>) {
    const NONE: u32 = u32::MAX;
    let total = n * n;
    let mut labels = vec![NONE; total];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..total {
        if labels[start] != NONE {
            continue;
        }
        let id = sizes.len() as u32;
        labels[start] = id;
        stack.push(start);
        let mut size = 0u32;
        while let Some(x) = stack.pop() {
            size += 1;
            let (a, b) = (x % n, x / n);
            for g in gens {
                let y = g[a] as usize + n * g[b] as usize;
                if labels[y] == NONE {
                    labels[y] = id;
                    stack.push(y);
                }
            }
        }
        sizes.push(size);
    }
    (labels, sizes)
}

fn image_tables(group: &PermGroup) -> Vec<&[u32]> {
    group
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .map(Permutation::images)
        .collect()
}

/// Per-point qualification data for one `(H, O_π(G))`.
pub(crate) struct Census {
    n: usize,
    h_order: u128,
    ho_order: u128,
    h_labels: Vec<u32>,
    h_sizes: Vec<u32>,
    ho: Option<(Vec<u32>, Vec<u32>)>,
}

impl Census {
    pub(crate) fn new(h: &PermGroup, core: &PermGroup) -> Result<Self> {
        let n = h.degree();
        let (h_labels, h_sizes) = pair_orbits(n, &image_tables(h));
        let ho = intersection(h, core)?;
        let ho_labels = if ho.order() == h.order() {
            None
        } else {
            Some(pair_orbits(n, &image_tables(&ho)))
        };
        Ok(Census {
            n,
            h_order: h.order(),
            ho_order: ho.order(),
            h_labels,
            h_sizes,
            ho: ho_labels,
        })
    }

    pub(crate) fn qualifies(&self, pair: usize) -> bool {
        match &self.ho {
            None => true,
            Some((labels, sizes)) => {
                let h_orbit = self.h_sizes[self.h_labels[pair] as usize] as u128;
                let ho_orbit = sizes[labels[pair] as usize] as u128;
                self.h_order * ho_orbit == self.ho_order * h_orbit
            }
        }
    }

    pub(crate) fn joint_centralizer_order(&self, pair: usize) -> u128 {
        self.h_order / self.h_sizes[self.h_labels[pair] as usize] as u128
    }

    pub(crate) fn h_orbit_count(&self) -> usize {
        self.h_sizes.len()
    }

    pub(crate) fn h_label(&self, pair: usize) -> usize {
        self.h_labels[pair] as usize
    }

    pub(crate) fn points(&self) -> usize {
        self.n * self.n
    }
}

/// Independent re-check of one pair through a pointwise stabilizer chain.
pub fn pair_qualifies(h: &PermGroup, core: &PermGroup, v1: u32, v2: u32) -> Result<bool> {
    let joint = h.pointwise_stabilizer(&[v1, v2])?;
    Ok(joint.generators().iter().all(|g| core.contains(g)))
}

pub(crate) fn check_subgroup(m: &MatrixGroup, h: &PermGroup) -> Result<()> {
    let image = &m.perm_image()?.group;
    if h.degree() != image.degree() || !h.is_subgroup_of(image) {
        return Err(Error::NotInGroup("H is not a subgroup of the matrix group".into()));
    }
    let pairs = (image.degree() as u128).pow(2);
    Limits::check("points of V+V", pairs, m.limits().orbit_points as u128)
}

/// Counts qualifying orbits of `unit` on `V ⊕ V` for `H ≤ G`.
pub fn qualifying_orbits(m: &MatrixGroup, h: &PermGroup, pi: &PiSet, unit: Unit, mode: Mode) -> Result<OrbitReport> {
    let core = o_pi(&m.perm_image()?.group, pi)?;
    let hypothesis = check_hypotheses_with(m, &core, pi, mode)?;
    qualifying_orbits_with(m, h, &core, hypothesis, pi, unit)
}

/// As [`qualifying_orbits`], with `O_π(G)` and the hypothesis report supplied.
pub fn qualifying_orbits_with(
    m: &MatrixGroup,
    h: &PermGroup,
    core: &PermGroup,
    hypothesis: HypothesisReport,
    pi: &PiSet,
    unit: Unit,
) -> Result<OrbitReport> {
    check_subgroup(m, h)?;
    let image = &m.perm_image()?.group;
    let n = image.degree();
    let mut warnings = Vec::new();
    if !pi.is_pi_number(h.order()) {
        warnings.push(format!("|H| = {} is not a {{{pi}}}-number", h.order()));
    }
    let census = Census::new(h, core)?;
    let points = census.points();

    // H-orbits: qualification is constant on each
    let h_total = census.h_orbit_count();
    let mut h_rep = vec![usize::MAX; h_total];
    for pair in 0..points {
        let l = census.h_label(pair);
        if h_rep[l] == usize::MAX {
            h_rep[l] = pair;
        }
    }
    let h_qualifying: Vec<usize> = (0..h_total).filter(|&l| census.qualifies(h_rep[l])).collect();

    // G-orbits: a G-orbit qualifies when any of its points does
    let (g_labels, g_sizes) = pair_orbits(n, &image_tables(image));
    let g_total = g_sizes.len();
    let mut g_first = vec![usize::MAX; g_total];
    let mut g_min = vec![u128::MAX; g_total];
    for pair in 0..points {
        if census.qualifies(pair) {
            let l = g_labels[pair] as usize;
            if g_first[l] == usize::MAX {
                g_first[l] = pair;
            }
            g_min[l] = g_min[l].min(census.joint_centralizer_order(pair));
        }
    }
    let g_qualifying: Vec<usize> = (0..g_total).filter(|&l| g_first[l] != usize::MAX).collect();

    let (total, listed): (usize, Vec<(usize, u128)>) = match unit {
        Unit::H => (
            h_total,
            h_qualifying
                .iter()
                .map(|&l| (h_rep[l], census.joint_centralizer_order(h_rep[l])))
                .collect(),
        ),
        Unit::G => (
            g_total,
            g_qualifying.iter().map(|&l| (g_first[l], g_min[l])).collect(),
        ),
    };
    let qualifying = listed.len() as u64;
    let space = m.space();
    let mut witnesses = Vec::new();
    let mut joint_centralizer_orders = Vec::new();
    for &(pair, min_order) in listed.iter().take(WITNESS_LIMIT) {
        let (v1, v2) = ((pair % n) as u64, (pair / n) as u64);
        if !pair_qualifies(h, core, v1 as u32, v2 as u32)? {
            return Err(Error::Internal(format!("witness {pair} fails the stabilizer re-check")));
        }
        witnesses.push(Witness {
            pair: pair as u64,
            v1,
            v2,
            v1_coords: space.decode(v1),
            v2_coords: space.decode(v2),
            joint_centralizer_order: census.joint_centralizer_order(pair),
        });
        joint_centralizer_orders.push(min_order);
    }
    let t = threshold(pi);
    Ok(OrbitReport {
        unit,
        pi: pi.clone(),
        points: points as u64,
        h_order: h.order(),
        o_pi_order: core.order(),
        total_orbits: total as u64,
        qualifying,
        threshold: t,
        threshold_met: qualifying >= t,
        h_orbits: UnitCount {
            total: h_total as u64,
            qualifying: h_qualifying.len() as u64,
        },
        g_orbits: UnitCount {
            total: g_total as u64,
            qualifying: g_qualifying.len() as u64,
        },
        witnesses,
        joint_centralizer_orders,
        hypothesis,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::radicals::hall_subgroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pi(s: &str) -> PiSet {
        s.parse().unwrap()
    }

    fn gl23() -> MatrixGroup {
        MatrixGroup::general_linear(make_field(3, 1).unwrap(), 2, Limits::default()).unwrap()
    }

    /// Oracle: brute-force joint centralizers by enumerating H.
    fn brute_force(m: &MatrixGroup, h: &PermGroup, core: &PermGroup, unit: Unit) -> u64 {
        let n = m.space().points() as usize;
        let elements = h.elements().unwrap();
        let qualifies = |v1: usize, v2: usize| {
            elements
                .iter()
                .filter(|x| x.image(v1 as u32) == v1 as u32 && x.image(v2 as u32) == v2 as u32)
                .all(|x| core.contains(x))
        };
        let group = match unit {
            Unit::H => h.clone(),
            Unit::G => m.perm_image().unwrap().group.clone(),
        };
        let members = group.elements().unwrap();
        let mut seen = vec![false; n * n];
        let mut count = 0;
        for start in 0..n * n {
            if seen[start] {
                continue;
            }
            let mut any = false;
            for x in &members {
                let (a, b) = (x.image((start % n) as u32) as usize, x.image((start / n) as u32) as usize);
                let p = a + n * b;
                if !seen[p] {
                    seen[p] = true;
                    any |= qualifies(a, b);
                }
            }
            count += any as u64;
        }
        count
    }

    #[test]
    fn gl23_exceptional_case() {
        let g = gl23();
        let img = &g.perm_image().unwrap().group;
        let h = hall_subgroup(img, &pi("2"), 0).unwrap();
        assert_eq!(h.order(), 16);
        let r = qualifying_orbits(&g, &h, &pi("2"), Unit::H, Mode::Lenient).unwrap();
        assert_eq!(r.qualifying, 3);
        assert_eq!(r.threshold, 3);
        assert!(r.threshold_met);
        assert!(r.hypothesis.eligible);
        assert_eq!(r.points, 81);
        // the three qualifying H-orbits are regular
        assert!(r.joint_centralizer_orders.iter().all(|&o| o == 1));
        let core = o_pi(img, &pi("2")).unwrap();
        assert_eq!(brute_force(&g, &h, &core, Unit::H), 3);

        let r = qualifying_orbits(&g, &h, &pi("2"), Unit::G, Mode::Lenient).unwrap();
        assert_eq!(r.qualifying, 1);
        assert_eq!(r.h_orbits.qualifying, 3);
        assert_eq!(brute_force(&g, &h, &core, Unit::G), 1);
        assert!(!qualifying_orbits(&g, &h, &pi("2"), Unit::H, Mode::Strict).unwrap().hypothesis.eligible);
    }

    #[test]
    fn h_inside_core_qualifies_everywhere() {
        let g = gl23();
        let img = &g.perm_image().unwrap().group;
        let q8 = o_pi(img, &pi("2")).unwrap();
        let r = qualifying_orbits(&g, &q8, &pi("2"), Unit::H, Mode::Lenient).unwrap();
        assert_eq!(r.qualifying, r.total_orbits);
        // Q8 is regular on non-zero vectors: (0,0), (v,0), (0,v), then 64/8
        assert_eq!(r.total_orbits, 1 + 1 + 1 + 8);
    }

    #[test]
    fn orbit_sizes_partition_the_pairs() {
        let g = MatrixGroup::semilinear(2, 4, Limits::default()).unwrap();
        let img = &g.perm_image().unwrap().group;
        let n = img.degree();
        let (_, sizes) = pair_orbits(n, &image_tables(img));
        assert_eq!(sizes.iter().map(|&s| s as usize).sum::<usize>(), n * n);
        assert!(sizes.iter().all(|&s| img.order() % s as u128 == 0));
    }

    #[test]
    fn qualification_is_constant_on_h_orbits_and_translation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (g, p) in [
            (gl23(), "2"),
            (gl23(), "3"),
            (MatrixGroup::semilinear(2, 4, Limits::default()).unwrap(), "2"),
            (MatrixGroup::semilinear(3, 2, Limits::default()).unwrap(), "2"),
        ] {
            let img = &g.perm_image().unwrap().group;
            let h = hall_subgroup(img, &pi(p), 0).unwrap();
            let core = o_pi(img, &pi(p)).unwrap();
            let census = Census::new(&h, &core).unwrap();
            let n = img.degree();
            let mut by_label: Vec<Option<bool>> = vec![None; census.h_orbit_count()];
            for pair in 0..n * n {
                let q = census.qualifies(pair);
                let l = census.h_label(pair);
                assert_eq!(*by_label[l].get_or_insert(q), q);
                if pair % 7 == 0 {
                    assert_eq!(q, pair_qualifies(&h, &core, (pair % n) as u32, (pair / n) as u32).unwrap());
                }
            }
            let r = qualifying_orbits(&g, &h, &pi(p), Unit::H, Mode::Lenient).unwrap();
            for w in &r.witnesses {
                for _ in 0..4 {
                    let x = h.random_element(&mut rng);
                    let (a, b) = (x.image(w.v1 as u32), x.image(w.v2 as u32));
                    assert!(pair_qualifies(&h, &core, a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn unit_consistency() {
        for (g, p) in [
            (gl23(), "2"),
            (MatrixGroup::semilinear(2, 4, Limits::default()).unwrap(), "2"),
            (MatrixGroup::semilinear(2, 3, Limits::default()).unwrap(), "3"),
        ] {
            let img = &g.perm_image().unwrap().group;
            let h = hall_subgroup(img, &pi(p), 0).unwrap();
            let hr = qualifying_orbits(&g, &h, &pi(p), Unit::H, Mode::Lenient).unwrap();
            let gr = qualifying_orbits(&g, &h, &pi(p), Unit::G, Mode::Lenient).unwrap();
            assert!(gr.qualifying <= hr.qualifying);
            assert_eq!(gr.h_orbits, hr.h_orbits);
            assert_eq!(gr.g_orbits, hr.g_orbits);
            // every G-witness also witnesses a qualifying H-orbit
            let core = o_pi(img, &pi(p)).unwrap();
            for w in &gr.witnesses {
                assert!(pair_qualifies(&h, &core, w.v1 as u32, w.v2 as u32).unwrap());
            }
        }
    }

    #[test]
    fn gamma_8_galois_subgroup() {
        let g = MatrixGroup::semilinear(2, 3, Limits::default()).unwrap();
        let img = g.perm_image().unwrap();
        let galois = img.group.subgroup(vec![img.generators[1].clone()]).unwrap();
        assert_eq!(galois.order(), 3);
        let r = qualifying_orbits(&g, &galois, &pi("2,3"), Unit::H, Mode::Strict).unwrap();
        assert_eq!(r.o_pi_order, 1);
        assert_eq!(r.qualifying, 20);
        assert!(r.threshold_met);
        assert!(r.hypothesis.eligible);
    }

    #[test]
    fn rejects_foreign_h() {
        let sl = MatrixGroup::special_linear(make_field(3, 1).unwrap(), 2, Limits::default()).unwrap();
        let g = gl23();
        let h = hall_subgroup(&g.perm_image().unwrap().group, &pi("2"), 0).unwrap();
        assert!(matches!(
            qualifying_orbits(&sl, &h, &pi("2"), Unit::H, Mode::Lenient),
            Err(Error::NotInGroup(_))
        ));
    }

    #[test]
    fn unit_parsing() {
        assert_eq!("g".parse::<Unit>().unwrap(), Unit::G);
        assert_eq!(Unit::H.to_string(), "H");
        assert!("K".parse::<Unit>().is_err());
        assert_eq!(threshold(&pi("2,3")), 5);
        assert_eq!(threshold(&pi("2,5")), 3);
    }
}
