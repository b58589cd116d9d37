//! Pair existence and the small-centralizer lemma.
//!
//! Both scan `V ⊕ V` with `v₂` as the outer loop: for fixed `v₂` the joint
//! centralizer of `(v₁, v₂)` is the stabilizer of `v₁` in `C(v₂)`, so one
//! orbit labelling of `C(v₂)` on `V` settles every `v₁`.

use serde::Serialize;

use crate::error::Result;
use crate::linear::{check_hypotheses_with, HypothesisReport, MatrixGroup, Mode};
use crate::orbits::census::{check_subgroup, pair_qualifies, Witness};
use crate::perm::{intersection, PermGroup};
use crate::pi::PiSet;
use crate::radicals::o_pi;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub pi: PiSet,
    pub h_order: u128,
    pub o_pi_order: u128,
    /// First qualifying pair in encoding order.
    pub witness: Option<Witness>,
    pub hypothesis: HypothesisReport,
}

/// Finds `(v₁, v₂)` with `C_H(v₁) ∩ C_H(v₂) ≤ O_π(G)`, scanning in pair order.
pub fn pair_exists(m: &MatrixGroup, h: &PermGroup, pi: &PiSet, mode: Mode) -> Result<PairReport> {
    let core = o_pi(&m.perm_image()?.group, pi)?;
    let hypothesis = check_hypotheses_with(m, &core, pi, mode)?;
    pair_exists_with(m, h, &core, hypothesis, pi)
}

pub fn pair_exists_with(
    m: &MatrixGroup,
    h: &PermGroup,
    core: &PermGroup,
    hypothesis: HypothesisReport,
    pi: &PiSet,
) -> Result<PairReport> {
    check_subgroup(m, h)?;
    let ho = intersection(h, core)?;
    let n = h.degree();
    let mut witness = None;
    for v2 in 0..n as u32 {
        let s = h.pointwise_stabilizer(&[v2])?;
        let so = ho.pointwise_stabilizer(&[v2])?;
        let (s_labels, s_sizes) = s.orbit_labels();
        let (so_labels, so_sizes) = so.orbit_labels();
        let found = (0..n).find(|&v1| {
            let a = s_sizes[s_labels[v1] as usize] as u128;
            let b = so_sizes[so_labels[v1] as usize] as u128;
            s.order() * b == so.order() * a
        });
        if let Some(v1) = found {
            debug_assert!(pair_qualifies(h, core, v1 as u32, v2)?);
            let joint = s.order() / s_sizes[s_labels[v1] as usize] as u128;
            let space = m.space();
            witness = Some(Witness {
                pair: v1 as u64 + n as u64 * v2 as u64,
                v1: v1 as u64,
                v2: v2 as u64,
                v1_coords: space.decode(v1 as u64),
                v2_coords: space.decode(v2 as u64),
                joint_centralizer_order: joint,
            });
            break;
        }
    }
    Ok(PairReport {
        pi: pi.clone(),
        h_order: h.order(),
        o_pi_order: core.order(),
        witness,
        hypothesis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub group_order: u128,
    pub regular_orbit_exists: bool,
    /// First pair with trivial joint stabilizer, as `(v₁, v₂)`.
    pub regular_pair: Option<(u64, u64)>,
    /// A point `v` with `|C(v)|² ≤ |G|`.
    pub witness: Option<u64>,
    pub centralizer_order: Option<u128>,
    /// `regular_orbit_exists ⇒ witness found`.
    pub holds: bool,
}

/// For `group` acting on points: if it has a regular orbit on pairs, find a
/// point whose stabilizer has order at most `√|G|`.
pub fn regular_orbit_small_centralizer(group: &PermGroup) -> Result<LemmaReport> {
    let n = group.degree();
    let order = group.order();
    let mut regular_pair = None;
    for v2 in 0..n as u32 {
        let s = group.pointwise_stabilizer(&[v2])?;
        let (labels, sizes) = s.orbit_labels();
        if let Some(v1) = (0..n).find(|&v1| sizes[labels[v1] as usize] as u128 == s.order()) {
            regular_pair = Some((v1 as u64, v2 as u64));
            break;
        }
    }
    let stabilizer_order = |v: u64| order / group.orbit(v as u32).len() as u128;
    let small = |v: u64| {
        let c = stabilizer_order(v);
        c * c <= order
    };
    let mut witness = None;
    if let Some((v1, v2)) = regular_pair {
        witness = [v1, v2].into_iter().find(|&v| small(v));
        if witness.is_none() {
            witness = (0..n as u64).find(|&v| small(v));
        }
    }
    let regular_orbit_exists = regular_pair.is_some();
    Ok(LemmaReport {
        group_order: order,
        regular_orbit_exists,
        regular_pair,
        witness,
        centralizer_order: witness.map(stabilizer_order),
        holds: !regular_orbit_exists || witness.is_some(),
    })
}

/// The lemma for the whole matrix group acting on `V`.
pub fn regular_orbit_small_centralizer_for(m: &MatrixGroup) -> Result<LemmaReport> {
    regular_orbit_small_centralizer(&m.perm_image()?.group)
}
