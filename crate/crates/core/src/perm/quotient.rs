use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::ops::is_normal;
use crate::perm::{PermGroup, Permutation};

/// `G/N` realised as the action of `G` on the right cosets of `N`.
///
/// Coset 0 is `N` itself; coset `c` has representative `coset_reps[c]`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: PermGroup,
    pub coset_reps: Vec<Permutation>,
    coset_of_rank: Vec<u32>,
    /// Image of each generator of the parent, in order.
    pub generator_images: Vec<Permutation>,
}

pub fn quotient_rep(group: &PermGroup, normal: &PermGroup) -> Result<Quotient> {
    if !is_normal(group, normal) {
        return Err(Error::NotNormal);
    }
    let index = group.order() / normal.order();
    Limits::check("quotient index", index, group.limits().degree as u128)?;
    group.check_enumerable()?;
    let n_elems = normal.elements()?;
    let mut coset_of_rank = vec![u32::MAX; group.order() as usize];
    let mut coset_reps = Vec::with_capacity(index as usize);
    for r in 0..group.order() as u64 {
        if coset_of_rank[r as usize] != u32::MAX {
            continue;
        }
        let x = group.element_at(r);
        let c = coset_reps.len() as u32;
        for n in &n_elems {
            let rr = group.rank(&(n * &x)).expect("closed") as usize;
            coset_of_rank[rr] = c;
        }
        coset_reps.push(x);
    }
    debug_assert_eq!(coset_reps.len() as u128, index);
    let generator_images: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|s| {
            let images = coset_reps
                .iter()
                .map(|x| coset_of_rank[group.rank(&(x * s)).expect("closed") as usize])
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    let qgroup = PermGroup::with_limits(
        coset_reps.len(),
        generator_images.clone(),
        *group.limits(),
    )?;
    Ok(Quotient {
        group: qgroup,
        coset_reps,
        coset_of_rank,
        generator_images,
    })
}

impl Quotient {
    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    /// Coset of a parent element.
    pub fn coset_of(&self, parent: &PermGroup, g: &Permutation) -> Option<usize> {
        parent
            .rank(g)
            .map(|r| self.coset_of_rank[r as usize] as usize)
    }

    /// Image of a parent element in the coset action.
    pub fn image(&self, parent: &PermGroup, g: &Permutation) -> Option<Permutation> {
        parent.rank(g)?;
        let images = self
            .coset_reps
            .iter()
            .map(|x| self.coset_of(parent, &(x * g)).expect("closed") as u32)
            .collect();
        Some(Permutation::from_images_unchecked(images))
    }

    /// Some parent element mapping to `q`: the representative of the coset `0^q`.
    pub fn lift(&self, q: &Permutation) -> Permutation {
        self.coset_reps[q.image(0) as usize].clone()
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, normal: &PermGroup, sub: &PermGroup) -> Result<PermGroup> {
        let mut gens = normal.generators().to_vec();
        gens.extend(sub.generators().iter().map(|q| self.lift(q)));
        normal.subgroup(gens)
    }
}
