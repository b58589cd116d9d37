//! Subgroup constructions: stabilizers, centralizers, intersections, normal
//! closures and the derived series.

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// What a stabilizer or centralizer is taken of.
#[derive(Clone, Debug)]
pub enum Target<'a> {
    Point(u32),
    Element(&'a Permutation),
    Subgroup(&'a PermGroup),
}

pub fn stabilizer_and_centralizer(group: &PermGroup, target: Target<'_>) -> Result<PermGroup> {
    match target {
        Target::Point(p) => {
            if p as usize >= group.degree() {
                return Err(Error::InvalidParameters(format!("point {p} outside degree")));
            }
            group.pointwise_stabilizer(&[p])
        }
        Target::Element(x) => centralizer(group, std::slice::from_ref(x)),
        Target::Subgroup(h) => centralizer(group, h.generators()),
    }
}

/// Elements of `group` commuting with every element of `xs`.
pub fn centralizer(group: &PermGroup, xs: &[Permutation]) -> Result<PermGroup> {
    subgroup_by_filter(group, |g| xs.iter().all(|x| &(g * x) == &(x * g)))
}

/// The subgroup generated by all elements satisfying `pred`; `pred` must
/// describe a subgroup for the result to be meaningful.
pub fn subgroup_by_filter<F: Fn(&Permutation) -> bool>(group: &PermGroup, pred: F) -> Result<PermGroup> {
    group.check_enumerable()?;
    let mut sub = group.subgroup(Vec::new())?;
    let mut err = None;
    group.for_each_element(|_, g| {
        if err.is_none() && pred(g) && !sub.contains(g) {
            if let Err(e) = sub.extend(g.clone()) {
                err = Some(e);
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(sub),
    }
}

pub fn intersection(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    subgroup_by_filter(small, |g| large.contains(g))
}

/// The smallest normal subgroup of `group` containing `elements`.
pub fn normal_closure(group: &PermGroup, elements: &[Permutation]) -> Result<PermGroup> {
    for x in elements {
        if !group.contains(x) {
            return Err(Error::NotInGroup(x.to_string()));
        }
    }
    closure_under_conjugation(group, group.subgroup(elements.to_vec())?)
}

fn closure_under_conjugation(group: &PermGroup, mut sub: PermGroup) -> Result<PermGroup> {
    let mut i = 0;
    while i < sub.generators().len() {
        let x = sub.generators()[i].clone();
        for s in group.generators() {
            let c = x.conjugate(s);
            if !sub.contains(&c) {
                sub.extend(c)?;
            }
        }
        i += 1;
    }
    Ok(sub)
}

/// Normality of `sub` in `group`, by conjugating generators.
pub fn is_normal(group: &PermGroup, sub: &PermGroup) -> bool {
    sub.is_subgroup_of(group)
        && sub
            .generators()
            .iter()
            .all(|x| group.generators().iter().all(|s| sub.contains(&x.conjugate(s))))
}

pub fn derived_subgroup(group: &PermGroup) -> Result<PermGroup> {
    let gens = group.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(group, &comms)
}

/// Derived series `G ≥ G' ≥ G'' ≥ …` down to the first repeated term,
/// together with whether it reaches the trivial group.
pub fn derived_series_and_solvability(group: &PermGroup) -> Result<(Vec<PermGroup>, bool)> {
    let mut series = vec![group.clone()];
    loop {
        let last = series.last().expect("non-empty");
        if last.is_trivial() {
            return Ok((series, true));
        }
        let next = derived_subgroup(last)?;
        if next.order() == last.order() {
            return Ok((series, false));
        }
        series.push(next);
    }
}

pub fn is_solvable(group: &PermGroup) -> Result<bool> {
    Ok(derived_series_and_solvability(group)?.1)
}

/// `H^x` for every generator, as a new group.
pub fn conjugate_subgroup(h: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    h.subgroup(h.generators().iter().map(|g| g.conjugate(x)).collect())
}
