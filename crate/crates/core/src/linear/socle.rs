//! Socle and complete reducibility by spinning.
//!
//! `W(v)` is the submodule spun from `v`. It is irreducible exactly when every
//! non-zero `w ∈ W(v)` spins up to a submodule of the same dimension. The
//! socle is the sum of the irreducible `W(v)`; the module is completely
//! reducible when the socle is everything.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linear::group::MatrixGroup;
use crate::linear::matrix::Matrix;
use crate::perm::PermGroup;

/// A subspace of `F^n` in reduced row echelon form.
#[derive(Clone, Debug)]
pub(crate) struct Subspace {
    field: FieldSpec,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(crate) fn zero(field: FieldSpec, n: usize) -> Self {
        Subspace {
            field,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        v
    }

    pub(crate) fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub(crate) fn insert(&mut self, v: &[u32]) -> bool {
        let f = &self.field;
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[p]).expect("non-zero");
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// One vector from every 1-dimensional subspace: combinations whose first
    /// non-zero coefficient is 1.
    pub(crate) fn projective_points(&self) -> Vec<Vec<u32>> {
        let f = &self.field;
        let q = f.order() as u64;
        let k = self.rows.len();
        let mut out = Vec::new();
        for code in 1..q.pow(k as u32) {
            let mut coeffs = Vec::with_capacity(k);
            let mut x = code;
            for _ in 0..k {
                coeffs.push((x % q) as u32);
                x /= q;
            }
            if coeffs.iter().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            let mut v = vec![0u32; self.n];
            for (c, row) in coeffs.iter().zip(&self.rows) {
                if *c != 0 {
                    for (x, &r) in v.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(*c, r));
                    }
                }
            }
            out.push(v);
        }
        out
    }
}

/// The submodule spun from `v` under `gens`.
pub(crate) fn spin(field: &FieldSpec, n: usize, gens: &[Matrix], v: &[u32]) -> Subspace {
    let mut space = Subspace::zero(field.clone(), n);
    if !space.insert(v) {
        return space;
    }
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        for m in gens {
            let image = m.apply(&w);
            if space.insert(&image) {
                queue.push(image);
            }
        }
    }
    space
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleReport {
    pub component: usize,
    pub dim: usize,
    pub socle_dim: usize,
    /// Dimensions of the irreducible summands of a decomposition of the
    /// socle, in discovery order.
    pub summand_dims: Vec<usize>,
    pub completely_reducible: bool,
}

/// Socle of component `component` restricted to `n`, a subgroup of the
/// permutation image of `m`.
pub fn socle_and_complete_reducibility(m: &MatrixGroup, n: &PermGroup, component: usize) -> Result<SocleReport> {
    let image = &m.perm_image()?.group;
    if component >= m.space().components().len() {
        return Err(Error::InvalidParameters(format!("no component {component}")));
    }
    if n.degree() != image.degree() || !n.is_subgroup_of(image) {
        return Err(Error::NotInGroup("subgroup is not contained in the matrix group".into()));
    }
    let gens: Vec<Matrix> = n
        .generators()
        .iter()
        .map(|g| m.matrices_of(g).map(|mut b| b.swap_remove(component)))
        .collect::<Result<_>>()?;
    let comp = &m.space().components()[component];
    Ok(socle_of(&comp.field, comp.dim, &gens, component))
}

pub(crate) fn socle_of(field: &FieldSpec, dim: usize, gens: &[Matrix], component: usize) -> SocleReport {
    let whole = spin_whole(field, dim);
    let mut socle = Subspace::zero(field.clone(), dim);
    let mut summand_dims = Vec::new();
    for v in whole.projective_points() {
        if socle.contains(&v) {
            continue;
        }
        let w = spin(field, dim, gens, &v);
        let irreducible = w
            .projective_points()
            .iter()
            .all(|x| spin(field, dim, gens, x).dim() == w.dim());
        if irreducible {
            for row in &w.rows {
                socle.insert(row);
            }
            summand_dims.push(w.dim());
        }
        if socle.dim() == dim {
            break;
        }
    }
    SocleReport {
        component,
        dim,
        socle_dim: socle.dim(),
        summand_dims,
        completely_reducible: socle.dim() == dim,
    }
}

fn spin_whole(field: &FieldSpec, n: usize) -> Subspace {
    let mut s = Subspace::zero(field.clone(), n);
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = 1;
        s.insert(&e);
    }
    s
}
