//! Matrix groups on module spaces and their permutation images.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::limits::Limits;
use crate::linear::matrix::Matrix;
use crate::linear::space::{Component, ModuleSpace, Vector};
use crate::perm::{PermGroup, Permutation};

/// A group given by block-diagonal generators, one block per component.
///
/// An abstract permutation group may be attached, with generator `i` mapped
/// to matrix generator `i`; this models modules with a kernel. Without one,
/// the matrix group is its own abstract group and acts faithfully.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    space: ModuleSpace,
    generators: Vec<Vec<Matrix>>,
    abstract_gens: Option<(usize, Vec<Permutation>)>,
    limits: Limits,
    image: OnceLock<PermImage>,
}

#[derive(Clone, Debug)]
pub struct PermImage {
    /// Action on all module points, `0` included.
    pub group: PermGroup,
    /// Images of the matrix generators, in order.
    pub generators: Vec<Permutation>,
    pub faithful: bool,
    /// Order of the attached abstract group, if any.
    pub abstract_order: Option<u128>,
}

impl MatrixGroup {
    pub fn new(space: ModuleSpace, generators: Vec<Vec<Matrix>>, limits: Limits) -> Result<Self> {
        for (i, blocks) in generators.iter().enumerate() {
            if blocks.len() != space.components().len() {
                return Err(Error::InvalidMatrix(format!(
                    "generator {i} has {} blocks, space has {} components",
                    blocks.len(),
                    space.components().len()
                )));
            }
            for (c, (m, comp)) in blocks.iter().zip(space.components()).enumerate() {
                if m.field() != &comp.field || m.dim() != comp.dim {
                    return Err(Error::InvalidMatrix(format!(
                        "generator {i}, block {c}: expected {}x{} over {}",
                        comp.dim,
                        comp.dim,
                        comp.field.name()
                    )));
                }
                if !m.is_invertible() {
                    return Err(Error::InvalidMatrix(format!(
                        "generator {i}, block {c} is singular"
                    )));
                }
            }
        }
        Ok(MatrixGroup {
            space,
            generators,
            abstract_gens: None,
            limits,
            image: OnceLock::new(),
        })
    }

    /// Single-component group from generator matrices over `field`.
    pub fn from_matrices(field: FieldSpec, dim: usize, gens: Vec<Matrix>, limits: Limits) -> Result<Self> {
        let space = ModuleSpace::single(field, dim)?;
        Self::new(space, gens.into_iter().map(|m| vec![m]).collect(), limits)
    }

    /// Attaches an abstract group: `gens[i]` (on `degree` points) acts as
    /// matrix generator `i`.
    pub fn with_abstract(mut self, degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if gens.len() != self.generators.len() {
            return Err(Error::InvalidParameters(format!(
                "{} abstract generators for {} matrix generators",
                gens.len(),
                self.generators.len()
            )));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                got: g.degree(),
            });
        }
        self.abstract_gens = Some((degree, gens));
        self.image = OnceLock::new();
        Ok(self)
    }

    /// `GL(d, q)`: adjacent transvections over a prime-field basis of `F`,
    /// plus `diag(ω, 1, …, 1)`.
    pub fn general_linear(field: FieldSpec, d: usize, limits: Limits) -> Result<Self> {
        let mut gens = transvections(&field, d)?;
        let mut diag = Matrix::identity(field.clone(), d).entries().to_vec();
        diag[0] = field.generator_index();
        gens.push(Matrix::new(field.clone(), d, diag)?);
        Self::from_matrices(field, d, gens, limits)
    }

    /// `SL(d, q)`, generated by adjacent transvections.
    pub fn special_linear(field: FieldSpec, d: usize, limits: Limits) -> Result<Self> {
        let gens = transvections(&field, d)?;
        Self::from_matrices(field, d, gens, limits)
    }

    /// `Γ(p^d)` as `d×d` matrices over GF(p) in the power basis
    /// `{1, g, …, g^{d−1}}` of the canonical GF(p^d), `g` its canonical
    /// generator: multiplication by `g` and the Frobenius map `x ↦ x^p`.
    pub fn semilinear(p: u64, d: u32, limits: Limits) -> Result<Self> {
        let big = FieldSpec::new(p, d, &limits)?;
        let prime = FieldSpec::new(p, 1, &limits)?;
        let basis = PowerBasis::new(&big, &prime)?;
        let g = big.generator_index();
        let d = d as usize;
        let mult: Vec<Vec<u32>> = (0..d)
            .map(|j| basis.coords(big.pow(g, j as u64 + 1)))
            .collect();
        let frob: Vec<Vec<u32>> = (0..d)
            .map(|j| basis.coords(big.pow(big.pow(g, j as u64), p)))
            .collect();
        let mut gens = vec![Matrix::from_rows(prime.clone(), &mult)?];
        let frob = Matrix::from_rows(prime.clone(), &frob)?;
        if !frob.is_identity() {
            gens.push(frob);
        }
        Self::from_matrices(prime, d, gens, limits)
    }

    pub fn space(&self) -> &ModuleSpace {
        &self.space
    }

    pub fn generators(&self) -> &[Vec<Matrix>] {
        &self.generators
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn abstract_generators(&self) -> Option<&[Permutation]> {
        self.abstract_gens.as_ref().map(|(_, g)| g.as_slice())
    }

    /// Permutation of module points induced by one block-diagonal element.
    pub fn point_permutation(&self, blocks: &[Matrix]) -> Permutation {
        let mut images: Vec<u32> = vec![0];
        for (c, m) in blocks.iter().enumerate() {
            let size = self.space.component_points(c);
            let offset = self.space.offset(c) as u32;
            let local: Vec<u32> = (0..size)
                .map(|x| {
                    let v = self.space.local_coords(c, x);
                    self.space.local_index(c, &m.apply(&v)) as u32
                })
                .collect();
            let mut next = Vec::with_capacity(images.len() * size as usize);
            for &lx in &local {
                next.extend(images.iter().map(|&lower| lower + lx * offset));
            }
            images = next;
        }
        Permutation::from_images_unchecked(images)
    }

    /// The action on all module points. Cached after the first call.
    pub fn perm_image(&self) -> Result<&PermImage> {
        if let Some(img) = self.image.get() {
            return Ok(img);
        }
        let n = self.space.points();
        Limits::check("module points", n as u128, self.limits.degree as u128)?;
        let generators: Vec<Permutation> = self
            .generators
            .iter()
            .map(|b| self.point_permutation(b))
            .collect();
        let group = PermGroup::with_limits(n as usize, generators.clone(), self.limits)?;
        let (faithful, abstract_order) = match &self.abstract_gens {
            None => (true, None),
            Some((degree, abs)) => {
                let a = PermGroup::with_limits(*degree, abs.clone(), self.limits)?;
                let total = degree + n as usize;
                let mut wide = self.limits;
                wide.degree = wide.degree.max(total);
                let pairs = abs
                    .iter()
                    .zip(&generators)
                    .map(|(x, y)| {
                        let mut images = x.images().to_vec();
                        images.extend(y.images().iter().map(|&i| i + *degree as u32));
                        Permutation::from_images_unchecked(images)
                    })
                    .collect();
                let graph = PermGroup::with_limits(total, pairs, wide)?;
                if graph.order() != a.order() {
                    return Err(Error::InvalidMatrix(
                        "matrix generators are not a homomorphic image of the abstract generators".into(),
                    ));
                }
                (a.order() == group.order(), Some(a.order()))
            }
        };
        let _ = self.image.set(PermImage {
            group,
            generators,
            faithful,
            abstract_order,
        });
        Ok(self.image.get().expect("just set"))
    }

    /// Order of the matrix group (of the image, when a kernel is attached).
    pub fn order(&self) -> Result<u128> {
        Ok(self.perm_image()?.group.order())
    }

    /// Block matrices of a permutation from the image, read off the images
    /// of the unit vectors of each component.
    pub fn matrices_of(&self, g: &Permutation) -> Result<Vec<Matrix>> {
        self.space
            .components()
            .iter()
            .enumerate()
            .map(|(c, Component { field, dim })| {
                let q = field.order() as u64;
                let rows: Vec<Vec<u32>> = (0..*dim)
                    .map(|i| {
                        let unit = q.pow(i as u32) * self.space.offset(c);
                        let image = g.image(unit as u32) as u64;
                        self.space.local_coords(c, self.space.local(image, c))
                    })
                    .collect();
                Matrix::from_rows(field.clone(), &rows)
            })
            .collect()
    }

    /// Stabilizer of a vector: the point stabilizer in the permutation image.
    pub fn vector_stabilizer(&self, v: &Vector) -> Result<PermGroup> {
        let point = self.space.encode(v)?;
        self.perm_image()?.group.pointwise_stabilizer(&[point as u32])
    }
}

fn transvections(field: &FieldSpec, d: usize) -> Result<Vec<Matrix>> {
    let p = field.p();
    let mut gens = Vec::new();
    for i in 0..d.saturating_sub(1) {
        for (r, c) in [(i, i + 1), (i + 1, i)] {
            for e in 0..field.k() {
                let t = p.pow(e);
                let mut m = Matrix::identity(field.clone(), d).entries().to_vec();
                m[r * d + c] = t;
                gens.push(Matrix::new(field.clone(), d, m)?);
            }
        }
    }
    Ok(gens)
}

/// Coordinates of GF(p^d) elements in the basis `{1, g, …, g^{d−1}}`.
struct PowerBasis {
    big: FieldSpec,
    to_power: Matrix,
}

impl PowerBasis {
    fn new(big: &FieldSpec, prime: &FieldSpec) -> Result<Self> {
        let g = big.generator_index();
        let rows: Vec<Vec<u32>> = (0..big.k())
            .map(|j| big.coeffs_of(big.pow(g, j as u64)))
            .collect();
        let basis = Matrix::from_rows(prime.clone(), &rows)?;
        Ok(PowerBasis {
            big: big.clone(),
            to_power: basis.inverse()?,
        })
    }

    fn coords(&self, element: u32) -> Vec<u32> {
        self.to_power.apply(&self.big.coeffs_of(element))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn gl(d: usize, p: u64, k: u32) -> MatrixGroup {
        MatrixGroup::general_linear(make_field(p, k).unwrap(), d, Limits::default()).unwrap()
    }

    fn gl_order(d: u32, q: u128) -> u128 {
        (0..d).map(|i| q.pow(d) - q.pow(i)).product()
    }

    #[test]
    fn linear_group_orders() {
        for (d, p, k) in [(1, 2, 1), (2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 2, 2), (1, 7, 1), (2, 5, 1)] {
            let q = (p as u128).pow(k);
            assert_eq!(gl(d, p, k).order().unwrap(), gl_order(d as u32, q), "GL({d},{q})");
            let sl = MatrixGroup::special_linear(make_field(p, k).unwrap(), d, Limits::default()).unwrap();
            assert_eq!(sl.order().unwrap(), gl_order(d as u32, q) / (q - 1), "SL({d},{q})");
        }
    }

    #[test]
    fn gl23_image_matches_enumeration() {
        let g = gl(2, 3, 1);
        let img = g.perm_image().unwrap();
        assert_eq!(img.group.degree(), 9);
        assert!(img.faithful);
        // every element of the image is an invertible linear map
        let elements = img.group.elements().unwrap();
        assert_eq!(elements.len(), 48);
        for x in &elements {
            let m = &g.matrices_of(x).unwrap()[0];
            assert!(m.is_invertible());
            assert_eq!(&g.point_permutation(std::slice::from_ref(m)), x);
        }
    }

    #[test]
    fn semilinear_orders() {
        for (p, d) in [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2), (2, 6), (3, 4)] {
            let g = MatrixGroup::semilinear(p, d, Limits::default()).unwrap();
            let expected = d as u128 * ((p as u128).pow(d) - 1);
            assert_eq!(g.order().unwrap(), expected, "Γ({p}^{d})");
        }
    }

    #[test]
    fn gamma_8_is_transitive_and_galois_fixes_one() {
        let g = MatrixGroup::semilinear(2, 3, Limits::default()).unwrap();
        let img = g.perm_image().unwrap();
        assert_eq!(img.group.orbit(1).len(), 7);
        let stab = g.vector_stabilizer(&Vector { coords: vec![vec![1, 0, 0]] }).unwrap();
        assert_eq!(stab.order(), 3);
        // the stabilizer of 1 is generated by the Frobenius matrix
        assert!(stab.contains(&img.generators[1]));
        let zero = g.vector_stabilizer(&Vector { coords: vec![vec![0, 0, 0]] }).unwrap();
        assert_eq!(zero.order(), 21);
    }

    #[test]
    fn gamma_3_is_plus_minus_one() {
        let g = MatrixGroup::semilinear(3, 1, Limits::default()).unwrap();
        assert_eq!(g.generators().len(), 1);
        assert_eq!(g.generators()[0][0].entries(), &[2]);
        assert_eq!(g.order().unwrap(), 2);
    }

    #[test]
    fn minus_identity() {
        let f = make_field(3, 1).unwrap();
        let g = MatrixGroup::from_matrices(f.clone(), 2, vec![Matrix::scalar(f, 2, 2)], Limits::default())
            .unwrap();
        let img = g.perm_image().unwrap();
        assert!(img.faithful);
        assert_eq!(img.group.order(), 2);
        let moved = (0..9).filter(|&x| img.generators[0].image(x) != x).count();
        assert_eq!(moved, 8);
    }

    #[test]
    fn gl23_stabilizer_of_e1() {
        let g = gl(2, 3, 1);
        let s = g.vector_stabilizer(&Vector { coords: vec![vec![1, 0]] }).unwrap();
        assert_eq!(s.order(), 6);
    }

    #[test]
    fn sl23_from_two_matrices() {
        let f = make_field(3, 1).unwrap();
        let a = Matrix::new(f.clone(), 2, vec![1, 1, 0, 1]).unwrap();
        let b = Matrix::new(f.clone(), 2, vec![0, 2, 1, 0]).unwrap();
        let g = MatrixGroup::from_matrices(f.clone(), 2, vec![a.clone(), b], Limits::default()).unwrap();
        assert_eq!(g.order().unwrap(), 24);
        let c = Matrix::new(f.clone(), 2, vec![0, 1, 1, 0]).unwrap();
        let g = MatrixGroup::from_matrices(f, 2, vec![a, c], Limits::default()).unwrap();
        assert_eq!(g.order().unwrap(), 48);
    }

    #[test]
    fn singular_generator_is_rejected() {
        let f = make_field(3, 1).unwrap();
        let m = Matrix::new(f.clone(), 2, vec![1, 2, 2, 1]).unwrap();
        assert!(matches!(
            MatrixGroup::from_matrices(f, 2, vec![m], Limits::default()),
            Err(Error::InvalidMatrix(_))
        ));
    }

    #[test]
    fn mixed_components() {
        let f4 = make_field(2, 2).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let space = ModuleSpace::new(vec![
            Component { field: f4.clone(), dim: 1 },
            Component { field: f3.clone(), dim: 1 },
        ])
        .unwrap();
        let w = Matrix::new(f4.clone(), 1, vec![f4.generator_index()]).unwrap();
        let minus = Matrix::new(f3.clone(), 1, vec![2]).unwrap();
        let g = MatrixGroup::new(space, vec![vec![w, minus]], Limits::default()).unwrap();
        // C3 x C2 acting diagonally through one generator of order 6
        assert_eq!(g.order().unwrap(), 6);
        let x = &g.perm_image().unwrap().generators[0];
        assert_eq!(g.matrices_of(x).unwrap(), g.generators()[0]);
    }

    #[test]
    fn kernel_is_detected() {
        // C4 acting on GF(3) through x -> -x has kernel C2
        let f = make_field(3, 1).unwrap();
        let g = MatrixGroup::from_matrices(f.clone(), 1, vec![Matrix::scalar(f.clone(), 1, 2)], Limits::default())
            .unwrap()
            .with_abstract(4, vec![Permutation::from_cycles(4, "(0 1 2 3)").unwrap()])
            .unwrap();
        let img = g.perm_image().unwrap();
        assert!(!img.faithful);
        assert_eq!(img.abstract_order, Some(4));
        // C3 cannot map to an element of order 2
        let bad = MatrixGroup::from_matrices(f.clone(), 1, vec![Matrix::scalar(f, 1, 2)], Limits::default())
            .unwrap()
            .with_abstract(3, vec![Permutation::from_cycles(3, "(0 1 2)").unwrap()])
            .unwrap();
        assert!(bad.perm_image().is_err());
    }

    #[test]
    fn module_point_cap() {
        let mut limits = Limits::default();
        limits.degree = 8;
        let g = MatrixGroup::general_linear(make_field(3, 1).unwrap(), 2, limits).unwrap();
        assert!(matches!(g.perm_image(), Err(Error::CapExceeded { .. })));
    }
}
