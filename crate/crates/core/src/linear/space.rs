//! Module spaces `V = F_1^{n_1} ⊕ … ⊕ F_r^{n_r}` and their integer point encoding.
//!
//! Points are numbered in mixed radix with component 0 least significant.
//! Inside a component the coordinate vector `(c_0, …, c_{n-1})` has local
//! index `c_0 + c_1 q + … + c_{n-1} q^{n-1}`, each `c_i` being a field index.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub field: FieldSpec,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpace {
    components: Vec<Component>,
    sizes: Vec<u64>,
    offsets: Vec<u64>,
    points: u64,
}

/// Coordinates of a module point, one list of field indices per component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Vector {
    pub coords: Vec<Vec<u32>>,
}

impl ModuleSpace {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidModule("a module needs at least one component".into()));
        }
        let mut sizes = Vec::with_capacity(components.len());
        let mut offsets = Vec::with_capacity(components.len());
        let mut points: u64 = 1;
        for c in &components {
            if c.dim == 0 {
                return Err(Error::InvalidModule("component dimension must be at least 1".into()));
            }
            let size = (c.field.order() as u64)
                .checked_pow(c.dim as u32)
                .ok_or_else(|| Error::InvalidModule("point count overflows".into()))?;
            offsets.push(points);
            sizes.push(size);
            points = points
                .checked_mul(size)
                .ok_or_else(|| Error::InvalidModule("point count overflows".into()))?;
        }
        Ok(ModuleSpace {
            components,
            sizes,
            offsets,
            points,
        })
    }

    /// `F^dim` as a single-component space.
    pub fn single(field: FieldSpec, dim: usize) -> Result<Self> {
        Self::new(vec![Component { field, dim }])
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn points(&self) -> u64 {
        self.points
    }

    pub fn component_points(&self, c: usize) -> u64 {
        self.sizes[c]
    }

    /// Multiplier of component `c` in the global encoding.
    pub fn offset(&self, c: usize) -> u64 {
        self.offsets[c]
    }

    /// Local index of component `c` inside a global point.
    pub fn local(&self, point: u64, c: usize) -> u64 {
        (point / self.offsets[c]) % self.sizes[c]
    }

    pub fn local_coords(&self, c: usize, mut local: u64) -> Vec<u32> {
        let q = self.components[c].field.order() as u64;
        (0..self.components[c].dim)
            .map(|_| {
                let x = (local % q) as u32;
                local /= q;
                x
            })
            .collect()
    }

    pub fn local_index(&self, c: usize, coords: &[u32]) -> u64 {
        let q = self.components[c].field.order() as u64;
        coords.iter().rev().fold(0u64, |acc, &x| acc * q + x as u64)
    }

    pub fn encode(&self, v: &Vector) -> Result<u64> {
        if v.coords.len() != self.components.len() {
            return Err(Error::InvalidModule(format!(
                "vector has {} components, space has {}",
                v.coords.len(),
                self.components.len()
            )));
        }
        let mut point = 0u64;
        for (c, (comp, xs)) in self.components.iter().zip(&v.coords).enumerate() {
            if xs.len() != comp.dim || xs.iter().any(|&x| x >= comp.field.order()) {
                return Err(Error::InvalidModule(format!(
                    "component {c} expects {} coordinates in {}",
                    comp.dim,
                    comp.field.name()
                )));
            }
            point += self.local_index(c, xs) * self.offsets[c];
        }
        Ok(point)
    }

    pub fn decode(&self, point: u64) -> Vector {
        debug_assert!(point < self.points);
        Vector {
            coords: (0..self.components.len())
                .map(|c| self.local_coords(c, self.local(point, c)))
                .collect(),
        }
    }
}

impl fmt::Display for ModuleSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}^{}", c.field.name(), c.dim)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn mixed() -> ModuleSpace {
        ModuleSpace::new(vec![
            Component { field: make_field(2, 2).unwrap(), dim: 2 },
            Component { field: make_field(3, 1).unwrap(), dim: 3 },
        ])
        .unwrap()
    }

    #[test]
    fn point_count_and_layout() {
        let s = mixed();
        assert_eq!(s.points(), 16 * 27);
        assert_eq!(s.offset(1), 16);
        assert_eq!(s.to_string(), "GF(2^2)^2 + GF(3)^3");
        let v = Vector { coords: vec![vec![3, 1], vec![2, 0, 1]] };
        assert_eq!(s.encode(&v).unwrap(), 3 + 4 + 16 * (2 + 9));
    }

    #[test]
    fn rejects_bad_shapes() {
        let s = mixed();
        assert!(s.encode(&Vector { coords: vec![vec![4, 0], vec![0, 0, 0]] }).is_err());
        assert!(s.encode(&Vector { coords: vec![vec![0, 0]] }).is_err());
        assert!(ModuleSpace::new(vec![]).is_err());
        assert!(ModuleSpace::single(make_field(2, 1).unwrap(), 0).is_err());
    }

    proptest! {
        #[test]
        fn encoding_round_trips(point in 0u64..432) {
            let s = mixed();
            prop_assert_eq!(s.encode(&s.decode(point)).unwrap(), point);
        }
    }
}
