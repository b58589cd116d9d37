//! Square matrices over a finite field, acting on row vectors from the right.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    n: usize,
    /// Row-major field indices.
    entries: Vec<u32>,
}

impl Matrix {
    pub fn new(field: FieldSpec, n: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(&x) = entries.iter().find(|&&x| x >= field.order()) {
            return Err(Error::InvalidMatrix(format!(
                "entry {x} is not an element of {}",
                field.name()
            )));
        }
        Ok(Matrix { field, n, entries })
    }

    /// Builds from rows given as field-index vectors.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("rows must have equal length n".into()));
        }
        Self::new(field, n, rows.concat())
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: FieldSpec, n: usize, a: u32) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = a;
        }
        Matrix { field, n, entries }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field.clone(), self.n)
    }

    /// `v · A` for a row vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.n];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(vi, self.entry(i, j)));
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.n, other.n);
        let entries = (0..self.n).flat_map(|i| other.apply(self.row(i))).collect();
        Matrix {
            field: self.field.clone(),
            n: self.n,
            entries,
        }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.field.clone(), self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn det(&self) -> u32 {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let inv = f.inv(pv).expect("non-zero pivot");
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], inv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let t = f.mul(factor, a[col * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], t);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = Self::identity(f.clone(), n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .ok_or_else(|| Error::InvalidMatrix("singular matrix".into()))?;
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                b.swap(pivot * n + j, col * n + j);
            }
            let inv = f.inv(a[col * n + col]).expect("non-zero pivot");
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], inv);
                b[col * n + j] = f.mul(b[col * n + j], inv);
            }
            for r in 0..n {
                let factor = a[r * n + col];
                if r == col || factor == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    b[r * n + j] = f.sub(b[r * n + j], f.mul(factor, b[col * n + j]));
                }
            }
        }
        Ok(Matrix {
            field: f.clone(),
            n,
            entries: b,
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.field.name(), self.entries)
    }
}
