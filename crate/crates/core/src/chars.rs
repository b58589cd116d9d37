//! Irreducible character degrees by Dixon's modular method.
//!
//! Work over GF(ℓ) with ℓ ≡ 1 (mod exp G) and ℓ > 2√|G|. The class matrices
//! `(M_j)_{ik} = #{x ∈ C_j : x⁻¹ z_k ∈ C_i}` commute, and their common
//! eigenvectors, normalized to 1 at the identity class, are the central
//! characters `ω_χ(C_k) = |C_k| χ(z_k) / χ(1)` reduced mod ℓ. Each degree is
//! then the unique `d ≤ √|G|` with `d² ≡ |G| / Σ_k ω_k ω_{k*} / |C_k|`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{inv_mod, is_prime, isqrt, mul_mod, sqrt_mod};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{conjugacy_classes, derived_subgroup, ClassData, PermGroup};

/// Sorted irreducible character degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreeMultiset {
    degrees: Vec<u64>,
}

impl DegreeMultiset {
    pub fn new(mut degrees: Vec<u64>) -> Self {
        degrees.sort_unstable();
        DegreeMultiset { degrees }
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn max(&self) -> u64 {
        self.degrees.last().copied().unwrap_or(1)
    }

    pub fn count_of(&self, d: u64) -> usize {
        self.degrees.iter().filter(|&&x| x == d).count()
    }

    pub fn sum_of_squares(&self) -> u128 {
        self.degrees.iter().map(|&d| (d as u128) * (d as u128)).sum()
    }
}

impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DixonReport {
    pub degrees: DegreeMultiset,
    /// The prime ℓ the computation ran modulo.
    pub prime: u64,
    pub exponent: u64,
    pub classes: usize,
}

/// Smallest prime ℓ ≡ 1 (mod `exponent`) with ℓ² > 4·`order`.
pub fn dixon_prime(order: u128, exponent: u64) -> u64 {
    let mut l = exponent + 1;
    loop {
        if (l as u128) * (l as u128) > 4 * order && is_prime(l) {
            return l;
        }
        l += exponent;
    }
}

pub fn character_degrees(group: &PermGroup) -> Result<DegreeMultiset> {
    Ok(dixon(group, 0)?.degrees)
}

/// Largest irreducible character degree.
pub fn b_of(group: &PermGroup) -> Result<u64> {
    Ok(character_degrees(group)?.max())
}

/// Full Dixon run; `seed` drives the random splitting combinations.
pub fn dixon(group: &PermGroup, seed: u64) -> Result<DixonReport> {
    let limits = group.limits();
    Limits::check("order for character degrees", group.order(), limits.dixon_order as u128)?;
    let classes = conjugacy_classes(group)?;
    Limits::check("class count", classes.len() as u128, limits.dixon_classes as u128)?;
    dixon_with_classes(group, &classes, seed)
}

pub fn dixon_with_classes(group: &PermGroup, classes: &ClassData, seed: u64) -> Result<DixonReport> {
    let order = group.order();
    let r = classes.len();
    let l = dixon_prime(order, classes.exponent);
    let matrices = class_matrices(group, classes, l)?;
    let vectors = common_eigenvectors(&matrices, l, seed)?;

    let bound = isqrt(order) as u64;
    let order_mod = (order % l as u128) as u64;
    let mut degrees = Vec::with_capacity(r);
    for w in vectors {
        let mut s = 0u64;
        for k in 0..r {
            let t = mul_mod(w[k], w[classes.inverse[k]], l);
            s = (s + mul_mod(t, inv_mod(classes.sizes[k] % l, l), l)) % l;
        }
        if s == 0 {
            return Err(Error::Internal("degenerate central character".into()));
        }
        let d2 = mul_mod(order_mod, inv_mod(s, l), l);
        let root = sqrt_mod(d2, l)
            .ok_or_else(|| Error::Internal("squared degree is not a square mod ℓ".into()))?;
        let d = root.min(l - root);
        if d == 0 || d > bound {
            return Err(Error::Internal(format!("degree candidate {d} exceeds √|G|")));
        }
        degrees.push(d);
    }
    let degrees = DegreeMultiset::new(degrees);
    check_invariants(group, classes, &degrees)?;
    Ok(DixonReport {
        degrees,
        prime: l,
        exponent: classes.exponent,
        classes: r,
    })
}

/// Σd² = |G|, one degree per class, d | |G|, and |G:G'| linear characters.
fn check_invariants(group: &PermGroup, classes: &ClassData, degrees: &DegreeMultiset) -> Result<()> {
    let order = group.order();
    let linear = order / derived_subgroup(group)?.order();
    let fail = |what: &str| Err(Error::Internal(format!("degrees {degrees} violate {what}")));
    if degrees.sum_of_squares() != order {
        return fail("the sum of squares");
    }
    if degrees.degrees().len() != classes.len() {
        return fail("the class count");
    }
    if degrees.degrees().iter().any(|&d| order % d as u128 != 0) {
        return fail("divisibility");
    }
    if degrees.count_of(1) as u128 != linear {
        return fail("the linear character count");
    }
    Ok(())
}

/// `m[j][i][k] = #{x ∈ C_j : x⁻¹ z_k ∈ C_i} mod ℓ`.
fn class_matrices(group: &PermGroup, classes: &ClassData, l: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let r = classes.len();
    let mut m = vec![vec![vec![0u64; r]; r]; r];
    group.for_each_element(|rank, x| {
        let j = classes.class_of_rank(rank);
        let x_inv = x.inverse();
        for (k, z) in classes.reps.iter().enumerate() {
            let y = &x_inv * z;
            let i = classes.class_of_rank(group.rank(&y).expect("closed"));
            m[j][i][k] += 1;
        }
    })?;
    for row in m.iter_mut().flatten().flatten() {
        *row %= l;
    }
    Ok(m)
}

/// Common eigenvectors of the class matrices, normalized to 1 in entry 0.
fn common_eigenvectors(matrices: &[Vec<Vec<u64>>], l: u64, seed: u64) -> Result<Vec<Vec<u64>>> {
    let r = matrices.len();
    let budget = 64 * r as u64 + 64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pending: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| unit(r, i)).collect()];
    let mut found = Vec::with_capacity(r);
    let mut attempts = 0u64;
    while let Some(basis) = pending.pop() {
        if basis.len() == 1 {
            found.push(basis.into_iter().next().expect("one vector"));
            continue;
        }
        let pivots: Vec<usize> = basis
            .iter()
            .map(|v| v.iter().position(|&x| x != 0).expect("non-zero"))
            .collect();
        loop {
            attempts += 1;
            if attempts > budget {
                return Err(Error::BudgetExhausted {
                    what: "eigenspace splitting".into(),
                    budget,
                });
            }
            let coeffs: Vec<u64> = (0..r).map(|_| rng.gen_range(0..l)).collect();
            let k = basis.len();
            // restriction of Σ c_j M_j to the span of `basis`
            let mut restricted = vec![vec![0u64; k]; k];
            for (col, v) in basis.iter().enumerate() {
                let image = combine_apply(matrices, &coeffs, v, l);
                for (row, &p) in pivots.iter().enumerate() {
                    restricted[row][col] = image[p];
                }
            }
            let poly = charpoly(restricted.clone(), l);
            let roots: Vec<u64> = (0..l).filter(|&x| eval(&poly, x, l) == 0).collect();
            if roots.len() < 2 {
                continue;
            }
            let mut pieces = Vec::new();
            for lambda in roots {
                let mut shifted = restricted.clone();
                for (i, row) in shifted.iter_mut().enumerate() {
                    row[i] = (row[i] + l - lambda) % l;
                }
                let null = nullspace(shifted, l);
                let vectors: Vec<Vec<u64>> = null
                    .iter()
                    .map(|y| {
                        let mut v = vec![0u64; r];
                        for (c, b) in y.iter().zip(&basis) {
                            for (x, &bx) in v.iter_mut().zip(b) {
                                *x = (*x + mul_mod(*c, bx, l)) % l;
                            }
                        }
                        v
                    })
                    .collect();
                pieces.push(echelon(vectors, l));
            }
            if pieces.iter().map(Vec::len).sum::<usize>() != k {
                return Err(Error::Internal("class algebra does not split over GF(ℓ)".into()));
            }
            pending.extend(pieces);
            break;
        }
    }
    found
        .into_iter()
        .map(|v| {
            if v[0] == 0 {
                return Err(Error::Internal("eigenvector vanishes at the identity class".into()));
            }
            let inv = inv_mod(v[0], l);
            Ok(v.iter().map(|&x| mul_mod(x, inv, l)).collect())
        })
        .collect()
}

fn unit(r: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; r];
    v[i] = 1;
    v
}

/// `(Σ_j c_j M_j) v`.
fn combine_apply(matrices: &[Vec<Vec<u64>>], coeffs: &[u64], v: &[u64], l: u64) -> Vec<u64> {
    let r = v.len();
    let mut out = vec![0u64; r];
    for (m, &c) in matrices.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            let mut s = 0u64;
            for k in 0..r {
                s = (s + m[i][k] * v[k]) % l;
            }
            *o = (*o + mul_mod(c, s, l)) % l;
        }
    }
    out
}

/// Reduced row echelon basis of the span of `rows`.
fn echelon(mut rows: Vec<Vec<u64>>, l: u64) -> Vec<Vec<u64>> {
    let n = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = inv_mod(rows[rank][col], l);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, l);
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..n {
                    rows[i][j] = (rows[i][j] + l - mul_mod(f, rows[rank][j], l)) % l;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Basis of `{y : A y = 0}`.
fn nullspace(a: Vec<Vec<u64>>, l: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let reduced = echelon(a, l);
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("non-zero"))
        .collect();
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut y = vec![0u64; n];
            y[free] = 1;
            for (row, &p) in reduced.iter().zip(&pivots) {
                y[p] = (l - row[free]) % l;
            }
            y
        })
        .collect()
}

/// Characteristic polynomial (coefficients low to high) via reduction to
/// upper Hessenberg form.
fn charpoly(mut a: Vec<Vec<u64>>, l: u64) -> Vec<u64> {
    let n = a.len();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| a[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            a.swap(i, j + 1);
            for row in a.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = inv_mod(a[j + 1][j], l);
        for k in j + 2..n {
            let u = mul_mod(a[k][j], inv, l);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                a[k][c] = (a[k][c] + l - mul_mod(u, a[j + 1][c], l)) % l;
            }
            for row in a.iter_mut() {
                row[j + 1] = (row[j + 1] + mul_mod(u, row[k], l)) % l;
            }
        }
    }
    // p[m] is the characteristic polynomial of the leading m×m block
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let mut next = vec![0u64; m + 2];
        for (d, &c) in p[m].iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % l;
            next[d] = (next[d] + l - mul_mod(a[m][m], c, l)) % l;
        }
        let mut t = 1u64;
        for i in (0..m).rev() {
            t = mul_mod(t, a[i + 1][i], l);
            let h = mul_mod(a[i][m], t, l);
            if h == 0 {
                continue;
            }
            for (d, &c) in p[i].iter().enumerate() {
                next[d] = (next[d] + l - mul_mod(h, c, l)) % l;
            }
        }
        p.push(next);
    }
    p.pop().expect("n + 1 entries")
}

fn eval(poly: &[u64], x: u64, l: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, l) + c) % l)
}
