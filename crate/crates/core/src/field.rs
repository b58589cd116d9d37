//! Exact arithmetic in GF(p^k).
//!
//! A field is always built from its canonical defining polynomial: the monic
//! irreducible polynomial of degree k whose lower coefficients, read as a
//! base-p integer with the constant term as the least significant digit, is
//! smallest. Two [`FieldSpec`]s with the same `(p, k)` are therefore identical.
//!
//! Elements are addressed by their base-p index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`,
//! where `c_i` is the coefficient of `x^i` in the residue modulo the defining
//! polynomial. The hot paths of the crate (matrix actions, spinning, orbit
//! closures) work directly on these `u32` indices through [`FieldSpec`] methods;
//! [`FieldElement`] is the checked, self-describing wrapper.

use std::fmt;
use std::sync::Arc;

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

struct FieldInner {
    p: u32,
    k: u32,
    q: u32,
    poly: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Builds the canonical GF(p^k) under the default field-order cap.
pub fn make_field(p: u64, k: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, k, &Limits::default())
}

impl FieldSpec {
    pub fn new(p: u64, k: u32, limits: &Limits) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > limits.field_order as u128 {
            return Err(Error::FieldTooLarge {
                p,
                k,
                cap: limits.field_order,
            });
        }
        let p = p as u32;
        let q = q as u32;
        let poly = canonical_polynomial(p, k);

        let generator = (1..q)
            .find(|&x| has_full_order(p, &poly, x, q))
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut acc = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = slow_mul(p, &poly, acc, generator);
        }
        Ok(FieldSpec(Arc::new(FieldInner {
            p,
            k,
            q,
            poly,
            generator,
            exp,
            log,
        })))
    }

    /// Parses `"GF(p^k)"` or `"GF(q)"` with `q` a prime power.
    pub fn parse(name: &str, limits: &Limits) -> Result<Self> {
        let inner = name
            .trim()
            .strip_prefix("GF(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidField(format!("expected GF(p^k), got {name:?}")))?;
        let bad = || Error::InvalidField(format!("cannot parse field {name:?}"));
        let (p, k) = match inner.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                k.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let q = inner.trim().parse::<u64>().map_err(|_| bad())?;
                match factorize(q as u128).as_slice() {
                    [(p, e)] => (*p, *e),
                    _ => return Err(Error::NotPrime(q)),
                }
            }
        };
        FieldSpec::new(p, k, limits)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial, constant term first, including the leading 1.
    pub fn polynomial(&self) -> &[u32] {
        &self.0.poly
    }

    /// Index of the canonical multiplicative generator (smallest index of full order).
    pub fn generator_index(&self) -> u32 {
        self.0.generator
    }

    pub fn name(&self) -> String {
        if self.0.k == 1 {
            format!("GF({})", self.0.p)
        } else {
            format!("GF({}^{})", self.0.p, self.0.k)
        }
    }

    pub fn coeffs_of(&self, index: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.k as usize);
        let mut x = index;
        for _ in 0..self.0.k {
            out.push(x % self.0.p);
            x /= self.0.p;
        }
        out
    }

    pub fn index_of(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.0.p + c)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.k == 1 {
            return (a + b) % p;
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.k == 1 {
            return (p - a) % p;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.0.q - 1;
        let l = (self.0.log[a as usize] as u64 + self.0.log[b as usize] as u64) % n as u64;
        self.0.exp[l as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.0.q - 1;
        let l = self.0.log[a as usize];
        Some(self.0.exp[((n - l) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u64;
        let l = (self.0.log[a as usize] as u64 * (e % n)) % n;
        self.0.exp[l as usize]
    }

    /// Discrete logarithm to the canonical generator.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.0.log[a as usize])
    }

    /// x ↦ x^{p^j}.
    pub fn frobenius(&self, j: u32) -> Frobenius {
        Frobenius {
            field: self.clone(),
            power: j % self.0.k,
        }
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index >= self.0.q {
            return Err(Error::InvalidField(format!(
                "index {index} out of range for {}",
                self.name()
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            index,
        })
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.0.k as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidField(format!(
                "coefficients {coeffs:?} do not describe an element of {}",
                self.name()
            )));
        }
        self.element(self.index_of(coeffs))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            index: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            index: 1,
        }
    }

    /// Whether `a` lies in the subfield GF(p^e); `e` must divide k.
    pub fn in_subfield(&self, a: u32, e: u32) -> bool {
        debug_assert!(self.0.k % e == 0);
        self.pow(a, (self.0.p as u64).pow(e)) == a
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.k == other.0.k)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.0.p, self.0.k).hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {:?}", self.name(), self.0.poly)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The Frobenius power x ↦ x^{p^j}.
#[derive(Clone, Debug)]
pub struct Frobenius {
    field: FieldSpec,
    power: u32,
}

impl Frobenius {
    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn apply_index(&self, a: u32) -> u32 {
        self.field
            .pow(a, (self.field.p() as u64).pow(self.power))
    }

    pub fn apply(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field != self.field {
            return Err(Error::MixedFields(a.field.name(), self.field.name()));
        }
        self.field.element(self.apply_index(a.index))
    }
}

/// Returns the generator of the Galois group over the prime field (x ↦ x^p)
/// and the canonical generator of the multiplicative group.
pub fn frobenius_and_generator(field: &FieldSpec) -> (Frobenius, FieldElement) {
    let g = field.generator_index();
    (
        field.frobenius(1),
        FieldElement {
            field: field.clone(),
            index: g,
        },
    )
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    index: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

/// Checked arithmetic entry point. `Inv` and `Pow` ignore `b` except for the
/// same-field check.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Inv => {
            a.same_field(b)?;
            a.inv()
        }
        FieldOp::Pow(e) => {
            a.same_field(b)?;
            Ok(a.pow(e))
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs_of(self.index)
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields(self.field.name(), other.field.name()))
        }
    }

    fn with(&self, index: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            index,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.index, other.index)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.index, other.index)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.index, other.index)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.field
            .inv(self.index)
            .map(|i| self.with(i))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.index, e))
    }

    /// Multiplicative order; zero has order 0.
    pub fn multiplicative_order(&self) -> u64 {
        match self.field.log(self.index) {
            None => 0,
            Some(l) => {
                let n = (self.field.order() - 1) as u64;
                n / crate::arith::gcd(n, l as u64)
            }
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field.name(), self.index)
    }
}

// ---- polynomial helpers over Z_p (coefficient lists, constant term first) ----

fn canonical_polynomial(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let q = p.pow(k);
    (0..q)
        .map(|c| {
            let mut poly = Vec::with_capacity(k as usize + 1);
            let mut x = c;
            for _ in 0..k {
                poly.push(x % p);
                x /= p;
            }
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(p, poly))
        .expect("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for c in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut x = c;
            for _ in 0..d {
                divisor.push(x % p);
                x /= p;
            }
            divisor.push(1);
            if poly_rem(p, poly, &divisor).iter().all(|&r| r == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * mi) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn slow_mul(p: u32, poly: &[u32], a: u32, b: u32) -> u32 {
    let k = poly.len() - 1;
    let digits = |mut x: u32| {
        let mut v = vec![0u32; k];
        for d in v.iter_mut() {
            *d = x % p;
            x /= p;
        }
        v
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u32; 2 * k - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let r = poly_rem(p, &prod, poly);
    r.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_pow(p: u32, poly: &[u32], a: u32, mut e: u64) -> u32 {
    let mut acc = 1;
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(p, poly, acc, base);
        }
        base = slow_mul(p, poly, base, base);
        e >>= 1;
    }
    acc
}

fn has_full_order(p: u32, poly: &[u32], x: u32, q: u32) -> bool {
    let n = (q - 1) as u64;
    if n == 1 {
        return x == 1;
    }
    factorize(n as u128)
        .iter()
        .all(|&(r, _)| slow_pow(p, poly, x, n / r) != 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: a polynomial of degree <= 3 is irreducible iff it has no root.
    fn has_root(p: u32, poly: &[u32]) -> bool {
        (0..p).any(|x| {
            poly.iter()
                .rev()
                .fold(0u32, |acc, &c| (acc * x + c) % p)
                == 0
        })
    }

    #[test]
    fn gf2_is_prime_field_with_poly_x() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.polynomial(), &[0, 1]);
        assert_eq!(f.order(), 2);
        assert_eq!(f.name(), "GF(2)");
    }

    #[test]
    fn gf8_canonical_polynomial_matches_enumeration() {
        // Oracle: the first monic cubic without roots, in base-p index order.
        let oracle = (0..8u32)
            .map(|c| vec![c & 1, (c >> 1) & 1, (c >> 2) & 1, 1])
            .find(|poly| !has_root(2, poly))
            .unwrap();
        assert_eq!(oracle, vec![1, 1, 0, 1]);
        assert_eq!(make_field(2, 3).unwrap().polynomial(), oracle.as_slice());
    }

    #[test]
    fn non_prime_and_cap_errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            make_field(3, 13),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(make_field(3, 12).is_ok());
    }

    #[test]
    fn gf8_arithmetic_examples() {
        let f = make_field(2, 3).unwrap();
        let one = f.one();
        assert!(one.add(&one).unwrap().is_zero());
        let w = f.from_coeffs(&[0, 1, 0]).unwrap();
        let w2_plus_1 = f.from_coeffs(&[1, 0, 1]).unwrap();
        assert_eq!(w.mul(&w2_plus_1).unwrap(), one);
        assert_eq!(f.zero().inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = make_field(2, 3).unwrap().one();
        let b = make_field(3, 1).unwrap().one();
        assert!(matches!(a.add(&b), Err(Error::MixedFields(..))));
        assert!(matches!(
            field_arith(&a, &b, FieldOp::Inv),
            Err(Error::MixedFields(..))
        ));
    }

    #[test]
    fn frobenius_fixed_points_in_gf8() {
        let f = make_field(2, 3).unwrap();
        let (sigma, g) = frobenius_and_generator(&f);
        let fixed: Vec<u32> = (0..8).filter(|&x| sigma.apply_index(x) == x).collect();
        assert_eq!(fixed, vec![0, 1]);
        // exhaustive powering
        let mut x = g.clone();
        for m in 1..7 {
            assert_ne!(x, f.one(), "g^{m} = 1");
            x = x.mul(&g).unwrap();
        }
        assert_eq!(x, f.one());
        assert_eq!(g.multiplicative_order(), 7);
    }

    #[test]
    fn gf3_generator_and_identity_frobenius() {
        let f = make_field(3, 1).unwrap();
        let (sigma, g) = frobenius_and_generator(&f);
        assert_eq!(g.index(), 2);
        for x in 0..3 {
            assert_eq!(sigma.apply_index(x), x);
        }
    }

    #[test]
    fn frobenius_has_order_k() {
        for (p, k) in [(2, 4), (3, 2), (5, 2), (2, 6)] {
            let f = make_field(p, k).unwrap();
            let g = f.generator_index();
            let mut x = g;
            let mut period = 0;
            loop {
                x = f.frobenius(1).apply_index(x);
                period += 1;
                if x == g {
                    break;
                }
            }
            assert_eq!(period, k);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1), (7, 1), (2, 4), (2, 5), (2, 6), (5, 2), (3, 3)] {
            let f = make_field(p, k).unwrap();
            let q = f.order();
            assert!(q <= 64);
            for a in 0..q {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // (a+b)^p = a^p + b^p
                    assert_eq!(
                        f.pow(f.add(a, b), p as u64),
                        f.add(f.pow(a, p as u64), f.pow(b, p as u64))
                    );
                    assert_eq!(f.mul(a, b), slow_mul(p as u32, f.polynomial(), a, b));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn parse_names() {
        let l = Limits::default();
        assert_eq!(FieldSpec::parse("GF(2^3)", &l).unwrap(), make_field(2, 3).unwrap());
        assert_eq!(FieldSpec::parse("GF(9)", &l).unwrap(), make_field(3, 2).unwrap());
        assert_eq!(FieldSpec::parse("GF(3)", &l).unwrap(), make_field(3, 1).unwrap());
        assert!(FieldSpec::parse("GF(6)", &l).is_err());
        assert!(FieldSpec::parse("F9", &l).is_err());
    }

    #[test]
    fn canonical_polynomials_are_irreducible() {
        for (p, k) in [(2, 2), (2, 4), (3, 3), (5, 3), (2, 8), (3, 5)] {
            let f = make_field(p, k).unwrap();
            assert!(is_irreducible(p as u32, f.polynomial()));
            assert_eq!(f.polynomial().len(), k as usize + 1);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sampled_axioms_gf3_8(a in 0u32..6561, b in 0u32..6561, c in 0u32..6561) {
                let f = make_field(3, 8).unwrap();
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(a, b), slow_mul(3, f.polynomial(), a, b));
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
    }
}
