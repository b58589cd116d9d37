//! Sets of primes and π-parts of integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{is_prime, prime_divisors};
use crate::error::{Error, Result};

/// A finite set of primes, kept strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PiSet {
    primes: Vec<u64>,
}

impl PiSet {
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        let mut v: Vec<u64> = primes.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidPiSet(format!("{bad} is not prime")));
        }
        v.sort_unstable();
        v.dedup();
        Ok(PiSet { primes: v })
    }

    pub fn empty() -> Self {
        PiSet::default()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// Whether every prime divisor of `n` lies in the set.
    pub fn is_pi_number(&self, n: u128) -> bool {
        pi_part(n, self) == n
    }

    /// Primes dividing `n` that are not in the set.
    pub fn complement_for(&self, n: u128) -> PiSet {
        PiSet {
            primes: prime_divisors(n)
                .into_iter()
                .filter(|&p| !self.contains(p))
                .collect(),
        }
    }

    /// All non-empty subsets of the primes dividing `n`, ordered by size
    /// and then lexicographically.
    pub fn all_nonempty_subsets(n: u128) -> Vec<PiSet> {
        let primes = prime_divisors(n);
        let mut out: Vec<PiSet> = (1u32..(1 << primes.len()))
            .map(|mask| PiSet {
                primes: primes
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &p)| p)
                    .collect(),
            })
            .collect();
        out.sort_by(|a, b| a.primes.len().cmp(&b.primes.len()).then(a.cmp(b)));
        out
    }
}

/// The largest divisor of `n` whose prime factors all lie in `pi`.
pub fn pi_part(n: u128, pi: &PiSet) -> u128 {
    assert!(n >= 1, "pi_part of zero");
    let mut out = 1;
    for &p in pi.primes() {
        let p = p as u128;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            out *= p;
        }
    }
    out
}

impl fmt::Display for PiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for PiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for PiSet {
    type Err = Error;

    /// Comma-separated primes, e.g. `"2,3"`; braces are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim().is_empty() {
            return Ok(PiSet::empty());
        }
        let primes = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidPiSet(format!("cannot parse {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PiSet::new(primes)
    }
}

impl Serialize for PiSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.primes.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u64>::deserialize(d)?;
        PiSet::new(v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pi(s: &str) -> PiSet {
        s.parse().unwrap()
    }

    #[test]
    fn pi_part_examples() {
        assert_eq!(pi_part(48, &pi("2")), 16);
        assert_eq!(pi_part(360, &pi("2,3")), 72);
        assert_eq!(pi_part(1, &pi("5,7")), 1);
        assert_eq!(pi_part(1, &PiSet::empty()), 1);
    }

    #[test]
    fn parsing() {
        assert_eq!(pi("3, 2,3").primes(), &[2, 3]);
        assert_eq!(pi("{7}").to_string(), "7");
        assert!("4".parse::<PiSet>().is_err());
        assert!("x".parse::<PiSet>().is_err());
    }

    #[test]
    fn subsets_of_prime_divisors() {
        let subs = PiSet::all_nonempty_subsets(360);
        let names: Vec<String> = subs.iter().map(|s| s.to_string()).collect();
        assert_eq!(names, vec!["2", "3", "5", "2,3", "2,5", "3,5", "2,3,5"]);
        assert!(PiSet::all_nonempty_subsets(1).is_empty());
        assert_eq!(pi("2").complement_for(360), pi("3,5"));
    }

    proptest! {
        #[test]
        fn pi_part_times_complement_part_is_n(n in 1u128..1_000_000, mask in 0u32..16) {
            let set = PiSet::new([2u64, 3, 5, 7].into_iter().enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0).map(|(_, p)| p)).unwrap();
            let a = pi_part(n, &set);
            let b = pi_part(n, &set.complement_for(n));
            prop_assert_eq!(a * b, n);
            prop_assert_eq!(n % a, 0);
        }
    }
}
