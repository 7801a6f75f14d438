//! Builtin instance families.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Instance, RealSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `{1, …, n}`.
    Interval,
    /// `{1, 2, 4, …, 2^{n−1}}`.
    Geometric,
    /// The first `n` terms of the greedy Sidon sequence `1, 2, 4, 8, 13, 21, …`.
    Sidon,
    /// Distinct `p/q` with `1 ≤ p ≤ n²`, `1 ≤ q ≤ n`, drawn from a seed.
    RandomRational,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Interval,
        Family::Geometric,
        Family::Sidon,
        Family::RandomRational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Interval => "interval",
            Family::Geometric => "geometric",
            Family::Sidon => "sidon",
            Family::RandomRational => "random-rational",
        }
    }

    /// `A = B` except for the random family, where `B` uses a second stream.
    pub fn instance(self, n: usize, seed: u64) -> Result<Instance> {
        if n == 0 {
            return Err(Error::EmptySet);
        }
        let a = self.set(n, seed, 0)?;
        let b = match self {
            Family::RandomRational => self.set(n, seed, 1)?,
            _ => a.clone(),
        };
        Instance::new(a, b)
    }

    fn set(self, n: usize, seed: u64, stream: u64) -> Result<RealSet> {
        match self {
            Family::Interval => RealSet::interval(n),
            Family::Geometric => geometric(n),
            Family::Sidon => RealSet::new(mian_chowla(n).into_iter().map(Scalar::from).collect()),
            Family::RandomRational => random_rational(n, seed, stream),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown family {s:?}")))
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn geometric(n: usize) -> Result<RealSet> {
    let two = num_bigint::BigInt::from(2);
    RealSet::new(
        (0..n)
            .map(|i| Scalar::from_int(num_traits::pow(two.clone(), i)))
            .collect(),
    )
}

/// Greedy Sidon sequence: each term is the least integer keeping all sums
/// `x + y`, `x ≤ y`, distinct.
pub fn mian_chowla(n: usize) -> Vec<i64> {
    let mut terms: Vec<i64> = Vec::with_capacity(n);
    let mut sums: HashSet<i64> = HashSet::new();
    let mut candidate = 1;
    while terms.len() < n {
        let fresh: Vec<i64> = terms
            .iter()
            .map(|&x| x + candidate)
            .chain([2 * candidate])
            .collect();
        if fresh.iter().all(|s| !sums.contains(s)) {
            sums.extend(fresh);
            terms.push(candidate);
        }
        candidate += 1;
    }
    terms
}

fn random_rational(n: usize, seed: u64, stream: u64) -> Result<RealSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let top = (n as i64).pow(2);
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = rng.random_range(1..=top);
        let q = rng.random_range(1..=n as i64);
        let x = Scalar::new(p, q)?;
        if seen.insert(x.clone()) {
            out.push(x);
        }
    }
    RealSet::from_unsorted(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidon_prefix() {
        assert_eq!(mian_chowla(10), vec![1, 2, 4, 8, 13, 21, 31, 45, 66, 81]);
    }

    #[test]
    fn builtin_sets() {
        let g = Family::Geometric.instance(4, 0).unwrap();
        assert_eq!(g.a().as_slice(), &[1, 2, 4, 8].map(Scalar::from));
        assert_eq!(
            Family::Interval.instance(3, 0).unwrap(),
            Instance::interval(3).unwrap()
        );
        assert!(Family::Sidon.instance(0, 0).is_err());
    }

    #[test]
    fn random_rationals_are_seeded() {
        let x = Family::RandomRational.instance(12, 5).unwrap();
        assert_eq!(x, Family::RandomRational.instance(12, 5).unwrap());
        assert_ne!(x, Family::RandomRational.instance(12, 6).unwrap());
        assert_ne!(x.a(), x.b());
        for v in x.a().as_slice() {
            assert!(v.is_positive() && v.denom() <= &12.into() && v.numer() <= &144.into());
        }
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("cube".parse::<Family>().is_err());
    }
}
