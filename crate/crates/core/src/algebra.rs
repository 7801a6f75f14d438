//! Sets, permutations, the dot product `S(π)` and the swap-increment
//! identities.
//!
//! Indices at every public interface are 1-based. Permutations compose as
//! functions: `(π ∘ τ)(i) = π(τ(i))`, so composing with a transposition
//! `(i j)` on the right swaps the images of positions `i` and `j`.

use std::collections::HashSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lanes::{log2_ceil, unscale, Lane, Scaled};
use crate::scalar::Scalar;

/// A strictly increasing, non-empty list of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealSet(Vec<Scalar>);

impl RealSet {
    pub fn new(elements: Vec<Scalar>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(pos) = elements.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing(pos + 2));
        }
        Ok(RealSet(elements))
    }

    /// Sorts first; rejects duplicates.
    pub fn from_unsorted(mut elements: Vec<Scalar>) -> Result<Self> {
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].to_string()));
        }
        RealSet::new(elements)
    }

    /// `{1, …, n}`.
    pub fn interval(n: usize) -> Result<Self> {
        RealSet::new((1..=n as i64).map(Scalar::from).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The element at 1-based position `i`.
    pub fn get(&self, i: usize) -> &Scalar {
        &self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Scalar> {
        self.0
    }
}

impl Serialize for RealSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Scalar>::deserialize(d)?;
        RealSet::new(v).map_err(serde::de::Error::custom)
    }
}

/// A pair of sets of equal size `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct Instance {
    a: RealSet,
    b: RealSet,
}

#[derive(Deserialize)]
struct RawInstance {
    a: RealSet,
    b: RealSet,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;
    fn try_from(r: RawInstance) -> Result<Self> {
        Instance::new(r.a, r.b)
    }
}

impl Instance {
    pub fn new(a: RealSet, b: RealSet) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::SizeMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        Ok(Instance { a, b })
    }

    /// `A = B = {1, …, n}`.
    pub fn interval(n: usize) -> Result<Self> {
        let s = RealSet::interval(n)?;
        Instance::new(s.clone(), s)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &RealSet {
        &self.a
    }

    pub fn b(&self) -> &RealSet {
        &self.b
    }
}

/// A bijection of `{1, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    // 0-based images; never exposed.
    images: Vec<usize>,
}

impl Permutation {
    /// From 1-based images `(π(1), …, π(n))`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {v} repeated")));
            }
            zero_based.push(v - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `π(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_len(self.len(), other.len())?;
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        })
    }

    /// `self ∘ (i j)`: swaps the images of positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Result<Permutation> {
        check_index(i, self.len())?;
        check_index(j, self.len())?;
        let mut images = self.images.clone();
        images.swap(i - 1, j - 1);
        Ok(Permutation { images })
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(v).map_err(serde::de::Error::custom)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected, found })
    }
}

fn check_index(index: usize, n: usize) -> Result<()> {
    if index == 0 || index > n {
        Err(Error::IndexOutOfRange { index, n })
    } else {
        Ok(())
    }
}

/// `S(π) = Σ a_i b_{π(i)}`.
pub fn dot_product(inst: &Instance, pi: &Permutation) -> Result<Scalar> {
    check_len(inst.n(), pi.len())?;
    let a = inst.a.as_slice();
    let b = inst.b.as_slice();
    Ok(pi
        .zero_based()
        .iter()
        .enumerate()
        .map(|(i, &j)| &a[i] * &b[j])
        .sum())
}

/// `(min, max)` of `S(π)` over `S_n` for `A = B = {1, …, n}`:
/// `n(n+1)(n+2)/6` and `n(n+1)(2n+1)/6`.
pub fn rearrangement_bounds(n: usize) -> Result<(Scalar, Scalar)> {
    if n == 0 {
        return Err(Error::EmptySet);
    }
    let n = BigInt::from(n);
    let lo = &n * (&n + 1) * (&n + 2) / 6;
    let hi = &n * (&n + 1) * (2 * &n + 1) / 6;
    Ok((Scalar::from_int(lo), Scalar::from_int(hi)))
}

/// `(a_i − a_j)(b_{π(j)} − b_{π(i)})`, the change in `S` when `π` becomes
/// `π ∘ (i j)`.
pub fn swap_increment(inst: &Instance, pi: &Permutation, i: usize, j: usize) -> Result<Scalar> {
    let n = inst.n();
    check_len(n, pi.len())?;
    check_index(i, n)?;
    check_index(j, n)?;
    if i == j {
        return Err(Error::DegenerateTransposition(i));
    }
    let a = &inst.a;
    let b = &inst.b;
    Ok((a.get(i) - a.get(j)) * (b.get(pi.image(j)) - b.get(pi.image(i))))
}

/// Rejects degenerate or overlapping transpositions.
pub fn check_disjoint(pairs: &[(usize, usize)], n: usize) -> Result<()> {
    let mut used = HashSet::with_capacity(2 * pairs.len());
    for &(i, j) in pairs {
        check_index(i, n)?;
        check_index(j, n)?;
        if i == j {
            return Err(Error::DegenerateTransposition(i));
        }
        for x in [i, j] {
            if !used.insert(x) {
                return Err(Error::OverlappingIndices(x));
            }
        }
    }
    Ok(())
}

/// `π₀ ∘ Π_t (i_t j_t)` for pairwise disjoint transpositions.
pub fn apply_disjoint_transpositions(
    pi0: &Permutation,
    pairs: &[(usize, usize)],
) -> Result<Permutation> {
    check_disjoint(pairs, pi0.len())?;
    let mut images = pi0.images.clone();
    for &(i, j) in pairs {
        images.swap(i - 1, j - 1);
    }
    Ok(Permutation { images })
}

/// `b_π = (b_{π(1)}, …, b_{π(n)})`.
pub fn permuted_coordinates(b: &RealSet, pi: &Permutation) -> Result<Vec<Scalar>> {
    check_len(b.len(), pi.len())?;
    Ok(pi
        .zero_based()
        .iter()
        .map(|&j| b.as_slice()[j].clone())
        .collect())
}

/// Vertex `b_{π_I}` of the cube spanned by disjoint transpositions, by the
/// closed form `b_{π₀} + Σ_{t∈I} (b_{π₀(j_t)} − b_{π₀(i_t)})(e_{i_t} − e_{j_t})`.
/// `subset` holds 1-based positions into `pairs`.
pub fn permutohedron_cube_vertex(
    b: &RealSet,
    pi0: &Permutation,
    pairs: &[(usize, usize)],
    subset: &[usize],
) -> Result<Vec<Scalar>> {
    check_disjoint(pairs, pi0.len())?;
    let mut v = permuted_coordinates(b, pi0)?;
    let mut seen = HashSet::new();
    for &t in subset {
        check_index(t, pairs.len())?;
        if !seen.insert(t) {
            return Err(Error::OverlappingIndices(t));
        }
        let (i, j) = pairs[t - 1];
        let step = b.get(pi0.image(j)) - b.get(pi0.image(i));
        v[i - 1] += &step;
        v[j - 1] -= &step;
    }
    Ok(v)
}

/// Exact dot products in an integer lane, for repeated evaluation.
#[derive(Debug, Clone)]
pub struct DotKernel {
    lanes: KernelLanes,
    denom: BigInt,
}

#[derive(Debug, Clone)]
enum KernelLanes {
    Small { a: Vec<i128>, b: Vec<i128> },
    Big { a: Vec<BigInt>, b: Vec<BigInt> },
}

impl DotKernel {
    pub fn new(inst: &Instance) -> Self {
        let sa = Scaled::new(inst.a.as_slice());
        let sb = Scaled::new(inst.b.as_slice());
        let head = log2_ceil(inst.n()) + 1;
        let lanes = match (sa.small(head + sb.bits), sb.small(head + sa.bits)) {
            (Some(a), Some(b)) => KernelLanes::Small { a, b },
            _ => KernelLanes::Big {
                a: sa.big(),
                b: sb.big(),
            },
        };
        DotKernel {
            lanes,
            denom: sa.denom * sb.denom,
        }
    }

    pub fn eval(&self, pi: &Permutation) -> Scalar {
        match &self.lanes {
            KernelLanes::Small { a, b } => unscale(&raw_dot(a, b, pi.zero_based()), &self.denom),
            KernelLanes::Big { a, b } => unscale(&raw_dot(a, b, pi.zero_based()), &self.denom),
        }
    }
}

pub(crate) fn raw_dot<L: Lane>(a: &[L], b: &[L], images: &[usize]) -> L {
    let mut acc = L::zero();
    for (x, &j) in a.iter().zip(images) {
        acc = acc + x.clone() * b[j].clone();
    }
    acc
}
