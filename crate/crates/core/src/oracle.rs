//! Brute-force and Monte Carlo references: the full spectrum over `S_n`, the
//! matrix functional `S_M(π) = Σ m_{i,π(i)}`, the largest atom of `S(π)` for a
//! uniform `π`, and a naive subset-sum counter.
//!
//! Enumeration splits on the first image. Each branch walks the remaining
//! images in lexicographic order and keeps its own distinct set; branches are
//! merged in order, so results do not depend on the worker count.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Instance;
use crate::error::{Error, Result};
use crate::exec::{chunks, Exec};
use crate::lanes::{log2_ceil, unscale, with_lane, with_lane2, Lane, Scaled};
use crate::scalar::Scalar;
use crate::sumset::IncrementSet;

/// Largest `n` for [`spectrum_bruteforce`].
pub const SPECTRUM_LIMIT: usize = 11;
/// Largest `n` for [`matrix_spectrum_bruteforce`].
pub const MATRIX_LIMIT: usize = 10;
/// Largest `n` with an exact atom distribution.
pub const EXACT_ATOM_LIMIT: usize = 9;
/// Largest `|D|` for [`subset_sum_oracle`].
pub const SUBSET_ORACLE_LIMIT: usize = 22;
/// Sample batches; each gets its own RNG stream.
const SAMPLE_BATCHES: usize = 256;
/// Spectra larger than this are reported without their values.
const KEEP_VALUES_LIMIT: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub size: usize,
    pub min: Scalar,
    pub max: Scalar,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub values: Option<Vec<Scalar>>,
}

impl SpectrumResult {
    fn from_sorted(sorted: Vec<Scalar>) -> Self {
        let size = sorted.len();
        let min = sorted.first().cloned().unwrap_or_default();
        let max = sorted.last().cloned().unwrap_or_default();
        let values = (size <= KEEP_VALUES_LIMIT).then_some(sorted);
        SpectrumResult {
            size,
            min,
            max,
            values,
        }
    }
}

/// A square matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Scalar>>", into = "Vec<Vec<Scalar>>")]
pub struct CostMatrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl CostMatrix {
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptySet);
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(CostMatrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Result<Self> {
        CostMatrix::new(
            (1..=n)
                .map(|i| (1..=n).map(|j| f(i, j)).collect())
                .collect(),
        )
    }

    /// `m_{ij} = a_i b_j`.
    pub fn rank_one(inst: &Instance) -> Self {
        let (a, b) = (inst.a(), inst.b());
        CostMatrix::from_fn(inst.n(), |i, j| a.get(i) * b.get(j)).expect("square by construction")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }
}

impl TryFrom<Vec<Vec<Scalar>>> for CostMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        CostMatrix::new(rows)
    }
}

impl From<CostMatrix> for Vec<Vec<Scalar>> {
    fn from(m: CostMatrix) -> Self {
        m.entries.chunks(m.n).map(<[Scalar]>::to_vec).collect()
    }
}

fn guard(what: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        return Err(Error::GuardExceeded {
            what,
            limit: limit as u128,
            actual: actual as u128,
        });
    }
    Ok(())
}

/// Next permutation in lexicographic order; `false` after the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Calls `visit` with every permutation (0-based images) whose first image is
/// `first`, in lexicographic order.
fn for_each_in_branch(n: usize, first: usize, mut visit: impl FnMut(&[usize])) {
    let mut images: Vec<usize> = std::iter::once(first)
        .chain((0..n).filter(|&j| j != first))
        .collect();
    loop {
        visit(&images);
        if !next_permutation(&mut images[1..]) {
            break;
        }
    }
}

/// Value of `Σ w[i][π(i)]` for a flattened `n × n` lane matrix.
fn functional<L: Lane>(w: &[L], n: usize, images: &[usize]) -> L {
    let mut acc = L::zero();
    for (i, &j) in images.iter().enumerate() {
        acc = acc + w[i * n + j].clone();
    }
    acc
}

fn distinct_over_sn<L: Lane>(w: &[L], n: usize, exec: Exec) -> Vec<L> {
    let branches: Vec<Vec<L>> = exec.map_range(n, |first| {
        let mut seen = HashSet::new();
        for_each_in_branch(n, first, |p| {
            seen.insert(functional(w, n, p));
        });
        seen.into_iter().collect()
    });
    let mut all: Vec<L> = branches.into_iter().flatten().collect();
    exec.sort_unstable(&mut all);
    all.dedup();
    all
}

fn counts_over_sn<L: Lane>(w: &[L], n: usize, exec: Exec) -> HashMap<L, u64> {
    let branches: Vec<HashMap<L, u64>> = exec.map_range(n, |first| {
        let mut counts = HashMap::new();
        for_each_in_branch(n, first, |p| {
            *counts.entry(functional(w, n, p)).or_insert(0) += 1;
        });
        counts
    });
    merge_counts(branches)
}

fn merge_counts<L: Lane>(parts: Vec<HashMap<L, u64>>) -> HashMap<L, u64> {
    let mut total: HashMap<L, u64> = HashMap::new();
    for part in parts {
        for (k, c) in part {
            *total.entry(k).or_insert(0) += c;
        }
    }
    total
}

/// Rank-one lanes `a_i b_j` computed once from the scaled sets.
fn outer<L: Lane>(a: &[L], b: &[L]) -> Vec<L> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.clone() * y.clone()))
        .collect()
}

/// `Σ(A,B) = {S(π) : π ∈ S_n}`.
pub fn spectrum_bruteforce(inst: &Instance) -> Result<SpectrumResult> {
    spectrum_bruteforce_with(inst, Exec::default())
}

pub fn spectrum_bruteforce_with(inst: &Instance, exec: Exec) -> Result<SpectrumResult> {
    let n = inst.n();
    guard("spectrum n", SPECTRUM_LIMIT, n)?;
    let sa = Scaled::new(inst.a().as_slice());
    let sb = Scaled::new(inst.b().as_slice());
    let denom = &sa.denom * &sb.denom;
    let values = with_lane2!(sa, sb, log2_ceil(n) + 1, |va, vb| {
        distinct_over_sn(&outer(&va, &vb), n, exec)
            .iter()
            .map(|v| unscale(v, &denom))
            .collect()
    });
    Ok(SpectrumResult::from_sorted(values))
}

/// `Σ(M) = {Σ m_{i,π(i)} : π ∈ S_n}`.
pub fn matrix_spectrum_bruteforce(m: &CostMatrix) -> Result<SpectrumResult> {
    matrix_spectrum_bruteforce_with(m, Exec::default())
}

pub fn matrix_spectrum_bruteforce_with(m: &CostMatrix, exec: Exec) -> Result<SpectrumResult> {
    let n = m.n();
    guard("matrix spectrum n", MATRIX_LIMIT, n)?;
    let s = Scaled::new(&m.entries);
    let values = with_lane!(s, log2_ceil(n) + 1, |w| distinct_over_sn(&w, n, exec)
        .iter()
        .map(|v| unscale(v, &s.denom))
        .collect());
    Ok(SpectrumResult::from_sorted(values))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomEstimate {
    /// Permutations counted: `n!` when exact.
    pub samples: u64,
    pub max_atom_frequency: u64,
    /// `max_atom_frequency / samples`.
    pub estimate: Scalar,
    pub exact: bool,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `sup_x P(S(π) = x)` for uniform `π`. Exact by enumeration for
/// `n ≤ 9`; otherwise the largest empirical atom over `samples` shuffles.
///
/// Sampling is split into a fixed number of batches. Batch `k` draws from a
/// ChaCha stream `k` keyed by `seed`, so the sample multiset depends only on
/// `(seed, samples)`.
pub fn anticoncentration_estimate(
    inst: &Instance,
    samples: u64,
    seed: u64,
) -> Result<AtomEstimate> {
    anticoncentration_estimate_with(inst, samples, seed, Exec::default())
}

pub fn anticoncentration_estimate_with(
    inst: &Instance,
    samples: u64,
    seed: u64,
    exec: Exec,
) -> Result<AtomEstimate> {
    let n = inst.n();
    let exact = n <= EXACT_ATOM_LIMIT;
    if !exact && samples == 0 {
        return Err(Error::InvalidConfig("samples must be at least 1".into()));
    }
    let sa = Scaled::new(inst.a().as_slice());
    let sb = Scaled::new(inst.b().as_slice());
    let (total, max) = with_lane2!(sa, sb, log2_ceil(n) + 1, |va, vb| {
        if exact {
            let counts = counts_over_sn(&outer(&va, &vb), n, exec);
            (factorial(n), counts.values().copied().max().unwrap_or(0))
        } else {
            let counts = sample_counts(&va, &vb, samples, seed, exec);
            (samples, counts.values().copied().max().unwrap_or(0))
        }
    });
    Ok(AtomEstimate {
        samples: total,
        max_atom_frequency: max,
        estimate: Scalar::new(max, total)?,
        exact,
    })
}

fn sample_counts<L: Lane>(
    a: &[L],
    b: &[L],
    samples: u64,
    seed: u64,
    exec: Exec,
) -> HashMap<L, u64> {
    let n = a.len();
    let batches = chunks(samples as usize, SAMPLE_BATCHES);
    let parts = exec.map_range(batches.len(), |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let mut images: Vec<usize> = (0..n).collect();
        let mut counts = HashMap::new();
        for _ in batches[k].clone() {
            images.shuffle(&mut rng);
            let mut acc = L::zero();
            for (x, &j) in a.iter().zip(&images) {
                acc = acc + x.clone() * b[j].clone();
            }
            *counts.entry(acc).or_insert(0) += 1;
        }
        counts
    });
    merge_counts(parts)
}

/// `|Σ(D)|` by summing every one of the `2^|D|` subsets independently.
pub fn subset_sum_oracle(d: &IncrementSet) -> Result<u64> {
    guard("subset-sum oracle size", SUBSET_ORACLE_LIMIT, d.len())?;
    let xs = d.as_slice();
    let mut seen: HashSet<Scalar> = HashSet::new();
    for mask in 0u64..(1u64 << xs.len()) {
        let s: Scalar = xs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x)
            .sum();
        seen.insert(s);
    }
    Ok(seen.len() as u64)
}
