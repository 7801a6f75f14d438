//! Subset sums, additive energy, sums of distinct elements and the block
//! decomposition that lower-bounds `|Σ(D)|` in terms of `E_k`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{chunks, Exec};
use crate::lanes::{log2_ceil, unscale, with_lane, Lane, Scaled};
use crate::scalar::Scalar;

/// Default cap on `|D|` for subset-sum enumeration.
pub const SUBSET_SUM_LIMIT: usize = 30;
/// Sets at most this large are enumerated directly; larger ones meet in the
/// middle.
pub const DIRECT_ENUMERATION_LIMIT: usize = 20;
/// Cap on `|D|` for the third energy.
pub const ENERGY3_LIMIT: usize = 2000;

/// A finite set of distinct rationals, kept in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IncrementSet(Vec<Scalar>);

impl IncrementSet {
    pub fn new(elements: Vec<Scalar>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(elements.len());
        for x in &elements {
            if !seen.insert(x) {
                return Err(Error::DuplicateElement(x.to_string()));
            }
        }
        Ok(IncrementSet(elements))
    }

    /// Builds from integers; panics on duplicates. Test and example helper.
    pub fn from_ints(v: &[i64]) -> Self {
        IncrementSet::new(v.iter().map(|&x| Scalar::from(x)).collect()).expect("distinct integers")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.0.contains(x)
    }

    pub fn sorted(&self) -> Vec<Scalar> {
        let mut v = self.0.clone();
        v.sort();
        v
    }

    /// `D ∖ {0}` and whether zero was present.
    pub fn without_zero(&self) -> (IncrementSet, bool) {
        let kept: Vec<Scalar> = self.0.iter().filter(|x| !x.is_zero()).cloned().collect();
        let stripped = kept.len() != self.0.len();
        (IncrementSet(kept), stripped)
    }

    pub fn negated(&self) -> IncrementSet {
        IncrementSet(self.0.iter().map(|x| -x).collect())
    }
}

// ---------------------------------------------------------------------------
// Subset sums

fn merge_dedup<L: Lane>(x: &[L], y: &[L]) -> Vec<L> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let next = if j == y.len() || (i < x.len() && x[i] <= y[j]) {
            i += 1;
            &x[i - 1]
        } else {
            j += 1;
            &y[j - 1]
        };
        if out.last() != Some(next) {
            out.push(next.clone());
        }
    }
    out
}

/// Sorted distinct subset sums, by doubling: `Σ(D ∪ {x}) = Σ(D) ∪ (Σ(D) + x)`.
fn doubling<L: Lane>(xs: &[L]) -> Vec<L> {
    let mut sums = vec![L::zero()];
    for x in xs {
        let shifted: Vec<L> = sums.iter().map(|s| s.clone() + x.clone()).collect();
        sums = merge_dedup(&sums, &shifted);
    }
    sums
}

/// Streams the sorted distinct values of `{l + r : l ∈ left, r ∈ right}`.
fn merged_pair_sums<L: Lane>(left: &[L], right: &[L], mut sink: impl FnMut(&L)) {
    if left.is_empty() || right.is_empty() {
        return;
    }
    let mut heap: BinaryHeap<Reverse<(L, usize, usize)>> = left
        .iter()
        .enumerate()
        .map(|(li, l)| Reverse((l.clone() + right[0].clone(), li, 0)))
        .collect();
    let mut last: Option<L> = None;
    while let Some(Reverse((v, li, ri))) = heap.pop() {
        if last.as_ref() != Some(&v) {
            sink(&v);
            last = Some(v);
        }
        if ri + 1 < right.len() {
            heap.push(Reverse((
                left[li].clone() + right[ri + 1].clone(),
                li,
                ri + 1,
            )));
        }
    }
}

fn mitm_halves<L: Lane>(xs: &[L]) -> (Vec<L>, Vec<L>) {
    let (lo, hi) = xs.split_at(xs.len() / 2);
    (doubling(lo), doubling(hi))
}

fn mitm_set<L: Lane>(xs: &[L], exec: Exec) -> Vec<L> {
    let (left, right) = mitm_halves(xs);
    let parts = chunks(left.len(), 64);
    let pieces: Vec<Vec<L>> = exec.map_range(parts.len(), |p| {
        let mut out = Vec::new();
        merged_pair_sums(&left[parts[p].clone()], &right, |v| out.push(v.clone()));
        out
    });
    pieces
        .iter()
        .fold(Vec::new(), |acc, piece| merge_dedup(&acc, piece))
}

fn mitm_count<L: Lane>(xs: &[L]) -> usize {
    let (left, right) = mitm_halves(xs);
    let mut count = 0usize;
    merged_pair_sums(&left, &right, |_| count += 1);
    count
}

fn check_subset_guard(len: usize, max_len: Option<usize>) -> Result<()> {
    let limit = max_len.unwrap_or(SUBSET_SUM_LIMIT);
    if len > limit {
        return Err(Error::GuardExceeded {
            what: "subset-sum set size",
            limit: limit as u128,
            actual: len as u128,
        });
    }
    Ok(())
}

fn subset_headroom(len: usize) -> u64 {
    log2_ceil(len) + 2
}

/// `Σ(D)` as a sorted list of distinct values.
///
/// `max_len` overrides the default guard of [`SUBSET_SUM_LIMIT`] elements.
/// Sets above [`DIRECT_ENUMERATION_LIMIT`] are split in halves whose sums are
/// combined by a sorted merge.
pub fn subset_sums(d: &IncrementSet, max_len: Option<usize>) -> Result<Vec<Scalar>> {
    subset_sums_with(d, max_len, Exec::default())
}

pub fn subset_sums_with(
    d: &IncrementSet,
    max_len: Option<usize>,
    exec: Exec,
) -> Result<Vec<Scalar>> {
    check_subset_guard(d.len(), max_len)?;
    if d.len() > DIRECT_ENUMERATION_LIMIT {
        Ok(subset_sums_meet_in_middle(d, exec))
    } else {
        Ok(subset_sums_direct(d))
    }
}

/// Full enumeration by doubling, without a size guard.
pub fn subset_sums_direct(d: &IncrementSet) -> Vec<Scalar> {
    let s = Scaled::new(d.as_slice());
    with_lane!(s, subset_headroom(d.len()), |v| doubling(&v)
        .iter()
        .map(|x| unscale(x, &s.denom))
        .collect())
}

/// Meet in the middle, without a size guard.
pub fn subset_sums_meet_in_middle(d: &IncrementSet, exec: Exec) -> Vec<Scalar> {
    let s = Scaled::new(d.as_slice());
    with_lane!(s, subset_headroom(d.len()), |v| mitm_set(&v, exec)
        .iter()
        .map(|x| unscale(x, &s.denom))
        .collect())
}

/// `|Σ(D)|` without materialising the set when meeting in the middle.
pub fn subset_sum_count(d: &IncrementSet, max_len: Option<usize>) -> Result<usize> {
    check_subset_guard(d.len(), max_len)?;
    let s = Scaled::new(d.as_slice());
    Ok(with_lane!(s, subset_headroom(d.len()), |v| {
        if v.len() > DIRECT_ENUMERATION_LIMIT {
            mitm_count(&v)
        } else {
            doubling(&v).len()
        }
    }))
}

/// Meet-in-the-middle count regardless of size; exposed for cross-checks.
pub fn subset_sum_count_meet_in_middle(d: &IncrementSet) -> usize {
    let s = Scaled::new(d.as_slice());
    with_lane!(s, subset_headroom(d.len()), |v| mitm_count(&v))
}

// ---------------------------------------------------------------------------
// Additive energy

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub k: usize,
    /// Number of `2k`-tuples with equal `k`-term sums.
    pub energy: u128,
    /// Number of ordered `k`-sums hashed, `m^k`.
    pub tuple_count_checked: u128,
}

fn ordered_sum_counts<L: Lane>(xs: &[L], k: usize, exec: Exec) -> HashMap<L, u128> {
    let m = xs.len();
    let parts = chunks(m, 64);
    let maps: Vec<HashMap<L, u128>> = exec.map_range(parts.len(), |p| {
        let mut map = HashMap::new();
        for first in parts[p].clone() {
            let x = xs[first].clone();
            match k {
                1 => *map.entry(x).or_insert(0) += 1,
                2 => {
                    for y in xs {
                        *map.entry(x.clone() + y.clone()).or_insert(0) += 1;
                    }
                }
                _ => {
                    for y in xs {
                        let xy = x.clone() + y.clone();
                        for z in xs {
                            *map.entry(xy.clone() + z.clone()).or_insert(0) += 1;
                        }
                    }
                }
            }
        }
        map
    });
    let mut total: HashMap<L, u128> = HashMap::new();
    for map in maps {
        for (v, c) in map {
            *total.entry(v).or_insert(0) += c;
        }
    }
    total
}

/// `E_k(D)` for `k ∈ {1, 2, 3}`: the number of `(a_1..a_k, b_1..b_k) ∈ D^{2k}`
/// with `a_1 + … + a_k = b_1 + … + b_k`.
pub fn additive_energy(d: &IncrementSet, k: usize) -> Result<EnergyReport> {
    additive_energy_with(d, k, Exec::default())
}

pub fn additive_energy_with(d: &IncrementSet, k: usize, exec: Exec) -> Result<EnergyReport> {
    if !(1..=3).contains(&k) {
        return Err(Error::UnsupportedK(k));
    }
    if d.is_empty() {
        return Err(Error::TooFewElements {
            needed: 1,
            found: 0,
        });
    }
    if k == 3 && d.len() > ENERGY3_LIMIT {
        return Err(Error::GuardExceeded {
            what: "third energy set size",
            limit: ENERGY3_LIMIT as u128,
            actual: d.len() as u128,
        });
    }
    let s = Scaled::new(d.as_slice());
    let energy = with_lane!(s, 3, |v| ordered_sum_counts(&v, k, exec)
        .values()
        .map(|c| c * c)
        .sum::<u128>());
    Ok(EnergyReport {
        k,
        energy,
        tuple_count_checked: (d.len() as u128).pow(k as u32),
    })
}

// ---------------------------------------------------------------------------
// Sums of k distinct elements

fn distinct_k_sums<L: Lane>(xs: &[L], k: usize) -> Vec<L> {
    fn rec<L: Lane>(xs: &[L], start: usize, left: usize, acc: L, out: &mut Vec<L>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=xs.len() - left {
            rec(xs, i + 1, left - 1, acc.clone() + xs[i].clone(), out);
        }
    }
    let mut out = Vec::new();
    rec(xs, 0, k, L::zero(), &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// `k∧C`: sums of `k` distinct elements of `C`, sorted and deduplicated.
pub fn k_fold_distinct_sums(c: &IncrementSet, k: usize) -> Result<Vec<Scalar>> {
    if k == 0 {
        return Err(Error::UnsupportedK(0));
    }
    if c.len() < k {
        return Err(Error::TooFewElements {
            needed: k,
            found: c.len(),
        });
    }
    let s = Scaled::new(c.as_slice());
    Ok(with_lane!(s, log2_ceil(k) + 1, |v| distinct_k_sums(&v, k)
        .iter()
        .map(|x| unscale(x, &s.denom))
        .collect()))
}

/// `(s)_k = s(s−1)⋯(s−k+1)`.
pub fn falling_factorial(s: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(s.saturating_sub(i))
    })
}

/// `(s)_k² / E_k(C)`, a lower bound for `|k∧C|`.
pub fn falling_factorial_energy_bound(c: &IncrementSet, k: usize) -> Result<Scalar> {
    if k == 0 {
        return Err(Error::UnsupportedK(0));
    }
    if c.len() < k {
        return Err(Error::TooFewElements {
            needed: k,
            found: c.len(),
        });
    }
    let e = additive_energy(c, k)?;
    let ff = falling_factorial(c.len(), k);
    Scalar::new(&ff * &ff, BigInt::from(e.energy))
}

// ---------------------------------------------------------------------------
// Block decomposition

/// A positive subset of `D` or `−D` holding at least `⌈m/2⌉` elements.
/// Positives win ties.
pub fn positive_majority_subset(d: &IncrementSet) -> Result<(IncrementSet, bool)> {
    if d.is_empty() {
        return Err(Error::EmptySet);
    }
    if d.as_slice().iter().any(Scalar::is_zero) {
        return Err(Error::ContainsZero);
    }
    let positives: Vec<Scalar> = d
        .as_slice()
        .iter()
        .filter(|x| x.is_positive())
        .cloned()
        .collect();
    let negatives = d.len() - positives.len();
    if positives.len() >= negatives {
        Ok((IncrementSet(positives), false))
    } else {
        let flipped = d
            .as_slice()
            .iter()
            .filter(|x| x.is_negative())
            .map(|x| -x)
            .collect();
        Ok((IncrementSet(flipped), true))
    }
}

/// One block `S_t = L_t + k∧P_t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub t: usize,
    /// `L_t`, the sum of the `kt` largest elements.
    pub offset: Scalar,
    /// `|P_t| = M − kt`.
    pub prefix_len: usize,
    /// `|k∧P_t|`.
    pub distinct_sums: usize,
    pub min: Scalar,
    pub max: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// `p_1 < … < p_M`.
    pub positives: Vec<Scalar>,
    pub k: usize,
    pub blocks: Vec<Block>,
    /// `L_{⌊M/k⌋}`.
    pub final_offset: Scalar,
    /// `Σ_t |k∧P_t|`.
    pub certified_bound: u64,
}

impl BlockDecomposition {
    /// Checks `L_0 = 0`, `max S_t = L_{t+1}` and `max S_t < min S_{t+1}`.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvariantViolated(msg));
        match self.blocks.first() {
            Some(b) if !b.offset.is_zero() => return fail("L_0 is not zero".into()),
            _ => {}
        }
        for (t, b) in self.blocks.iter().enumerate() {
            let next = self
                .blocks
                .get(t + 1)
                .map(|n| &n.offset)
                .unwrap_or(&self.final_offset);
            if &b.max != next {
                return fail(format!(
                    "max of block {t} is {} but L_{} is {}",
                    b.max,
                    t + 1,
                    next
                ));
            }
            if let Some(n) = self.blocks.get(t + 1) {
                if b.max >= n.min {
                    return fail(format!("blocks {t} and {} overlap", t + 1));
                }
            }
        }
        let total: u64 = self.blocks.iter().map(|b| b.distinct_sums as u64).sum();
        if total != self.certified_bound {
            return fail("certified bound is not the block total".into());
        }
        Ok(())
    }
}

/// Builds the blocks `S_t = L_t + k∧P_t` for `t = 0, …, ⌊M/k⌋ − 1`, where
/// `P_t` holds the `M − kt` smallest elements and `L_t` is the sum of the
/// rest. The blocks are disjoint, so `|Σ(P)| ≥ Σ_t |k∧P_t|`.
pub fn halasz_block_decomposition(p: &IncrementSet, k: usize) -> Result<BlockDecomposition> {
    if k == 0 {
        return Err(Error::UnsupportedK(0));
    }
    if let Some(x) = p.as_slice().iter().find(|x| !x.is_positive()) {
        return Err(Error::NonPositive(x.to_string()));
    }
    let big_m = p.len();
    if big_m < k {
        return Err(Error::TooFewElements {
            needed: k,
            found: big_m,
        });
    }
    let positives = p.sorted();
    let s = Scaled::new(&positives);
    let blocks = with_lane!(s, log2_ceil(big_m) + 1, |v| {
        let mut blocks = Vec::new();
        let mut offset = Scalar::zero();
        for t in 0..big_m / k {
            let prefix_len = big_m - k * t;
            let sums = distinct_k_sums(&v[..prefix_len], k);
            let lo = unscale(sums.first().expect("k <= prefix"), &s.denom);
            let hi = unscale(sums.last().expect("k <= prefix"), &s.denom);
            blocks.push(Block {
                t,
                min: &offset + &lo,
                max: &offset + &hi,
                offset: offset.clone(),
                prefix_len,
                distinct_sums: sums.len(),
            });
            offset = positives[prefix_len - k..prefix_len]
                .iter()
                .fold(offset, |acc, x| acc + x);
        }
        (blocks, offset)
    });
    let (blocks, final_offset) = blocks;
    let certified_bound = blocks.iter().map(|b| b.distinct_sums as u64).sum();
    let dec = BlockDecomposition {
        positives,
        k,
        blocks,
        final_offset,
        certified_bound,
    };
    dec.check()?;
    Ok(dec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalaszBound {
    /// `Σ_t |k∧P_t|`, a certified lower bound for `|Σ(D)|`.
    pub bound: u64,
    /// `Σ_t (M−kt)_k² / E_k(D∖{0})`, never above `bound`.
    pub energy_form: Scalar,
    pub energy: u128,
    pub negated: bool,
    pub zero_stripped: bool,
    pub decomposition: BlockDecomposition,
}

/// Lower bound for `|Σ(D)|` from the block decomposition of the larger sign
/// class of `D ∖ {0}`.
pub fn supportive_halasz_lower_bound(d: &IncrementSet, k: usize) -> Result<HalaszBound> {
    if !(1..=3).contains(&k) {
        return Err(Error::UnsupportedK(k));
    }
    let (nonzero, zero_stripped) = d.without_zero();
    if nonzero.len() < 2 * k {
        return Err(Error::TooFewElements {
            needed: 2 * k,
            found: nonzero.len(),
        });
    }
    let (p, negated) = positive_majority_subset(&nonzero)?;
    let decomposition = halasz_block_decomposition(&p, k)?;
    let energy = additive_energy(&nonzero, k)?.energy;
    let numer: BigInt = decomposition
        .blocks
        .iter()
        .map(|b| {
            let ff = falling_factorial(b.prefix_len, k);
            &ff * &ff
        })
        .sum();
    let energy_form = Scalar::new(numer, BigInt::from(energy))?;
    Ok(HalaszBound {
        bound: decomposition.certified_bound,
        energy_form,
        energy,
        negated,
        zero_stripped,
        decomposition,
    })
}

/// `true` when all `2^m` subset sums are distinct.
pub fn is_dissociated(d: &IncrementSet) -> Result<bool> {
    let count = subset_sum_count(d, None)?;
    Ok(d.len() < usize::BITS as usize && count == 1usize << d.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[Scalar]) -> Vec<i64> {
        v.iter().map(|x| x.to_f64() as i64).collect()
    }

    #[test]
    fn subset_sum_examples() {
        let d = IncrementSet::from_ints(&[1, 2, 4]);
        assert_eq!(
            ints(&subset_sums(&d, None).unwrap()),
            (0..8).collect::<Vec<_>>()
        );
        assert_eq!(
            ints(&subset_sums(&IncrementSet::default(), None).unwrap()),
            vec![0]
        );
        let d = IncrementSet::from_ints(&[-1, 1]);
        assert_eq!(ints(&subset_sums(&d, None).unwrap()), vec![-1, 0, 1]);
    }

    #[test]
    fn subset_sum_guard() {
        let d = IncrementSet::from_ints(&(1..=31).collect::<Vec<_>>());
        assert!(matches!(
            subset_sums(&d, None),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            subset_sum_count(&d, None),
            Err(Error::GuardExceeded { .. })
        ));
        // small integers keep the set tiny, so the override is cheap here
        assert_eq!(subset_sum_count(&d, Some(31)).unwrap(), 31 * 32 / 2 + 1);
    }

    #[test]
    fn meet_in_middle_above_threshold() {
        let d = IncrementSet::from_ints(&(1..=24).map(|i| i * i).collect::<Vec<_>>());
        let direct = subset_sums_direct(&d);
        assert_eq!(subset_sums(&d, None).unwrap(), direct);
        assert_eq!(subset_sum_count(&d, None).unwrap(), direct.len());
    }

    #[test]
    fn energy_examples() {
        assert_eq!(
            additive_energy(&IncrementSet::from_ints(&[5]), 2)
                .unwrap()
                .energy,
            1
        );
        assert_eq!(
            additive_energy(&IncrementSet::from_ints(&[1, 2, 3]), 2)
                .unwrap()
                .energy,
            19
        );
        assert_eq!(
            additive_energy(&IncrementSet::from_ints(&[1, 2, 5, 11]), 2)
                .unwrap()
                .energy,
            28
        );
        assert_eq!(
            additive_energy(&IncrementSet::from_ints(&[1]), 4),
            Err(Error::UnsupportedK(4))
        );
        let r = additive_energy(&IncrementSet::from_ints(&[1, 2, 3]), 3).unwrap();
        assert_eq!(r.tuple_count_checked, 27);
    }

    #[test]
    fn k_fold_examples() {
        let c = IncrementSet::from_ints(&[1, 2, 3]);
        assert_eq!(ints(&k_fold_distinct_sums(&c, 2).unwrap()), vec![3, 4, 5]);
        assert_eq!(
            ints(&k_fold_distinct_sums(&IncrementSet::from_ints(&[1, 2]), 2).unwrap()),
            vec![3]
        );
        let c = IncrementSet::from_ints(&[1, 2, 3, 4]);
        assert_eq!(
            ints(&k_fold_distinct_sums(&c, 3).unwrap()),
            vec![6, 7, 8, 9]
        );
        assert!(k_fold_distinct_sums(&IncrementSet::from_ints(&[1]), 2).is_err());
    }

    #[test]
    fn falling_factorial_bound_examples() {
        let q = |s: &str| s.parse::<Scalar>().unwrap();
        assert_eq!(
            falling_factorial_energy_bound(&IncrementSet::from_ints(&[1, 2, 3]), 2).unwrap(),
            q("36/19")
        );
        assert_eq!(
            falling_factorial_energy_bound(&IncrementSet::from_ints(&[1, 2]), 2).unwrap(),
            q("2/3")
        );
        assert_eq!(
            falling_factorial_energy_bound(&IncrementSet::from_ints(&[7]), 1).unwrap(),
            q("1")
        );
    }

    #[test]
    fn positive_majority_examples() {
        let (p, neg) = positive_majority_subset(&IncrementSet::from_ints(&[1, 2, -3])).unwrap();
        assert_eq!((ints(&p.sorted()), neg), (vec![1, 2], false));
        let (p, neg) = positive_majority_subset(&IncrementSet::from_ints(&[-1, -2])).unwrap();
        assert_eq!((ints(&p.sorted()), neg), (vec![1, 2], true));
        assert_eq!(
            positive_majority_subset(&IncrementSet::from_ints(&[0, 1])),
            Err(Error::ContainsZero)
        );
        let (p, neg) = positive_majority_subset(&IncrementSet::from_ints(&[-1, 1])).unwrap();
        assert_eq!((ints(&p.sorted()), neg), (vec![1], false));
    }

    #[test]
    fn block_decomposition_examples() {
        let dec =
            halasz_block_decomposition(&IncrementSet::from_ints(&[1, 2, 3, 4, 5]), 2).unwrap();
        assert_eq!(dec.blocks.len(), 2);
        assert_eq!(dec.blocks[1].offset, Scalar::from(9));
        assert_eq!(dec.final_offset, Scalar::from(14));
        assert_eq!(
            (dec.blocks[0].min.clone(), dec.blocks[0].max.clone()),
            (Scalar::from(3), Scalar::from(9))
        );
        assert_eq!(
            (dec.blocks[1].min.clone(), dec.blocks[1].max.clone()),
            (Scalar::from(12), Scalar::from(14))
        );
        assert_eq!(dec.certified_bound, 10);
        assert_eq!(
            subset_sums_direct(&IncrementSet::from_ints(&[1, 2, 3, 4, 5])).len(),
            16
        );

        let dec = halasz_block_decomposition(&IncrementSet::from_ints(&[1, 2]), 2).unwrap();
        assert_eq!((dec.blocks.len(), dec.certified_bound), (1, 1));

        let dyadic = IncrementSet::from_ints(&[1, 2, 4, 8]);
        let dec = halasz_block_decomposition(&dyadic, 1).unwrap();
        // blocks {1,2,4,8}, {9,10,12}, {13,14}, {15}
        assert_eq!(
            dec.blocks
                .iter()
                .map(|b| b.distinct_sums)
                .collect::<Vec<_>>(),
            vec![4, 3, 2, 1]
        );
        assert_eq!(dec.certified_bound, 10);
        assert_eq!(subset_sums_direct(&dyadic).len(), 16);

        assert!(matches!(
            halasz_block_decomposition(&IncrementSet::from_ints(&[1, -2]), 1),
            Err(Error::NonPositive(_))
        ));
        assert!(matches!(
            halasz_block_decomposition(&IncrementSet::from_ints(&[1]), 2),
            Err(Error::TooFewElements { .. })
        ));
    }

    #[test]
    fn supportive_bound_examples() {
        let sidon = IncrementSet::from_ints(&[1, 2, 5, 11]);
        let hb = supportive_halasz_lower_bound(&sidon, 2).unwrap();
        assert!(hb.bound <= 16);
        assert_eq!(subset_sums_direct(&sidon).len(), 16);
        let neg = supportive_halasz_lower_bound(&sidon.negated(), 2).unwrap();
        assert_eq!(neg.bound, hb.bound);
        assert!(neg.negated);

        let d = IncrementSet::from_ints(&(1..=12).collect::<Vec<_>>());
        let hb = supportive_halasz_lower_bound(&d, 2).unwrap();
        assert_eq!(subset_sums_direct(&d).len(), 79);
        assert!(hb.bound <= 79);
        assert!(hb.energy_form <= Scalar::from(hb.bound as i64));

        let with_zero = IncrementSet::from_ints(&[0, 1, 2, 5, 11]);
        let hb0 = supportive_halasz_lower_bound(&with_zero, 2).unwrap();
        assert!(hb0.zero_stripped);
        assert!(supportive_halasz_lower_bound(&IncrementSet::from_ints(&[0, 1, 2, 3]), 2).is_err());
    }

    #[test]
    fn dissociation() {
        assert!(is_dissociated(&IncrementSet::from_ints(&[1, 2, 4, 8])).unwrap());
        assert!(!is_dissociated(&IncrementSet::from_ints(&[1, 2, 3])).unwrap());
    }

    #[test]
    fn duplicates_rejected() {
        assert!(IncrementSet::new(vec![Scalar::from(1), Scalar::from(1)]).is_err());
    }
}
