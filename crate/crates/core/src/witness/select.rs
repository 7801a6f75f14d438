use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{PairedSwitch, RunConfig};
use crate::algebra::{Instance, RealSet};
use crate::error::{Error, Result};
use crate::pools::pool_construct;
use crate::scalar::Scalar;
use crate::sumset::IncrementSet;

/// Sizes at one step of a selection run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub t: usize,
    /// `|A_{t−1}|`, `|B_{t−1}|` before the step.
    pub a_remaining: usize,
    pub b_remaining: usize,
    pub pool_size: usize,
    /// Pool values left after removing zero and earlier picks.
    pub candidates: usize,
    /// Index drawn uniformly from the candidates.
    pub draw: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicSelection {
    pub switches: Vec<PairedSwitch>,
    pub d: IncrementSet,
    pub ledger: Vec<StepRecord>,
}

/// Original 1-based indices still available, in increasing order.
fn subset(set: &RealSet, alive: &[usize]) -> RealSet {
    RealSet::new(alive.iter().map(|&i| set.get(i).clone()).collect())
        .expect("subsequence of a sorted set")
}

fn retain_unused(alive: &mut Vec<usize>, used: &[usize]) {
    alive.retain(|i| !used.contains(i));
}

/// Draws `m = ⌊n/32⌋` paired switches. Step `t` builds the two-area pool of
/// the surviving rows and columns, removes `0` and earlier picks, draws one
/// value uniformly, records its representation and deletes its four rows and
/// four columns.
pub fn select_increments_cubic(inst: &Instance, config: &RunConfig) -> Result<CubicSelection> {
    config.check_instance(inst)?;
    let m = config.cubic_m();
    if m == 0 {
        return Err(Error::InstanceTooSmall(format!(
            "n = {} gives m = 0 switches",
            inst.n()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut a_alive: Vec<usize> = (1..=inst.n()).collect();
    let mut b_alive = a_alive.clone();
    let mut chosen: HashSet<Scalar> = HashSet::new();
    let mut switches = Vec::with_capacity(m);
    let mut ledger = Vec::with_capacity(m);

    for t in 1..=m {
        let a_sub = subset(inst.a(), &a_alive);
        let b_sub = subset(inst.b(), &b_alive);
        let pool = pool_construct(&a_sub, &b_sub)?;
        let candidates: Vec<usize> = pool
            .values()
            .enumerate()
            .filter(|(_, v)| !v.is_zero() && !chosen.contains(*v))
            .map(|(i, _)| i)
            .collect();
        if candidates.is_empty() {
            return Err(Error::PoolExhausted {
                step: t,
                available: 0,
                required: 1,
            });
        }
        let draw = rng.random_range(0..candidates.len());
        let rep = pool
            .get_index(candidates[draw])
            .expect("candidate index in range");
        let a_indices: Vec<usize> = rep.a_indices.iter().map(|&i| a_alive[i - 1]).collect();
        let b_indices: Vec<usize> = rep.b_indices.iter().map(|&i| b_alive[i - 1]).collect();
        ledger.push(StepRecord {
            t,
            a_remaining: a_alive.len(),
            b_remaining: b_alive.len(),
            pool_size: pool.len(),
            candidates: candidates.len(),
            draw: draw as u64,
        });
        chosen.insert(rep.value.clone());
        retain_unused(&mut a_alive, &a_indices);
        retain_unused(&mut b_alive, &b_indices);
        switches.push(PairedSwitch {
            a_indices,
            b_indices,
            increment: rep.value.clone(),
        });
    }
    let d = IncrementSet::new(switches.iter().map(|s| s.increment.clone()).collect())?;
    Ok(CubicSelection {
        switches,
        d,
        ledger,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LossyParameters {
    /// Pool size `R = ⌊c0 n² / ln n⌋`.
    pub pool_size: usize,
    /// `m = ⌊c √R⌋`.
    pub m: usize,
}

/// `R` and `m` for the lossy mode. Floating point is used only for these two
/// integer parameters.
pub fn lossy_parameters(config: &RunConfig) -> Result<LossyParameters> {
    config.validate()?;
    let n = config.n;
    if n < 2 {
        return Err(Error::InstanceTooSmall(format!("n = {n}")));
    }
    let nf = n as f64;
    let pool_size = (config.c0.to_f64() * nf * nf / nf.ln()).floor() as usize;
    let m = (config.lossy_c.to_f64() * (pool_size as f64).sqrt()).floor() as usize;
    if m == 0 || 2 * m > n / 2 {
        return Err(Error::InstanceTooSmall(format!(
            "lossy mode needs 1 <= m and 2m <= n/2; got R = {pool_size}, m = {m}, n = {n}"
        )));
    }
    Ok(LossyParameters { pool_size, m })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LossySelection {
    pub params: LossyParameters,
    pub switches: Vec<PairedSwitch>,
    pub d: IncrementSet,
    pub ledger: Vec<StepRecord>,
    /// Every random draw, in the order taken.
    pub transcript: Vec<u64>,
}

/// Lexicographically smallest `(u, v)`, `u ≠ v`, over the surviving indices
/// for each value of `x_u − x_v` (or `x_v − x_u` when `reversed`).
fn difference_witnesses(
    set: &RealSet,
    alive: &[usize],
    reversed: bool,
) -> HashMap<Scalar, (usize, usize)> {
    let mut map = HashMap::new();
    for &u in alive {
        for &v in alive {
            if u != v {
                let d = if reversed {
                    set.get(v) - set.get(u)
                } else {
                    set.get(u) - set.get(v)
                };
                // alive is increasing, so the first hit is the smallest pair
                map.entry(d).or_insert((u, v));
            }
        }
    }
    map
}

fn positive_keys(map: &HashMap<Scalar, (usize, usize)>) -> Vec<Scalar> {
    let mut v: Vec<Scalar> = map.keys().filter(|x| x.is_positive()).cloned().collect();
    v.sort();
    v
}

struct LossyPool {
    values: Vec<Scalar>,
    /// Factorisations `|v| = x·y` with `x ∈ A−A`, `y ∈ B−B` positive.
    factors: HashMap<Scalar, Vec<(Scalar, Scalar)>>,
}

/// The `R` nonzero values of `(A_t−A_t)(B_t−B_t)` of smallest absolute value,
/// ties broken by value, found by a sorted-matrix merge over positive
/// difference magnitudes.
fn lossy_pool(pa: &[Scalar], pb: &[Scalar], required: usize) -> Option<LossyPool> {
    if pa.is_empty() || pb.is_empty() {
        return None;
    }
    let mut heap: BinaryHeap<Reverse<(Scalar, usize, usize)>> = pa
        .iter()
        .enumerate()
        .map(|(i, x)| Reverse((x * &pb[0], i, 0)))
        .collect();
    let mut values = Vec::with_capacity(required);
    let mut factors: HashMap<Scalar, Vec<(Scalar, Scalar)>> = HashMap::new();
    while values.len() < required {
        let Reverse((w, i, j)) = heap.pop()?;
        let mut group = vec![(i, j)];
        while heap.peek().is_some_and(|Reverse((v, _, _))| *v == w) {
            let Reverse((_, i2, j2)) = heap.pop().expect("peeked");
            group.push((i2, j2));
        }
        for &(i, j) in &group {
            if j + 1 < pb.len() {
                heap.push(Reverse((&pa[i] * &pb[j + 1], i, j + 1)));
            }
        }
        factors.insert(
            w.clone(),
            group
                .iter()
                .map(|&(i, j)| (pa[i].clone(), pb[j].clone()))
                .collect(),
        );
        values.push(-&w);
        if values.len() < required {
            values.push(w);
        }
    }
    Some(LossyPool { values, factors })
}

/// Draws `m` single transpositions from pools of `R` rectangular areas.
///
/// For each pick `δ = (a_i − a_j)(b_q − b_p)` the lexicographically smallest
/// `(i, j, p, q)` is used, and `a_i, a_j, b_p, b_q` are deleted.
pub fn select_increments_lossy(inst: &Instance, config: &RunConfig) -> Result<LossySelection> {
    config.check_instance(inst)?;
    let params = lossy_parameters(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut a_alive: Vec<usize> = (1..=inst.n()).collect();
    let mut b_alive = a_alive.clone();
    let mut chosen: HashSet<Scalar> = HashSet::new();
    let mut switches = Vec::with_capacity(params.m);
    let mut ledger = Vec::with_capacity(params.m);
    let mut transcript = Vec::with_capacity(params.m);

    for t in 1..=params.m {
        let wa = difference_witnesses(inst.a(), &a_alive, false);
        // keyed by b_q − b_p for the pair (p, q)
        let wb = difference_witnesses(inst.b(), &b_alive, true);
        let pool = lossy_pool(&positive_keys(&wa), &positive_keys(&wb), params.pool_size).ok_or(
            Error::PoolExhausted {
                step: t,
                available: 0,
                required: params.pool_size,
            },
        )?;
        let candidates: Vec<&Scalar> = pool
            .values
            .iter()
            .filter(|v| !chosen.contains(*v))
            .collect();
        if candidates.is_empty() {
            return Err(Error::PoolExhausted {
                step: t,
                available: 0,
                required: 1,
            });
        }
        let draw = rng.random_range(0..candidates.len());
        transcript.push(draw as u64);
        let delta = candidates[draw].clone();

        let magnitude = delta.abs();
        let sign_flip = delta.is_negative();
        let (i, j, p, q) = pool.factors[&magnitude]
            .iter()
            .flat_map(|(x, y)| {
                let y_signed = if sign_flip { -y } else { y.clone() };
                [(x.clone(), y_signed.clone()), (-x, -&y_signed)]
            })
            .map(|(da, db)| {
                let (i, j) = wa[&da];
                let (p, q) = wb[&db];
                (i, j, p, q)
            })
            .min()
            .expect("every pool magnitude has a factorisation");

        ledger.push(StepRecord {
            t,
            a_remaining: a_alive.len(),
            b_remaining: b_alive.len(),
            pool_size: pool.values.len(),
            candidates: candidates.len(),
            draw: draw as u64,
        });
        chosen.insert(delta.clone());
        retain_unused(&mut a_alive, &[i, j]);
        retain_unused(&mut b_alive, &[p, q]);
        // contribution (a_i − a_j)(b_q − b_p): leg (i, j) over (q, p)
        switches.push(PairedSwitch {
            a_indices: vec![i, j],
            b_indices: vec![q, p],
            increment: delta,
        });
    }
    let d = IncrementSet::new(switches.iter().map(|s| s.increment.clone()).collect())?;
    Ok(LossySelection {
        params,
        switches,
        d,
        ledger,
        transcript,
    })
}
