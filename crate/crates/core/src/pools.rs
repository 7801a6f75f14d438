//! Rectangular areas `(A−A)(B−B)` and the pools of two-area increments
//! `δx + My` with disjoint index representations.

use std::collections::HashSet;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::algebra::RealSet;
use crate::error::{Error, Result};
use crate::exec::{chunks, Exec};
use crate::lanes::{unscale, with_lane2, Lane, Scaled};
use crate::scalar::Scalar;

/// Default cap on the number of products `|A−A|·|B−B|` enumerated.
pub const RECT_PRODUCT_CAP: u128 = 100_000_000;
/// Default cap on the number of pair sums enumerated by [`two_area_set`].
pub const TWO_AREA_PAIR_CAP: u128 = 50_000_000;

/// A point `(a_i, b_j)` of the grid `A × B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPoint {
    pub x: Scalar,
    pub y: Scalar,
    pub a_index: usize,
    pub b_index: usize,
}

impl GridPoint {
    pub fn new(a: &RealSet, b: &RealSet, a_index: usize, b_index: usize) -> Self {
        GridPoint {
            x: a.get(a_index).clone(),
            y: b.get(b_index).clone(),
            a_index,
            b_index,
        }
    }
}

/// Signed area `(q.x − p.x)(q.y − p.y)`.
pub fn rect_area(p: &GridPoint, q: &GridPoint) -> Scalar {
    (&q.x - &p.x) * (&q.y - &p.y)
}

fn differences<L: Lane>(xs: &[L]) -> Vec<L> {
    let mut d: Vec<L> = xs
        .iter()
        .flat_map(|x| xs.iter().map(move |y| x.clone() - y.clone()))
        .collect();
    d.sort_unstable();
    d.dedup();
    d
}

fn sorted_union<L: Lane>(pieces: Vec<Vec<L>>) -> Vec<L> {
    let mut all: Vec<L> = pieces.into_iter().flatten().collect();
    all.sort_unstable();
    all.dedup();
    all
}

fn rect_lane<L: Lane>(a: &[L], b: &[L], exec: Exec) -> Vec<L> {
    let da = differences(a);
    let db = differences(b);
    let parts = chunks(da.len(), 64);
    let pieces = exec.map_range(parts.len(), |p| {
        let mut out: Vec<L> = da[parts[p].clone()]
            .iter()
            .flat_map(|x| db.iter().map(move |y| x.clone() * y.clone()))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    });
    sorted_union(pieces)
}

fn distinct_differences(xs: &[Scalar]) -> usize {
    let mut d: Vec<Scalar> = xs
        .iter()
        .flat_map(|x| xs.iter().map(move |y| x - y))
        .collect();
    d.sort();
    d.dedup();
    d.len()
}

fn check_rect_cap(a: &RealSet, b: &RealSet, cap: u128) -> Result<()> {
    let products =
        distinct_differences(a.as_slice()) as u128 * distinct_differences(b.as_slice()) as u128;
    if products > cap {
        return Err(Error::GuardExceeded {
            what: "difference products",
            limit: cap,
            actual: products,
        });
    }
    Ok(())
}

/// `(A−A)(B−B)`, sorted and deduplicated.
pub fn rect_area_set(a: &RealSet, b: &RealSet) -> Result<Vec<Scalar>> {
    rect_area_set_with(a, b, RECT_PRODUCT_CAP, Exec::default())
}

pub fn rect_area_set_with(a: &RealSet, b: &RealSet, cap: u128, exec: Exec) -> Result<Vec<Scalar>> {
    check_rect_cap(a, b, cap)?;
    let sa = Scaled::new(a.as_slice());
    let sb = Scaled::new(b.as_slice());
    let denom = &sa.denom * &sb.denom;
    Ok(with_lane2!(sa, sb, 3, |va, vb| rect_lane(&va, &vb, exec)
        .iter()
        .map(|v| unscale(v, &denom))
        .collect()))
}

/// `(A−A)(B−B) + (A−A)(B−B)` by full enumeration. `cap` bounds the number of
/// unordered pairs of areas summed.
pub fn two_area_set(a: &RealSet, b: &RealSet, cap: u128) -> Result<Vec<Scalar>> {
    two_area_set_with(a, b, cap, Exec::default())
}

// the lane body is shared by i128 and BigInt
#[allow(clippy::clone_on_copy)]
pub fn two_area_set_with(a: &RealSet, b: &RealSet, cap: u128, exec: Exec) -> Result<Vec<Scalar>> {
    check_rect_cap(a, b, cap.max(RECT_PRODUCT_CAP))?;
    let sa = Scaled::new(a.as_slice());
    let sb = Scaled::new(b.as_slice());
    let denom = &sa.denom * &sb.denom;
    with_lane2!(sa, sb, 4, |va, vb| {
        let r = rect_lane(&va, &vb, exec);
        let pairs = r.len() as u128 * (r.len() as u128 + 1) / 2;
        if pairs > cap {
            return Err(Error::GuardExceeded {
                what: "two-area pair sums",
                limit: cap,
                actual: pairs,
            });
        }
        let parts = chunks(r.len(), 256);
        let pieces = exec.map_range(parts.len(), |p| {
            let mut out = Vec::new();
            for i in parts[p].clone() {
                for j in i..r.len() {
                    out.push(r[i].clone() + r[j].clone());
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        });
        Ok(sorted_union(pieces)
            .iter()
            .map(|v| unscale(v, &denom))
            .collect())
    })
}

/// Membership oracle for the two-area set: `u ∈ R + R` iff `u − r ∈ R` for
/// some `r ∈ R`. Linear in `|R|` per query, no quadratic enumeration.
#[derive(Debug, Clone)]
pub struct TwoAreaIndex {
    areas: Vec<Scalar>,
    lookup: HashSet<Scalar>,
}

impl TwoAreaIndex {
    pub fn new(a: &RealSet, b: &RealSet) -> Result<Self> {
        let areas = rect_area_set(a, b)?;
        let lookup = areas.iter().cloned().collect();
        Ok(TwoAreaIndex { areas, lookup })
    }

    pub fn areas(&self) -> &[Scalar] {
        &self.areas
    }

    pub fn contains(&self, u: &Scalar) -> bool {
        self.areas.iter().any(|r| self.lookup.contains(&(u - r)))
    }
}

/// The injective family `T = δP + MP'` of the single-gap construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Warmup {
    pub values: Vec<Scalar>,
    /// Smallest gap of `A`.
    pub gap: Scalar,
    /// `b_max − b_min`.
    pub diameter: Scalar,
    /// `{b_i − b_1}`.
    pub p: Vec<Scalar>,
    /// `{a_{2j−1} − a_1 : 1 ≤ j ≤ ⌈n/2⌉}`.
    pub p_prime: Vec<Scalar>,
}

fn min_gap(a: &RealSet) -> (Scalar, usize) {
    let s = a.as_slice();
    let mut best = (&s[1] - &s[0], 1);
    for i in 2..s.len() {
        let g = &s[i] - &s[i - 1];
        if g < best.0 {
            best = (g, i);
        }
    }
    best
}

/// Builds `T = δP + MP'` and checks that `(x, y) ↦ δx + My` is injective on
/// `P × P'`, so `|T| = |P||P'| ≥ |A||B|/2`.
pub fn two_area_warmup(a: &RealSet, b: &RealSet) -> Result<Warmup> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::TooFewElements {
            needed: 2,
            found: a.len().min(b.len()),
        });
    }
    let (gap, _) = min_gap(a);
    let diameter = b.get(b.len()) - b.get(1);
    let p: Vec<Scalar> = b.as_slice().iter().map(|y| y - b.get(1)).collect();
    let p_prime: Vec<Scalar> = (1..=a.len().div_ceil(2))
        .map(|j| a.get(2 * j - 1) - a.get(1))
        .collect();
    let mut values = Vec::with_capacity(p.len() * p_prime.len());
    let mut seen = HashSet::with_capacity(p.len() * p_prime.len());
    for y in &p_prime {
        for x in &p {
            let v = &gap * x + &diameter * y;
            if !seen.insert(v.clone()) {
                return Err(Error::InjectivityViolation(format!("value {v} hit twice")));
            }
            values.push(v);
        }
    }
    values.sort();
    Ok(Warmup {
        values,
        gap,
        diameter,
        p,
        p_prime,
    })
}

/// `u = (a_i − a_j)(b_p − b_q) + (a_k − a_ℓ)(b_r − b_s)` with four distinct
/// `A`-indices and four distinct `B`-indices, all 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedRepresentation {
    /// `(i, j, k, ℓ)`.
    pub a_indices: [usize; 4],
    /// `(p, q, r, s)`.
    pub b_indices: [usize; 4],
    pub value: Scalar,
}

impl PairedRepresentation {
    pub fn evaluate(&self, a: &RealSet, b: &RealSet) -> Scalar {
        let [i, j, k, l] = self.a_indices;
        let [p, q, r, s] = self.b_indices;
        (a.get(i) - a.get(j)) * (b.get(p) - b.get(q))
            + (a.get(k) - a.get(l)) * (b.get(r) - b.get(s))
    }

    /// Distinctness, range and value checks.
    pub fn check(&self, a: &RealSet, b: &RealSet) -> Result<()> {
        check_four(&self.a_indices, a.len())?;
        check_four(&self.b_indices, b.len())?;
        let got = self.evaluate(a, b);
        if got != self.value {
            return Err(Error::InvariantViolated(format!(
                "representation evaluates to {got}, stored {}",
                self.value
            )));
        }
        Ok(())
    }
}

fn check_four(idx: &[usize; 4], n: usize) -> Result<()> {
    for (pos, &i) in idx.iter().enumerate() {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if idx[..pos].contains(&i) {
            return Err(Error::OverlappingIndices(i));
        }
    }
    Ok(())
}

/// A pool `U(A, B)` of two-area values, each with a disjoint-index
/// representation. Iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pool {
    entries: IndexMap<Scalar, PairedRepresentation>,
    /// `(|A|, |B|)`.
    pub source_sizes: (usize, usize),
    pub gap: Scalar,
    /// 1-based `s` with `a_{s+1} − a_s` minimal; smallest such index.
    pub gap_index: usize,
    pub diameter: Scalar,
    /// 1-based index of the anchor `a_⋆`.
    pub anchor_index: usize,
}

impl Pool {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = &Scalar> {
        self.entries.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = &PairedRepresentation> {
        self.entries.values()
    }

    pub fn representation(&self, value: &Scalar) -> Option<&PairedRepresentation> {
        self.entries.get(value)
    }

    pub fn get_index(&self, i: usize) -> Option<&PairedRepresentation> {
        self.entries.get_index(i).map(|(_, r)| r)
    }

    /// `(m − 3)(⌈n/2⌉ − 2)` for `n = |A|`, `m = |B|`.
    pub fn size_lower_bound(&self) -> usize {
        pool_size_lower_bound(self.source_sizes.0, self.source_sizes.1)
    }
}

/// `(m − 3)(⌈n/2⌉ − 2)`, saturating at zero.
pub fn pool_size_lower_bound(n: usize, m: usize) -> usize {
    m.saturating_sub(3) * n.div_ceil(2).saturating_sub(2)
}

/// The two-area pool `U(A, B) = δP + MP'` with
///
/// * `δ = a_{s+1} − a_s` the smallest gap (smallest such `s`),
/// * anchor `a_⋆ = a_1`, or `a_n` when `s = 1`,
/// * `P = {b_i − b_2 : 3 ≤ i ≤ m−1}`,
/// * `P' = {a_t − a_⋆ : t odd, t ∉ {s, s+1, ⋆}}`,
/// * `M = b_m − b_1`,
///
/// so each `u` is `(a_{s+1} − a_s)(b_i − b_2) + (a_t − a_⋆)(b_m − b_1)`.
pub fn pool_construct(a: &RealSet, b: &RealSet) -> Result<Pool> {
    let (n, m) = (a.len(), b.len());
    if n < 4 || m < 4 {
        return Err(Error::TooFewElements {
            needed: 4,
            found: n.min(m),
        });
    }
    let (gap, s) = min_gap(a);
    let anchor = if s == 1 { n } else { 1 };
    let diameter = b.get(m) - b.get(1);
    let odd: Vec<usize> = (1..=n.div_ceil(2))
        .map(|j| 2 * j - 1)
        .filter(|&t| t != s && t != s + 1 && t != anchor)
        .collect();

    let mut entries = IndexMap::with_capacity((m - 3) * odd.len());
    for i in 3..m {
        let x = b.get(i) - b.get(2);
        let dx = &gap * &x;
        for &t in &odd {
            let y = a.get(t) - a.get(anchor);
            let value = &dx + &diameter * &y;
            let rep = PairedRepresentation {
                a_indices: [s + 1, s, t, anchor],
                b_indices: [i, 2, m, 1],
                value: value.clone(),
            };
            if entries.insert(value, rep).is_some() {
                return Err(Error::InjectivityViolation(format!(
                    "pool value repeated at b-index {i}, a-index {t}"
                )));
            }
        }
    }
    let pool = Pool {
        entries,
        source_sizes: (n, m),
        gap,
        gap_index: s,
        diameter,
        anchor_index: anchor,
    };
    if pool.len() < pool.size_lower_bound() {
        return Err(Error::InvariantViolated(format!(
            "pool has {} values, below (m-3)(ceil(n/2)-2) = {}",
            pool.len(),
            pool.size_lower_bound()
        )));
    }
    Ok(pool)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> RealSet {
        RealSet::new(v.iter().map(|&x| Scalar::from(x)).collect()).unwrap()
    }

    fn ints(v: &[Scalar]) -> Vec<i64> {
        v.iter().map(|x| x.to_f64() as i64).collect()
    }

    #[test]
    fn rect_area_examples() {
        let pt = |x: i64, y: i64| GridPoint {
            x: x.into(),
            y: y.into(),
            a_index: 1,
            b_index: 1,
        };
        assert_eq!(rect_area(&pt(1, 1), &pt(3, 4)), Scalar::from(6));
        assert_eq!(rect_area(&pt(1, 1), &pt(1, 1)), Scalar::zero());
        assert_eq!(rect_area(&pt(0, 0), &pt(2, -3)), Scalar::from(-6));
    }

    #[test]
    fn rect_area_set_examples() {
        let s2 = set(&[1, 2]);
        assert_eq!(ints(&rect_area_set(&s2, &s2).unwrap()), vec![-1, 0, 1]);
        let s3 = set(&[1, 2, 3]);
        assert_eq!(
            ints(&rect_area_set(&s3, &s3).unwrap()),
            vec![-4, -2, -1, 0, 1, 2, 4]
        );
        assert_eq!(ints(&rect_area_set(&set(&[5]), &s3).unwrap()), vec![0]);
    }

    #[test]
    fn warmup_examples() {
        let s2 = set(&[1, 2]);
        let w = two_area_warmup(&s2, &s2).unwrap();
        assert_eq!(ints(&w.values), vec![0, 1]);
        let s4 = set(&[1, 2, 3, 4]);
        let w = two_area_warmup(&s4, &s4).unwrap();
        assert_eq!(w.values.len(), 8);
        assert_eq!(ints(&w.p_prime), vec![0, 2]);
        assert!(two_area_warmup(&set(&[1]), &s2).is_err());
    }

    #[test]
    fn pool_on_four_points() {
        let s4 = set(&[1, 2, 3, 4]);
        let pool = pool_construct(&s4, &s4).unwrap();
        assert_eq!(pool.len(), 1);
        let rep = pool.get_index(0).unwrap();
        assert_eq!(rep.value, Scalar::from(-2));
        assert_eq!(rep.a_indices, [2, 1, 3, 4]);
        assert_eq!(rep.b_indices, [3, 2, 4, 1]);
        rep.check(&s4, &s4).unwrap();
    }

    #[test]
    fn pool_on_eight_points() {
        let s8 = RealSet::interval(8).unwrap();
        let pool = pool_construct(&s8, &s8).unwrap();
        assert!(pool.len() >= 10 && pool.len() >= 8);
        for rep in pool.entries() {
            rep.check(&s8, &s8).unwrap();
        }
        assert!(pool_construct(&set(&[1, 2, 3]), &s8).is_err());
    }

    #[test]
    fn two_area_examples() {
        let s2 = set(&[1, 2]);
        assert_eq!(
            ints(&two_area_set(&s2, &s2, 1000).unwrap()),
            vec![-2, -1, 0, 1, 2]
        );
        assert_eq!(
            ints(&two_area_set(&set(&[3]), &set(&[7]), 1000).unwrap()),
            vec![0]
        );
        let s6 = RealSet::interval(6).unwrap();
        let t = two_area_set(&s6, &s6, TWO_AREA_PAIR_CAP).unwrap();
        assert!(t.iter().all(|v| v.abs() <= Scalar::from(50)));
        assert!(matches!(
            two_area_set(&s6, &s6, 10),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn membership_index_agrees_with_enumeration() {
        let a = set(&[-3, 0, 1, 5, 6]);
        let b = set(&[2, 4, 9, 10]);
        let full = two_area_set(&a, &b, TWO_AREA_PAIR_CAP).unwrap();
        let idx = TwoAreaIndex::new(&a, &b).unwrap();
        let lo = full.first().unwrap().to_f64() as i64 - 3;
        let hi = full.last().unwrap().to_f64() as i64 + 3;
        for v in lo..=hi {
            let v = Scalar::from(v);
            assert_eq!(idx.contains(&v), full.binary_search(&v).is_ok(), "{v}");
        }
    }
}
