//! Integer lanes for the hot loops.
//!
//! A list of rationals is rescaled by the lcm of its denominators into
//! integers. Sums, products and dot products then run on `i128` when the
//! magnitudes leave enough headroom and on `BigInt` otherwise; both paths are
//! exact and the choice is invisible to callers.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalar::Scalar;

pub(crate) trait Lane:
    Clone
    + Ord
    + Hash
    + Send
    + Sync
    + Debug
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn to_bigint(&self) -> BigInt;
}

impl Lane for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Lane for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Bits of headroom kept free in the `i128` lane.
const I128_BUDGET: u64 = 125;

pub(crate) fn log2_ceil(n: usize) -> u64 {
    if n <= 1 {
        0
    } else {
        u64::from(usize::BITS - (n - 1).leading_zeros())
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Scaled {
    pub nums: Vec<BigInt>,
    pub denom: BigInt,
    pub bits: u64,
}

impl Scaled {
    pub fn new(xs: &[Scalar]) -> Self {
        let denom = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let nums: Vec<BigInt> = xs
            .iter()
            .map(|x| x.numer() * (&denom / x.denom()))
            .collect();
        let bits = nums.iter().map(|v| v.bits()).max().unwrap_or(0);
        Scaled { nums, denom, bits }
    }

    /// `i128` values if `bits + headroom` stays inside the budget.
    pub fn small(&self, headroom: u64) -> Option<Vec<i128>> {
        if self.bits + headroom > I128_BUDGET {
            return None;
        }
        self.nums.iter().map(|v| v.to_i128()).collect()
    }

    pub fn big(&self) -> Vec<BigInt> {
        self.nums.clone()
    }
}

pub(crate) fn unscale(v: &impl Lane, denom: &BigInt) -> Scalar {
    Scalar::new(v.to_bigint(), denom.clone()).expect("lane denominators are positive")
}

/// Runs `$body` with `$v` bound to either `Vec<i128>` or `Vec<BigInt>`.
macro_rules! with_lane {
    ($scaled:expr, $headroom:expr, |$v:ident| $body:expr) => {
        match $scaled.small($headroom) {
            Some($v) => $body,
            None => {
                let $v = $scaled.big();
                $body
            }
        }
    };
}

/// Same as [`with_lane!`] for two lists sharing one lane type.
macro_rules! with_lane2 {
    ($sa:expr, $sb:expr, $headroom:expr, |$va:ident, $vb:ident| $body:expr) => {
        match (
            $sa.small($headroom + $sb.bits),
            $sb.small($headroom + $sa.bits),
        ) {
            (Some($va), Some($vb)) => $body,
            _ => {
                let $va = $sa.big();
                let $vb = $sb.big();
                $body
            }
        }
    };
}

pub(crate) use {with_lane, with_lane2};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_is_exact() {
        let xs: Vec<Scalar> = ["1/2", "-1/3", "5"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let s = Scaled::new(&xs);
        assert_eq!(s.denom, BigInt::from(6));
        assert_eq!(
            s.nums,
            vec![BigInt::from(3), BigInt::from(-2), BigInt::from(30)]
        );
        for (x, v) in xs.iter().zip(&s.nums) {
            assert_eq!(&unscale(v, &s.denom), x);
        }
    }

    #[test]
    fn falls_back_when_too_wide() {
        let huge = Scalar::from_int(BigInt::one() << 124u32);
        let s = Scaled::new(&[huge]);
        assert!(s.small(0).is_some());
        assert!(s.small(4).is_none());
    }

    #[test]
    fn log2_ceil_values() {
        assert_eq!(log2_ceil(1), 0);
        assert_eq!(log2_ceil(2), 1);
        assert_eq!(log2_ceil(3), 2);
        assert_eq!(log2_ceil(512), 9);
    }
}
