//! Exact arithmetic toolkit for permutation dot products.
//!
//! For sets `A = {a_1 < … < a_n}` and `B = {b_1 < … < b_n}` of rationals, the
//! permutation dot product is `S(π) = Σ a_i b_{π(i)}`. This crate provides the
//! algebra of swap increments, subset-sum and additive-energy machinery, the
//! rectangular-area pools, a randomized construction of disjoint paired
//! switches whose increments embed a large subset-sum set into the spectrum
//! `{S(π) : π ∈ S_n}`, and brute-force oracles to cross-check all of it.
//!
//! All certified paths are exact. The enumeration engines run data-parallel
//! through rayon when the `parallel` feature is enabled (the default) and fall
//! back to sequential loops otherwise; see [`exec::Exec`].

pub mod algebra;
pub mod cli;
pub mod error;
pub mod exec;
pub mod families;
mod lanes;
pub mod oracle;
pub mod pools;
pub mod scalar;
pub mod sumset;
pub mod witness;

pub use algebra::{Instance, Permutation, RealSet};
pub use error::{Error, Result};
pub use exec::Exec;
pub use scalar::Scalar;
pub use sumset::IncrementSet;
