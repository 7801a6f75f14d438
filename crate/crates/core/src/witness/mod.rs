//! Randomized construction of disjoint switches whose increments embed a
//! translate of `Σ(D)` into the spectrum, plus the certificate that records
//! and re-checks the construction.
//!
//! Two selection modes exist. The cubic mode draws `m = ⌊n/32⌋` paired
//! switches `(i j)(k ℓ)` from the two-area pool; the lossy mode draws single
//! transpositions from the rectangular-area set.

mod certificate;
mod select;

use serde::{Deserialize, Serialize};

use crate::algebra::{Instance, Permutation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use certificate::{
    build_base_permutation, energy_accept, run_witness, verify_certificate, Check, EnergyDecision,
    VerificationReport, WitnessCertificate, CERTIFICATE_VERSION,
};
pub use select::{
    lossy_parameters, select_increments_cubic, select_increments_lossy, CubicSelection,
    LossyParameters, LossySelection, StepRecord,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Lossy,
    #[default]
    Cubic,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lossy" => Ok(Mode::Lossy),
            "cubic" => Ok(Mode::Cubic),
            other => Err(Error::InvalidConfig(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub n: usize,
    pub seed: u64,
    pub mode: Mode,
    /// Pool-size constant in `R = c0 n² / ln n` (lossy mode).
    pub c0: Scalar,
    /// Accept when `E_2(D) ≤ energy_slack · m²`.
    pub energy_slack: Scalar,
    pub max_retries: usize,
    /// `c` in the lossy switch count `m = ⌊c √R⌋`.
    pub lossy_c: Scalar,
    /// Random subsets checked against the exchange identity.
    pub verify_samples: usize,
    /// Replaces `⌊n/32⌋` in cubic mode; used to exercise tiny instances.
    pub switch_count: Option<usize>,
}

impl RunConfig {
    pub fn new(n: usize, seed: u64, mode: Mode) -> Self {
        RunConfig {
            n,
            seed,
            mode,
            c0: Scalar::new(1, 4).expect("nonzero"),
            energy_slack: Scalar::from(16),
            max_retries: 10,
            lossy_c: Scalar::new(1, 4).expect("nonzero"),
            verify_samples: 10_000,
            switch_count: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.c0.is_positive() {
            return Err(Error::InvalidConfig("c0 must be positive".into()));
        }
        if !self.lossy_c.is_positive() {
            return Err(Error::InvalidConfig(
                "lossy switch constant must be positive".into(),
            ));
        }
        if self.energy_slack < Scalar::one() {
            return Err(Error::InvalidConfig(
                "energy slack must be at least 1".into(),
            ));
        }
        if self.max_retries == 0 {
            return Err(Error::InvalidConfig(
                "max_retries must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn check_instance(&self, inst: &Instance) -> Result<()> {
        self.validate()?;
        if inst.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: inst.n(),
            });
        }
        Ok(())
    }

    /// `⌊n/32⌋` unless overridden.
    pub fn cubic_m(&self) -> usize {
        self.switch_count.unwrap_or(self.n / 32)
    }
}

/// A product of disjoint transpositions used as one cube direction.
///
/// Leg `t` is the transposition `(a_indices[2t] a_indices[2t+1])` and
/// contributes `(a_i − a_j)(b_p − b_q)` with `(p, q) = (b_indices[2t],
/// b_indices[2t+1])`. The base permutation sends `i ↦ q` and `j ↦ p`, so
/// toggling the leg adds exactly that contribution. Cubic switches have two
/// legs, `(i j)(k ℓ)` over `(p, q, r, s)`; lossy switches have one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedSwitch {
    pub a_indices: Vec<usize>,
    pub b_indices: Vec<usize>,
    pub increment: Scalar,
}

impl PairedSwitch {
    /// `(i, j, p, q)` per leg.
    pub fn legs(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        self.a_indices
            .chunks_exact(2)
            .zip(self.b_indices.chunks_exact(2))
            .map(|(a, b)| (a[0], a[1], b[0], b[1]))
    }

    /// `Σ (a_i − a_j)(b_p − b_q)` over the legs.
    pub fn evaluate(&self, inst: &Instance) -> Scalar {
        let (a, b) = (inst.a(), inst.b());
        self.legs()
            .map(|(i, j, p, q)| (a.get(i) - a.get(j)) * (b.get(p) - b.get(q)))
            .sum()
    }

    /// `Σ (a_i − a_j)(b_{π(j)} − b_{π(i)})`, the change in `S` from toggling
    /// this switch on top of `pi`.
    pub fn increment_under(&self, inst: &Instance, pi: &Permutation) -> Scalar {
        let (a, b) = (inst.a(), inst.b());
        self.legs()
            .map(|(i, j, _, _)| (a.get(i) - a.get(j)) * (b.get(pi.image(j)) - b.get(pi.image(i))))
            .sum()
    }

    /// Transpositions `(i j)` of the legs.
    pub fn transpositions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.a_indices.chunks_exact(2).map(|c| (c[0], c[1]))
    }
}
