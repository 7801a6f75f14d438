use std::collections::HashSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::select::{select_increments_cubic, select_increments_lossy};
use super::{Mode, PairedSwitch, RunConfig};
use crate::algebra::{DotKernel, Instance, Permutation, RealSet};
use crate::error::{Error, Result};
use crate::exec::{chunks, Exec};
use crate::scalar::Scalar;
use crate::sumset::{
    additive_energy, subset_sum_count, supportive_halasz_lower_bound, IncrementSet,
};

pub const CERTIFICATE_VERSION: u32 = 1;

/// Exhaustive subset checking up to this many switches.
const EXHAUSTIVE_LIMIT: usize = 15;

/// Stream offset so verification draws never reuse construction draws.
const VERIFY_STREAM: u64 = 0x7665_7269_6679;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyDecision {
    pub energy: u128,
    pub threshold: Scalar,
    pub accepted: bool,
}

/// Accepts `D` when `E_2(D) ≤ slack · |D|²`.
pub fn energy_accept(d: &IncrementSet, slack: &Scalar) -> Result<EnergyDecision> {
    let m = d.len();
    if m == 0 {
        return Err(Error::TooFewElements {
            needed: 1,
            found: 0,
        });
    }
    let energy = additive_energy(d, 2)?.energy;
    let threshold = slack * &Scalar::from_int(BigInt::from(m) * BigInt::from(m));
    let accepted = Scalar::from_int(BigInt::from(energy)) <= threshold;
    Ok(EnergyDecision {
        energy,
        threshold,
        accepted,
    })
}

/// `π₀` with `π₀(i) = q`, `π₀(j) = p` for every leg, and the free positions
/// sent in increasing order to the free `b`-indices.
pub fn build_base_permutation(n: usize, switches: &[PairedSwitch]) -> Result<Permutation> {
    let mut images: Vec<Option<usize>> = vec![None; n];
    let mut used_b = vec![false; n];
    let mut assign = |pos: usize, img: usize| -> Result<()> {
        for x in [pos, img] {
            if x == 0 || x > n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
        }
        if images[pos - 1].is_some() {
            return Err(Error::OverlappingIndices(pos));
        }
        if std::mem::replace(&mut used_b[img - 1], true) {
            return Err(Error::InvalidPermutation(format!(
                "b-index {img} prescribed twice"
            )));
        }
        images[pos - 1] = Some(img - 1);
        Ok(())
    };
    for sw in switches {
        if sw.a_indices.len() != sw.b_indices.len() || sw.a_indices.len() % 2 != 0 {
            return Err(Error::InvalidPermutation("malformed switch".into()));
        }
        for (i, j, p, q) in sw.legs() {
            assign(i, q)?;
            assign(j, p)?;
        }
    }
    let mut free_b = (0..n).filter(|&v| !used_b[v]);
    let images = images
        .into_iter()
        .map(|img| img.unwrap_or_else(|| free_b.next().expect("as many free images as positions")))
        .collect();
    Ok(Permutation::from_zero_based(images))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratios {
    pub sigma_over_m3: Scalar,
    pub sigma_over_n3: Scalar,
}

/// Serialized record of a construction. Field order is the JSON layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub version: u32,
    pub mode: Mode,
    pub n: usize,
    /// Seed of the accepted attempt.
    pub seed: u64,
    pub attempts: usize,
    pub c0: Scalar,
    pub energy_slack: Scalar,
    pub m: usize,
    pub a: RealSet,
    pub b: RealSet,
    pub switches: Vec<PairedSwitch>,
    pub pi0: Permutation,
    pub energy2: u64,
    pub sigma_d_size: u64,
    pub halasz_k: usize,
    pub halasz_bound: u64,
    pub dissociated: bool,
    pub ratios: Ratios,
    pub checks: Vec<Check>,
}

impl WitnessCertificate {
    pub fn increments(&self) -> Vec<Scalar> {
        self.switches.iter().map(|s| s.increment.clone()).collect()
    }

    pub fn instance(&self) -> Result<Instance> {
        Instance::new(self.a.clone(), self.b.clone())
    }

    pub fn all_passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// `(k, bound)` from the block decomposition with the largest `k ≤ 2` the
/// set supports; a single increment gives the trivial bound 1.
fn halasz_for(d: &IncrementSet) -> Result<(usize, u64)> {
    let nonzero = d.without_zero().0.len();
    for k in [2, 1] {
        if nonzero >= 2 * k {
            return Ok((k, supportive_halasz_lower_bound(d, k)?.bound));
        }
    }
    Ok((0, 1))
}

fn ratio(num: u64, den: u128) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den)).expect("positive denominator")
}

/// Runs selection with retries until `E_2(D) ≤ slack · m²`, then assembles
/// and verifies the certificate. Attempt `r` uses seed `seed + r`.
pub fn run_witness(inst: &Instance, config: &RunConfig) -> Result<WitnessCertificate> {
    config.check_instance(inst)?;
    let mut last_energy = 0;
    for attempt in 0..config.max_retries {
        let mut cfg = config.clone();
        cfg.seed = config.seed.wrapping_add(attempt as u64);
        let (switches, d) = match config.mode {
            Mode::Cubic => {
                let sel = select_increments_cubic(inst, &cfg)?;
                (sel.switches, sel.d)
            }
            Mode::Lossy => {
                let sel = select_increments_lossy(inst, &cfg)?;
                (sel.switches, sel.d)
            }
        };
        let decision = energy_accept(&d, &config.energy_slack)?;
        last_energy = decision.energy;
        if !decision.accepted {
            continue;
        }
        let m = d.len();
        let pi0 = build_base_permutation(inst.n(), &switches)?;
        let sigma = subset_sum_count(&d, None)? as u64;
        let (halasz_k, halasz_bound) = halasz_for(&d)?;
        let n3 = (inst.n() as u128).pow(3);
        let mut cert = WitnessCertificate {
            version: CERTIFICATE_VERSION,
            mode: config.mode,
            n: inst.n(),
            seed: cfg.seed,
            attempts: attempt + 1,
            c0: config.c0.clone(),
            energy_slack: config.energy_slack.clone(),
            m,
            a: inst.a().clone(),
            b: inst.b().clone(),
            switches,
            pi0,
            energy2: decision.energy as u64,
            sigma_d_size: sigma,
            halasz_k,
            halasz_bound,
            dissociated: m < 64 && sigma == 1u64 << m,
            ratios: Ratios {
                sigma_over_m3: ratio(sigma, (m as u128).pow(3)),
                sigma_over_n3: ratio(sigma, n3),
            },
            checks: Vec::new(),
        };
        cert.checks = verify_certificate(inst, &cert, config.verify_samples).checks;
        return Ok(cert);
    }
    Err(Error::RetriesExhausted {
        attempts: config.max_retries,
        last_energy,
    })
}

fn structure_check(inst: &Instance, cert: &WitnessCertificate) -> Check {
    let name = "structure";
    let n = inst.n();
    if cert.n != n || &cert.a != inst.a() || &cert.b != inst.b() {
        return Check::new(
            name,
            false,
            "certificate instance differs from the supplied one",
        );
    }
    if cert.pi0.len() != n {
        return Check::new(
            name,
            false,
            format!("pi0 has length {}, expected {n}", cert.pi0.len()),
        );
    }
    if cert.switches.len() != cert.m {
        return Check::new(
            name,
            false,
            format!("{} switches, m = {}", cert.switches.len(), cert.m),
        );
    }
    let arity = match cert.mode {
        Mode::Cubic => 4,
        Mode::Lossy => 2,
    };
    let mut a_used = HashSet::new();
    let mut b_used = HashSet::new();
    for (t, sw) in cert.switches.iter().enumerate() {
        if sw.a_indices.len() != arity || sw.b_indices.len() != arity {
            return Check::new(name, false, format!("switch {} has the wrong arity", t + 1));
        }
        for &i in sw.a_indices.iter().chain(&sw.b_indices) {
            if i == 0 || i > n {
                return Check::new(
                    name,
                    false,
                    format!("switch {} index {i} out of range", t + 1),
                );
            }
        }
        for &i in &sw.a_indices {
            if !a_used.insert(i) {
                return Check::new(
                    name,
                    false,
                    format!("a-index {i} reused (switch {})", t + 1),
                );
            }
        }
        for &i in &sw.b_indices {
            if !b_used.insert(i) {
                return Check::new(
                    name,
                    false,
                    format!("b-index {i} reused (switch {})", t + 1),
                );
            }
        }
    }
    let incs = cert.increments();
    if let Some(t) = incs.iter().position(Scalar::is_zero) {
        return Check::new(name, false, format!("increment {} is zero", t + 1));
    }
    if IncrementSet::new(incs).is_err() {
        return Check::new(name, false, "increments are not distinct");
    }
    Check::new(
        name,
        true,
        format!(
            "{} switches, {} a-indices and {} b-indices pairwise distinct",
            cert.m,
            a_used.len(),
            b_used.len()
        ),
    )
}

fn increments_check(inst: &Instance, cert: &WitnessCertificate) -> Check {
    let name = "increments";
    for (t, sw) in cert.switches.iter().enumerate() {
        let from_pi0 = sw.increment_under(inst, &cert.pi0);
        if from_pi0 != sw.increment {
            return Check::new(
                name,
                false,
                format!(
                    "switch {}: pi0 gives {from_pi0}, certificate records {}",
                    t + 1,
                    sw.increment
                ),
            );
        }
        let from_rep = sw.evaluate(inst);
        if from_rep != sw.increment {
            return Check::new(
                name,
                false,
                format!(
                    "switch {}: representation gives {from_rep}, certificate records {}",
                    t + 1,
                    sw.increment
                ),
            );
        }
    }
    Check::new(
        name,
        true,
        format!("all {} increments recomputed from pi0", cert.m),
    )
}

/// `π_I` and `S(π₀) + Σ_{t∈I} δ_t` agree for every mask.
fn exchange_failures(
    inst: &Instance,
    cert: &WitnessCertificate,
    masks: &[Vec<bool>],
    exec: Exec,
) -> Option<String> {
    let kernel = DotKernel::new(inst);
    let base = kernel.eval(&cert.pi0);
    let parts = chunks(masks.len(), 256);
    let failures: Vec<Option<String>> = exec.map_range(parts.len(), |p| {
        for mask in &masks[parts[p].clone()] {
            let mut pi = cert.pi0.clone();
            let mut expected = base.clone();
            for (sw, _) in cert.switches.iter().zip(mask).filter(|(_, on)| **on) {
                for (i, j) in sw.transpositions() {
                    pi = pi
                        .swap_positions(i, j)
                        .expect("indices checked by structure");
                }
                expected += &sw.increment;
            }
            let got = kernel.eval(&pi);
            if got != expected {
                let set: Vec<usize> = mask
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| **b)
                    .map(|(t, _)| t + 1)
                    .collect();
                return Some(format!(
                    "I = {set:?}: S(pi_I) = {got}, S(pi0) + sum = {expected}"
                ));
            }
        }
        None
    });
    failures.into_iter().flatten().next()
}

/// Re-derives everything a certificate claims.
///
/// Checks, in order: `structure`, `increments` (each `δ_t` from `π₀`),
/// `exchange_identity` (`S(π_I) = S(π₀) + Σ_{t∈I} δ_t` for `I = ∅`, `I = [m]`
/// and `samples` random subsets), `translate_realized` (all `2^m` subsets when
/// `m ≤ 15`), `energy`, `energy_within_slack`, `sigma_d_size` and
/// `halasz_bound`.
pub fn verify_certificate(
    inst: &Instance,
    cert: &WitnessCertificate,
    samples: usize,
) -> VerificationReport {
    let mut checks = vec![structure_check(inst, cert)];
    if !checks[0].pass {
        return VerificationReport { checks };
    }
    checks.push(increments_check(inst, cert));

    let m = cert.m;
    let exec = Exec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cert.seed);
    rng.set_stream(VERIFY_STREAM);
    let mut masks = vec![vec![false; m], vec![true; m]];
    masks.extend((0..samples).map(|_| (0..m).map(|_| rng.random_bool(0.5)).collect()));
    checks.push(match exchange_failures(inst, cert, &masks, exec) {
        None => Check::new(
            "exchange_identity",
            true,
            format!("{} subsets including the empty and full sets", masks.len()),
        ),
        Some(e) => Check::new("exchange_identity", false, e),
    });

    checks.push(if m <= EXHAUSTIVE_LIMIT {
        let all: Vec<Vec<bool>> = (0..1u64 << m)
            .map(|bits| (0..m).map(|t| bits >> t & 1 == 1).collect())
            .collect();
        match exchange_failures(inst, cert, &all, exec) {
            None => Check::new(
                "translate_realized",
                true,
                format!("all {} subsets realized", all.len()),
            ),
            Some(e) => Check::new("translate_realized", false, e),
        }
    } else {
        Check::new(
            "translate_realized",
            true,
            format!("m = {m} > {EXHAUSTIVE_LIMIT}: covered by the sampled exchange identity"),
        )
    });

    let d = match IncrementSet::new(cert.increments()) {
        Ok(d) => d,
        Err(e) => {
            checks.push(Check::new("energy", false, e.to_string()));
            return VerificationReport { checks };
        }
    };
    match energy_accept(&d, &cert.energy_slack) {
        Ok(dec) => {
            checks.push(Check::new(
                "energy",
                dec.energy == u128::from(cert.energy2),
                format!("E2(D) = {}, recorded {}", dec.energy, cert.energy2),
            ));
            checks.push(Check::new(
                "energy_within_slack",
                dec.accepted,
                format!(
                    "E2(D) = {} against slack * m^2 = {}",
                    dec.energy, dec.threshold
                ),
            ));
        }
        Err(e) => checks.push(Check::new("energy", false, e.to_string())),
    }
    match subset_sum_count(&d, None) {
        Ok(sigma) => checks.push(Check::new(
            "sigma_d_size",
            sigma as u64 == cert.sigma_d_size,
            format!("|Sigma(D)| = {sigma}, recorded {}", cert.sigma_d_size),
        )),
        Err(e) => checks.push(Check::new("sigma_d_size", false, e.to_string())),
    }
    match halasz_for(&d) {
        Ok((k, bound)) => checks.push(Check::new(
            "halasz_bound",
            k == cert.halasz_k && bound == cert.halasz_bound && cert.sigma_d_size >= bound,
            format!(
                "block bound {bound} (k = {k}), recorded {}; |Sigma(D)| = {}",
                cert.halasz_bound, cert.sigma_d_size
            ),
        )),
        Err(e) => checks.push(Check::new("halasz_bound", false, e.to_string())),
    }
    VerificationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_permutation_examples() {
        assert_eq!(
            build_base_permutation(5, &[]).unwrap(),
            Permutation::identity(5)
        );
        let sw = PairedSwitch {
            a_indices: vec![1, 2, 3, 4],
            b_indices: vec![5, 6, 7, 8],
            increment: Scalar::zero(),
        };
        let pi0 = build_base_permutation(8, std::slice::from_ref(&sw)).unwrap();
        assert_eq!(pi0.images(), vec![6, 5, 8, 7, 1, 2, 3, 4]);
        let inst = Instance::interval(8).unwrap();
        assert_eq!(sw.increment_under(&inst, &pi0), sw.evaluate(&inst));
        assert!(build_base_permutation(8, &[sw.clone(), sw]).is_err());
    }

    #[test]
    fn energy_accept_examples() {
        let sidon = IncrementSet::from_ints(&[1, 2, 5, 11, 24, 44]);
        let dec = energy_accept(&sidon, &Scalar::from(16)).unwrap();
        assert_eq!(dec.energy, 2 * 36 - 6);
        assert!(dec.accepted);
        let ap = IncrementSet::from_ints(&(1..=100).collect::<Vec<_>>());
        assert!(!energy_accept(&ap, &Scalar::from(2)).unwrap().accepted);
        assert!(
            energy_accept(&IncrementSet::from_ints(&[3]), &Scalar::one())
                .unwrap()
                .accepted
        );
    }

    #[test]
    fn certificate_round_trip_and_tamper() {
        let inst = Instance::interval(128).unwrap();
        let mut cfg = RunConfig::new(128, 3, Mode::Cubic);
        cfg.verify_samples = 200;
        let cert = run_witness(&inst, &cfg).unwrap();
        assert!(cert.all_passed(), "{:?}", cert.checks);
        let back = WitnessCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);

        let mut bad = cert.clone();
        bad.switches[1].increment = &bad.switches[1].increment + &Scalar::one();
        let report = verify_certificate(&inst, &bad, 50);
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.name, "increments");
        assert!(fail.detail.starts_with("switch 2"), "{}", fail.detail);

        let empty = verify_certificate(&inst, &cert, 0);
        assert!(empty.all_passed());
    }
}
