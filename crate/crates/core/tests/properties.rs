use proptest::collection::{hash_set, vec};
use proptest::prelude::*;

use permdot::algebra::{dot_product, swap_increment};
use permdot::oracle::{spectrum_bruteforce, spectrum_bruteforce_with, subset_sum_oracle};
use permdot::pools::{pool_construct, rect_area_set, TwoAreaIndex};
use permdot::sumset::{
    additive_energy, additive_energy_with, subset_sum_count, subset_sums,
    subset_sums_meet_in_middle, supportive_halasz_lower_bound,
};
use permdot::witness::{run_witness, Mode, RunConfig, WitnessCertificate};
use permdot::{Exec, IncrementSet, Instance, Permutation, RealSet, Scalar};

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=6).prop_map(|(p, q)| Scalar::new(p, q).unwrap())
}

fn real_set(min: usize, max: usize) -> impl Strategy<Value = RealSet> {
    hash_set(rational(), min..=max)
        .prop_map(|s| RealSet::from_unsorted(s.into_iter().collect()).unwrap())
}

fn increment_set(max: usize) -> impl Strategy<Value = IncrementSet> {
    hash_set(rational(), 0..=max).prop_map(|s| {
        let mut v: Vec<Scalar> = s.into_iter().collect();
        v.sort();
        IncrementSet::new(v).unwrap()
    })
}

fn instance(min: usize, max: usize) -> impl Strategy<Value = Instance> {
    (min..=max).prop_flat_map(|n| {
        (real_set(n, n), real_set(n, n)).prop_map(|(a, b)| Instance::new(a, b).unwrap())
    })
}

fn instance_with_perm(min: usize, max: usize) -> impl Strategy<Value = (Instance, Permutation)> {
    instance(min, max).prop_flat_map(|inst| {
        let n = inst.n();
        (Just(inst), Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(inst, v)| (inst, Permutation::from_images(v).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn swap_increment_matches_recomputation((inst, pi) in instance_with_perm(2, 10), i in 1usize..=10, j in 1usize..=10) {
        let n = inst.n();
        let (i, j) = (1 + (i - 1) % n, 1 + (j - 1) % n);
        prop_assume!(i != j);
        let after = dot_product(&inst, &pi.swap_positions(i, j).unwrap()).unwrap();
        let before = dot_product(&inst, &pi).unwrap();
        prop_assert_eq!(after - before, swap_increment(&inst, &pi, i, j).unwrap());
    }

    #[test]
    fn spectrum_contains_every_value((inst, pi) in instance_with_perm(1, 6)) {
        let r = spectrum_bruteforce(&inst).unwrap();
        let v = dot_product(&inst, &pi).unwrap();
        prop_assert!(r.values.unwrap().binary_search(&v).is_ok());
    }

    #[test]
    fn spectrum_is_policy_independent(inst in instance(1, 7)) {
        prop_assert_eq!(
            spectrum_bruteforce_with(&inst, Exec::Sequential).unwrap(),
            spectrum_bruteforce_with(&inst, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn subset_sum_routes_agree(d in increment_set(14)) {
        let mitm = subset_sums_meet_in_middle(&d, Exec::Sequential);
        prop_assert_eq!(&mitm, &subset_sums(&d, None).unwrap());
        prop_assert_eq!(mitm.len() as u64, subset_sum_oracle(&d).unwrap());
        prop_assert!(mitm.len() <= 1 << d.len());
    }

    #[test]
    fn energy_is_policy_independent(d in increment_set(30).prop_filter("non-empty", |d| !d.is_empty()), k in 1usize..=3) {
        let seq = additive_energy_with(&d, k, Exec::Sequential).unwrap();
        prop_assert_eq!(&seq, &additive_energy_with(&d, k, Exec::Parallel).unwrap());
        // every ordered k-tuple pairs with itself
        prop_assert!(seq.energy >= seq.tuple_count_checked);
        prop_assert_eq!(seq.tuple_count_checked, (d.len() as u128).pow(k as u32));
    }

    #[test]
    fn block_bound_never_exceeds_subset_sums(d in increment_set(14), k in 1usize..=3) {
        let nonzero = d.without_zero().0.len();
        prop_assume!(nonzero >= 2 * k);
        let h = supportive_halasz_lower_bound(&d, k).unwrap();
        prop_assert!(h.bound as usize <= subset_sum_count(&d, None).unwrap());
        prop_assert!(h.energy_form <= Scalar::from(h.bound as i64));
        prop_assert_eq!(h.energy, additive_energy(&d.without_zero().0, k).unwrap().energy);
    }

    #[test]
    fn pool_values_lie_in_two_area_set(a in real_set(4, 9), b in real_set(4, 9)) {
        let pool = pool_construct(&a, &b).unwrap();
        prop_assert!(pool.len() >= pool.size_lower_bound());
        let index = TwoAreaIndex::new(&a, &b).unwrap();
        for rep in pool.entries() {
            prop_assert!(rep.check(&a, &b).is_ok());
            prop_assert!(index.contains(&rep.value));
        }
    }

    #[test]
    fn rect_areas_are_symmetric(a in real_set(1, 8), b in real_set(1, 8)) {
        let r = rect_area_set(&a, &b).unwrap();
        let negated: Vec<Scalar> = r.iter().rev().map(|x| -x).collect();
        prop_assert_eq!(&r, &negated);
        prop_assert!(r.binary_search(&Scalar::zero()).is_ok());
    }

    #[test]
    fn certificate_json_round_trips(seed in 0u64..1000) {
        let inst = Instance::interval(64).unwrap();
        let mut config = RunConfig::new(64, seed, Mode::Cubic);
        config.verify_samples = 64;
        let cert = run_witness(&inst, &config).unwrap();
        let back = WitnessCertificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), cert.to_json());
        prop_assert_eq!(back, cert);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Small certificates built with fewer switches still embed a translate of
    /// `Σ(D)` in the spectrum.
    #[test]
    fn tiny_certificates_fit_inside_the_spectrum(inst in instance(5, 9), seed in 0u64..1000, m in 1usize..=2) {
        let n = inst.n();
        prop_assume!(4 * m < n);
        let mut config = RunConfig::new(n, seed, Mode::Cubic);
        config.switch_count = Some(m);
        config.energy_slack = Scalar::from(64);
        let cert = match run_witness(&inst, &config) {
            Ok(c) => c,
            Err(e) => return Err(TestCaseError::reject(e.to_string())),
        };
        prop_assert!(cert.all_passed(), "{:?}", cert.checks);
        let spectrum = spectrum_bruteforce(&inst).unwrap();
        prop_assert!(cert.sigma_d_size as usize <= spectrum.size);
        let values = spectrum.values.unwrap();
        let base = dot_product(&inst, &cert.pi0).unwrap();
        let d = IncrementSet::new(cert.increments()).unwrap();
        for s in subset_sums(&d, None).unwrap() {
            prop_assert!(values.binary_search(&(&base + &s)).is_ok());
        }
    }

    #[test]
    fn dot_product_is_bilinear(inst in instance(1, 8), v in vec(0usize..8, 8)) {
        let n = inst.n();
        let mut images: Vec<usize> = (1..=n).collect();
        for (i, &j) in v.iter().enumerate().take(n) {
            images.swap(i % n, j % n);
        }
        let pi = Permutation::from_images(images).unwrap();
        let doubled_a = RealSet::new(inst.a().as_slice().iter().map(|x| x * &Scalar::from(2)).collect()).unwrap();
        let doubled = Instance::new(doubled_a, inst.b().clone()).unwrap();
        prop_assert_eq!(
            dot_product(&doubled, &pi).unwrap(),
            dot_product(&inst, &pi).unwrap() * Scalar::from(2)
        );
    }
}
