//! The empirical algebra constant stays below the bound derived from the
//! splitting profile, and the support rule holds under random inputs.

use num_complex::Complex64;
use orlicz::criteria::splitting_u;
use orlicz::function::DiscreteFunction;
use orlicz::lattice::{coboundary, LatticePoint, Weight};
use orlicz::norms::luxemburg_norm;
use orlicz::twist::{submultiplicativity_probe, support_contained, twisted_convolve, ProbeSampler};
use orlicz::young::{pair_for, power};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `N_psi` of the radial profile `u`, truncated far enough out that the
/// missing tail only lowers the value (making the bound stricter).
fn radial_profile_norm(
    psi: &orlicz::young::YoungFunction,
    u: &impl Fn(u64) -> f64,
    radius: i64,
) -> f64 {
    let mut f = DiscreteFunction::new(1);
    for n in -radius..=radius {
        let v = u(n.unsigned_abs());
        f.set(LatticePoint(vec![n]), Complex64::new(v, 0.0))
            .unwrap();
    }
    luxemburg_norm(psi, &f).unwrap()
}

#[test]
fn probe_ratios_stay_below_the_splitting_bound() {
    // the twisted product bound from |Omega| <= u(s) + u(t):
    // N(f ⊛ g) <= 2 (N_psi(u) + N_psi(v)) N(f) N(g) with u = v
    let w = Weight::poly(1.0).unwrap();
    let pair = pair_for(&power(2.0).unwrap());
    let omega = coboundary(w.clone());
    let u = splitting_u(&w);
    let bound = 4.0 * radial_profile_norm(&pair.psi, &u, 4000);

    let sampler = ProbeSampler {
        dim: 1,
        support_radius: 20,
        support_points: 6,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(271);
    let probe = submultiplicativity_probe(&pair.phi, &omega, &sampler, 100, &mut rng).unwrap();
    assert!(probe.max_ratio.is_finite());
    assert!(
        probe.max_ratio <= bound,
        "empirical ratio {} exceeds oracle bound {bound}",
        probe.max_ratio
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_support_is_contained_in_the_sumset(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let omega = coboundary(Weight::poly(1.0).unwrap());
        let f = DiscreteFunction::random(&mut rng, 2, 6, 4);
        let g = DiscreteFunction::random(&mut rng, 2, 6, 4);
        let conv = twisted_convolve(&omega, &f, &g).unwrap().result;
        prop_assert!(support_contained(&conv, &f, &g));
    }
}
