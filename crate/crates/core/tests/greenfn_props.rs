use proptest::prelude::*;

use fermiwig::fermion::{
    hf_two_rdm, EofOptions, TwoFermionPureState, Verdict, DEFAULT_SEPARABILITY_TOL,
};
use fermiwig::greenfn::{
    equal_time_density, g2_entanglement_test, hf_g2, uniform_times, OneParticleGLesser,
    TwoParticleGLesser,
};
use fermiwig::numerics::random::random_isometry;
use fermiwig::numerics::Seed;

fn energies(seed: u64, d: usize) -> Vec<f64> {
    (0..d)
        .map(|k| k as f64 + 0.1 * ((seed >> k) & 7) as f64)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hf_round_trip_and_traces(seed in any::<u64>(), d in 4usize..9, n in 2usize..4) {
        let q = random_isometry(&mut Seed(seed).rng(), d, n);
        let g = OneParticleGLesser::slater(energies(seed, d), &q, uniform_times(7.0, 5)).unwrap();
        let g2 = hf_g2(&g).unwrap();
        for a in 0..5 {
            let rho1 = equal_time_density(&g, a).unwrap();
            prop_assert!((rho1.trace().re - n as f64).abs() < 1e-8);
            prop_assert!((g2.ordered_trace(a).unwrap() - (n * (n - 1)) as f64).abs() < 1e-8);
            let oracle = hf_two_rdm(&rho1.scale_real(1.0 / n as f64), n).unwrap();
            prop_assert!(g2.normalized_slice(a).unwrap().max_abs_diff(oracle.matrix()) < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Orbital-energy evolution acts as a one-particle unitary on every slice.
    #[test]
    fn verdict_is_constant_in_time(seed in any::<u64>()) {
        let psi = fermiwig::fermion::state::random_pure_state(Seed(seed), 4);
        let slice0 = psi.projector().scale_real(2.0);
        let g2 = TwoParticleGLesser::free_evolution(&energies(seed, 4), &slice0, uniform_times(5.0, 4)).unwrap();
        let opts = EofOptions { restarts: 4, ..Default::default() };
        let verdicts: Vec<Verdict> = (0..4)
            .map(|a| g2_entanglement_test(&g2, a, DEFAULT_SEPARABILITY_TOL, &opts).unwrap().verdict)
            .collect();
        prop_assert!(verdicts.iter().all(|v| *v == verdicts[0]), "{verdicts:?}");

        let s = TwoFermionPureState::basis_slater(4, 0, 2).unwrap().projector();
        let g2 = TwoParticleGLesser::free_evolution(&energies(seed, 4), &s, uniform_times(5.0, 4)).unwrap();
        for a in 0..4 {
            let r = g2_entanglement_test(&g2, a, DEFAULT_SEPARABILITY_TOL, &opts).unwrap();
            prop_assert_eq!(r.verdict, Verdict::Separable);
        }
    }
}
