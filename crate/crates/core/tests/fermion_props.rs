use std::f64::consts::LN_2;

use num_complex::Complex64;
use proptest::prelude::*;

use fermiwig::fermion::state::{random_pure_state, random_slater, random_slater_mixture};
use fermiwig::fermion::{
    entanglement_of_formation, is_fermionic_separable, pure_state_entanglement, slater_decompose,
    slater_rank, slater_witness, EofOptions, TwoFermionMixedState, TwoFermionPureState, Verdict,
    DEFAULT_SEPARABILITY_TOL,
};
use fermiwig::numerics::random::random_unitary;
use fermiwig::numerics::Seed;

fn dims() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![4usize, 6, 8])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn entropy_never_below_ln2(seed in any::<u64>(), d in dims()) {
        let s = pure_state_entanglement(&random_pure_state(Seed(seed), d)).unwrap();
        prop_assert!(s >= LN_2 - 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ln2_exactly_for_rank_one(seed in any::<u64>(), d in dims(), slater in prop::bool::ANY) {
        let mut rng = Seed(seed).rng();
        let psi = if slater { random_slater(&mut rng, d) } else { random_pure_state(Seed(seed), d) };
        let at_bound = (pure_state_entanglement(&psi).unwrap() - LN_2).abs() < 1e-9;
        prop_assert_eq!(at_bound, slater_rank(&psi).unwrap() == 1);
    }

    #[test]
    fn one_particle_unitaries_preserve_coefficients(seed in any::<u64>(), d in dims()) {
        let psi = random_pure_state(Seed(seed), d);
        let u = random_unitary(&mut Seed(seed).substream(1), d);
        let moved = psi.transformed(&u).unwrap();
        let mut a: Vec<f64> = slater_decompose(&psi).unwrap().coefficients().iter().map(|z| z.norm()).collect();
        let mut b: Vec<f64> = slater_decompose(&moved).unwrap().coefficients().iter().map(|z| z.norm()).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9);
        }
        let ds = pure_state_entanglement(&psi).unwrap() - pure_state_entanglement(&moved).unwrap();
        prop_assert!(ds.abs() < 1e-9);
    }
}

/// Two-fermion states on the pair basis: near-degenerate and exact Slater cases.
#[test]
fn crafted_equality_cases() {
    let z = Complex64::new(0.0, 0.0);
    let basis = TwoFermionPureState::basis_slater(6, 2, 5).unwrap();
    assert_eq!(slater_rank(&basis).unwrap(), 1);
    assert!((pure_state_entanglement(&basis).unwrap() - LN_2).abs() < 1e-9);
    let eps = 1e-3;
    let mut c = vec![z; 6];
    c[0] = Complex64::new((1.0f64 - eps * eps).sqrt(), 0.0);
    c[5] = Complex64::new(eps, 0.0);
    let near = TwoFermionPureState::from_pair_amplitudes(4, &c).unwrap();
    assert_eq!(slater_rank(&near).unwrap(), 2);
    assert!(pure_state_entanglement(&near).unwrap() - LN_2 > 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn slater_mixtures_stay_at_ln2(seed in any::<u64>(), count in 2usize..5) {
        let mut rng = Seed(seed).rng();
        let rho = random_slater_mixture(&mut rng, 4, count);
        let r = entanglement_of_formation(&rho, &EofOptions::default()).unwrap();
        prop_assert!(r.value <= LN_2 + 5e-3, "E_f {}", r.value);
    }

    #[test]
    fn witness_flags_imply_entangled_verdict(seed in any::<u64>(), theta in 0.6f64..0.785, p in 0.75f64..1.0) {
        let z = Complex64::new(0.0, 0.0);
        let (c, s) = (Complex64::new(theta.cos(), 0.0), Complex64::new(theta.sin(), 0.0));
        let u = random_unitary(&mut Seed(seed).substream(1), 4);
        let psi = TwoFermionPureState::from_pair_amplitudes(4, &[c, z, z, z, z, s]).unwrap().transformed(&u).unwrap();
        let w = slater_witness(&psi).unwrap();
        let mut rng = Seed(seed).substream(2);
        let noise = random_slater_mixture(&mut rng, 4, 2);
        let m = TwoFermionMixedState::from_pure(&psi).matrix().scale_real(p).add(&noise.matrix().scale_real(1.0 - p));
        let rho = TwoFermionMixedState::new(4, m).unwrap();
        prop_assume!(w.expectation(&rho) < 0.0);
        let r = is_fermionic_separable(&rho, DEFAULT_SEPARABILITY_TOL, &EofOptions::default()).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Entangled, "Tr(W rho) = {}, E_f = {}", w.expectation(&rho), r.eof.value);
    }
}
