use fermiwig::cumulant::{
    default_grid, default_scan_values, doubled_grid, marcinkiewicz_scan, truncated_density_auto,
    CumulantVector,
};
use proptest::prelude::*;

fn density(kappa: &CumulantVector) -> fermiwig::cumulant::TruncatedDensity {
    truncated_density_auto(kappa, &default_grid(kappa).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn gaussians_have_no_negative_mass(k1 in -3.0f64..3.0, k2 in 0.2f64..4.0) {
        let d = density(&CumulantVector::gaussian(k1, k2).unwrap());
        prop_assert!(d.negative_mass < 1e-10);
        prop_assert!((d.total_mass - 1.0).abs() < 1e-6);
    }

    #[test]
    fn skewed_vectors_go_negative(k2 in 0.5f64..2.0, strength in 0.2f64..1.0, sign in prop::bool::ANY) {
        let k3 = if sign { strength } else { -strength } * k2.powf(1.5);
        let kappa = CumulantVector::new(vec![0.3, k2, k3]).unwrap();
        let d = density(&kappa);
        prop_assert!(d.negative_mass > 1e-6, "strength {strength}: {}", d.negative_mass);
        prop_assert!((d.total_mass - 1.0).abs() < 1e-6);
    }

    #[test]
    fn quartic_vectors_go_negative(k2 in 0.5f64..2.0, strength in 0.1f64..1.0, k3 in -0.5f64..0.5) {
        let kappa = CumulantVector::new(vec![0.0, k2, k3 * k2.powf(1.5), -strength * k2 * k2]).unwrap();
        let d = density(&kappa);
        prop_assert!(d.negative_mass > 1e-6, "strength {strength}: {}", d.negative_mass);
        prop_assert!((d.total_mass - 1.0).abs() < 1e-6);
    }
}

#[test]
fn scan_is_even_in_kappa3() {
    let base = CumulantVector::gaussian(0.0, 1.0).unwrap();
    let grid = default_grid(&base).unwrap();
    let rows = marcinkiewicz_scan(&default_scan_values(), &base, &grid).unwrap();
    let n = rows.len();
    for i in 0..n / 2 {
        let (a, b) = (rows[i], rows[n - 1 - i]);
        assert_eq!(a.kappa3, -b.kappa3);
        assert!((a.negative_mass - b.negative_mass).abs() < 1e-8);
    }
}

#[test]
fn strong_rows_are_grid_converged() {
    let base = CumulantVector::gaussian(0.0, 1.0).unwrap();
    let grid = default_grid(&base).unwrap();
    let fine = doubled_grid(&grid).unwrap();
    let values = default_scan_values();
    let coarse = marcinkiewicz_scan(&values, &base, &grid).unwrap();
    let refined = marcinkiewicz_scan(&values, &base, &fine).unwrap();
    for (c, f) in coarse.iter().zip(&refined) {
        if c.negative_mass > 1e-6 {
            let rel = (c.negative_mass - f.negative_mass).abs() / c.negative_mass;
            assert!(rel < 0.01, "kappa3 {}: {rel}", c.kappa3);
        }
    }
}
