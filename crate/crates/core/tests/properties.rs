use proptest::prelude::*;

use susyzeta::cli::files::{parse_zeros_csv, zeros_csv};
use susyzeta::cli::format::format_real;
use susyzeta::cli::manifest::Settings;
use susyzeta::model::{build_spectrum, ground_energy};
use susyzeta::zeros::{scan, Method};
use susyzeta::zeta::{zeta_left, zeta_right};
use susyzeta::{ComplexPoint, ModelConfig, Omega, ScanConfig, SeriesConfig, ZeroRecord};

fn series() -> SeriesConfig {
    SeriesConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ground_energy_is_even_and_nonnegative(l in -60.0f64..60.0) {
        let e = ground_energy(l, &series()).unwrap();
        prop_assert!(e >= 0.0);
        prop_assert_eq!(e.to_bits(), ground_energy(-l, &series()).unwrap().to_bits());
    }

    #[test]
    fn reflection_agrees_with_the_eta_route(sigma in 0.02f64..0.98, lambda in -30.0f64..30.0) {
        let p = ComplexPoint::new(sigma, lambda).unwrap();
        let a = zeta_right(p, &series()).unwrap();
        let b = zeta_left(p, &series()).unwrap();
        prop_assert!((a - b).norm() < 1e-9 * a.norm().max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn tower_is_consistent(w in 0.2f64..4.0, l in -20.0f64..20.0, n_max in 1usize..=16) {
        let cfg = ModelConfig::new(Omega::new(w).unwrap(), l, n_max, series()).unwrap();
        let levels = build_spectrum(&cfg).unwrap();
        prop_assert_eq!(levels.len(), n_max + 1);
        for pair in levels.windows(2) {
            let (prev, lv) = (&pair[0], &pair[1]);
            prop_assert!(lv.energy >= 0.0);
            prop_assert!((lv.c_tilde - prev.c * lv.energy).norm() <= 1e-12 * lv.c_tilde.norm().max(1e-300));
            prop_assert!((lv.psi_rho - lv.psi_tilde_rho - w).abs() <= 1e-12 * lv.psi_rho.abs().max(1.0));
            // E_n is the ground energy at lambda* - n w.
            let shifted = ground_energy(l - lv.n as f64 * w, &series()).unwrap();
            prop_assert!((lv.energy - shifted).abs() <= 1e-12 * shifted.max(1e-3));
        }
    }

    #[test]
    fn settings_hash_ignores_order(values in proptest::collection::vec(-1e6f64..1e6, 1..8), rot in 0usize..8) {
        let keys: Vec<String> = (0..values.len()).map(|i| format!("k{i}")).collect();
        let forward = keys.iter().zip(&values).fold(Settings::new(), |s, (k, v)| s.float(k, *v));
        let n = values.len();
        let rotated = (0..n)
            .map(|i| (i + rot) % n)
            .fold(Settings::new(), |s, i| s.float(&keys[i], values[i]));
        prop_assert_eq!(forward.hash("scan"), rotated.hash("scan"));
    }

    #[test]
    fn zeros_csv_round_trips_bitwise(rows in proptest::collection::vec((-1e3f64..1e3, 0f64..1e-9, 0usize..500), 0..6)) {
        let records: Vec<ZeroRecord> = rows
            .iter()
            .map(|&(l, e, it)| ZeroRecord {
                lambda_star: l,
                energy_at_min: e,
                bracket_lo: l - 1e-9,
                bracket_hi: l + 1e-9,
                iterations: it,
                method: Method::EnergyMin,
            })
            .collect();
        let bytes = zeros_csv(&records).unwrap();
        prop_assert_eq!(parse_zeros_csv(&bytes).unwrap(), records);
    }

    #[test]
    fn printed_reals_are_correctly_rounded(x in -1e3f64..1e3, places in 0usize..12) {
        let s = format_real(x, places);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= 0.5 * 10f64.powi(-(places as i32)) * (1.0 + 1e-9) + 1e-12 * x.abs());
        prop_assert!(!s.contains('.') || !s.ends_with('0'));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn scan_records_are_ordered_and_in_range(lo in 0.0f64..55.0, width in 0.5f64..5.0) {
        let cfg = ScanConfig::new(lo, lo + width).unwrap();
        let records = scan(&cfg, &series()).unwrap();
        for r in &records {
            prop_assert!(r.lambda_star >= cfg.lambda_min && r.lambda_star <= cfg.lambda_max);
            prop_assert!(r.energy_at_min < cfg.accept_energy);
        }
        prop_assert!(records.windows(2).all(|p| p[0].lambda_star < p[1].lambda_star));
    }
}
