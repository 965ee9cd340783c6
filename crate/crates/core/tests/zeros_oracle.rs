mod common;

use common::{frozen, hardy_zeros};
use susyzeta::model::ground_energy;
use susyzeta::zeros::{scan, Method};
use susyzeta::{ScanConfig, SeriesConfig};

#[test]
fn scan_reproduces_hardy_zeros_up_to_sixty() {
    let series = SeriesConfig::default();
    let records = scan(&ScanConfig::new(10.0, 60.0).unwrap(), &series).unwrap();
    let oracle = hardy_zeros(10.0, 60.0);
    assert_eq!(records.len(), oracle.len());
    for (r, z) in records.iter().zip(&oracle) {
        assert!((r.lambda_star - z).abs() < 1e-8, "{} vs {z}", r.lambda_star);
        assert!(r.energy_at_min < 1e-9);
        assert!(ground_energy(r.lambda_star, &series).unwrap() < 1e-9);
        assert!(r.bracket_lo <= r.lambda_star && r.lambda_star <= r.bracket_hi);
        assert!(r.bracket_hi - r.bracket_lo <= 1e-8);
        assert_eq!(r.method, Method::EnergyMin);
    }
}

#[test]
fn small_ranges() {
    let series = SeriesConfig::default();
    let three = scan(&ScanConfig::new(10.0, 30.0).unwrap(), &series).unwrap();
    let got: Vec<f64> = three.iter().map(|r| r.lambda_star).collect();
    assert_eq!(got.len(), 3);
    for (a, b) in got.iter().zip(&frozen::ZEROS[..3]) {
        assert!((a - b).abs() < 1e-6);
    }
    assert!(scan(&ScanConfig::new(2.0, 10.0).unwrap(), &series).unwrap().is_empty());
}

#[test]
fn negative_ordinates_mirror_positive_ones() {
    let series = SeriesConfig::default();
    let neg = scan(&ScanConfig::new(-26.0, -13.0).unwrap(), &series).unwrap();
    let expect = [-frozen::ZEROS[2], -frozen::ZEROS[1], -frozen::ZEROS[0]];
    assert_eq!(neg.len(), 3);
    for (r, z) in neg.iter().zip(expect) {
        assert!((r.lambda_star - z).abs() < 1e-6);
    }
}
