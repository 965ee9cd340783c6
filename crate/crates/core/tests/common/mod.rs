//! Reference implementations used only by the tests. They share no code
//! with the library: zeta comes from Euler-Maclaurin summation and zeros
//! come from sign changes of Hardy's Z function.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

/// Values computed with mpmath at 40-50 significant digits.
pub mod frozen {
    /// `eta(1) = ln 2`
    pub const ETA_1: f64 = std::f64::consts::LN_2;
    pub const ETA_2: f64 = 0.822_467_033_424_113_2;
    pub const ETA_HALF: f64 = 0.604_898_643_421_630_4;
    pub const ZETA_2: f64 = 1.644_934_066_848_226_4;
    pub const ZETA_HALF: f64 = -1.460_354_508_809_586_8;
    pub const ZETA_0_7: f64 = -2.778_388_445_553_696;
    /// `(1 - 2^0.3) zeta(0.7)`
    pub const PREFACTORED_0_7: f64 = 0.642_208_967_291_802_9;
    pub const GROUND_ENERGY_0: f64 = 0.365_902_368_813_328_7;
    pub const GROUND_ENERGY_10: f64 = 1.788_975_396_425_238_9;
    /// `H-` eigenvalue at sigma = 0.3, rho = 1, omega = 2.
    pub const H_MINUS_03_1_2: f64 = 0.362_784_867_665_024_5;

    /// `(sigma, lambda, re, im)`
    pub const ZETA_POINTS: [(f64, f64, f64, f64); 8] = [
        (0.5, 3.0, 0.532_736_670_974_232_9, -0.078_896_513_425_833_38),
        (0.25, 10.0, 1.642_548_315_811_993_1, -0.111_785_436_687_272_57),
        (-0.5, 5.0, 0.552_187_385_162_575_4, 0.354_817_373_566_999_34),
        (0.8, -20.0, 0.610_511_051_192_155_8, 0.805_568_252_877_577_5),
        (0.5, 60.0, 0.541_200_835_146_348_1, 0.227_183_922_368_268_73),
        (-1.5, 0.0, -0.025_485_201_889_833_036, 0.0),
        (0.1, 30.0, -0.962_518_404_644_388, -0.611_590_087_914_439_9),
        (0.9, -45.0, 2.097_254_701_891_775_6, -0.980_947_903_631_704),
    ];

    /// `eta(1/2 + 40 i)`
    pub const ETA_HALF_40: (f64, f64) = (2.517_840_606_624_116, -1.713_157_187_374_560_4);

    /// Ordinates of the first thirteen nontrivial zeros.
    pub const ZEROS: [f64; 13] = [
        14.134_725_141_734_694,
        21.022_039_638_771_555,
        25.010_857_580_145_69,
        30.424_876_125_859_513,
        32.935_061_587_739_19,
        37.586_178_158_825_67,
        40.918_719_012_147_5,
        43.327_073_280_915,
        48.005_150_881_167_16,
        49.773_832_477_672_3,
        52.970_321_477_714_46,
        56.446_247_697_063_4,
        59.347_044_002_602_35,
    ];
}

/// `B_2, B_4, ..., B_24`
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Euler-Maclaurin zeta with `N = 30 + |t|` and twelve correction terms.
/// Reliable to about 1e-13 for `-1 <= sigma <= 3`, `|t| <= 60`.
pub fn zeta_em(s: Complex64) -> Complex64 {
    let n = 30 + s.im.abs().ceil() as usize;
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * nf.ln()).exp();
    sum += n_pow * nf / (s - 1.0) + n_pow * 0.5;
    // B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1)
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n_pow / nf;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let two_k = 2 * (k + 1);
        sum += rising * npow * (b / fact);
        rising *= (s + (two_k - 1) as f64) * (s + two_k as f64);
        fact *= ((two_k + 1) * (two_k + 2)) as f64;
        npow /= nf * nf;
    }
    sum
}

/// Riemann-Siegel theta by its Stirling series.
pub fn theta(t: f64) -> f64 {
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
}

/// Hardy's Z: real on the real axis, sign changes at zeros.
pub fn hardy_z(t: f64) -> f64 {
    let z = zeta_em(Complex64::new(0.5, t));
    (Complex64::from_polar(1.0, theta(t)) * z).re
}

/// Zeros in `(lo, hi)` from sign changes on a 0.01 grid, bisected to the
/// last bit.
pub fn hardy_zeros(lo: f64, hi: f64) -> Vec<f64> {
    let step = 0.01;
    let mut out = Vec::new();
    let mut a = lo;
    let mut za = hardy_z(a);
    while a < hi {
        let b = (a + step).min(hi);
        let zb = hardy_z(b);
        if za.signum() != zb.signum() {
            let (mut x, mut y, mut zx) = (a, b, za);
            while y - x > 4.0 * f64::EPSILON * y.abs() {
                let m = 0.5 * (x + y);
                let zm = hardy_z(m);
                if zm.signum() == zx.signum() {
                    x = m;
                    zx = zm;
                } else {
                    y = m;
                }
            }
            out.push(0.5 * (x + y));
        }
        a = b;
        za = zb;
    }
    out
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}
