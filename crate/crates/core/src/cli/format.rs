use num_complex::Complex64;

/// Fixed-point with `places` decimals, trailing zeros trimmed and `-0`
/// folded to `0`.
pub fn format_real(value: f64, places: usize) -> String {
    let mut s = format!("{value:.places$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// `re`, `re + im i` or `re - im i`; the imaginary part is dropped when it
/// rounds to zero at the requested precision.
pub fn format_complex(z: Complex64, places: usize) -> String {
    let re = format_real(z.re, places);
    let im = format_real(z.im.abs(), places);
    if im == "0" {
        re
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{re} {sign} {im}i")
    }
}
