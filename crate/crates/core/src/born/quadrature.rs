use std::f64::consts::{FRAC_PI_2, PI};

use statrs::function::factorial::ln_factorial;

/// Adaptive Simpson with Richardson correction. `tol` is absolute.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    refine(f, a, b, fa, fm, fb, whole, tol, 40)
}

#[allow(clippy::too_many_arguments)]
fn refine(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // The last test stops refinement once the estimate is at rounding level.
    if depth == 0 || delta.abs() <= 15.0 * tol || delta.abs() <= 8.0 * f64::EPSILON * (left + right).abs() {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + refine(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Absolute tolerance on `∫₀^π |cos α|ⁿ dα`, chosen so that after the
/// `2ⁿ/2π` prefactor the error on `I(n)` stays far below 1e-9.
const RAW_TOL: f64 = 1e-17;

/// `I(n) = (2ⁿ/2π) ∫₀^π |cos α|ⁿ dα`, integrated separately on each side
/// of the kink at π/2.
pub fn phase_avg_integral(n: u32) -> f64 {
    let f = move |x: f64| x.cos().abs().powi(n as i32);
    let raw = adaptive_simpson(&f, 0.0, FRAC_PI_2, RAW_TOL) + adaptive_simpson(&f, FRAC_PI_2, PI, RAW_TOL);
    2f64.powi(n as i32) / (2.0 * PI) * raw
}

/// All `n ≤ max_n` with `|I(n) − 1| < tol`.
pub fn find_born_exponent(max_n: u32, tol: f64) -> Vec<u32> {
    (0..=max_n).filter(|&n| (phase_avg_integral(n) - 1.0).abs() < tol).collect()
}

/// `ln((2m)!/(2(m!)²))`.
pub fn ln_factorial_identity(m: u64) -> f64 {
    ln_factorial(2 * m) - 2.0 * ln_factorial(m) - 2f64.ln()
}

/// `(2m)!/(2(m!)²) = C(2m, m)/2`; exact product for moderate `m`, log
/// space once the product would overflow.
pub fn factorial_identity(m: u64) -> f64 {
    let mut c = 1.0f64;
    for j in 1..=m {
        c = c * (m + j) as f64 / j as f64;
        if !c.is_finite() {
            return ln_factorial_identity(m).exp();
        }
    }
    c / 2.0
}

/// `I(2m+1)` from the closed form `∫₀^π |cos α|^{2m+1} = 2^{2m+1}(m!)²/(2m+1)!`.
pub fn odd_closed_form(m: u64) -> f64 {
    let n = 2 * m + 1;
    let ln_integral = (n as f64) * 2f64.ln() + 2.0 * ln_factorial(m) - ln_factorial(n);
    let ln_prefactor = (n as f64) * 2f64.ln() - (2.0 * PI).ln();
    (ln_prefactor + ln_integral).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert!((phase_avg_integral(0) - 0.5).abs() < 1e-12);
        assert!((phase_avg_integral(1) - 2.0 / PI).abs() < 1e-12);
        assert!((phase_avg_integral(2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn even_matches_factorials() {
        for m in 1..=10u64 {
            let q = phase_avg_integral(2 * m as u32);
            assert!((q - factorial_identity(m)).abs() < 1e-9, "m={m}: {q}");
        }
    }

    #[test]
    fn odd_matches_closed_form() {
        assert!((odd_closed_form(0) - 2.0 / PI).abs() < 1e-15);
        for m in 0..10u64 {
            let q = phase_avg_integral(2 * m as u32 + 1);
            assert!((q - odd_closed_form(m)).abs() < 1e-9, "m={m}: {q} vs {}", odd_closed_form(m));
        }
    }

    #[test]
    fn exponent_search() {
        assert_eq!(find_born_exponent(20, 1e-6), vec![2]);
        assert!(find_born_exponent(1, 1e-6).is_empty());
    }

    #[test]
    fn factorial_identity_values() {
        assert_eq!(factorial_identity(1), 1.0);
        assert_eq!(factorial_identity(2), 3.0);
        assert_eq!(factorial_identity(3), 10.0);
        assert!(factorial_identity(2000).is_infinite());
        assert!((ln_factorial_identity(2000) - factorial_identity_ln_oracle(2000)).abs() < 1e-6);
    }

    fn factorial_identity_ln_oracle(m: u64) -> f64 {
        (1..=m).map(|j| ((m + j) as f64 / j as f64).ln()).sum::<f64>() - 2f64.ln()
    }
}
