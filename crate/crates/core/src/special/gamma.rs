//! Real-argument Gamma function via the Lanczos approximation (g = 7, n = 9),
//! with the reflection formula for arguments below 1/2.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma(x) for real x not a non-positive integer.
pub fn gamma(x: f64) -> f64 {
    assert!(
        !(x <= 0.0 && x == x.floor()),
        "gamma pole at non-positive integer {x}"
    );
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// ln |Gamma(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    gamma(x).abs().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_and_half_integer_values() {
        assert!((gamma(1.0) - 1.0).abs() < 1e-13);
        assert!((gamma(5.0) - 24.0).abs() < 1e-11);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-13);
        // Gamma(-1/2) = -2 sqrt(pi)
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 2e-12);
        // Gamma(-3/2) = 4/3 sqrt(pi)
        assert!((gamma(-1.5) - 4.0 / 3.0 * PI.sqrt()).abs() < 2e-12);
    }

    #[test]
    fn recurrence_holds() {
        for &x in &[0.1, 0.37, 1.9, 3.25, -0.7, -2.3] {
            let lhs = gamma(x + 1.0);
            let rhs = x * gamma(x);
            assert!(
                (lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0),
                "recurrence failed at {x}"
            );
        }
    }

    #[test]
    fn ln_gamma_agrees() {
        assert!((ln_gamma(6.0) - 120.0_f64.ln()).abs() < 1e-12);
    }
}
