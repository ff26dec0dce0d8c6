//! Exact and floating-point special-function kernel: Bernoulli numbers,
//! factorial-family combinatorics, Gamma-ratio limits, Riemann/Hurwitz zeta
//! with s-derivative, the Gauss hypergeometric series, and named constants.

mod gamma;
mod hyper;
mod zeta;

pub use gamma::{gamma, ln_gamma};
pub use hyper::{gauss_2f1, gauss_2f1_euler};
pub use zeta::{hurwitz_zeta, riemann_zeta};

use crate::error::{Result, SpectralError};
use crate::rational::{binomial, factorial, rat_int, Rational};
use num::bigint::BigInt;
use num::Zero;

/// Euler-Mascheroni constant, gamma = -psi(1).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// ln(2 pi).
pub const LOG_2PI: f64 = 1.837_877_066_409_345_5;

/// Bernoulli number B_n in the convention B_1 = -1/2, computed exactly by the
/// defining recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0.
pub fn bernoulli(n: u32) -> Rational {
    let row = bernoulli_row(n);
    row[n as usize].clone()
}

/// B_0..B_n by the recurrence, exact.
fn bernoulli_row(n: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    b.push(rat_int(1));
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            b.push(rat_int(0));
            continue;
        }
        // B_m = -1/(m+1) * sum_{j=0}^{m-1} C(m+1, j) B_j
        let mut acc = rat_int(0);
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            acc += Rational::from_integer(binomial(m + 1, j as u32)) * bj.clone();
        }
        b.push(-acc / rat_int(m as i64 + 1));
    }
    b
}

/// Double factorial as an exact rational-friendly integer, (-1)!! = 1.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(SpectralError::InvalidArgument(format!(
            "double factorial needs n >= -1, got {n}"
        )));
    }
    Ok(crate::rational::double_factorial(n))
}

/// The finite limit Gamma(i - m) / Gamma(-m) = prod_{j=0}^{i-1} (j - m)
/// = (-1)^i m! / (m - i)!, for 0 <= i <= m.
///
/// Both gamma arguments are non-positive integers; the ratio of the two poles
/// is taken as a limit, never by evaluating Gamma itself.
pub fn gamma_ratio_neg(m: u32, i: u32) -> Result<Rational> {
    if i > m {
        return Err(SpectralError::InvalidArgument(format!(
            "gamma_ratio_neg needs i <= m, got i = {i}, m = {m}"
        )));
    }
    let mut acc = BigInt::from(1);
    for j in 0..i {
        acc *= BigInt::from(j as i64 - m as i64);
    }
    Ok(Rational::from_integer(acc))
}

/// Named constants validated against their defining series/quadrature.
#[derive(Debug, Clone)]
pub struct Constants {
    pub euler_gamma: f64,
    pub log_2pi: f64,
    /// zeta_R'(m) for m in {0, -1, -2, -3}, indexed by -m.
    pub zeta_r_prime: [f64; 4],
}

impl Constants {
    /// Computes the stored derivatives through the Euler-Maclaurin engine.
    pub fn compute() -> Result<Self> {
        let mut zeta_r_prime = [0.0; 4];
        for (i, slot) in zeta_r_prime.iter_mut().enumerate() {
            *slot = riemann_zeta(-(i as f64), 1)?.value;
        }
        Ok(Self {
            euler_gamma: EULER_GAMMA,
            log_2pi: LOG_2PI,
            zeta_r_prime,
        })
    }

    /// zeta_R'(m) for m in {0, -1, -2, -3}.
    pub fn zeta_r_prime_at(&self, m: i32) -> f64 {
        assert!((-3..=0).contains(&m), "stored derivatives cover 0..-3");
        self.zeta_r_prime[(-m) as usize]
    }
}

/// psi(m + 1) = -gamma + H_m for integer m >= 0.
pub fn digamma_pos_int(m: u32) -> f64 {
    let harmonic: f64 = (1..=m).map(|j| 1.0 / j as f64).sum();
    -EULER_GAMMA + harmonic
}

/// psi(1/2 - m) = -gamma - 2 ln 2 + 2 sum_{j=1}^{m} 1/(2j - 1) for integer m >= 0.
pub fn digamma_half_minus_int(m: u32) -> f64 {
    let odd_sum: f64 = (1..=m).map(|j| 1.0 / (2.0 * j as f64 - 1.0)).sum();
    -EULER_GAMMA - 2.0 * std::f64::consts::LN_2 + 2.0 * odd_sum
}

/// Reference check used by tests: gamma as the limit H_N - ln(N + 1/2) with
/// the leading 1/(24 N^2) correction removed.
pub fn euler_gamma_by_series(n: u64) -> f64 {
    let h: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
    h - ((n as f64) + 0.5).ln() + 1.0 / (24.0 * (n as f64) * (n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat_int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_odd_indices_vanish() {
        for n in 1..=20 {
            assert!(bernoulli(2 * n + 1).is_zero(), "B_{} != 0", 2 * n + 1);
        }
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn gamma_ratio_values() {
        assert_eq!(gamma_ratio_neg(0, 0).unwrap(), rat_int(1));
        assert_eq!(gamma_ratio_neg(3, 2).unwrap(), rat_int(6));
        assert_eq!(gamma_ratio_neg(1, 1).unwrap(), rat_int(-1));
        assert!(gamma_ratio_neg(2, 3).is_err());
    }

    #[test]
    fn gamma_ratio_closed_form() {
        // (-1)^i m!/(m-i)!
        for m in 0..=6u32 {
            for i in 0..=m {
                let expect = Rational::from_integer(factorial(m))
                    / Rational::from_integer(factorial(m - i))
                    * if i % 2 == 0 { rat_int(1) } else { rat_int(-1) };
                assert_eq!(gamma_ratio_neg(m, i).unwrap(), expect);
            }
        }
    }

    #[test]
    fn constants_match_defining_series() {
        let c = Constants::compute().unwrap();
        assert!((c.euler_gamma - euler_gamma_by_series(2_000_000)).abs() < 1e-12);
        assert!((c.log_2pi - (2.0 * std::f64::consts::PI).ln()).abs() < 1e-15);
        // zeta_R'(0) = -ln(2 pi)/2
        assert!((c.zeta_r_prime_at(0) + 0.5 * LOG_2PI).abs() < 1e-12);
    }

    #[test]
    fn digamma_special_points() {
        // psi(1) = -gamma, psi(1/2) = -gamma - 2 ln 2
        assert!((digamma_pos_int(0) + EULER_GAMMA).abs() < 1e-15);
        assert!(
            (digamma_half_minus_int(0) + EULER_GAMMA + 2.0 * std::f64::consts::LN_2).abs()
                < 1e-15
        );
        // psi(5/2) = psi(1/2) + 2 + 2/3; compare against psi(1/2 - m) recurrence at m = -?
        // spot value psi(1/2 - 1) = psi(-1/2) = -gamma - 2 ln 2 + 2
        assert!((digamma_half_minus_int(1) - (-EULER_GAMMA - 2.0 * std::f64::consts::LN_2 + 2.0)).abs() < 1e-15);
    }
}
