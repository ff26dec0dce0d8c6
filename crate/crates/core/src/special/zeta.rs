//! Riemann and Hurwitz zeta (value and first s-derivative) by Euler-Maclaurin
//! summation with an explicit remainder bound.

use crate::error::{Result, SpectralError};
use crate::eval::EvalResult;
use crate::rational::to_f64;
use crate::special::bernoulli;
use std::sync::OnceLock;

/// Highest correction order: terms through B_20, remainder bounded via B_22.
const EM_ORDER: usize = 10;

/// B_{2j} / (2j)! for j = 1..=EM_ORDER+1, as f64.
fn em_coeffs() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        (1..=EM_ORDER + 1)
            .map(|j| {
                let b = bernoulli(2 * j as u32);
                let f = crate::rational::factorial(2 * j as u32);
                to_f64(&(b / num::BigRational::from_integer(f)))
            })
            .collect()
    })
}

/// Pochhammer product prod_{i=0}^{len-1} (s + i) together with its s-derivative.
fn pochhammer_with_derivative(s: f64, len: usize) -> (f64, f64) {
    let mut v = 1.0;
    let mut d = 0.0;
    for i in 0..len {
        let f = s + i as f64;
        d = d * f + v;
        v *= f;
    }
    (v, d)
}

fn kahan_sum(terms: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut abs = 0.0;
    for t in terms {
        abs += t.abs();
        let y = t - comp;
        let u = sum + y;
        comp = (u - sum) - y;
        sum = u;
    }
    (sum, abs)
}

/// Hurwitz zeta zeta_H(s, q) (derivative_order = 0) or its first s-derivative
/// (derivative_order = 1), for real s != 1 and q > 0.
///
/// Euler-Maclaurin with shift N chosen so the B_22 remainder bound is below
/// 1e-14; the returned error estimate adds the bound to a rounding estimate.
pub fn hurwitz_zeta(s: f64, q: f64, derivative_order: u8) -> Result<EvalResult> {
    if q <= 0.0 {
        return Err(SpectralError::InvalidArgument(format!(
            "hurwitz zeta needs q > 0, got {q}"
        )));
    }
    if s == 1.0 {
        return Err(SpectralError::Pole {
            location: "1".to_string(),
        });
    }
    if !(-20.0..=40.0).contains(&s) {
        return Err(SpectralError::InvalidArgument(format!(
            "hurwitz zeta supports s in [-20, 40], got {s}"
        )));
    }
    if derivative_order > 1 {
        return Err(SpectralError::InvalidArgument(
            "derivative_order must be 0 or 1".to_string(),
        ));
    }

    let coeffs = em_coeffs();
    // Keep the shift small for negative s to avoid cancellation against the
    // integral term; grow it until the remainder bound is negligible.
    let candidates: [usize; 6] = [8, 12, 16, 24, 32, 48];
    let mut n_shift = candidates[candidates.len() - 1];
    let mut bound = f64::INFINITY;
    for &n in &candidates {
        let w = n as f64 + q;
        let (poch, dpoch) = pochhammer_with_derivative(s, 2 * EM_ORDER + 1);
        let tail = coeffs[EM_ORDER] * w.powf(-s - 2.0 * EM_ORDER as f64 - 1.0);
        let b = if derivative_order == 0 {
            (poch * tail).abs() * 4.0
        } else {
            ((dpoch * tail).abs() + (poch * tail).abs() * (w.ln() + 4.0)) * 4.0
        };
        if b <= 1e-14 {
            n_shift = n;
            bound = b;
            break;
        }
        n_shift = n;
        bound = b;
    }

    let w = n_shift as f64 + q;
    let lnw = w.ln();

    let (value, abs_mass) = if derivative_order == 0 {
        let (head, head_abs) = kahan_sum((0..n_shift).map(|n| (n as f64 + q).powf(-s)));
        let integral = w.powf(1.0 - s) / (s - 1.0);
        let boundary = 0.5 * w.powf(-s);
        let mut corr = 0.0;
        for (j, k) in coeffs.iter().take(EM_ORDER).enumerate() {
            let (poch, _) = pochhammer_with_derivative(s, 2 * (j + 1) - 1);
            corr += k * poch * w.powf(-s - 2.0 * (j + 1) as f64 + 1.0);
        }
        (
            head + integral + boundary + corr,
            head_abs + integral.abs() + boundary.abs(),
        )
    } else {
        let (head, head_abs) =
            kahan_sum((0..n_shift).map(|n| {
                let b = n as f64 + q;
                -b.ln() * b.powf(-s)
            }));
        let integral =
            w.powf(1.0 - s) * (-lnw / (s - 1.0) - 1.0 / ((s - 1.0) * (s - 1.0)));
        let boundary = -0.5 * lnw * w.powf(-s);
        let mut corr = 0.0;
        for (j, k) in coeffs.iter().take(EM_ORDER).enumerate() {
            let upto = 2 * (j + 1) - 1;
            let (poch, dpoch) = pochhammer_with_derivative(s, upto);
            let pw = w.powf(-s - 2.0 * (j + 1) as f64 + 1.0);
            corr += k * (dpoch * pw - poch * lnw * pw);
        }
        (
            head + integral + boundary + corr,
            head_abs + integral.abs() + boundary.abs(),
        )
    };

    let rounding = 4e-16 * abs_mass;
    Ok(EvalResult::new(value, bound + rounding))
}

/// Riemann zeta zeta_R(s) or its first derivative; zeta_R(s) = zeta_H(s, 1).
pub fn riemann_zeta(s: f64, derivative_order: u8) -> Result<EvalResult> {
    hurwitz_zeta(s, 1.0, derivative_order)
}
