//! Quadrature: fixed Gauss-Legendre panels, adaptive bisection, the Plana
//! integral against dy/(e^{2 pi y} - 1), and Richardson extrapolation.

use crate::error::{Result, SpectralError};
use crate::eval::EvalResult;
use std::f64::consts::PI;
use std::sync::OnceLock;

const GL_ORDER: usize = 20;
const MAX_DEPTH: usize = 30;

/// Nodes and weights of the GL_ORDER-point rule on [-1, 1], by Newton
/// iteration on the Legendre polynomial.
fn gl_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                // P_n(x) and P_n'(x) by the three-term recurrence
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule.push((x, w));
        }
        rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        rule
    })
}

fn gl_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    gl_rule()
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

fn adapt(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
    err_acc: &mut f64,
) -> f64 {
    let whole = gl_panel(f, a, b);
    let mid = 0.5 * (a + b);
    let left = gl_panel(f, a, mid);
    let right = gl_panel(f, mid, b);
    let refined = left + right;
    let err = (refined - whole).abs();
    if err <= tol || depth >= MAX_DEPTH || (b - a) < 1e-14 {
        *err_acc += err;
        refined
    } else {
        adapt(f, a, mid, 0.5 * tol, depth + 1, err_acc)
            + adapt(f, mid, b, 0.5 * tol, depth + 1, err_acc)
    }
}

/// Adaptive Gauss-Legendre integration of `f` over [a, b].
/// Returns the value and an accumulated error estimate.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let mut err = 0.0;
    let v = adapt(&f, a, b, tol.max(1e-16), 0, &mut err);
    (v, err)
}

/// The Plana integral of `g` against the kernel dy/(e^{2 pi y} - 1) on (0, inf).
///
/// `g` must vanish at least linearly at 0 and grow at most polynomially; the
/// exponential kernel then makes the truncation to [0, Y] analyzable, with Y
/// chosen so the tail bound stays below tolerance/10.
pub fn plana_integral(g: impl Fn(f64) -> f64, tolerance: f64) -> Result<EvalResult> {
    if tolerance <= 0.0 {
        return Err(SpectralError::InvalidArgument(
            "tolerance must be positive".to_string(),
        ));
    }
    let mut upper = 8.0_f64;
    let mut tail;
    loop {
        // each unit cell [Y+j, Y+j+1] contributes at most
        // max|g| * e^{-2 pi (Y+j)} * (1 + kernel slack)
        tail = (0..40)
            .map(|j| {
                let y = upper + j as f64;
                g(y + 1.0).abs() * (-2.0 * PI * y).exp()
            })
            .sum::<f64>()
            * 1.01;
        if tail <= tolerance / 10.0 || upper >= 64.0 {
            break;
        }
        upper += 4.0;
    }
    if tail > tolerance {
        return Err(SpectralError::ToleranceNotMet {
            requested: tolerance,
            achieved: tail,
        });
    }
    let integrand = |y: f64| {
        if y <= 0.0 {
            0.0
        } else {
            g(y) / (2.0 * PI * y).exp_m1()
        }
    };
    let (value, quad_err) = integrate(integrand, 0.0, upper, tolerance * 0.5);
    let total_err = quad_err + tail;
    if total_err > tolerance * 2.0 {
        return Err(SpectralError::ToleranceNotMet {
            requested: tolerance,
            achieved: total_err,
        });
    }
    Ok(EvalResult::new(value, total_err))
}

/// Polynomial extrapolation of samples (h_i, g(h_i)) to h = 0.
pub fn richardson_limit(points: &[(f64, f64)]) -> f64 {
    let n = points.len();
    assert!(n >= 2, "need at least two samples");
    let mut acc = 0.0;
    for i in 0..n {
        let (hi, gi) = points[i];
        let mut weight = 1.0;
        for (j, &(hj, _)) in points.iter().enumerate() {
            if j != i {
                weight *= hj / (hj - hi);
            }
        }
        acc += gi * weight;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_exact_on_polynomials() {
        // 20-point GL is exact through degree 39
        let (v, _) = integrate(|x| x.powi(7) - 3.0 * x.powi(2) + 1.0, -1.0, 2.0, 1e-12);
        // antiderivative x^8/8 - x^3 + x
        let exact = (256.0 / 8.0 - 8.0 + 2.0) - (1.0 / 8.0 + 1.0 - 1.0);
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn adaptive_handles_mild_singularities() {
        // integral of sqrt(x) on [0,1] = 2/3
        let (v, err) = integrate(|x| x.sqrt(), 0.0, 1.0, 1e-11);
        assert!((v - 2.0 / 3.0).abs() < 1e-9, "got {v}, err {err}");
    }

    #[test]
    fn plana_bernoulli_moments() {
        // int_0^inf y/(e^{2 pi y}-1) dy = 1/24
        let r = plana_integral(|y| y, 1e-12).unwrap();
        assert!((r.value - 1.0 / 24.0).abs() < 1e-12, "got {}", r.value);
        // int_0^inf y^3/(e^{2 pi y}-1) dy = 1/240
        let r3 = plana_integral(|y| y.powi(3), 1e-12).unwrap();
        assert!((r3.value - 1.0 / 240.0).abs() < 1e-12, "got {}", r3.value);
    }

    #[test]
    fn plana_zero_integrand() {
        let r = plana_integral(|_| 0.0, 1e-12).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn richardson_extrapolates_linear_model() {
        // g(h) = 5 + 3h - 2h^2
        let pts: Vec<(f64, f64)> = [1e-1, 5e-2, 2.5e-2, 1.25e-2]
            .iter()
            .map(|&h| (h, 5.0 + 3.0 * h - 2.0 * h * h))
            .collect();
        assert!((richardson_limit(&pts) - 5.0).abs() < 1e-12);
    }
}
