//! The continuation engine: Plana-type correction integrals, the f-function
//! (numeric, and exactly rational at non-positive integers), and the
//! z_even / z_odd building blocks with their poles, residues and special
//! values.
//!
//! Both families obey an exact scaling law that reduces the general scale
//! factor c to 1:
//!
//!     z_even(s, a, b, c) = c^{1-2s} z_even(s, a/c, b/c, 1)
//!     z_odd(s, 0, b, c)  = c^{-2s}  z_odd(s, 0, b/c, 1)
//!
//! All boundary, tail and correction terms are therefore evaluated at unit
//! scale, where the correction kernel is exactly dy/(e^{2 pi y} - 1).

use crate::error::{Result, SpectralError};
use crate::eval::EvalResult;
use crate::quad::{integrate, plana_integral, richardson_limit};
use crate::rational::{binomial, factorial, rat_int, rat_pow, to_f64, Rational};
use crate::special::{
    bernoulli, digamma_half_minus_int, digamma_pos_int, gamma, gauss_2f1, gamma_ratio_neg,
};
use num::Zero;
use std::f64::consts::PI;

/// How close to a declared pole an evaluation may come before it is rejected.
pub const POLE_GUARD: f64 = 1e-4;

/// Parameters (a, b, c) of a z-series term; a, b > -1 and c > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TermParams {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl TermParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let neg_one = rat_int(-1);
        if a <= neg_one || b <= neg_one || c <= rat_int(0) {
            return Err(SpectralError::InvalidArgument(format!(
                "term parameters need a, b > -1 and c > 0, got ({a}, {b}, {c})"
            )));
        }
        // the scaling reduction needs a/c, b/c > -1 as well
        if a <= -c.clone() || b <= -c.clone() {
            return Err(SpectralError::InvalidArgument(
                "term parameters need a, b > -c".to_string(),
            ));
        }
        Ok(Self { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(rat_int(a), rat_int(b), rat_int(c))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// (a/c, b/c, 1): the unit-scale parameters.
    pub fn reduced(&self) -> TermParams {
        TermParams {
            a: self.a.clone() / self.c.clone(),
            b: self.b.clone() / self.c.clone(),
            c: rat_int(1),
        }
    }
}

/// A simple pole of a continuation: exact location and exact residue.
#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub location: Rational,
    pub residue: Rational,
}

/// Which standard series a decomposition term refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermKind {
    Even,
    Odd,
}

/// One weighted, shifted building block of a manifold zeta function.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompTerm {
    pub weight: Rational,
    pub shift: u32,
    pub kind: TermKind,
    pub params: TermParams,
}

/// A manifold zeta function expressed over the standard blocks, with an
/// optional global 4^{-s} factor (complex projective spaces).
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaDecomposition {
    pub prefactor: Rational,
    pub four_pow_s: bool,
    pub terms: Vec<DecompTerm>,
}

// ---------------------------------------------------------------------------
// the f-function
// ---------------------------------------------------------------------------

/// Plana-type correction integrand for f(s, l, a, b, c) at unit scale,
/// written in terms of A0 = a + c and B0 = b + c.
fn f_integrand(s: f64, l: u32, a0: f64, b0: f64) -> impl Fn(f64) -> f64 {
    let l = l as f64;
    move |y: f64| {
        let aa = a0 * a0 + y * y;
        let bb = b0 * b0 + y * y;
        let theta_a = (y / a0).atan();
        let theta_b = (y / b0).atan();
        aa.powf(0.5 * (l - s)) * bb.powf(-0.5 * s) * ((l - s) * theta_a - s * theta_b).sin()
    }
}

fn f_numeric_raw(s: f64, l: u32, a0: f64, b0: f64, tolerance: f64) -> Result<EvalResult> {
    plana_integral(f_integrand(s, l, a0, b0), tolerance)
}

/// Numeric value of the f integral.
pub fn f_numeric(s: f64, l: u32, p: &TermParams, tolerance: f64) -> Result<EvalResult> {
    if l > 1 {
        return Err(SpectralError::InvalidArgument(
            "f is defined for l in {0, 1}".to_string(),
        ));
    }
    let a0 = to_f64(&(p.a.clone() + p.c.clone()));
    let b0 = to_f64(&(p.b.clone() + p.c.clone()));
    f_numeric_raw(s, l, a0, b0, tolerance)
}

/// Exact rational value f(-n, l, a, b, c): the double Bernoulli sum obtained
/// by expanding the trigonometric factor of the integrand. Empty for n = l = 0.
pub fn f_closed(n: u32, l: u32, p: &TermParams) -> Rational {
    assert!(l <= 1, "f is defined for l in {{0, 1}}");
    let a0 = p.a.clone() + p.c.clone();
    let b0 = p.b.clone() + p.c.clone();
    let mut total = rat_int(0);

    // first sum: odd powers from the (a+c) factor
    for i in 1..=(n + l + 1) / 2 {
        for j in 0..=n / 2 {
            let term = Rational::from_integer(binomial(n + l, 2 * i - 1))
                * Rational::from_integer(binomial(n, 2 * j))
                * rat_pow(&a0, n + l + 1 - 2 * i)
                * rat_pow(&b0, n - 2 * j)
                * bernoulli(2 * (i + j))
                / rat_int((i + j) as i64);
            total += term;
        }
    }
    // second sum: odd powers from the (b+c) factor
    for i in 1..=(n + 1) / 2 {
        for j in 0..=(n + l) / 2 {
            let term = Rational::from_integer(binomial(n, 2 * i - 1))
                * Rational::from_integer(binomial(n + l, 2 * j))
                * rat_pow(&a0, n + l - 2 * j)
                * rat_pow(&b0, n + 1 - 2 * i)
                * bernoulli(2 * (i + j))
                / rat_int((i + j) as i64);
            total += term;
        }
    }
    total / rat_int(4)
}

/// d/ds of the f integral, evaluated at s = -n: the integrand picks up
/// -log(A B)/2 on the sine and -(theta_a + theta_b) on the cosine.
fn f_prime_numeric_raw(n: u32, l: u32, a0: f64, b0: f64, tolerance: f64) -> Result<EvalResult> {
    let lf = l as f64;
    let nf = n as f64;
    plana_integral(
        move |y: f64| {
            let aa = a0 * a0 + y * y;
            let bb = b0 * b0 + y * y;
            let theta_a = (y / a0).atan();
            let theta_b = (y / b0).atan();
            let phase = (lf + nf) * theta_a + nf * theta_b;
            aa.powf(0.5 * (lf + nf))
                * bb.powf(0.5 * nf)
                * (-0.5 * (aa.ln() + bb.ln()) * phase.sin() - (theta_a + theta_b) * phase.cos())
        },
        tolerance,
    )
}

// ---------------------------------------------------------------------------
// z_even
// ---------------------------------------------------------------------------

/// Analytic continuation of
/// z_even(s, a, b, c) = sum_{n>=1} [2(cn+a) + b - a] / [(cn+a)(cn+b)]^s,
/// valid for all real s != 1.
pub fn z_even(s: f64, p: &TermParams, tolerance: f64) -> Result<EvalResult> {
    if (s - 1.0).abs() < POLE_GUARD {
        return Err(SpectralError::Pole {
            location: "1".to_string(),
        });
    }
    z_even_unguarded(s, p, tolerance)
}

/// As `z_even` without the pole-proximity guard; used by residue-limit
/// studies that must approach s = 1 closer than the guard radius.
pub(crate) fn z_even_unguarded(s: f64, p: &TermParams, tolerance: f64) -> Result<EvalResult> {
    let red = p.reduced();
    let af = to_f64(&red.a);
    let bf = to_f64(&red.b);
    let a0 = 1.0 + af;
    let b0 = 1.0 + bf;
    let pp = a0 * b0;
    let n1 = 2.0 + af + bf;
    let pref = to_f64(&p.c).powf(1.0 - 2.0 * s);
    let tol_part = tolerance / (8.0 * pref.max(1.0));

    let f1 = f_numeric_raw(s, 1, a0, b0, tol_part)?;
    let f0 = f_numeric_raw(s, 0, a0, b0, tol_part)?;
    let value = 0.5 * n1 * pp.powf(-s) + pp.powf(1.0 - s) / (s - 1.0)
        - 4.0 * f1.value
        - 2.0 * (bf - af) * f0.value;
    let err = 4.0 * f1.error_estimate + 2.0 * (bf - af).abs() * f0.error_estimate
        + 1e-15 * value.abs();
    Ok(EvalResult::new(pref * value, pref * err))
}

/// The residue of z_even at its only pole s = 1 is 1/c.
pub fn z_even_residue_at_one(p: &TermParams) -> Rational {
    rat_int(1) / p.c.clone()
}

/// Exact rational z_even(-m, a, b, c) via the closed-form f sums.
pub fn z_even_at_neg_int(m: u32, p: &TermParams) -> Rational {
    let red = p.reduced();
    let pp = (rat_int(1) + red.a.clone()) * (rat_int(1) + red.b.clone());
    let n1 = rat_int(2) + red.a.clone() + red.b.clone();
    let v = n1 * rat_pow(&pp, m) / rat_int(2) - rat_pow(&pp, m + 1) / rat_int(m as i64 + 1)
        - rat_int(4) * f_closed(m, 1, &red)
        - rat_int(2) * (red.b.clone() - red.a.clone()) * f_closed(m, 0, &red);
    rat_pow(&p.c, 2 * m + 1) * v
}

/// d/ds z_even at s = -m, by term-wise differentiation of the continuation.
pub fn z_even_prime_at_neg_int(m: u32, p: &TermParams, tolerance: f64) -> Result<EvalResult> {
    let red = p.reduced();
    let af = to_f64(&red.a);
    let bf = to_f64(&red.b);
    let a0 = 1.0 + af;
    let b0 = 1.0 + bf;
    let pp = a0 * b0;
    let ln_pp = pp.ln();
    let n1 = 2.0 + af + bf;
    let mf = m as f64;
    let cf = to_f64(&p.c);
    let pref = cf.powi(2 * m as i32 + 1);
    let tol_part = tolerance / (8.0 * pref.max(1.0));

    let df1 = f_prime_numeric_raw(m, 1, a0, b0, tol_part)?;
    let df0 = f_prime_numeric_raw(m, 0, a0, b0, tol_part)?;
    let d_boundary = -0.5 * n1 * ln_pp * pp.powi(m as i32);
    let d_tail = pp.powi(m as i32 + 1) * (ln_pp / (mf + 1.0) - 1.0 / ((mf + 1.0) * (mf + 1.0)));
    let z_prime_reduced =
        d_boundary + d_tail - 4.0 * df1.value - 2.0 * (bf - af) * df0.value;

    // chain rule through the c^{1-2s} prefactor
    let z_reduced = to_f64(&(z_even_at_neg_int(m, p) / rat_pow(&p.c, 2 * m + 1)));
    let value = pref * (-2.0 * cf.ln() * z_reduced + z_prime_reduced);
    let err = pref
        * (4.0 * df1.error_estimate + 2.0 * (bf - af).abs() * df0.error_estimate
            + 1e-14 * value.abs());
    Ok(EvalResult::new(value, err))
}

// ---------------------------------------------------------------------------
// z_odd
// ---------------------------------------------------------------------------

fn z_odd_pole_guard(s: f64) -> Result<()> {
    if s < 0.5 + POLE_GUARD {
        let m = (0.5 - s).round();
        if m >= 0.0 && (s - (0.5 - m)).abs() < POLE_GUARD {
            return Err(SpectralError::Pole {
                location: format!("{}/2", 1 - 2 * m as i64),
            });
        }
    }
    Ok(())
}

/// The tail integral int_1^inf x^{-s} (x + beta)^{-s} dx at unit scale,
/// through the hypergeometric representation; converges for s > 1/2.
fn tail1_hyper(s: f64, beta: f64) -> Result<EvalResult> {
    let b1 = 1.0 + beta;
    let f = gauss_2f1(s, 1.0, 2.0 * s, beta / b1)?;
    Ok(f.scale(b1.powf(-s) / (2.0 * s - 1.0)))
}

/// int_0^1 x^{-s} (x + beta)^{-s} dx at unit scale, for s < 1.
/// The x^{-s} endpoint is graded away by the substitution x = t^{1/(1-s)}.
fn i01_quadrature(s: f64, beta: f64, tolerance: f64) -> (f64, f64) {
    if s <= 0.0 {
        integrate(
            move |x: f64| x.powf(-s) * (x + beta).powf(-s),
            0.0,
            1.0,
            tolerance,
        )
    } else {
        let p = 1.0 / (1.0 - s);
        let (v, e) = integrate(
            move |t: f64| (t.powf(p) + beta).powf(-s),
            0.0,
            1.0,
            tolerance / p,
        );
        (p * v, p * e)
    }
}

/// Same tail integral through the Gamma-split representation, which provides
/// the continuation for s < 1.
fn tail1_gamma_split(s: f64, beta: f64, tolerance: f64) -> Result<EvalResult> {
    let gamma_term = (1.0 / PI.sqrt())
        * (0.5 * beta).powf(1.0 - 2.0 * s)
        * gamma(1.0 - s)
        * gamma(s + 0.5)
        / (2.0 * s - 1.0);
    let (i01, i01_err) = i01_quadrature(s, beta, tolerance);
    Ok(EvalResult::new(
        gamma_term - i01,
        i01_err + 1e-14 * gamma_term.abs(),
    ))
}

/// c^{-s} int_1^inf x^{-s} (cx+b)^{-s} dx via the hypergeometric form
/// (valid for s > 1/2). Exposed for the representation-consistency checks.
pub fn tail_integral_via_hypergeometric(s: f64, b: f64, c: f64) -> Result<EvalResult> {
    if s <= 0.5 {
        return Err(SpectralError::DivergentRegion { s, threshold: 0.5 });
    }
    Ok(tail1_hyper(s, b / c)?.scale(c.powf(-2.0 * s)))
}

/// c^{-s} int_1^inf x^{-s} (cx+b)^{-s} dx via the Gamma-split form
/// (the continuation path, s < 1). Exposed for the consistency checks.
pub fn tail_integral_via_gamma_split(s: f64, b: f64, c: f64, tolerance: f64) -> Result<EvalResult> {
    if s >= 1.0 {
        return Err(SpectralError::InvalidArgument(
            "gamma-split tail representation needs s < 1".to_string(),
        ));
    }
    Ok(tail1_gamma_split(s, b / c, tolerance)?.scale(c.powf(-2.0 * s)))
}

/// Analytic continuation of z_odd(s, 0, b, c) = sum_{n>=1} [(cn)(cn+b)]^{-s},
/// valid for all real s off the half-integer pole ladder s = 1/2 - m.
pub fn z_odd(s: f64, b: f64, c: f64, tolerance: f64) -> Result<EvalResult> {
    z_odd_pole_guard(s)?;
    z_odd_unguarded(s, b, c, tolerance)
}

/// As `z_odd` without the ladder guard.
pub(crate) fn z_odd_unguarded(s: f64, b: f64, c: f64, tolerance: f64) -> Result<EvalResult> {
    let beta = b / c;
    let b1 = 1.0 + beta;
    let pref = c.powf(-2.0 * s);
    let tol_part = tolerance / (8.0 * pref.max(1.0));

    let boundary = 0.5 * b1.powf(-s);
    let tail = if s > 0.75 {
        tail1_hyper(s, beta)?
    } else {
        tail1_gamma_split(s, beta, tol_part)?
    };
    let plana = f_numeric_raw(s, 0, 1.0, b1, tol_part)?;
    let value = boundary + tail.value - 2.0 * plana.value;
    let err = tail.error_estimate + 2.0 * plana.error_estimate + 1e-15 * value.abs();
    Ok(EvalResult::new(pref * value, pref * err))
}

/// Exact residue of z_odd(s, 0, b, c) at s = 1/2 - m:
/// (-1)^m / 2^{m+1} * (2m-1)!!/m! * (1/c) * (b/2)^{2m}.
pub fn z_odd_residue(m: u32, b: &Rational, c: &Rational) -> Rational {
    let sign = if m % 2 == 0 { rat_int(1) } else { rat_int(-1) };
    let dfact = Rational::from_integer(crate::rational::double_factorial(2 * m as i64 - 1));
    let half_b = b.clone() / rat_int(2);
    sign * dfact / (rat_pow(&rat_int(2), m + 1) * Rational::from_integer(factorial(m)))
        / c.clone()
        * rat_pow(&half_b, 2 * m)
}

/// int_0^1 x^m (x + beta)^m dx as an exact rational, written through the
/// Gamma-ratio limits Gamma(i-m)/Gamma(-m) of the hypergeometric form
/// F(-m, m+1; m+2; -1/beta).
fn i01_at_neg_int(m: u32, beta: &Rational) -> Rational {
    let mut sum = rat_int(0);
    for i in 0..=m {
        // (-m)_i = Gamma(i-m)/Gamma(-m); (m+1)_i/(m+2)_i = (m+1)/(m+i+1)
        let poch_ratio = rat_int(m as i64 + 1) / rat_int((m + i) as i64 + 1);
        let term = gamma_ratio_neg(m, i).expect("i <= m") * poch_ratio
            / Rational::from_integer(factorial(i))
            * rat_pow(&(-rat_int(1) / beta.clone()), i);
        sum += term;
    }
    rat_pow(beta, m) / rat_int(m as i64 + 1) * sum
}

/// The same integral expanded monomial by monomial; used as a self-check.
#[cfg(test)]
fn i01_at_neg_int_direct(m: u32, beta: &Rational) -> Rational {
    let mut sum = rat_int(0);
    for i in 0..=m {
        sum += Rational::from_integer(binomial(m, i)) * rat_pow(beta, m - i)
            / rat_int((m + i) as i64 + 1);
    }
    sum
}

/// The Gamma-term of the split representation at s = -m, exactly rational:
/// (-1)^{m+1} 2^m (beta/2)^{2m+1} m! / (2m+1)!!.
fn gamma_term_at_neg_int(m: u32, beta: &Rational) -> Rational {
    let sign = if m % 2 == 0 { rat_int(-1) } else { rat_int(1) };
    let half_beta = beta.clone() / rat_int(2);
    sign * rat_pow(&rat_int(2), m) * rat_pow(&half_beta, 2 * m + 1)
        * Rational::from_integer(factorial(m))
        / Rational::from_integer(crate::rational::double_factorial(2 * m as i64 + 1))
}

/// Exact rational z_odd(-m, 0, b, c), assembled from the boundary term, the
/// Gamma-term limit, the [0,1] polynomial integral and the closed-form f.
pub fn z_odd_at_neg_int(m: u32, b: &Rational, c: &Rational) -> Rational {
    let beta = b.clone() / c.clone();
    let b1 = rat_int(1) + beta.clone();
    let boundary = rat_pow(&b1, m) / rat_int(2);
    let tgamma = gamma_term_at_neg_int(m, &beta);
    let i01 = i01_at_neg_int(m, &beta);
    let params = TermParams::new(rat_int(0), beta, rat_int(1)).expect("beta > 0");
    let f_term = rat_int(2) * f_closed(m, 0, &params);
    rat_pow(c, 2 * m) * (boundary + tgamma - i01 - f_term)
}

/// d/ds z_odd at s = -m, by term-wise differentiation of the split
/// representation: the boundary and Gamma terms differentiate to logarithms
/// and digamma values, the [0,1] integral to log-weighted polynomial
/// integrals, and the Plana integral to its log/arctan-weighted form.
pub fn z_odd_prime_at_neg_int(
    m: u32,
    b: &Rational,
    c: &Rational,
    tolerance: f64,
) -> Result<EvalResult> {
    let beta_rat = b.clone() / c.clone();
    let beta = to_f64(&beta_rat);
    let b1 = 1.0 + beta;
    let mf = m as f64;
    let cf = to_f64(c);
    let pref = cf.powi(2 * m as i32);
    let tol_part = tolerance / (8.0 * pref.max(1.0));

    let d_boundary = -0.5 * b1.powi(m as i32) * b1.ln();

    let tgamma = to_f64(&gamma_term_at_neg_int(m, &beta_rat));
    let d_tgamma = tgamma
        * (-2.0 * (0.5 * beta).ln() - digamma_pos_int(m) + digamma_half_minus_int(m)
            + 2.0 / (2.0 * mf + 1.0));

    // d/ds of -int_0^1 x^{-s}(x+beta)^{-s} dx at s = -m:
    // the log x part integrates exactly, the log(x+beta) part by quadrature
    let mut d_i01_logx = 0.0;
    for i in 0..=m {
        let bin = to_f64(&Rational::from_integer(binomial(m, i)));
        d_i01_logx -= bin * beta.powi((m - i) as i32) / (mf + i as f64 + 1.0).powi(2);
    }
    let (d_i01_logb, d_i01_err) = integrate(
        move |x: f64| (x * (x + beta)).powi(m as i32) * (x + beta).ln(),
        0.0,
        1.0,
        tol_part,
    );

    let df = f_prime_numeric_raw(m, 0, 1.0, b1, tol_part)?;

    let z1_prime = d_boundary + d_tgamma + (d_i01_logx + d_i01_logb) - 2.0 * df.value;
    let z1_value = to_f64(&(z_odd_at_neg_int(m, b, c) / rat_pow(c, 2 * m)));
    let value = pref * (-2.0 * cf.ln() * z1_value + z1_prime);
    let err = pref * (2.0 * df.error_estimate + d_i01_err + 1e-14 * value.abs());
    Ok(EvalResult::new(value, err))
}

// ---------------------------------------------------------------------------
// decomposition-level evaluation
// ---------------------------------------------------------------------------

impl ZetaDecomposition {
    /// Numeric value at real s; pole guards propagate from the blocks.
    pub fn eval(&self, s: f64, tolerance: f64) -> Result<EvalResult> {
        self.eval_impl(s, tolerance, true)
    }

    pub(crate) fn eval_unguarded(&self, s: f64, tolerance: f64) -> Result<EvalResult> {
        self.eval_impl(s, tolerance, false)
    }

    fn eval_impl(&self, s: f64, tolerance: f64, guard: bool) -> Result<EvalResult> {
        let n = self.terms.len().max(1) as f64;
        let mut acc = EvalResult::exact(0.0);
        for t in &self.terms {
            let w = to_f64(&t.weight);
            let sigma = s - t.shift as f64;
            let tol_t = tolerance / (n * w.abs().max(1.0));
            let z = match (t.kind, guard) {
                (TermKind::Even, true) => z_even(sigma, &t.params, tol_t)?,
                (TermKind::Even, false) => z_even_unguarded(sigma, &t.params, tol_t)?,
                (TermKind::Odd, true) => {
                    z_odd(sigma, to_f64(t.params.b()), to_f64(t.params.c()), tol_t)?
                }
                (TermKind::Odd, false) => {
                    z_odd_unguarded(sigma, to_f64(t.params.b()), to_f64(t.params.c()), tol_t)?
                }
            };
            acc = acc.add(&z.scale(w));
        }
        let mut out = acc.scale(to_f64(&self.prefactor));
        if self.four_pow_s {
            out = out.scale(4.0f64.powf(-s));
        }
        Ok(out)
    }

    /// Exact rational value at s = 0, assembled from the block values at
    /// non-positive integers (4^{-0} = 1).
    pub fn zeta_at_zero(&self) -> Rational {
        let mut acc = rat_int(0);
        for t in &self.terms {
            let z = match t.kind {
                TermKind::Even => z_even_at_neg_int(t.shift, &t.params),
                TermKind::Odd => z_odd_at_neg_int(t.shift, t.params.b(), t.params.c()),
            };
            acc += t.weight.clone() * z;
        }
        self.prefactor.clone() * acc
    }
}

/// d/ds at s = 0 of an assembled continuation.
///
/// Primary path: term-wise analytic differentiation of every block (plus the
/// -log 4 contribution of the 4^{-s} factor). Fallback path: Richardson
/// extrapolation of central differences on the numeric continuation. The two
/// must agree within 10x tolerance.
pub fn zeta_derivative_at_zero(d: &ZetaDecomposition, tolerance: f64) -> Result<EvalResult> {
    let n = d.terms.len().max(1) as f64;
    let mut deriv = 0.0;
    let mut err = 0.0;
    for t in &d.terms {
        let w = to_f64(&t.weight);
        let tol_t = tolerance / (n * w.abs().max(1.0));
        let zp = match t.kind {
            TermKind::Even => z_even_prime_at_neg_int(t.shift, &t.params, tol_t)?,
            TermKind::Odd => {
                z_odd_prime_at_neg_int(t.shift, t.params.b(), t.params.c(), tol_t)?
            }
        };
        deriv += w * zp.value;
        err += w.abs() * zp.error_estimate;
    }
    let pref = to_f64(&d.prefactor);
    let mut value = pref * deriv;
    let mut total_err = pref.abs() * err;
    if d.four_pow_s {
        value -= 4.0f64.ln() * to_f64(&d.zeta_at_zero());
    }

    // independent check: Richardson-extrapolated central differences
    let fd_tol = (tolerance * 1e-3).max(5e-14);
    let mut pts = Vec::new();
    for &h in &[0.04, 0.02, 0.01, 0.005] {
        let plus = d.eval(h, fd_tol)?;
        let minus = d.eval(-h, fd_tol)?;
        pts.push((h * h, (plus.value - minus.value) / (2.0 * h)));
    }
    let fd = richardson_limit(&pts);
    let disagreement = (value - fd).abs();
    if disagreement > 10.0 * tolerance {
        return Err(SpectralError::ToleranceNotMet {
            requested: tolerance,
            achieved: disagreement,
        });
    }
    total_err = total_err.max(disagreement);
    Ok(EvalResult::new(value, total_err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn params(a: i64, b: i64, c: i64) -> TermParams {
        TermParams::from_ints(a, b, c).unwrap()
    }

    /// Direct partial sum of the defining z_even series.
    fn z_even_series(s: f64, a: f64, b: f64, c: f64, n_terms: usize) -> f64 {
        (1..=n_terms)
            .rev()
            .map(|n| {
                let x = c * n as f64;
                (2.0 * (x + a) + b - a) / ((x + a) * (x + b)).powf(s)
            })
            .sum()
    }

    /// Direct partial sum of the defining z_odd series.
    fn z_odd_series(s: f64, b: f64, c: f64, n_terms: usize) -> f64 {
        (1..=n_terms)
            .rev()
            .map(|n| {
                let x = c * n as f64;
                (x * (x + b)).powf(-s)
            })
            .sum()
    }

    #[test]
    fn term_params_domain() {
        assert!(TermParams::from_ints(0, 1, 1).is_ok());
        assert!(TermParams::from_ints(-1, 1, 1).is_err());
        assert!(TermParams::from_ints(0, 1, 0).is_err());
        assert!(TermParams::new(rat(-3, 4), rat_int(1), rat(1, 2)).is_err());
    }

    #[test]
    fn f_closed_footnote_identity() {
        for (a, b, c) in [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 1, 2), (0, 2, 2), (0, 3, 2)] {
            assert!(f_closed(0, 0, &params(a, b, c)).is_zero());
        }
    }

    #[test]
    fn f_closed_small_values() {
        assert_eq!(f_closed(0, 1, &params(0, 1, 1)), rat(1, 24));
        // the (0, 1) value is parameter-independent: single Bernoulli term
        assert_eq!(f_closed(0, 1, &params(0, 3, 2)), rat(1, 24));
        assert_eq!(f_closed(1, 0, &params(0, 2, 1)), rat(1, 6));
        assert_eq!(f_closed(1, 0, &params(0, 1, 1)), rat(1, 8));
        assert_eq!(f_closed(1, 1, &params(0, 2, 1)), rat(23, 80));
        assert_eq!(f_closed(1, 1, &params(0, 3, 1)), rat(89, 240));
        assert_eq!(f_closed(1, 0, &params(0, 3, 1)), rat(5, 24));
    }

    #[test]
    fn f_numeric_matches_closed_form() {
        for (a, b, c) in [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 1, 2), (0, 2, 2)] {
            let p = params(a, b, c);
            for n in 0..=2u32 {
                for l in 0..=1u32 {
                    let exact = to_f64(&f_closed(n, l, &p));
                    let numeric = f_numeric(-(n as f64), l, &p, 1e-12).unwrap();
                    assert!(
                        (numeric.value - exact).abs() < 1e-10,
                        "f(-{n},{l},{a},{b},{c}): {} vs {exact}",
                        numeric.value
                    );
                }
            }
        }
    }

    #[test]
    fn f_numeric_zero_at_origin() {
        let r = f_numeric(0.0, 0, &params(0, 2, 1), 1e-12).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn z_even_value_at_zero() {
        let r = z_even(0.0, &params(0, 1, 1), 1e-11).unwrap();
        assert!((r.value + 2.0 / 3.0).abs() < 1e-10, "got {}", r.value);
    }

    #[test]
    fn z_even_matches_series_unit_scale() {
        // s = 2: sum (2n+1)/[n(n+1)]^2 telescopes to exactly 1
        let r = z_even(2.0, &params(0, 1, 1), 1e-11).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "got {}", r.value);

        let direct = z_even_series(3.0, 0.0, 1.0, 1.0, 2_000_000);
        let r3 = z_even(3.0, &params(0, 1, 1), 1e-11).unwrap();
        assert!((r3.value - direct).abs() < 1e-10);
    }

    #[test]
    fn z_even_matches_series_doubled_scale() {
        // c = 2 exercises the scaling reduction
        let direct = z_even_series(2.5, 0.0, 1.0, 2.0, 2_000_000);
        let r = z_even(2.5, &params(0, 1, 2), 1e-11).unwrap();
        assert!(
            (r.value - direct).abs() < 1e-9,
            "got {}, series {}",
            r.value,
            direct
        );
        let direct3 = z_even_series(2.0, 0.0, 3.0, 2.0, 2_000_000);
        let r3 = z_even(2.0, &params(0, 3, 2), 1e-11).unwrap();
        assert!((r3.value - direct3).abs() < 1e-8);
    }

    #[test]
    fn z_even_pole_guard() {
        assert!(matches!(
            z_even(1.0, &params(0, 1, 1), 1e-10),
            Err(SpectralError::Pole { .. })
        ));
        assert!(z_even(1.00005, &params(0, 1, 1), 1e-10).is_err());
    }

    #[test]
    fn z_even_residue_by_richardson() {
        for (p, expect) in [
            (params(0, 1, 1), 1.0),
            (params(0, 1, 2), 0.5),
            (params(0, 3, 2), 0.5),
        ] {
            let pts: Vec<(f64, f64)> = [1e-3, 1e-4, 1e-5, 1e-6]
                .iter()
                .map(|&h| {
                    let v = z_even(1.0 + h, &p, 1e-12).unwrap().value;
                    (h, h * v)
                })
                .collect();
            let res = richardson_limit(&pts);
            assert!((res - expect).abs() < 1e-6, "residue {res} vs {expect}");
            assert_eq!(
                z_even_residue_at_one(&p),
                rat_int(1) / p.c().clone()
            );
        }
    }

    #[test]
    fn z_even_exact_values() {
        assert_eq!(z_even_at_neg_int(0, &params(0, 1, 1)), rat(-2, 3));
        assert_eq!(z_even_at_neg_int(0, &params(0, 3, 1)), rat(-5, 3));
        assert_eq!(z_even_at_neg_int(1, &params(0, 3, 1)), rat(-11, 15));
        assert_eq!(z_even_at_neg_int(0, &params(0, 2, 1)), rat(-7, 6));
        assert_eq!(z_even_at_neg_int(1, &params(0, 2, 1)), rat(-19, 60));
        assert_eq!(z_even_at_neg_int(0, &params(0, 1, 2)), rat(-5, 6));
    }

    #[test]
    fn z_even_exact_agrees_with_numeric_continuation() {
        for (a, b, c) in [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 1, 2), (0, 3, 2)] {
            let p = params(a, b, c);
            for m in 0..=2u32 {
                let exact = to_f64(&z_even_at_neg_int(m, &p));
                let numeric = z_even(-(m as f64), &p, 1e-12).unwrap();
                assert!(
                    (numeric.value - exact).abs() < 1e-9,
                    "z_even(-{m}) at ({a},{b},{c}): {} vs {exact}",
                    numeric.value
                );
            }
        }
    }

    #[test]
    fn z_odd_value_at_zero() {
        let r = z_odd(0.0, 2.0, 1.0, 1e-11).unwrap();
        assert!((r.value + 1.5).abs() < 1e-10, "got {}", r.value);
    }

    #[test]
    fn z_odd_matches_series() {
        let direct = z_odd_series(2.0, 2.0, 1.0, 2_000_000);
        let r = z_odd(2.0, 2.0, 1.0, 1e-11).unwrap();
        assert!((r.value - direct).abs() < 1e-10);

        // real-projective parameters, c = 2
        let direct2 = z_odd_series(2.0, 2.0, 2.0, 2_000_000);
        let r2 = z_odd(2.0, 2.0, 2.0, 1e-11).unwrap();
        assert!(
            (r2.value - direct2).abs() < 1e-10,
            "got {}, series {}",
            r2.value,
            direct2
        );

        // a value below the hypergeometric crossover
        let direct3 = z_odd_series(0.7, 2.0, 1.0, 60_000_000);
        let r3 = z_odd(0.7, 2.0, 1.0, 1e-11).unwrap();
        // the raw series converges slowly at s = 0.7; allow its truncation error
        assert!(
            (r3.value - direct3).abs() < 2e-5,
            "got {}, series {}",
            r3.value,
            direct3
        );
    }

    #[test]
    fn z_odd_scaling_consistency() {
        // z_odd(s, 0, b, c) = c^{-2s} z_odd(s, 0, b/c, 1)
        for &s in &[-1.5, -0.8, 0.2, 2.0, 3.0] {
            let lhs = z_odd(s, 2.0, 2.0, 1e-12).unwrap().value;
            let rhs = 2.0f64.powf(-2.0 * s) * z_odd(s, 1.0, 1.0, 1e-12).unwrap().value;
            assert!((lhs - rhs).abs() < 1e-9, "s = {s}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn z_odd_pole_guard_on_ladder() {
        for &s in &[0.5, -0.5, -1.5, 0.50005] {
            assert!(
                matches!(z_odd(s, 2.0, 1.0, 1e-10), Err(SpectralError::Pole { .. })),
                "expected pole at {s}"
            );
        }
        assert!(z_odd(0.4, 2.0, 1.0, 1e-10).is_ok());
    }

    #[test]
    fn z_odd_residues() {
        assert_eq!(z_odd_residue(0, &rat_int(2), &rat_int(1)), rat(1, 2));
        assert_eq!(z_odd_residue(1, &rat_int(2), &rat_int(1)), rat(-1, 4));
        assert_eq!(z_odd_residue(0, &rat_int(2), &rat_int(2)), rat(1, 4));
    }

    #[test]
    fn z_odd_residues_by_richardson() {
        for (m, b, c) in [(0u32, 2i64, 1i64), (1, 2, 1), (0, 2, 2), (1, 4, 1)] {
            let s0 = 0.5 - m as f64;
            let pts: Vec<(f64, f64)> = [1e-3, 1e-4, 1e-5, 1e-6]
                .iter()
                .map(|&h| {
                    let v = z_odd(s0 + h, b as f64, c as f64, 1e-12).unwrap().value;
                    (h, h * v)
                })
                .collect();
            let res = richardson_limit(&pts);
            let exact = to_f64(&z_odd_residue(m, &rat_int(b), &rat_int(c)));
            assert!(
                (res - exact).abs() < 1e-6,
                "residue at m={m}, b={b}, c={c}: {res} vs {exact}"
            );
        }
    }

    #[test]
    fn z_odd_exact_values() {
        assert_eq!(z_odd_at_neg_int(0, &rat_int(2), &rat_int(1)), rat(-3, 2));
        assert_eq!(z_odd_at_neg_int(1, &rat_int(2), &rat_int(1)), rat(1, 2));
        assert_eq!(z_odd_at_neg_int(0, &rat_int(2), &rat_int(2)), rat_int(-1));
        assert_eq!(z_odd_at_neg_int(1, &rat_int(2), &rat_int(2)), rat_int(0));
    }

    #[test]
    fn z_odd_exact_agrees_with_numeric_continuation() {
        for (b, c) in [(2i64, 1i64), (2, 2), (4, 1), (4, 2)] {
            for m in 0..=2u32 {
                let exact = to_f64(&z_odd_at_neg_int(m, &rat_int(b), &rat_int(c)));
                let numeric = z_odd(-(m as f64), b as f64, c as f64, 1e-12).unwrap();
                assert!(
                    (numeric.value - exact).abs() < 1e-9,
                    "z_odd(-{m}) at (b={b}, c={c}): {} vs {exact}",
                    numeric.value
                );
            }
        }
    }

    #[test]
    fn i01_gamma_ratio_route_matches_direct_expansion() {
        for m in 0..=6u32 {
            for beta in [rat_int(1), rat_int(2), rat(1, 2), rat_int(3)] {
                assert_eq!(
                    i01_at_neg_int(m, &beta),
                    i01_at_neg_int_direct(m, &beta),
                    "m={m}, beta={beta}"
                );
            }
        }
    }

    #[test]
    fn tail_representations_agree_on_overlap_strip() {
        for (b, c) in [(2.0, 1.0), (2.0, 2.0), (4.0, 2.0), (3.0, 1.0)] {
            for &s in &[0.55, 0.6, 0.75, 0.9, 0.95] {
                let hyper = tail_integral_via_hypergeometric(s, b, c).unwrap();
                let split = tail_integral_via_gamma_split(s, b, c, 1e-12).unwrap();
                assert!(
                    (hyper.value - split.value).abs() < 1e-9,
                    "s={s}, b={b}, c={c}: {} vs {}",
                    hyper.value,
                    split.value
                );
            }
        }
    }

    #[test]
    fn z_even_prime_matches_central_differences() {
        for (m, p) in [(0u32, params(0, 1, 1)), (1, params(0, 2, 1)), (0, params(0, 1, 2))] {
            let d = z_even_prime_at_neg_int(m, &p, 1e-11).unwrap();
            let h = 1e-4;
            let s0 = -(m as f64);
            let fd = (z_even(s0 + h, &p, 1e-13).unwrap().value
                - z_even(s0 - h, &p, 1e-13).unwrap().value)
                / (2.0 * h);
            assert!(
                (d.value - fd).abs() < 1e-6,
                "m={m}: analytic {} vs fd {fd}",
                d.value
            );
        }
    }

    #[test]
    fn z_odd_prime_matches_central_differences() {
        for (m, b, c) in [(0u32, 2i64, 1i64), (1, 2, 1), (0, 2, 2), (1, 2, 2)] {
            let d = z_odd_prime_at_neg_int(m, &rat_int(b), &rat_int(c), 1e-11).unwrap();
            let h = 1e-4;
            let s0 = -(m as f64);
            let fd = (z_odd(s0 + h, b as f64, c as f64, 1e-13).unwrap().value
                - z_odd(s0 - h, b as f64, c as f64, 1e-13).unwrap().value)
                / (2.0 * h);
            assert!(
                (d.value - fd).abs() < 1e-6,
                "m={m}, b={b}, c={c}: analytic {} vs fd {fd}",
                d.value
            );
        }
    }
}
