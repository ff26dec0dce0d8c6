//! Constant-potential perturbation on the 2-sphere: zeta(0) and zeta'(0) of
//! the operator with eigenvalues n(n+1) + q^2, the genus-2 canonical product
//! G(q) over the shifted spectrum, and the binomial-expansion cross-check.

use crate::error::{Result, SpectralError};
use crate::eval::EvalResult;
use crate::manifold::{zeta, zeta_prime_at_zero, Family, ManifoldSpec};
use crate::special::EULER_GAMMA;

/// Configuration shared by the potential-module operations.
#[derive(Debug, Clone, Copy)]
pub struct PotentialConfig {
    pub q: f64,
    /// Truncation of the canonical product (default 1000 factors).
    pub product_terms: usize,
    /// Truncation of the binomial expansion.
    pub expansion_order: usize,
}

impl PotentialConfig {
    pub fn new(q: f64) -> Result<Self> {
        if !(q.is_finite() && q >= 0.0) {
            return Err(SpectralError::InvalidArgument(format!(
                "potential strength q must be a nonnegative real, got {q}"
            )));
        }
        Ok(Self {
            q,
            product_terms: 1000,
            expansion_order: 12,
        })
    }

    pub fn with_product_terms(mut self, n: usize) -> Self {
        self.product_terms = n.max(1);
        self
    }
}

fn sphere2() -> ManifoldSpec {
    ManifoldSpec::new(Family::Sphere, 2).expect("k = 2")
}

/// log G(q) for the canonical product
/// G(q) = prod_{n>=1} [1 + q^2/(n(n+1))]^{2n+1} e^{-(2n+1) q^2/(n(n+1))},
/// truncated at `product_terms` factors with the tail bounded by
/// q^4 / (2 (N+1)^2) through |ln(1+x) - x| <= x^2/2 and telescoping.
pub fn canonical_product_log(cfg: &PotentialConfig) -> EvalResult {
    let q2 = cfg.q * cfg.q;
    if q2 == 0.0 {
        return EvalResult::exact(0.0);
    }
    let n = cfg.product_terms;
    let mut sum = 0.0;
    for i in (1..=n).rev() {
        let lambda = (i * (i + 1)) as f64;
        let x = q2 / lambda;
        sum += (2 * i + 1) as f64 * (x.ln_1p() - x);
    }
    let tail = q2 * q2 / (2.0 * ((n + 1) as f64).powi(2));
    EvalResult::new(sum, tail + 1e-15 * sum.abs())
}

/// zeta(0, Delta_{S^2} + q^2) = zeta(0, S^2) - q^2 = -2/3 - q^2, exactly.
pub fn zeta0_with_potential(cfg: &PotentialConfig) -> f64 {
    -2.0 / 3.0 - cfg.q * cfg.q
}

/// zeta'(0, Delta_{S^2} + q^2) = zeta'(0, S^2) + (1 - 2 gamma) q^2 - log G(q).
pub fn zeta_prime0_with_potential(cfg: &PotentialConfig, tolerance: f64) -> Result<EvalResult> {
    let base = zeta_prime_at_zero(&sphere2(), tolerance)?;
    Ok(assemble_zeta_prime0(cfg, &base))
}

/// Same, with a precomputed zeta'(0, S^2) (used when sweeping q).
pub fn assemble_zeta_prime0(cfg: &PotentialConfig, base: &EvalResult) -> EvalResult {
    let q2 = cfg.q * cfg.q;
    let log_g = canonical_product_log(cfg);
    EvalResult::new(
        base.value + (1.0 - 2.0 * EULER_GAMMA) * q2 - log_g.value,
        base.error_estimate + log_g.error_estimate,
    )
}

/// Truncated binomial expansion of zeta(s, Delta_{S^2} + q^2):
/// zeta(s, S^2) - s zeta(s+1, S^2) q^2 + sum_{k=2}^{K} C(-s, k) zeta(s+k, S^2) q^{2k},
/// with a geometric tail estimate. Requires q^2 < 2 (the first eigenvalue).
pub fn expansion_zeta(s: f64, q: f64, order: usize) -> Result<EvalResult> {
    let q2 = q * q;
    if q2 >= 2.0 {
        return Err(SpectralError::DivergentExpansion { q_squared: q2 });
    }
    if s == 0.0 {
        // the s zeta(s+1) regrouping leaves exactly the residue: -q^2
        return Ok(EvalResult::exact(-2.0 / 3.0 - q2));
    }
    if s < 0.01 {
        return Err(SpectralError::InvalidArgument(
            "expansion_zeta supports s = 0 or s >= 0.01".to_string(),
        ));
    }
    let order = order.max(2);
    let tol = 1e-12;
    let s2 = sphere2();

    let mut value = zeta(&s2, s, tol)?.value;
    let mut err = 0.0;
    // k = 1 term, written as -s zeta(s+1)
    value -= s * zeta(&s2, s + 1.0, tol)?.value * q2;

    let mut binom = -s; // C(-s, 1)
    let mut q_pow = q2;
    let mut last = 0.0;
    for k in 2..=order {
        binom *= (-s - (k as f64 - 1.0)) / k as f64;
        q_pow *= q2;
        let zk = zeta(&s2, s + k as f64, tol)?;
        last = binom * zk.value * q_pow;
        value += last;
        err += zk.error_estimate * binom.abs() * q_pow;
    }
    let tail = last.abs() * (q2 / 2.0) / (1.0 - q2 / 2.0);
    Ok(EvalResult::new(value, err + tail + 1e-15 * value.abs()))
}

/// Direct-summation oracle for zeta(s, Delta_{S^2} + q^2), valid for s > 1.
pub fn direct_sum_with_potential(s: f64, q: f64, n_terms: usize) -> Result<EvalResult> {
    if s <= 1.0 {
        return Err(SpectralError::DivergentRegion { s, threshold: 1.0 });
    }
    let q2 = q * q;
    let mut sum = 0.0;
    for n in (1..=n_terms).rev() {
        let lambda = (n * (n + 1)) as f64 + q2;
        sum += (2 * n + 1) as f64 / lambda.powf(s);
    }
    // int_N^inf (2x+1) [x(x+1)]^{-s} dx = [N(N+1)]^{1-s}/(s-1) dominates the tail
    let nf = n_terms as f64;
    let tail = (nf * (nf + 1.0)).powf(1.0 - s) / (s - 1.0);
    Ok(EvalResult::new(sum, tail + 1e-16 * sum * (n_terms as f64).sqrt()))
}

/// One sample of the figure data: q, G(q), log G(q), zeta'(0, Delta + q^2).
#[derive(Debug, Clone, Copy)]
pub struct FigRow {
    pub q: f64,
    pub g: f64,
    pub log_g: f64,
    pub zeta_prime0: f64,
    pub err: f64,
}

/// Sweeps q over [0, q_max] and emits the curves behind the G(q) and
/// zeta'(0, Delta + q^2) figures.
pub fn figure_rows(
    q_max: f64,
    samples: usize,
    product_terms: usize,
    tolerance: f64,
) -> Result<Vec<FigRow>> {
    if !(q_max > 0.0 && q_max.is_finite()) || samples < 2 {
        return Err(SpectralError::InvalidArgument(
            "figure sweep needs q_max > 0 and at least two samples".to_string(),
        ));
    }
    let base = zeta_prime_at_zero(&sphere2(), tolerance)?;
    let mut rows = Vec::with_capacity(samples);
    for i in 0..samples {
        let q = q_max * i as f64 / (samples - 1) as f64;
        let cfg = PotentialConfig::new(q)?.with_product_terms(product_terms);
        let log_g = canonical_product_log(&cfg);
        let zp = assemble_zeta_prime0(&cfg, &base);
        rows.push(FigRow {
            q,
            g: log_g.value.exp(),
            log_g: log_g.value,
            zeta_prime0: zp.value,
            err: zp.error_estimate,
        });
    }
    Ok(rows)
}
