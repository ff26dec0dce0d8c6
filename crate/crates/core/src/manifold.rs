//! Assembles the spectral zeta function of S^k, RP^k and CP^k from the
//! coefficient tables and the z_even / z_odd blocks: numeric continuation,
//! exact pole/residue data, exact zeta(0), the derivative at the origin, and
//! the brute-force series oracle.

use crate::error::{Result, SpectralError};
use crate::eval::EvalResult;
use crate::hermite::{
    self, DecompTerm, Pole, TermKind, TermParams, ZetaDecomposition, POLE_GUARD,
};
use crate::poly::{a_coeffs, b_coeffs, q_cproj, q_sphere};
use crate::quad::richardson_limit;
use crate::rational::{factorial, rat, rat_int, to_f64, Rational};
use crate::special::riemann_zeta;
use std::fmt;

/// Default truncation depth of the half-integer pole ladder of
/// odd-dimensional manifolds.
pub const DEFAULT_POLE_DEPTH: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Sphere,
    RealProjective,
    ComplexProjective,
}

/// One of S^k, RP^k, CP^k with k >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ManifoldSpec {
    pub family: Family,
    pub k: u32,
}

impl ManifoldSpec {
    pub fn new(family: Family, k: u32) -> Result<Self> {
        if k < 1 {
            return Err(SpectralError::InvalidArgument(
                "manifold dimension parameter k must be >= 1".to_string(),
            ));
        }
        Ok(Self { family, k })
    }

    /// Parses "S2", "rp3", "Cp2", ... (family letters plus integer,
    /// case-insensitive).
    pub fn parse(text: &str) -> Result<Self> {
        let lower = text.trim().to_ascii_lowercase();
        let (family, rest) = if let Some(r) = lower.strip_prefix("rp") {
            (Family::RealProjective, r)
        } else if let Some(r) = lower.strip_prefix("cp") {
            (Family::ComplexProjective, r)
        } else if let Some(r) = lower.strip_prefix('s') {
            (Family::Sphere, r)
        } else {
            return Err(SpectralError::InvalidArgument(format!(
                "cannot parse manifold \"{text}\"; expected S<k>, RP<k> or CP<k>"
            )));
        };
        let k: u32 = rest.parse().map_err(|_| {
            SpectralError::InvalidArgument(format!(
                "cannot parse manifold \"{text}\"; expected S<k>, RP<k> or CP<k>"
            ))
        })?;
        Self::new(family, k)
    }

    /// Scale factor of the eigenvalue lattice: 2 for real projective spaces,
    /// 1 otherwise.
    fn scale(&self) -> i64 {
        match self.family {
            Family::RealProjective => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.family {
            Family::Sphere => "S",
            Family::RealProjective => "RP",
            Family::ComplexProjective => "CP",
        };
        write!(f, "{}{}", prefix, self.k)
    }
}

/// Expresses zeta(s, M) over the standard blocks (k >= 2):
/// even spheres / RP use b_{2h,l}/(2h-1)! weighted z_even(s-l, 0, 2h-1, c),
/// odd ones 2 b_{2h+1,l}/(2h)! weighted z_odd(s-l, 0, 2h, c) with l up to h,
/// and CP^k uses k a_{k,l}/((k-1)!)^2 weighted z_even(s-l, 0, k, 1) under a
/// global 4^{-s}.
pub fn decompose(m: &ManifoldSpec) -> Result<ZetaDecomposition> {
    if m.k < 2 {
        return Err(SpectralError::InvalidArgument(
            "decompose needs k >= 2; dimension one is handled by one_dimensional".to_string(),
        ));
    }
    let k = m.k;
    let mut terms = Vec::new();
    match m.family {
        Family::Sphere | Family::RealProjective => {
            let c = rat_int(m.scale());
            let table = b_coeffs(k)?;
            let params = TermParams::new(rat_int(0), rat_int(k as i64 - 1), c)?;
            let (kind, norm) = if k % 2 == 0 {
                // z_{2h} = 1/(2h-1)! sum b_{2h,l} z_even(s-l)
                (TermKind::Even, Rational::from_integer(factorial(k - 1)))
            } else {
                // z_{2h+1} = 2/(2h)! sum b_{2h+1,l} z_odd(s-l), l = 0..h
                (
                    TermKind::Odd,
                    Rational::from_integer(factorial(k - 1)) / rat_int(2),
                )
            };
            for (l, coeff) in table.values.iter().enumerate() {
                terms.push(DecompTerm {
                    weight: coeff.clone() / norm.clone(),
                    shift: l as u32,
                    kind,
                    params: params.clone(),
                });
            }
            Ok(ZetaDecomposition {
                prefactor: rat_int(1),
                four_pow_s: false,
                terms,
            })
        }
        Family::ComplexProjective => {
            let table = a_coeffs(k)?;
            let params = TermParams::new(rat_int(0), rat_int(k as i64), rat_int(1))?;
            let f = Rational::from_integer(factorial(k - 1));
            let norm = f.clone() * f / rat_int(k as i64);
            for (l, coeff) in table.values.iter().enumerate() {
                terms.push(DecompTerm {
                    weight: coeff.clone() / norm.clone(),
                    shift: l as u32,
                    kind: TermKind::Even,
                    params: params.clone(),
                });
            }
            Ok(ZetaDecomposition {
                prefactor: rat_int(1),
                four_pow_s: true,
                terms,
            })
        }
    }
}

/// zeta(s, M) for dimension-one manifolds through the classical identities
/// zeta(s, S^1) = 2 zeta_R(2s), zeta(s, RP^1) = 2^{-2s} zeta(s, S^1),
/// zeta(s, CP^1) = 2^{-2s} zeta(s, S^2).
pub fn one_dimensional(m: &ManifoldSpec, s: f64, tolerance: f64) -> Result<EvalResult> {
    one_dimensional_inner(m, s, tolerance, true)
}

fn one_dimensional_inner(
    m: &ManifoldSpec,
    s: f64,
    tolerance: f64,
    guard: bool,
) -> Result<EvalResult> {
    if m.k != 1 {
        return Err(SpectralError::InvalidArgument(
            "one_dimensional needs k = 1".to_string(),
        ));
    }
    match m.family {
        Family::Sphere | Family::RealProjective => {
            if guard && (s - 0.5).abs() < POLE_GUARD {
                return Err(SpectralError::Pole {
                    location: "1/2".to_string(),
                });
            }
            let base = riemann_zeta(2.0 * s, 0)?.scale(2.0);
            if m.family == Family::RealProjective {
                Ok(base.scale(2.0f64.powf(-2.0 * s)))
            } else {
                Ok(base)
            }
        }
        Family::ComplexProjective => {
            let s2 = ManifoldSpec::new(Family::Sphere, 2)?;
            let base = zeta_inner(&s2, s, tolerance, guard)?;
            Ok(base.scale(4.0f64.powf(-s)))
        }
    }
}

/// Numeric zeta(s, M) with the pole-proximity guard.
pub fn zeta(m: &ManifoldSpec, s: f64, tolerance: f64) -> Result<EvalResult> {
    zeta_inner(m, s, tolerance, true)
}

fn zeta_inner(m: &ManifoldSpec, s: f64, tolerance: f64, guard: bool) -> Result<EvalResult> {
    if m.k == 1 {
        return one_dimensional_inner(m, s, tolerance, guard);
    }
    let d = decompose(m)?;
    if guard {
        d.eval(s, tolerance)
    } else {
        d.eval_unguarded(s, tolerance)
    }
}

/// All poles of zeta(s, M) with exact residues. Even-dimensional spheres and
/// real projective spaces have h = k/2 poles, complex projective spaces k;
/// odd-dimensional ones carry an infinite half-integer ladder truncated at
/// `depth` entries.
pub fn poles(m: &ManifoldSpec, depth: u32) -> Result<Vec<Pole>> {
    if m.k == 1 {
        return Ok(match m.family {
            Family::Sphere => vec![Pole {
                location: rat(1, 2),
                residue: rat_int(1),
            }],
            Family::RealProjective => vec![Pole {
                location: rat(1, 2),
                residue: rat(1, 2),
            }],
            Family::ComplexProjective => vec![Pole {
                location: rat_int(1),
                residue: rat(1, 4),
            }],
        });
    }
    let k = m.k;
    let mut out = Vec::new();
    match m.family {
        Family::Sphere | Family::RealProjective => {
            let c = rat_int(m.scale());
            let table = b_coeffs(k)?;
            let norm = Rational::from_integer(factorial(k - 1));
            if k % 2 == 0 {
                // simple poles at s = n, n = 1..h, residue b_{2h,n-1}/((2h-1)! c)
                for n in 1..=(k / 2) {
                    out.push(Pole {
                        location: rat_int(n as i64),
                        residue: table.values[n as usize - 1].clone() / norm.clone() / c.clone(),
                    });
                }
            } else {
                // ladder s = 1/2 + h - m, m = 0, 1, ...
                let h = (k - 1) / 2;
                let b = rat_int(k as i64 - 1);
                for m_idx in 0..=depth {
                    let location = rat(1, 2) + rat_int(h as i64) - rat_int(m_idx as i64);
                    let mut residue = rat_int(0);
                    for (l, coeff) in table.values.iter().enumerate() {
                        let l = l as u32;
                        if l + m_idx >= h {
                            let weight = rat_int(2) * coeff.clone() / norm.clone();
                            residue +=
                                weight * hermite::z_odd_residue(l + m_idx - h, &b, &c);
                        }
                    }
                    out.push(Pole { location, residue });
                }
            }
        }
        Family::ComplexProjective => {
            let table = a_coeffs(k)?;
            let f = Rational::from_integer(factorial(k - 1));
            let norm = f.clone() * f / rat_int(k as i64);
            for n in 1..=k {
                let residue = table.values[n as usize - 1].clone() / norm.clone()
                    / crate::rational::rat_pow(&rat_int(4), n);
                out.push(Pole {
                    location: rat_int(n as i64),
                    residue,
                });
            }
        }
    }
    Ok(out)
}

/// Exact rational zeta(0, M), assembled from the block values at
/// non-positive integers.
pub fn zeta_at_zero(m: &ManifoldSpec) -> Result<Rational> {
    if m.k == 1 {
        return Ok(match m.family {
            // zeta(0, S^1) = 2 zeta_R(0) = -1; RP^1 rescales by 2^{-2s}
            Family::Sphere | Family::RealProjective => rat_int(-1),
            // zeta(0, CP^1) = zeta(0, S^2)
            Family::ComplexProjective => {
                let s2 = ManifoldSpec::new(Family::Sphere, 2)?;
                zeta_at_zero(&s2)?
            }
        });
    }
    Ok(decompose(m)?.zeta_at_zero())
}

/// zeta'(0, M): the regularized determinant is exp(-zeta'(0, M)).
pub fn zeta_prime_at_zero(m: &ManifoldSpec, tolerance: f64) -> Result<EvalResult> {
    if m.k == 1 {
        let zp0 = riemann_zeta(0.0, 1)?;
        return Ok(match m.family {
            // d/ds 2 zeta_R(2s) at 0
            Family::Sphere => zp0.scale(4.0),
            // additional -2 ln 2 * zeta(0, S^1) = +2 ln 2
            Family::RealProjective => EvalResult::new(
                4.0 * zp0.value + 2.0 * std::f64::consts::LN_2,
                4.0 * zp0.error_estimate,
            ),
            // zeta'(0, CP^1) = -ln 4 * zeta(0, S^2) + zeta'(0, S^2)
            Family::ComplexProjective => {
                let s2 = ManifoldSpec::new(Family::Sphere, 2)?;
                let base = zeta_prime_at_zero(&s2, tolerance)?;
                let z0 = to_f64(&zeta_at_zero(&s2)?);
                EvalResult::new(
                    base.value - 4.0f64.ln() * z0,
                    base.error_estimate,
                )
            }
        });
    }
    let d = decompose(m)?;
    hermite::zeta_derivative_at_zero(&d, tolerance)
}

/// Direct partial summation of the defining Dirichlet series with an
/// integral-comparison tail bound. Valid only for s above (deg P + 1)/2.
pub fn series_oracle(m: &ManifoldSpec, s: f64, n_terms: usize) -> Result<EvalResult> {
    if n_terms < 10 {
        return Err(SpectralError::InvalidArgument(
            "series oracle needs at least 10 terms".to_string(),
        ));
    }
    let (coeffs, c, shift, four_pow): (Vec<f64>, f64, f64, bool) = match (m.family, m.k) {
        (Family::Sphere, 1) => (vec![2.0], 1.0, 0.0, false),
        (Family::RealProjective, 1) => (vec![2.0], 2.0, 0.0, false),
        (Family::ComplexProjective, 1) => {
            // 4^{-s} sum (2n+1)/[n(n+1)]^s
            (vec![1.0, 2.0], 1.0, 1.0, true)
        }
        (Family::Sphere | Family::RealProjective, k) => {
            (q_sphere(k)?.coeffs_f64(), m.scale() as f64, (k - 1) as f64, false)
        }
        (Family::ComplexProjective, k) => (q_cproj(k)?.coeffs_f64(), 1.0, k as f64, true),
    };
    let degree = coeffs.len() as f64 - 1.0;
    let threshold = 0.5 * (degree + 1.0);
    if s <= threshold {
        return Err(SpectralError::DivergentRegion { s, threshold });
    }

    // smallest terms first
    let mut sum = 0.0;
    for n in (1..=n_terms).rev() {
        let x = c * n as f64;
        let mut q = 0.0;
        for coeff in coeffs.iter().rev() {
            q = q * x + coeff;
        }
        let lambda = if shift == 0.0 {
            // one-dimensional sphere lattice: eigenvalues x^2
            x * x
        } else {
            x * (x + shift)
        };
        sum += q / lambda.powf(s);
    }

    // integral tail: sum over monomials of int_N^inf (c x)^{j - 2s} dx,
    // using (cx)(cx + shift) >= (cx)^2
    let n_edge = n_terms as f64;
    let mut tail = 0.0;
    for (j, coeff) in coeffs.iter().enumerate() {
        let jf = j as f64;
        tail += coeff * c.powf(jf - 2.0 * s) * n_edge.powf(jf + 1.0 - 2.0 * s)
            / (2.0 * s - jf - 1.0)
            / c;
    }
    let mut value = sum;
    let mut err = tail.abs() + 1e-16 * sum.abs() * (n_terms as f64).sqrt();
    if four_pow {
        let factor = 4.0f64.powf(-s);
        value *= factor;
        err *= factor;
    }
    Ok(EvalResult::new(value, err))
}

/// Richardson limit oracle for the residue at an exact pole location:
/// extrapolates (s - s0) zeta(s, M) from offsets 10^{-3} .. 10^{-6}.
pub fn residue_oracle(m: &ManifoldSpec, pole_location: &Rational, tolerance: f64) -> Result<f64> {
    let s0 = to_f64(pole_location);
    let mut pts = Vec::new();
    for d in 3..=6 {
        let h = 10.0f64.powi(-d);
        let v = zeta_inner(m, s0 + h, tolerance, false)?;
        pts.push((h, h * v.value));
    }
    Ok(richardson_limit(&pts))
}
