//! Exact polynomial algebra: multiplicity polynomials Q_k for spheres,
//! real-projective and complex-projective spaces, and their reduction to the
//! u-basis u = x^2 + beta x that defines the coefficient tables.

use crate::error::{Result, SpectralError};
use crate::rational::{factorial, rat_int, to_f64, Rational};
use num::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Dense polynomial with exact rational coefficients, ascending by degree,
/// trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// x + c
    pub fn x_plus(c: Rational) -> Self {
        Self::new(vec![c, rat_int(1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 by convention here.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + to_f64(c);
        }
        acc
    }

    pub fn mul(&self, other: &RationalPoly) -> RationalPoly {
        if self.is_zero() || other.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![rat_int(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        RationalPoly::new(out)
    }

    pub fn add(&self, other: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![rat_int(0); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i] += a.clone();
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            out[i] += b.clone();
        }
        RationalPoly::new(out)
    }

    pub fn scale(&self, k: &Rational) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Exact division by the monic quadratic u = x^2 + beta x:
    /// returns (quotient, remainder) with deg(remainder) <= 1.
    fn divmod_u(&self, beta: &Rational) -> (RationalPoly, RationalPoly) {
        if self.coeffs.len() < 3 {
            return (RationalPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        let mut quot = vec![rat_int(0); n - 2];
        for i in (2..n).rev() {
            let lead = std::mem::replace(&mut rem[i], rat_int(0));
            if lead.is_zero() {
                continue;
            }
            // subtract lead * x^{i-2} * (x^2 + beta x)
            rem[i - 1] -= beta.clone() * lead.clone();
            quot[i - 2] = lead;
        }
        rem.truncate(2);
        (RationalPoly::new(quot), RationalPoly::new(rem))
    }
}

/// Multiplicity polynomial for S^k / RP^k (k >= 2):
/// Q_k(x) = (2x + k - 1) / (k-1)! * prod_{i=1}^{k-2} (x + i).
pub fn q_sphere(k: u32) -> Result<RationalPoly> {
    if k < 2 {
        return Err(SpectralError::InvalidArgument(format!(
            "q_sphere needs k >= 2, got {k}"
        )));
    }
    let mut p = RationalPoly::new(vec![rat_int(k as i64 - 1), rat_int(2)]);
    for i in 1..=(k - 2) {
        p = p.mul(&RationalPoly::x_plus(rat_int(i as i64)));
    }
    let inv_fact = Rational::new(1.into(), factorial(k - 1));
    Ok(p.scale(&inv_fact))
}

/// Multiplicity polynomial for CP^k (k >= 2):
/// Q_k(x) = k (2x + k) / ((k-1)!)^2 * prod_{i=1}^{k-1} (x + i)^2.
pub fn q_cproj(k: u32) -> Result<RationalPoly> {
    if k < 2 {
        return Err(SpectralError::InvalidArgument(format!(
            "q_cproj needs k >= 2, got {k}"
        )));
    }
    let mut p = RationalPoly::new(vec![rat_int(k as i64), rat_int(2)]);
    for i in 1..=(k - 1) {
        let lin = RationalPoly::x_plus(rat_int(i as i64));
        p = p.mul(&lin).mul(&lin);
    }
    let f = factorial(k - 1);
    let scale = Rational::new(k.into(), f.clone() * f);
    Ok(p.scale(&scale))
}

/// Rewrites `p` in powers of u = x^2 + linear_coeff * x by iterated exact
/// division, requiring every remainder to be constant.
pub fn reduce_to_u_basis(p: &RationalPoly, linear_coeff: &Rational) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        let (quot, rem) = cur.divmod_u(linear_coeff);
        if rem.coeffs.len() > 1 {
            return Err(SpectralError::NonConstantRemainder);
        }
        out.push(rem.coeffs.first().cloned().unwrap_or_else(|| rat_int(0)));
        cur = quot;
    }
    if out.is_empty() {
        out.push(rat_int(0));
    }
    Ok(out)
}

/// Which family a coefficient table belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffKind {
    SphereOdd,
    SphereEven,
    Complex,
}

impl CoeffKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoeffKind::SphereOdd => "sphere-odd",
            CoeffKind::SphereEven => "sphere-even",
            CoeffKind::Complex => "complex",
        }
    }
}

/// The b_{k,l} (spheres / real projective) or a_{k,l} (complex projective)
/// coefficients, index l ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub kind: CoeffKind,
    pub k: u32,
    pub values: Vec<Rational>,
}

impl Serialize for CoeffTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CoeffTable", 3)?;
        st.serialize_field("kind", self.kind.as_str())?;
        st.serialize_field("k", &self.k)?;
        let values: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        st.serialize_field("values", &values)?;
        st.end()
    }
}

/// b_{k,l} of the sphere family: the product polynomial of the k-sphere
/// multiplicities expanded in powers of u = x^2 + (k-1) x.
pub fn b_coeffs(k: u32) -> Result<CoeffTable> {
    if k < 2 {
        return Err(SpectralError::InvalidArgument(format!(
            "b_coeffs needs k >= 2, got {k}"
        )));
    }
    let (poly, beta, kind) = if k % 2 == 0 {
        // k = 2h: prod_{i=1}^{2h-2} (x + i), u = x^2 + (2h-1) x
        let mut p = RationalPoly::constant(rat_int(1));
        for i in 1..=(k - 2) {
            p = p.mul(&RationalPoly::x_plus(rat_int(i as i64)));
        }
        (p, rat_int(k as i64 - 1), CoeffKind::SphereEven)
    } else {
        // k = 2h+1: (x + h) prod_{i=1}^{2h-1} (x + i), u = x^2 + 2h x
        let h = (k - 1) / 2;
        let mut p = RationalPoly::x_plus(rat_int(h as i64));
        for i in 1..=(k - 2) {
            p = p.mul(&RationalPoly::x_plus(rat_int(i as i64)));
        }
        (p, rat_int(k as i64 - 1), CoeffKind::SphereOdd)
    };
    let values = reduce_to_u_basis(&poly, &beta)?;
    Ok(CoeffTable { kind, k, values })
}

/// a_{k,l} of the complex-projective family: prod_{i=1}^{k-1} (x+i)^2
/// expanded in powers of u = x^2 + k x.
pub fn a_coeffs(k: u32) -> Result<CoeffTable> {
    if k < 2 {
        return Err(SpectralError::InvalidArgument(format!(
            "a_coeffs needs k >= 2, got {k}"
        )));
    }
    let mut p = RationalPoly::constant(rat_int(1));
    for i in 1..=(k - 1) {
        let lin = RationalPoly::x_plus(rat_int(i as i64));
        p = p.mul(&lin).mul(&lin);
    }
    let values = reduce_to_u_basis(&p, &rat_int(k as i64))?;
    Ok(CoeffTable {
        kind: CoeffKind::Complex,
        k,
        values,
    })
}

/// Expands sum_l values[l] * (x^2 + beta x)^l back into a polynomial.
pub fn expand_from_u_basis(values: &[Rational], beta: &Rational) -> RationalPoly {
    let u = RationalPoly::new(vec![rat_int(0), beta.clone(), rat_int(1)]);
    let mut acc = RationalPoly::zero();
    let mut u_pow = RationalPoly::constant(rat_int(1));
    for v in values {
        acc = acc.add(&u_pow.scale(v));
        u_pow = u_pow.mul(&u);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use num::One;

    fn poly(coeffs: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn q_sphere_small_cases() {
        // k=2: 2x + 1
        assert_eq!(q_sphere(2).unwrap(), poly(&[(1, 1), (2, 1)]));
        // k=3: (2x+2)(x+1)/2 = x^2 + 2x + 1
        assert_eq!(q_sphere(3).unwrap(), poly(&[(1, 1), (2, 1), (1, 1)]));
        // k=4: (2x+3)(x+1)(x+2)/6 = (2x^3 + 9x^2 + 13x + 6)/6
        assert_eq!(
            q_sphere(4).unwrap(),
            poly(&[(1, 1), (13, 6), (3, 2), (1, 3)])
        );
        assert!(q_sphere(1).is_err());
    }

    #[test]
    fn q_cproj_small_cases() {
        // k=2: 2(2x+2)(x+1)^2 = 4(x+1)^3
        assert_eq!(
            q_cproj(2).unwrap(),
            poly(&[(4, 1), (12, 1), (12, 1), (4, 1)])
        );
        assert_eq!(q_cproj(2).unwrap().eval(&rat_int(1)), rat_int(32));
        assert_eq!(q_cproj(3).unwrap().eval(&rat_int(0)), rat_int(9));
        assert!(q_cproj(0).is_err());
    }

    #[test]
    fn reduce_examples() {
        // (x+1)^2 with u = x^2 + 2x -> [1, 1]
        let p = RationalPoly::x_plus(rat_int(1));
        let p = p.mul(&RationalPoly::x_plus(rat_int(1)));
        assert_eq!(
            reduce_to_u_basis(&p, &rat_int(2)).unwrap(),
            vec![rat_int(1), rat_int(1)]
        );
        // (x+1)(x+2) with u = x^2 + 3x -> [2, 1]
        let p = RationalPoly::x_plus(rat_int(1)).mul(&RationalPoly::x_plus(rat_int(2)));
        assert_eq!(
            reduce_to_u_basis(&p, &rat_int(3)).unwrap(),
            vec![rat_int(2), rat_int(1)]
        );
        // (x+1)(x+2)^2(x+3) with u = x^2 + 4x -> [12, 7, 1]
        let p = RationalPoly::x_plus(rat_int(1))
            .mul(&RationalPoly::x_plus(rat_int(2)))
            .mul(&RationalPoly::x_plus(rat_int(2)))
            .mul(&RationalPoly::x_plus(rat_int(3)));
        assert_eq!(
            reduce_to_u_basis(&p, &rat_int(4)).unwrap(),
            vec![rat_int(12), rat_int(7), rat_int(1)]
        );
    }

    #[test]
    fn reduce_rejects_polynomials_outside_the_algebra() {
        // x alone is not a polynomial in u = x^2 + x
        let p = RationalPoly::x_plus(rat_int(0));
        assert!(matches!(
            reduce_to_u_basis(&p, &rat_int(1)),
            Err(SpectralError::NonConstantRemainder)
        ));
    }

    #[test]
    fn b_tables_small() {
        assert_eq!(b_coeffs(2).unwrap().values, vec![rat_int(1)]);
        assert_eq!(
            b_coeffs(3).unwrap().values,
            vec![rat_int(1), rat_int(1)]
        );
        assert_eq!(
            b_coeffs(5).unwrap().values,
            vec![rat_int(12), rat_int(7), rat_int(1)]
        );
        assert_eq!(b_coeffs(2).unwrap().kind, CoeffKind::SphereEven);
        assert_eq!(b_coeffs(5).unwrap().kind, CoeffKind::SphereOdd);
    }

    #[test]
    fn a_tables_small() {
        assert_eq!(a_coeffs(2).unwrap().values, vec![rat_int(1), rat_int(1)]);
        assert_eq!(
            a_coeffs(3).unwrap().values,
            vec![rat_int(4), rat_int(4), rat_int(1)]
        );
    }

    #[test]
    fn endpoint_identities_through_k_12() {
        for k in 2..=12u32 {
            let t = b_coeffs(k).unwrap();
            assert!(t.values.last().unwrap().is_one(), "top coeff at k={k}");
            let bottom = t.values.first().unwrap().clone();
            if k % 2 == 0 {
                let h = k / 2;
                assert_eq!(
                    bottom,
                    Rational::from_integer(factorial(2 * h - 2)),
                    "b_{{2h,0}} at k={k}"
                );
            } else {
                let h = (k - 1) / 2;
                assert_eq!(
                    bottom,
                    rat_int(h as i64) * Rational::from_integer(factorial(2 * h - 1)),
                    "b_{{2h+1,0}} at k={k}"
                );
            }

            let a = a_coeffs(k).unwrap();
            assert!(a.values.last().unwrap().is_one());
            let f = factorial(k - 1);
            assert_eq!(
                a.values.first().unwrap().clone(),
                Rational::from_integer(f.clone() * f)
            );
        }
    }

    #[test]
    fn tables_are_positive_integers_through_k_12() {
        for k in 2..=12u32 {
            for v in b_coeffs(k)
                .unwrap()
                .values
                .iter()
                .chain(a_coeffs(k).unwrap().values.iter())
            {
                assert!(v.is_integer(), "non-integer entry at k={k}");
                assert!(v > &rat_int(0), "non-positive entry at k={k}");
            }
        }
    }

    #[test]
    fn round_trip_reconstruction_through_k_12() {
        for k in 2..=12u32 {
            // sphere family source polynomial
            let (src, beta) = if k % 2 == 0 {
                let mut p = RationalPoly::constant(rat_int(1));
                for i in 1..=(k - 2) {
                    p = p.mul(&RationalPoly::x_plus(rat_int(i as i64)));
                }
                (p, rat_int(k as i64 - 1))
            } else {
                let h = (k - 1) / 2;
                let mut p = RationalPoly::x_plus(rat_int(h as i64));
                for i in 1..=(k - 2) {
                    p = p.mul(&RationalPoly::x_plus(rat_int(i as i64)));
                }
                (p, rat_int(k as i64 - 1))
            };
            let vals = b_coeffs(k).unwrap().values;
            assert_eq!(expand_from_u_basis(&vals, &beta), src, "sphere k={k}");

            let mut csrc = RationalPoly::constant(rat_int(1));
            for i in 1..=(k - 1) {
                let lin = RationalPoly::x_plus(rat_int(i as i64));
                csrc = csrc.mul(&lin).mul(&lin);
            }
            let avals = a_coeffs(k).unwrap().values;
            assert_eq!(
                expand_from_u_basis(&avals, &rat_int(k as i64)),
                csrc,
                "complex k={k}"
            );
        }
    }

    #[test]
    fn json_shape() {
        let t = b_coeffs(5).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"kind":"sphere-odd","k":5,"values":["12","7","1"]}"#);
    }
}
