//! Exact rational arithmetic helpers.
//!
//! `Rational` is a big-integer fraction kept in lowest terms with a positive
//! denominator; every closed-form value in this crate (Bernoulli numbers,
//! coefficient tables, residues, zeta values at non-positive integers) is one.

use num::bigint::BigInt;
use num::ToPrimitive;

pub type Rational = num::BigRational;

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// n! as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        num *= BigInt::from((n - i) as u64);
        den *= BigInt::from((i + 1) as u64);
    }
    num / den
}

/// Double factorial n!! with the empty-product conventions (-1)!! = 0!! = 1.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial needs n >= -1");
    let mut acc = BigInt::from(1);
    let mut m = n;
    while m > 1 {
        acc *= BigInt::from(m);
        m -= 2;
    }
    acc
}

/// Integer power r^e for e >= 0.
pub fn rat_pow(r: &Rational, e: u32) -> Rational {
    let mut acc = rat_int(1);
    for _ in 0..e {
        acc *= r.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(5, 7), BigInt::from(0));
    }

    #[test]
    fn double_factorial_conventions() {
        assert_eq!(double_factorial(-1), BigInt::from(1));
        assert_eq!(double_factorial(0), BigInt::from(1));
        assert_eq!(double_factorial(1), BigInt::from(1));
        assert_eq!(double_factorial(7), BigInt::from(105));
    }

    #[test]
    fn reduction_invariant() {
        let r = rat(6, -8);
        assert_eq!(r, rat(-3, 4));
        assert!(r.denom() > &BigInt::from(0));
    }
}
