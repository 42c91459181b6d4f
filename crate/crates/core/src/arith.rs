//! Exact rational scalars and small integer combinatorics.

use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational with reduced representation, positive
/// denominator and zero stored as 0/1.
pub type Rational = num_rational::BigRational;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient C(n, k) as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    BigInt::from(num / den)
}

/// Falling factorial c (c-1) ... (c-k+1) for a possibly negative integer c.
pub fn falling(c: i64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= BigInt::from(c - i);
    }
    acc
}

pub fn factorial(k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

/// Least common multiple of the denominators of a list of rationals.
pub fn common_denominator<'a, I: Iterator<Item = &'a Rational>>(iter: I) -> BigInt {
    let mut acc = BigInt::one();
    for r in iter {
        acc = num_integer::lcm(acc, r.denom().clone());
    }
    acc
}

/// Gcd of the numerators of a list of integers (all treated as nonnegative).
pub fn big_gcd_all<'a, I: Iterator<Item = &'a BigInt>>(iter: I) -> BigInt {
    let mut acc = BigInt::zero();
    for n in iter {
        acc = num_integer::gcd(acc, n.abs());
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Height of a rational: max(|numerator|, denominator).
pub fn height(r: &Rational) -> BigInt {
    r.numer().abs().max(r.denom().clone())
}

/// Deterministic total order on rational vectors (used to sort sampled points).
pub fn cmp_point(a: &[Rational], b: &[Rational]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            core::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Parses "p/q" or "p" with optional leading minus.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let mut split = text.splitn(2, '/');
    let numer = split.next()?.trim();
    let numer: BigInt = numer.parse().ok()?;
    match split.next() {
        None => Some(Rational::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.trim().parse().ok()?;
            if denom.is_zero() {
                None
            } else {
                Some(Rational::new(numer, denom))
            }
        }
    }
}

/// Scales a rational weight vector to a primitive integer vector with the
/// same positive span. Initial ideals only depend on the ray of the weight.
pub fn weight_to_integers(w: &[Rational]) -> Vec<i64> {
    let lcm = common_denominator(w.iter());
    let scaled: Vec<BigInt> = w.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let g = big_gcd_all(scaled.iter());
    let g = if g.is_zero() { BigInt::one() } else { g };
    scaled
        .iter()
        .map(|n| {
            let q = n / &g;
            i64::try_from(&q).expect("weight entry exceeds i64")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::from(0));
    }

    #[test]
    fn falling_negative() {
        // (-1)(-2)(-3) = -6
        assert_eq!(falling(-1, 3), BigInt::from(-6));
        assert_eq!(falling(4, 2), BigInt::from(12));
        assert_eq!(falling(7, 0), BigInt::from(1));
    }

    #[test]
    fn parse_rat() {
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational("-5"), Some(rat_i64(-5)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn weight_normalization() {
        let w = [rat(1, 2), rat(1, 3)];
        assert_eq!(weight_to_integers(&w), alloc::vec![3, 2]);
        let z = [rat_i64(0), rat_i64(0)];
        assert_eq!(weight_to_integers(&z), alloc::vec![0, 0]);
    }
}
