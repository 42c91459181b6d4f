//! Squarefree factorization and rational root finding.
//!
//! Factors are split as far as gcd arithmetic allows: Yun's algorithm in a
//! main variable plus recursive content extraction across the remaining
//! variables. That splits every product in which some variable misses one
//! factor; genuinely irreducible-looking factors stay whole and downstream
//! consumers treat them as "squarefree, irreducibility unverified".

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::multipoly::{gcd, MultiPoly};
use crate::order::MonomialOrder;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Deterministic order for component polynomials: total degree ascending,
/// then leading monomial descending under degrevlex, then canonical.
pub fn cmp_component(a: &MultiPoly, b: &MultiPoly) -> core::cmp::Ordering {
    let order = MonomialOrder::degrevlex(a.nvars());
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| {
            let la = a.lt(&order).map(|(m, _)| m.clone());
            let lb = b.lt(&order).map(|(m, _)| m.clone());
            match (la, lb) {
                (Some(x), Some(y)) => order.cmp(&y, &x),
                _ => core::cmp::Ordering::Equal,
            }
        })
        .then_with(|| a.cmp_canonical(b))
}

/// Squarefree decomposition: pairwise coprime squarefree factors with
/// multiplicities, each primitive with positive leading coefficient. The
/// product of factors^multiplicity equals the input up to a rational unit.
pub fn squarefree_factors(f: &MultiPoly) -> Result<Vec<(MultiPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let prim = f.primitive_part();
    let mut out: Vec<(MultiPoly, u32)> = Vec::new();
    decompose(&prim, &mut out);
    out.sort_by(|(a, ma), (b, mb)| cmp_component(a, b).then_with(|| ma.cmp(mb)));
    Ok(out)
}

fn decompose(f: &MultiPoly, out: &mut Vec<(MultiPoly, u32)>) {
    if f.as_constant().is_some() {
        return;
    }
    let v = (0..f.nvars())
        .find(|&i| f.degree_in(i) > 0)
        .expect("nonconstant polynomial with empty support");
    let c = f.content_in(v);
    if c.as_constant().is_none() {
        decompose(&c, out);
        decompose(&f.exact_div(&c).expect("content divides"), out);
        return;
    }
    // Yun in the main variable over the remaining ones
    for (factor, mult) in yun(&f.primitive_part(), v) {
        for piece in split_by_contents(&factor) {
            out.push((piece, mult));
        }
    }
}

/// Yun's squarefree decomposition of a v-primitive polynomial.
fn yun(f: &MultiPoly, v: usize) -> Vec<(MultiPoly, u32)> {
    let df = f.derivative(v);
    let g = gcd(f, &df);
    if g.as_constant().is_some() {
        return vec![(f.primitive_part(), 1)];
    }
    let mut out = Vec::new();
    let mut c = f.exact_div(&g).expect("gcd divides");
    let mut d = df.exact_div(&g).expect("gcd divides").sub(&c.derivative(v));
    let mut i = 1u32;
    loop {
        let a = gcd(&c, &d);
        if a.as_constant().is_none() {
            out.push((a.clone(), i));
        }
        c = c.exact_div(&a).expect("gcd divides");
        if c.as_constant().is_some() {
            break;
        }
        d = d.exact_div(&a).expect("gcd divides").sub(&c.derivative(v));
        i += 1;
    }
    out
}

/// Splits a squarefree polynomial by content extraction in every variable
/// until no variable yields a nonunit content.
fn split_by_contents(f: &MultiPoly) -> Vec<MultiPoly> {
    for v in 0..f.nvars() {
        if f.degree_in(v) == 0 {
            continue;
        }
        let c = f.content_in(v);
        if c.as_constant().is_none() {
            let rest = f.exact_div(&c).expect("content divides");
            let mut out = split_by_contents(&c);
            out.extend(split_by_contents(&rest));
            return out;
        }
    }
    vec![f.primitive_part()]
}

/// Exactly the rational roots of a nonzero univariate polynomial, with
/// multiplicity discarded, via the rational root bound after clearing
/// denominators.
pub fn rational_roots(f: &MultiPoly) -> Result<Vec<Rational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let coeffs = f
        .univariate_coeffs(0)
        .ok_or_else(|| Error::Usage("rational_roots requires a univariate polynomial".into()))?;
    // integer primitive coefficients
    let lcm = crate::arith::common_denominator(coeffs.iter());
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut roots: BTreeSet<Rational> = BTreeSet::new();
    // strip powers of x
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.insert(Rational::zero());
    }
    let ints = &ints[low..];
    if ints.len() == 1 {
        return Ok(roots.into_iter().collect());
    }
    let a0 = ints[0].magnitude().clone();
    let ad = ints[ints.len() - 1].magnitude().clone();
    let eval = |r: &Rational| -> bool {
        let mut acc = Rational::zero();
        for c in ints.iter().rev() {
            acc = acc * r + Rational::from_integer(c.clone());
        }
        acc.is_zero()
    };
    for p in divisors(&a0) {
        for q in divisors(&ad) {
            let cand = Rational::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
            if eval(&cand) {
                roots.insert(cand.clone());
            }
            let neg = -cand;
            if eval(&neg) {
                roots.insert(neg);
            }
        }
    }
    Ok(roots.into_iter().collect())
}

/// All positive divisors of n (n > 0), via trial division plus Pollard rho.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut primes: Vec<(BigUint, u32)> = Vec::new();
    factorize(n.clone(), &mut primes);
    primes.sort();
    let mut out = vec![BigUint::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = &acc * &p;
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out.sort();
    out.dedup();
    out
}

fn factorize(mut n: BigUint, out: &mut Vec<(BigUint, u32)>) {
    if n.is_one() || n.is_zero() {
        return;
    }
    for small in 2u64..=4096 {
        let p = BigUint::from(small);
        if &p * &p > n {
            break;
        }
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        push_prime(out, n);
        return;
    }
    let d = pollard_rho(&n);
    factorize(d.clone(), out);
    factorize(n / d, out);
}

fn push_prime(out: &mut Vec<(BigUint, u32)>, p: BigUint) {
    for (q, e) in out.iter_mut() {
        if *q == p {
            *e += 1;
            return;
        }
    }
    out.push((p, 1));
}

fn mod_pow(base: &BigUint, exp: &BigUint, m: &BigUint) -> BigUint {
    base.modpow(exp, m)
}

fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    if n == &two {
        return true;
    }
    if (n % &two).is_zero() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = mod_pow(&a, &d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return two;
    }
    let mut c = BigUint::one();
    loop {
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = one.clone();
        while d.is_one() {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        c += 1u32;
    }
}

/// Order of vanishing of a univariate polynomial at a rational point; the
/// polynomial must be nonzero.
pub fn vanishing_order(f: &MultiPoly, p: &Rational) -> u32 {
    debug_assert!(!f.is_zero());
    debug_assert_eq!(f.nvars(), 1);
    let mut g = f.clone();
    let mut k = 0;
    loop {
        if !g.eval(core::slice::from_ref(p)).is_zero() {
            return k;
        }
        g = deflate(&g, p);
        k += 1;
    }
}

/// Exact division of f by (x - p), valid when f(p) = 0.
fn deflate(f: &MultiPoly, p: &Rational) -> MultiPoly {
    let coeffs = f.univariate_coeffs(0).expect("univariate");
    let d = coeffs.len() - 1;
    let mut out = vec![Rational::zero(); d];
    let mut carry = Rational::zero();
    for i in (1..=d).rev() {
        carry = &coeffs[i] + &carry * p;
        out[i - 1] = carry.clone();
    }
    let mut g = MultiPoly::zero(1);
    for (i, c) in out.into_iter().enumerate() {
        g.add_term(vec![i as u32], c);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i64};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn monomial_decomposition() {
        // x1^2 x2 -> [(x1, 2), (x2, 1)]
        let f = x(2, 0).pow(2).mul(&x(2, 1));
        let fac = squarefree_factors(&f).unwrap();
        assert_eq!(fac, vec![(x(2, 0), 2), (x(2, 1), 1)]);
    }

    #[test]
    fn irreducible_quadric_stays_whole() {
        // x2^2 - 4 x1 x3 is already squarefree and does not split
        let f = x(3, 1)
            .pow(2)
            .sub(&x(3, 0).mul(&x(3, 2)).mul_scalar(&rat_i64(4)));
        let fac = squarefree_factors(&f).unwrap();
        assert_eq!(fac, vec![(f, 1)]);
    }

    #[test]
    fn repeated_linear_factors() {
        // (x1 + x2)^2 (x1 - x2)
        let s = x(2, 0).add(&x(2, 1));
        let d = x(2, 0).sub(&x(2, 1));
        let f = s.pow(2).mul(&d);
        let fac = squarefree_factors(&f).unwrap();
        assert_eq!(fac, vec![(d, 1), (s, 2)]);
    }

    #[test]
    fn splits_product_with_shared_variable() {
        // x1 x3 (x2^2 - 4 x1 x3) splits into three pairwise coprime factors
        let quad = x(3, 1)
            .pow(2)
            .sub(&x(3, 0).mul(&x(3, 2)).mul_scalar(&rat_i64(4)));
        let f = x(3, 0).mul(&x(3, 2)).mul(&quad);
        let fac = squarefree_factors(&f).unwrap();
        assert_eq!(
            fac,
            vec![(x(3, 0), 1), (x(3, 2), 1), (quad, 1)]
        );
    }

    #[test]
    fn reassembly_up_to_unit() {
        let f = x(2, 0)
            .pow(3)
            .mul(&x(2, 1))
            .mul(&x(2, 0).add(&x(2, 1)).pow(2))
            .mul_scalar(&rat(3, 7));
        let fac = squarefree_factors(&f).unwrap();
        let mut prod = MultiPoly::one(2);
        for (g, m) in &fac {
            prod = prod.mul(&g.pow(*m));
        }
        // f / prod is a nonzero rational constant
        let q = f.exact_div(&prod).unwrap();
        assert!(q.as_constant().is_some());
        // pairwise coprime and coprime with derivatives
        for i in 0..fac.len() {
            for j in i + 1..fac.len() {
                assert_eq!(gcd(&fac[i].0, &fac[j].0), MultiPoly::one(2));
            }
            for v in 0..2 {
                let dg = fac[i].0.derivative(v);
                if !dg.is_zero() {
                    assert_eq!(gcd(&fac[i].0, &dg), MultiPoly::one(2));
                }
            }
        }
    }

    #[test]
    fn roots_basic() {
        // x^2 - 1 -> {-1, 1}
        let f = x(1, 0).pow(2).sub(&MultiPoly::one(1));
        assert_eq!(rational_roots(&f).unwrap(), vec![rat_i64(-1), rat_i64(1)]);
        // x^2 + 1 -> {}
        let g = x(1, 0).pow(2).add(&MultiPoly::one(1));
        assert!(rational_roots(&g).unwrap().is_empty());
        // 2x - 3 -> {3/2}
        let h = x(1, 0)
            .mul_scalar(&rat_i64(2))
            .sub(&MultiPoly::constant(1, rat_i64(3)));
        assert_eq!(rational_roots(&h).unwrap(), vec![rat(3, 2)]);
    }

    #[test]
    fn roots_with_zero_and_fractions() {
        // x (3x + 1) (x - 2) -> {-1/3, 0, 2}
        let f = x(1, 0)
            .mul(&x(1, 0).mul_scalar(&rat_i64(3)).add(&MultiPoly::one(1)))
            .mul(&x(1, 0).sub(&MultiPoly::constant(1, rat_i64(2))));
        assert_eq!(
            rational_roots(&f).unwrap(),
            vec![rat(-1, 3), rat_i64(0), rat_i64(2)]
        );
    }

    #[test]
    fn vanishing_orders() {
        // (x - 2)^3 (x + 1) at 2 -> 3, at -1 -> 1, at 0 -> 0
        let f = x(1, 0)
            .sub(&MultiPoly::constant(1, rat_i64(2)))
            .pow(3)
            .mul(&x(1, 0).add(&MultiPoly::one(1)));
        assert_eq!(vanishing_order(&f, &rat_i64(2)), 3);
        assert_eq!(vanishing_order(&f, &rat_i64(-1)), 1);
        assert_eq!(vanishing_order(&f, &rat_i64(0)), 0);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(
            squarefree_factors(&MultiPoly::zero(2)),
            Err(Error::ZeroPolynomial)
        );
    }
}
