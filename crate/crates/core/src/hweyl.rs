//! The homogenized Weyl algebra: a central variable h with the relation
//! d_i x_i = x_i d_i + h^2 makes every element h-homogeneous, so Buchberger
//! terminates for weight orders whose x-entries are negative.
//!
//! Terms are keyed by [alpha | beta | s] for x^alpha d^beta h^s. The order
//! used for basis computation is total degree, then the (-w,w) weight of the
//! dehomogenized monomial, then reverse lex with h in the last slot; the
//! last tiebreak guarantees x_i d_i beats h^2, which keeps leading terms
//! multiplicative.

use crate::arith::{binomial, factorial, Rational};
use crate::budget::Budget;
use crate::error::Result;
use crate::gb::GbArith;
use crate::order::{mono_divides, mono_sub, Mono, MonomialOrder, Tie};
use crate::weyl::WeylElement;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HWeyl {
    nvars: usize,
    terms: BTreeMap<Mono, Rational>, // key length 2 * nvars + 1
}

impl HWeyl {
    pub fn zero(nvars: usize) -> Self {
        HWeyl {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: Mono, c: Rational) {
        debug_assert_eq!(key.len(), 2 * self.nvars + 1);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    /// Left multiplication by the single term c x^a d^b h^s.
    pub fn mul_term_left(&self, key: &[u32], c: &Rational) -> Self {
        let n = self.nvars;
        let (a, rest) = key.split_at(n);
        let (b, s) = rest.split_at(n);
        let s = s[0];
        let mut out = Self::zero(n);
        for (m2, c2) in &self.terms {
            let (cc, rest2) = m2.split_at(n);
            let (ee, tt) = rest2.split_at(n);
            let t = tt[0];
            let kmax: Vec<u32> = b.iter().zip(cc).map(|(x, y)| *x.min(y)).collect();
            let coeff = c * c2;
            hmul_rec(&mut out, n, a, b, cc, ee, s + t, &kmax, 0, &mut vec![0; n], &coeff);
        }
        out
    }

    /// Substitutes h = 1.
    pub fn dehomogenize(&self) -> WeylElement {
        let n = self.nvars;
        let mut out = WeylElement::zero(n);
        for (m, c) in &self.terms {
            out.add_term(m[..2 * n].to_vec(), c.clone());
        }
        out
    }

    /// Homogenizes a Weyl element to constant total degree in (x, d, h).
    pub fn homogenize(p: &WeylElement) -> Self {
        let n = p.nvars();
        let deg = p.total_degree();
        let mut out = Self::zero(n);
        for (m, c) in p.terms() {
            let d: u32 = m.iter().sum();
            let mut key = m.clone();
            key.push(deg - d);
            out.add_term(key, c.clone());
        }
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn hmul_rec(
    out: &mut HWeyl,
    n: usize,
    a: &[u32],
    b: &[u32],
    c: &[u32],
    e: &[u32],
    h: u32,
    kmax: &[u32],
    i: usize,
    k: &mut Vec<u32>,
    coeff: &Rational,
) {
    if i == n {
        let mut scale = BigInt::one();
        let mut ktot = 0u32;
        for j in 0..n {
            scale *= binomial(b[j] as u64, k[j] as u64);
            scale *= binomial(c[j] as u64, k[j] as u64);
            scale *= factorial(k[j] as u64);
            ktot += k[j];
        }
        let mut key = Vec::with_capacity(2 * n + 1);
        for j in 0..n {
            key.push(a[j] + c[j] - k[j]);
        }
        for j in 0..n {
            key.push(b[j] + e[j] - k[j]);
        }
        key.push(h + 2 * ktot);
        out.add_term(key, coeff * Rational::from_integer(scale));
        return;
    }
    for ki in 0..=kmax[i] {
        k[i] = ki;
        hmul_rec(out, n, a, b, c, e, h, kmax, i + 1, k, coeff);
    }
    k[i] = 0;
}

/// Order on homogenized monomials adapted to the integer weight w:
/// total degree, then w.(beta - alpha), then reverse lex with h last.
pub fn h_order(nvars: usize, w: &[i64]) -> MonomialOrder {
    let slots = 2 * nvars + 1;
    let mut wrow = vec![0i64; slots];
    for i in 0..nvars {
        wrow[i] = -w[i];
        wrow[nvars + i] = w[i];
    }
    MonomialOrder::new(slots, vec![vec![1; slots], wrow], Tie::RevLex)
}

pub struct HWeylRing {
    pub order: MonomialOrder,
}

impl HWeylRing {
    fn lt<'e>(&self, e: &'e HWeyl) -> (&'e Mono, &'e Rational) {
        e.terms
            .iter()
            .max_by(|(a, _), (b, _)| self.order.cmp(a, b))
            .expect("leading term of zero")
    }

    fn primitive(&self, e: HWeyl) -> HWeyl {
        if e.is_zero() {
            return e;
        }
        let lcm = crate::arith::common_denominator(e.terms.values());
        let scaled: Vec<(Mono, BigInt)> = e
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&lcm / c.denom())))
            .collect();
        let g = crate::arith::big_gcd_all(scaled.iter().map(|(_, v)| v));
        HWeyl {
            nvars: e.nvars,
            terms: scaled
                .into_iter()
                .map(|(m, v)| (m, Rational::from_integer(v / &g)))
                .collect(),
        }
    }
}

impl GbArith for HWeylRing {
    type Elem = HWeyl;

    fn is_zero(&self, e: &HWeyl) -> bool {
        e.is_zero()
    }

    fn lm(&self, e: &HWeyl) -> Mono {
        self.lt(e).0.clone()
    }

    fn normal_form(&self, f: &HWeyl, basis: &[HWeyl], budget: &Budget) -> HWeyl {
        let lts: Vec<(Mono, Rational)> = basis
            .iter()
            .map(|g| {
                let (m, c) = self.lt(g);
                (m.clone(), c.clone())
            })
            .collect();
        let mut work = f.clone();
        let mut out = HWeyl::zero(f.nvars);
        'outer: while !work.is_zero() {
            budget.tick_reduction();
            let (wm, wc) = self.lt(&work);
            let wm = wm.clone();
            let wc = wc.clone();
            for (i, (gm, gc)) in lts.iter().enumerate() {
                if mono_divides(gm, &wm) {
                    let shift = mono_sub(&wm, gm).unwrap();
                    let c = &wc / gc;
                    work = work.sub(&basis[i].mul_term_left(&shift, &c));
                    continue 'outer;
                }
            }
            out.add_term(wm.clone(), wc.clone());
            let mut lead = HWeyl::zero(f.nvars);
            lead.add_term(wm, wc);
            work = work.sub(&lead);
        }
        self.primitive(out)
    }

    fn s_pair(&self, f: &HWeyl, g: &HWeyl, lcm: &Mono) -> HWeyl {
        let (fm, fc) = self.lt(f);
        let (gm, gc) = self.lt(g);
        let a = mono_sub(lcm, fm).unwrap();
        let b = mono_sub(lcm, gm).unwrap();
        let left = f.mul_term_left(&a, &(Rational::one() / fc));
        let right = g.mul_term_left(&b, &(Rational::one() / gc));
        left.sub(&right)
    }

    fn product_criterion(&self) -> bool {
        // commutators make S-pairs of coprime leading monomials nontrivial
        false
    }

    fn cmp_mono(&self, a: &[u32], b: &[u32]) -> core::cmp::Ordering {
        self.order.cmp(a, b)
    }
}

/// Groebner basis of the ideal generated by the homogenizations of `gens`
/// under the w-adapted order, already minimalized.
pub fn homogenized_groebner(
    gens: &[WeylElement],
    w: &[i64],
    budget: &Budget,
) -> Result<Vec<HWeyl>> {
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Ok(Vec::new()),
    };
    let ring = HWeylRing {
        order: h_order(nvars, w),
    };
    let hgens: Vec<HWeyl> = gens.iter().map(HWeyl::homogenize).collect();
    let basis = crate::gb::buchberger(&ring, &hgens, budget, "homogenized weyl groebner")?;
    Ok(crate::gb::minimalize(&ring, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_i64;

    #[test]
    fn homogenized_commutation() {
        // the term d times the element x: d x = x d + h^2
        let x = WeylElement::x(1, 0);
        let hx = HWeyl::homogenize(&x);
        let prod = hx.mul_term_left(&[0, 1, 0], &rat_i64(1));
        let mut expect = HWeyl::zero(1);
        expect.add_term(vec![1, 1, 0], rat_i64(1));
        expect.add_term(vec![0, 0, 2], rat_i64(1));
        assert_eq!(prod, expect);
    }

    #[test]
    fn dehomogenize_round_trip() {
        let p = WeylElement::x(2, 0)
            .mul(&WeylElement::d(2, 1).pow(2))
            .add(&WeylElement::one(2));
        assert_eq!(HWeyl::homogenize(&p).dehomogenize(), p);
    }

    #[test]
    fn h_order_prefers_xd_over_h2() {
        let o = h_order(1, &[1]);
        // x d vs h^2 at equal degree and weight
        assert_eq!(o.cmp(&[1, 1, 0], &[0, 0, 2]), core::cmp::Ordering::Greater);
    }
}
