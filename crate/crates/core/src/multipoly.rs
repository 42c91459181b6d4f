//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so the stored form
//! is canonical and iteration order is deterministic. Leading terms with
//! respect to a monomial order are computed on demand.

use crate::arith::{big_gcd_all, common_denominator, Rational};
use crate::order::{mono_add, mono_sub, mono_total_degree, Mono, MonomialOrder};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Mono, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut mono = vec![0; nvars];
        mono[i] = 1;
        Self::monomial(nvars, mono, Rational::one())
    }

    pub fn monomial(nvars: usize, mono: Mono, c: Rational) -> Self {
        assert_eq!(mono.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(mono, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rational)>>(nvars: usize, iter: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    /// Some(c) when the polynomial is constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn coeff(&self, mono: &[u32]) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, mono: Mono, c: Rational) {
        debug_assert_eq!(mono.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
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

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_add(m1, m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_mono(&self, mono: &[u32], c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (mono_add(m, mono), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| mono_total_degree(m))
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m[v]).max().unwrap_or(0)
    }

    /// Leading (monomial, coefficient) under the given order.
    pub fn lt<'p>(&'p self, order: &MonomialOrder) -> Option<(&'p Mono, &'p Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    pub fn derivative(&self, v: usize) -> Self {
        assert!(v < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[v] > 0 {
                let mut m2 = m.clone();
                m2[v] -= 1;
                out.add_term(m2, c * Rational::from_integer(BigInt::from(m[v])));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes x_i = p_i + v_i t, returning a univariate polynomial in t.
    pub fn eval_line(&self, p: &[Rational], v: &[Rational]) -> MultiPoly {
        assert_eq!(p.len(), self.nvars);
        assert_eq!(v.len(), self.nvars);
        let mut acc = MultiPoly::zero(1);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(1, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut lin = MultiPoly::constant(1, p[i].clone());
                lin.add_term(vec![1], v[i].clone());
                t = t.mul(&lin.pow(e));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Fixes the variables with `Some` assignments; they disappear from the
    /// exponent support but the variable count is preserved.
    pub fn specialize(&self, assign: &[Option<Rational>]) -> MultiPoly {
        assert_eq!(assign.len(), self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut m2 = m.clone();
            for (i, a) in assign.iter().enumerate() {
                if let Some(val) = a {
                    for _ in 0..m[i] {
                        coeff *= val;
                    }
                    m2[i] = 0;
                }
            }
            out.add_term(m2, coeff);
        }
        out
    }

    /// Dense coefficient list in variable `v`; fails if any other variable
    /// appears.
    pub fn univariate_coeffs(&self, v: usize) -> Option<Vec<Rational>> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Rational::zero(); d + 1];
        for (m, c) in &self.terms {
            for (i, &e) in m.iter().enumerate() {
                if i != v && e != 0 {
                    return None;
                }
            }
            out[m[v] as usize] = c.clone();
        }
        Some(out)
    }

    /// Views the polynomial as univariate in `v` with polynomial coefficients
    /// (which keep the full variable count, with zero exponent at `v`).
    pub fn coeffs_in(&self, v: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m[v];
            let mut m2 = m.clone();
            m2[v] = 0;
            out.entry(d)
                .or_insert_with(|| MultiPoly::zero(self.nvars))
                .add_term(m2, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    pub fn from_coeffs_in(nvars: usize, v: usize, coeffs: &BTreeMap<u32, MultiPoly>) -> Self {
        let mut out = MultiPoly::zero(nvars);
        for (d, p) in coeffs {
            for (m, c) in &p.terms {
                let mut m2 = m.clone();
                m2[v] += d;
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Appends fresh variables on the right.
    pub fn extend_vars(&self, new_nvars: usize) -> MultiPoly {
        assert!(new_nvars >= self.nvars);
        let mut out = MultiPoly::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.resize(new_nvars, 0);
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Keeps only the variables marked in `keep`, which must cover the
    /// support of every term.
    pub fn restrict_vars(&self, keep: &[bool]) -> Option<MultiPoly> {
        assert_eq!(keep.len(), self.nvars);
        let new_n = keep.iter().filter(|&&k| k).count();
        let mut out = MultiPoly::zero(new_n);
        for (m, c) in &self.terms {
            let mut m2 = Vec::with_capacity(new_n);
            for (i, &e) in m.iter().enumerate() {
                if keep[i] {
                    m2.push(e);
                } else if e != 0 {
                    return None;
                }
            }
            out.add_term(m2, c.clone());
        }
        Some(out)
    }

    /// Unit u and primitive part q with self = u * q: q has coprime integer
    /// coefficients and positive leading coefficient under degrevlex.
    pub fn make_primitive(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let denom_lcm = common_denominator(self.terms.values());
        let scaled: Vec<(Mono, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&denom_lcm / c.denom())))
            .collect();
        let g = big_gcd_all(scaled.iter().map(|(_, n)| n));
        let order = MonomialOrder::degrevlex(self.nvars);
        let lead = scaled
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
            .map(|(_, n)| n.clone())
            .unwrap();
        let sign = if lead.is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::from(1)
        };
        let div = &g * &sign;
        let prim = MultiPoly {
            nvars: self.nvars,
            terms: scaled
                .into_iter()
                .map(|(m, n)| (m, Rational::from_integer(n / &div)))
                .collect(),
        };
        let unit = Rational::new(div, denom_lcm);
        (unit, prim)
    }

    pub fn primitive_part(&self) -> MultiPoly {
        self.make_primitive().1
    }

    /// Exact division; None when `g` does not divide `self`.
    pub fn exact_div(&self, g: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.nvars, g.nvars);
        assert!(!g.is_zero(), "division by zero polynomial");
        let order = MonomialOrder::degrevlex(self.nvars);
        let (gm, gc) = g.lt(&order).unwrap();
        let gm = gm.clone();
        let gc = gc.clone();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while !rem.is_zero() {
            let (rm, rc) = rem.lt(&order).unwrap();
            let q = mono_sub(rm, &gm)?;
            let c = rc / &gc;
            quot.add_term(q.clone(), c.clone());
            rem = rem.sub(&g.mul_mono(&q, &c));
        }
        Some(quot)
    }

    /// Content with respect to variable `v`: the gcd of the coefficient
    /// polynomials, primitive with positive leading sign.
    pub fn content_in(&self, v: usize) -> MultiPoly {
        let coeffs = self.coeffs_in(v);
        let mut acc = MultiPoly::zero(self.nvars);
        for p in coeffs.values() {
            acc = gcd(&acc, p);
            if acc.as_constant().is_some() && !acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Deterministic total order on polynomials (canonical term maps).
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter();
        let mut b = other.terms.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    match ma.cmp(mb).then_with(|| ca.cmp(cb)) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
            }
        }
    }
}

/// Pseudo-remainder of f by g with respect to variable `v`:
/// lc_v(g)^k f = q g + r with deg_v(r) < deg_v(g).
fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, v: usize) -> MultiPoly {
    let dg = g.degree_in(v);
    debug_assert!(!g.is_zero());
    let g_coeffs = g.coeffs_in(v);
    let lc_g = g_coeffs.get(&dg).unwrap().clone();
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lc_r = r.coeffs_in(v).get(&dr).unwrap().clone();
        // r := lc_g * r - lc_r * v^(dr-dg) * g
        let mut shift = vec![0u32; f.nvars()];
        shift[v] = dr - dg;
        let sub = g.mul_mono(&shift, &Rational::one()).mul(&lc_r);
        r = r.mul(&lc_g).sub(&sub);
        debug_assert!(r.is_zero() || r.degree_in(v) < dr);
    }
    r
}

/// Multivariate gcd over the rationals via the primitive PRS, normalized to
/// a primitive polynomial with positive leading coefficient. The gcd of
/// anything with a nonzero constant is 1 (constants are units over Q).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert_eq!(a.nvars(), b.nvars());
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return MultiPoly::one(a.nvars());
    }
    // main variable: the highest-index variable occurring in either
    let v = (0..a.nvars())
        .rev()
        .find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
        .expect("nonconstant polynomial with empty support");
    if a.degree_in(v) == 0 {
        return gcd(a, &b.content_in(v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&a.content_in(v), b);
    }
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd(&ca, &cb);
    let mut f = a.exact_div(&ca).expect("content divides").primitive_part();
    let mut g = b.exact_div(&cb).expect("content divides").primitive_part();
    if f.degree_in(v) < g.degree_in(v) {
        core::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g, v);
        f = g;
        g = if r.is_zero() {
            r
        } else {
            let cr = r.content_in(v);
            r.exact_div(&cr).expect("content divides").primitive_part()
        };
    }
    c.mul(&f).primitive_part()
}
