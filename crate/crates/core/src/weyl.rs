//! The Weyl algebra D_n: normally ordered operators with exact rational
//! coefficients.
//!
//! A term is keyed by the concatenated exponent vector [alpha | beta] of
//! x^alpha d^beta; the stored map is the unique normal form with every
//! coordinate factor left of every derivative factor.

use crate::arith::{binomial, factorial, falling, Rational};
use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::order::Mono;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    nvars: usize,
    terms: BTreeMap<Mono, Rational>, // key length 2 * nvars
}

impl WeylElement {
    pub fn zero(nvars: usize) -> Self {
        WeylElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; 2 * nvars], c);
        p
    }

    /// The coordinate operator x_i (0-based).
    pub fn x(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut key = vec![0; 2 * nvars];
        key[i] = 1;
        Self::term(nvars, key, Rational::one())
    }

    /// The derivative operator d_i (0-based).
    pub fn d(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut key = vec![0; 2 * nvars];
        key[nvars + i] = 1;
        Self::term(nvars, key, Rational::one())
    }

    pub fn term(nvars: usize, key: Mono, c: Rational) -> Self {
        assert_eq!(key.len(), 2 * nvars);
        let mut p = Self::zero(nvars);
        p.add_term(key, c);
        p
    }

    pub fn monomial(nvars: usize, xexp: &[u32], dexp: &[u32], c: Rational) -> Self {
        assert_eq!(xexp.len(), nvars);
        assert_eq!(dexp.len(), nvars);
        let mut key = Vec::with_capacity(2 * nvars);
        key.extend_from_slice(xexp);
        key.extend_from_slice(dexp);
        Self::term(nvars, key, c)
    }

    /// Embeds a commutative polynomial in the x's as an operator.
    pub fn from_poly(p: &MultiPoly) -> Self {
        let n = p.nvars();
        let mut out = Self::zero(n);
        for (m, c) in p.terms() {
            let mut key = m.clone();
            key.resize(2 * n, 0);
            out.add_term(key, c.clone());
        }
        out
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

    pub fn add_term(&mut self, key: Mono, c: Rational) {
        debug_assert_eq!(key.len(), 2 * self.nvars);
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

    pub fn neg(&self) -> Self {
        WeylElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul_scalar(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        WeylElement {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Noncommutative product in normal order. For single terms,
    /// (x^a d^b)(x^c d^e) expands by the commutation rule
    /// d_i x_i = x_i d_i + 1 into a sum over componentwise k <= min(b, c):
    /// prod_i C(b_i,k_i) C(c_i,k_i) k_i!  x^{a+c-k} d^{b+e-k}.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let n = self.nvars;
        let mut out = Self::zero(n);
        for (m1, c1) in &self.terms {
            let (a, b) = m1.split_at(n);
            for (m2, c2) in &other.terms {
                let (c, e) = m2.split_at(n);
                let kmax: Vec<u32> = b.iter().zip(c).map(|(x, y)| *x.min(y)).collect();
                let coeff = c1 * c2;
                mul_term_rec(&mut out, n, a, b, c, e, &kmax, 0, &mut vec![0; n], &coeff);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies the operator to a polynomial: x's multiply, d's differentiate.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        assert_eq!(f.nvars(), self.nvars);
        let n = self.nvars;
        let mut out = MultiPoly::zero(n);
        for (m, c) in &self.terms {
            let (a, b) = m.split_at(n);
            for (fm, fc) in f.terms() {
                // d^b kills monomials with any exponent below b
                if fm.iter().zip(b).any(|(x, y)| x < y) {
                    continue;
                }
                let mut scale = BigInt::one();
                for i in 0..n {
                    scale *= falling(fm[i] as i64, b[i] as u64);
                }
                let mono: Mono = (0..n).map(|i| a[i] + fm[i] - b[i]).collect();
                out.add_term(mono, c * fc * Rational::from_integer(scale));
            }
        }
        out
    }

    /// (-w,w)-order and initial form: the order is max w.(beta - alpha) over
    /// the support, and the initial form keeps exactly the maximal terms.
    pub fn weight_data(&self, w: &[Rational]) -> Result<(Rational, WeylElement)> {
        assert_eq!(w.len(), self.nvars, "weight length mismatch");
        if self.is_zero() {
            return Err(Error::ZeroOperator);
        }
        let n = self.nvars;
        let weight_of = |m: &Mono| -> Rational {
            let mut acc = Rational::zero();
            for i in 0..n {
                let diff = BigInt::from(m[n + i]) - BigInt::from(m[i]);
                acc += &w[i] * Rational::from_integer(diff);
            }
            acc
        };
        let mut best: Option<Rational> = None;
        for m in self.terms.keys() {
            let wt = weight_of(m);
            if best.as_ref().is_none_or(|b| wt > *b) {
                best = Some(wt);
            }
        }
        let best = best.unwrap();
        let mut init = Self::zero(n);
        for (m, c) in &self.terms {
            if weight_of(m) == best {
                init.add_term(m.clone(), c.clone());
            }
        }
        Ok((best, init))
    }

    /// Total degree in (x, d) jointly.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Image under the algebra automorphism x_i -> x_i + p_i, d_i -> d_i.
    pub fn translate(&self, p: &[Rational]) -> Result<WeylElement> {
        if p.len() != self.nvars {
            return Err(Error::Usage(alloc::format!(
                "point length {} does not match {} variables",
                p.len(),
                self.nvars
            )));
        }
        let n = self.nvars;
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            let (a, b) = m.split_at(n);
            // expand prod_i (x_i + p_i)^{a_i} as a commutative polynomial
            let mut xpart = MultiPoly::constant(n, c.clone());
            for i in 0..n {
                if a[i] > 0 {
                    let mut lin = MultiPoly::var(n, i);
                    lin.add_term(vec![0; n], p[i].clone());
                    xpart = xpart.mul(&lin.pow(a[i]));
                }
            }
            for (xm, xc) in xpart.terms() {
                let mut key = xm.clone();
                key.extend_from_slice(b);
                out.add_term(key, xc.clone());
            }
        }
        Ok(out)
    }

    /// Coefficient view by derivative monomial: Sigma_beta c_beta(x) d^beta.
    pub fn coeffs_by_d(&self) -> BTreeMap<Mono, MultiPoly> {
        let n = self.nvars;
        let mut out: BTreeMap<Mono, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (a, b) = m.split_at(n);
            out.entry(b.to_vec())
                .or_insert_with(|| MultiPoly::zero(n))
                .add_term(a.to_vec(), c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    pub fn from_d_coeffs(nvars: usize, coeffs: &BTreeMap<Mono, MultiPoly>) -> Self {
        let mut out = Self::zero(nvars);
        for (b, p) in coeffs {
            for (a, c) in p.terms() {
                let mut key = a.clone();
                key.extend_from_slice(b);
                out.add_term(key, c.clone());
            }
        }
        out
    }

    /// Unit normalization: integer coprime coefficients, positive leading
    /// sign (canonical term order on the stored map).
    pub fn primitive_part(&self) -> WeylElement {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = crate::arith::common_denominator(self.terms.values());
        let scaled: Vec<(Mono, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&lcm / c.denom())))
            .collect();
        let g = crate::arith::big_gcd_all(scaled.iter().map(|(_, v)| v));
        let lead = &scaled.last().unwrap().1;
        let sign = if lead < &BigInt::zero() {
            BigInt::from(-1)
        } else {
            BigInt::one()
        };
        let div = g * sign;
        WeylElement {
            nvars: self.nvars,
            terms: scaled
                .into_iter()
                .map(|(m, v)| (m, Rational::from_integer(v / &div)))
                .collect(),
        }
    }

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

#[allow(clippy::too_many_arguments)]
fn mul_term_rec(
    out: &mut WeylElement,
    n: usize,
    a: &[u32],
    b: &[u32],
    c: &[u32],
    e: &[u32],
    kmax: &[u32],
    i: usize,
    k: &mut Vec<u32>,
    coeff: &Rational,
) {
    if i == n {
        let mut scale = BigInt::one();
        for j in 0..n {
            scale *= binomial(b[j] as u64, k[j] as u64);
            scale *= binomial(c[j] as u64, k[j] as u64);
            scale *= factorial(k[j] as u64);
        }
        let mut key = Vec::with_capacity(2 * n);
        for j in 0..n {
            key.push(a[j] + c[j] - k[j]);
        }
        for j in 0..n {
            key.push(b[j] + e[j] - k[j]);
        }
        out.add_term(key, coeff * Rational::from_integer(scale));
        return;
    }
    for ki in 0..=kmax[i] {
        k[i] = ki;
        mul_term_rec(out, n, a, b, c, e, kmax, i + 1, k, coeff);
    }
    k[i] = 0;
}

/// A finitely generated left ideal of the Weyl algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DIdeal {
    pub nvars: usize,
    pub gens: Vec<WeylElement>,
}

impl DIdeal {
    pub fn new(nvars: usize, gens: Vec<WeylElement>) -> Self {
        let gens: Vec<WeylElement> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert_eq!(g.nvars(), nvars, "generator variable count mismatch");
        }
        DIdeal { nvars, gens }
    }

    /// Translated ideal generated by the images of the generators under
    /// x -> x + p.
    pub fn translate(&self, p: &[Rational]) -> Result<DIdeal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.translate(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(DIdeal::new(self.nvars, gens))
    }

    /// Transport through the standard chart change of projective space:
    /// x_k = 1/y_k and x_j = y_j / y_k for j != k (`chart` is 0-based).
    /// Generators are mapped by the chain rule and cleared of y_k
    /// denominators, so the result generates the transported ideal up to
    /// the powers of y_k cleared.
    pub fn chart_pullback(&self, chart: usize) -> Result<DIdeal> {
        let n = self.nvars;
        if chart >= n {
            return Err(Error::Usage(alloc::format!(
                "chart index {} out of range for {} variables",
                chart + 1,
                n
            )));
        }
        // images of the derivations:
        //   d_{x_j} = y_k d_{y_j}                    (j != k)
        //   d_{x_k} = -y_k^2 d_{y_k} - y_k * sum_{j != k} y_j d_{y_j}
        let k = chart;
        let mut d_images: Vec<WeylElement> = Vec::with_capacity(n);
        for j in 0..n {
            if j != k {
                let img = WeylElement::x(n, k).mul(&WeylElement::d(n, j));
                d_images.push(img);
            } else {
                let mut img = WeylElement::x(n, k)
                    .pow(2)
                    .mul(&WeylElement::d(n, k))
                    .neg();
                for j2 in 0..n {
                    if j2 != k {
                        let t = WeylElement::x(n, k)
                            .mul(&WeylElement::x(n, j2))
                            .mul(&WeylElement::d(n, j2));
                        img = img.sub(&t);
                    }
                }
                d_images.push(img);
            }
        }
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            // Laurent bookkeeping: x-exponents over Z, y_k alone may go negative
            let mut laurent: BTreeMap<(Vec<i64>, Mono), Rational> = BTreeMap::new();
            for (m, c) in g.terms() {
                let (a, b) = m.split_at(n);
                // product of the d-images in normal polynomial form
                let mut q = WeylElement::one(n);
                for (j, img) in d_images.iter().enumerate() {
                    for _ in 0..b[j] {
                        q = q.mul(img);
                    }
                }
                // x^alpha maps to the Laurent monomial with y_j exponent
                // alpha_j (j != k) and y_k exponent -|alpha|
                let total: i64 = a.iter().map(|&e| e as i64).sum();
                let mut shift: Vec<i64> = a.iter().map(|&e| e as i64).collect();
                shift[k] = -total;
                for (qm, qc) in q.terms() {
                    let (qa, qb) = qm.split_at(n);
                    let mut xe: Vec<i64> = qa.iter().map(|&e| e as i64).collect();
                    for (x, s) in xe.iter_mut().zip(&shift) {
                        *x += s;
                    }
                    let key = (xe, qb.to_vec());
                    let add = c * qc;
                    let entry = laurent.entry(key).or_insert_with(Rational::zero);
                    *entry += add;
                }
            }
            laurent.retain(|_, v| !v.is_zero());
            if laurent.is_empty() {
                continue;
            }
            let min_k = laurent.keys().map(|(xe, _)| xe[k]).min().unwrap().min(0);
            let mut out = WeylElement::zero(n);
            for ((xe, de), c) in laurent {
                let mut key: Mono = xe
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| {
                        let shifted = if i == k { e - min_k } else { e };
                        u32::try_from(shifted).expect("negative exponent after clearing")
                    })
                    .collect();
                key.extend_from_slice(&de);
                out.add_term(key, c);
            }
            gens.push(out.primitive_part());
        }
        Ok(DIdeal::new(n, gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i64};

    #[test]
    fn canonical_commutation() {
        let n = 1;
        let d = WeylElement::d(n, 0);
        let x = WeylElement::x(n, 0);
        // d x = x d + 1
        let prod = d.mul(&x);
        let expect = x.mul(&d).add(&WeylElement::one(n));
        assert_eq!(prod, expect);
        // x d is already normal
        assert_eq!(x.mul(&d), WeylElement::monomial(1, &[1], &[1], rat_i64(1)));
    }

    #[test]
    fn second_order_commutation() {
        // d^2 x = x d^2 + 2 d
        let d = WeylElement::d(1, 0);
        let x = WeylElement::x(1, 0);
        let lhs = d.mul(&d).mul(&x);
        let rhs = x.mul(&d).mul(&d).add(&d.mul_scalar(&rat_i64(2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_matches_multiplication() {
        // (P Q) . f = P . (Q . f)
        let p = WeylElement::d(2, 0)
            .mul(&WeylElement::x(2, 1))
            .add(&WeylElement::x(2, 0));
        let q = WeylElement::d(2, 1)
            .pow(2)
            .add(&WeylElement::x(2, 0).mul(&WeylElement::d(2, 0)));
        let f = MultiPoly::var(2, 0)
            .pow(3)
            .mul(&MultiPoly::var(2, 1).pow(2))
            .add(&MultiPoly::var(2, 1).pow(4));
        let lhs = p.mul(&q).apply(&f);
        let rhs = p.apply(&q.apply(&f));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_data_examples() {
        // P = x d^2 + d, w = (1): order 1, init = P
        let x = WeylElement::x(1, 0);
        let d = WeylElement::d(1, 0);
        let p = x.mul(&d.pow(2)).add(&d);
        let (ord, init) = p.weight_data(&[rat_i64(1)]).unwrap();
        assert_eq!(ord, rat_i64(1));
        assert_eq!(init, p);
        // P = x^2 d + 1, w = (1): order 0, init = 1
        let q = x.pow(2).mul(&d).add(&WeylElement::one(1));
        let (ord, init) = q.weight_data(&[rat_i64(1)]).unwrap();
        assert_eq!(ord, rat_i64(0));
        assert_eq!(init, WeylElement::one(1));
    }

    #[test]
    fn weight_data_three_vars() {
        // P = d2^2 - d1 d3 with w = (1,1,1): order 2, init = P
        let p = WeylElement::d(3, 1)
            .pow(2)
            .sub(&WeylElement::d(3, 0).mul(&WeylElement::d(3, 2)));
        let (ord, init) = p
            .weight_data(&[rat_i64(1), rat_i64(1), rat_i64(1)])
            .unwrap();
        assert_eq!(ord, rat_i64(2));
        assert_eq!(init, p);
    }

    #[test]
    fn translation_round_trip() {
        let p = WeylElement::x(2, 0)
            .mul(&WeylElement::d(2, 0))
            .add(&WeylElement::x(2, 1).pow(3).mul(&WeylElement::d(2, 1)));
        let q = [rat(1, 2), rat_i64(-3)];
        let back: Vec<Rational> = q.iter().map(|r| -r.clone()).collect();
        let round = p.translate(&q).unwrap().translate(&back).unwrap();
        assert_eq!(round, p);
    }

    #[test]
    fn translation_example() {
        // x d at p = (1) becomes x d + d
        let p = WeylElement::x(1, 0).mul(&WeylElement::d(1, 0));
        let t = p.translate(&[rat_i64(1)]).unwrap();
        let expect = p.add(&WeylElement::d(1, 0));
        assert_eq!(t, expect);
    }

    #[test]
    fn chart_pullback_one_dim() {
        // <d> maps to <y^2 d_y> up to sign
        let ideal = DIdeal::new(1, vec![WeylElement::d(1, 0)]);
        let out = ideal.chart_pullback(0).unwrap();
        let expect = WeylElement::x(1, 0).pow(2).mul(&WeylElement::d(1, 0));
        assert_eq!(out.gens.len(), 1);
        assert_eq!(out.gens[0], expect);
    }

    #[test]
    fn chart_pullback_euler() {
        // <x d - c> maps to <y d_y + c>
        let c = rat(1, 3);
        let p = WeylElement::x(1, 0)
            .mul(&WeylElement::d(1, 0))
            .sub(&WeylElement::constant(1, c.clone()));
        let ideal = DIdeal::new(1, vec![p]);
        let out = ideal.chart_pullback(0).unwrap();
        // up to primitive normalization: 3 y d_y + 1 for c = 1/3
        let expect = WeylElement::x(1, 0)
            .mul(&WeylElement::d(1, 0))
            .add(&WeylElement::constant(1, c))
            .primitive_part();
        assert_eq!(out.gens[0], expect);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_weyl() -> impl Strategy<Value = WeylElement> {
            let term = (
                proptest::collection::vec(0u32..3, 4),
                (-4i64..=4, 1i64..=3),
            );
            proptest::collection::vec(term, 1..4).prop_map(|terms| {
                let mut op = WeylElement::zero(2);
                for (key, (n, d)) in terms {
                    op.add_term(key, rat(n, d));
                }
                op
            })
        }

        fn arb_poly() -> impl Strategy<Value = MultiPoly> {
            let term = (
                proptest::collection::vec(0u32..4, 2),
                (-4i64..=4, 1i64..=3),
            );
            proptest::collection::vec(term, 1..4).prop_map(|terms| {
                let mut p = MultiPoly::zero(2);
                for (m, (n, d)) in terms {
                    p.add_term(m, rat(n, d));
                }
                p
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(96))]

            // the product acts as the composition of actions
            #[test]
            fn normal_form_soundness(p in arb_weyl(), q in arb_weyl(), f in arb_poly()) {
                prop_assert_eq!(p.mul(&q).apply(&f), p.apply(&q.apply(&f)));
            }

            #[test]
            fn associativity(p in arb_weyl(), q in arb_weyl(), r in arb_weyl()) {
                prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            }
        }
    }

    #[test]
    fn chart_involution() {
        // applying the 1-d chart twice returns the generator up to a
        // unit times a power of the coordinate
        let p = WeylElement::x(1, 0)
            .pow(2)
            .mul(&WeylElement::d(1, 0))
            .add(&WeylElement::one(1));
        let ideal = DIdeal::new(1, vec![p.clone()]);
        let twice = ideal.chart_pullback(0).unwrap().chart_pullback(0).unwrap();
        assert_eq!(twice.gens.len(), 1);
        let got = &twice.gens[0];
        // got should equal x^m * p up to a rational unit
        let mut matched = false;
        for m in 0..4u32 {
            let shifted = WeylElement::x(1, 0).pow(m).mul(&p).primitive_part();
            if &shifted == got {
                matched = true;
                break;
            }
        }
        assert!(matched, "double chart transport is not a shifted copy");
    }
}
