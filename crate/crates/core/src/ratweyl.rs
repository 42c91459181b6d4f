//! The rational Weyl algebra: operators with rational-function coefficients,
//! holonomic rank, and Pfaffian (connection-matrix) systems.
//!
//! Groebner bases over C(x) are computed fraction-free: elements stay in the
//! polynomial Weyl algebra, reductions cross-multiply by leading coefficient
//! polynomials (units over the function field) and strip content after each
//! step. Only the final reduced basis is converted to monic operators with
//! rational-function coefficients.

use crate::arith::{binomial, Rational};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gb::GbArith;
use crate::multipoly::{gcd, MultiPoly};
use crate::order::{mono_add, mono_divides, mono_sub, mono_total_degree, Mono, MonomialOrder};
use crate::weyl::{DIdeal, WeylElement};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

/// A reduced fraction of multivariate polynomials; the denominator is monic
/// under degrevlex, so equal fractions have identical representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert_eq!(num.nvars(), den.nvars());
        Self::reduced(num, den)
    }

    fn reduced(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num,
                den: MultiPoly::one(den.nvars()),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.as_constant().is_some() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let order = MonomialOrder::degrevlex(den.nvars());
        let lc = den.lt(&order).unwrap().1.clone();
        let inv = Rational::one() / lc;
        RationalFunction {
            num: num.mul_scalar(&inv),
            den: den.mul_scalar(&inv),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFunction {
            num: MultiPoly::zero(nvars),
            den: MultiPoly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: MultiPoly::one(n),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::reduced(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        Self::reduced(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::reduced(self.den.clone(), self.num.clone())
    }

    pub fn mul_scalar(&self, c: &Rational) -> Self {
        RationalFunction {
            num: self.num.mul_scalar(c),
            den: self.den.clone(),
        }
    }

    /// Partial derivative by the quotient rule.
    pub fn derivative(&self, v: usize) -> Self {
        let num = self
            .num
            .derivative(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(v)));
        let den = self.den.mul(&self.den);
        Self::reduced(num, den)
    }

    /// None when the denominator vanishes at the point.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Restricts to the line x = p + t v; None when the denominator
    /// vanishes identically on the line.
    pub fn eval_line(&self, p: &[Rational], v: &[Rational]) -> Option<RationalFunction> {
        let den = self.den.eval_line(p, v);
        if den.is_zero() {
            return None;
        }
        Some(RationalFunction::new(self.num.eval_line(p, v), den))
    }
}

/// An operator with rational-function coefficients written to the left of
/// derivative monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalOperator {
    nvars: usize,
    terms: BTreeMap<Mono, RationalFunction>, // key length nvars (d-exponents)
}

impl RationalOperator {
    pub fn zero(nvars: usize) -> Self {
        RationalOperator {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coeff(&self, dmono: &[u32]) -> RationalFunction {
        self.terms
            .get(dmono)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.nvars))
    }

    pub fn add_term(&mut self, dmono: Mono, c: RationalFunction) {
        debug_assert_eq!(dmono.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(dmono) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn from_weyl(p: &WeylElement) -> Self {
        let n = p.nvars();
        let mut out = Self::zero(n);
        for (b, c) in p.coeffs_by_d() {
            out.add_term(b, RationalFunction::from_poly(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn mul_coeff(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k.mul(c));
        }
        out
    }

    /// Left multiplication by c(x) d^gamma, expanding d^gamma past the
    /// rational-function coefficients by the Leibniz rule.
    pub fn lmul_term(&self, gamma: &[u32], c: &RationalFunction) -> Self {
        let n = self.nvars;
        let mut out = Self::zero(n);
        for (beta, s) in &self.terms {
            // d^gamma s = sum_j C(gamma, j) s^{(j)} d^{gamma - j}
            let mut stack: Vec<(Mono, RationalFunction)> = vec![(vec![0; n], s.clone())];
            let mut expanded: Vec<(Mono, RationalFunction)> = Vec::new();
            expand_leibniz(gamma, 0, &mut stack, &mut expanded);
            for (j, sj) in expanded {
                let mut scale = Rational::one();
                for i in 0..n {
                    scale *= Rational::from_integer(binomial(gamma[i] as u64, j[i] as u64));
                }
                let dm: Mono = (0..n).map(|i| gamma[i] - j[i] + beta[i]).collect();
                out.add_term(dm, sj.mul(c).mul_scalar(&scale));
            }
        }
        out
    }
}

/// Enumerates j <= gamma with the j-fold derivative of the coefficient.
fn expand_leibniz(
    gamma: &[u32],
    var: usize,
    stack: &mut Vec<(Mono, RationalFunction)>,
    out: &mut Vec<(Mono, RationalFunction)>,
) {
    if var == gamma.len() {
        out.extend(stack.iter().cloned());
        return;
    }
    let base: Vec<(Mono, RationalFunction)> = stack.clone();
    let mut next: Vec<(Mono, RationalFunction)> = Vec::new();
    for (j, s) in base {
        let mut s_der = s.clone();
        for jv in 0..=gamma[var] {
            if !s_der.is_zero() || jv == 0 {
                let mut jj = j.clone();
                jj[var] = jv;
                next.push((jj, s_der.clone()));
            }
            if jv < gamma[var] {
                s_der = s_der.derivative(var);
            }
        }
    }
    *stack = next;
    if var + 1 == gamma.len() {
        out.extend(stack.iter().cloned());
    } else {
        expand_leibniz(gamma, var + 1, stack, out);
    }
}

/// Fraction-free view of the rational Weyl algebra for Buchberger: elements
/// are polynomial Weyl operators, leading data is the top d-monomial under
/// degrevlex with its polynomial coefficient.
struct RatWeylRing {
    nvars: usize,
    order: MonomialOrder, // on nvars d-slots
}

impl RatWeylRing {
    fn lead(&self, e: &WeylElement) -> (Mono, MultiPoly) {
        let n = self.nvars;
        let mut best: Option<Mono> = None;
        for (m, _) in e.terms() {
            let beta = m[n..].to_vec();
            if best.as_ref().is_none_or(|b| {
                self.order.cmp(&beta, b) == core::cmp::Ordering::Greater
            }) {
                best = Some(beta);
            }
        }
        let beta = best.expect("leading term of zero");
        let mut lc = MultiPoly::zero(n);
        for (m, c) in e.terms() {
            if m[n..] == beta[..] {
                lc.add_term(m[..n].to_vec(), c.clone());
            }
        }
        (beta, lc)
    }

    fn strip_content(&self, e: WeylElement) -> WeylElement {
        if e.is_zero() {
            return e;
        }
        let coeffs = e.coeffs_by_d();
        let mut acc = MultiPoly::zero(self.nvars);
        for p in coeffs.values() {
            acc = gcd(&acc, p);
            if acc.as_constant().is_some() {
                break;
            }
        }
        if acc.as_constant().is_some() {
            return e.primitive_part();
        }
        let mut out: BTreeMap<Mono, MultiPoly> = BTreeMap::new();
        for (b, p) in coeffs {
            out.insert(b, p.exact_div(&acc).expect("content divides"));
        }
        WeylElement::from_d_coeffs(self.nvars, &out).primitive_part()
    }
}

impl GbArith for RatWeylRing {
    type Elem = WeylElement;

    fn is_zero(&self, e: &WeylElement) -> bool {
        e.is_zero()
    }

    fn lm(&self, e: &WeylElement) -> Mono {
        self.lead(e).0
    }

    fn normal_form(&self, f: &WeylElement, basis: &[WeylElement], budget: &Budget) -> WeylElement {
        let n = self.nvars;
        let leads: Vec<(Mono, MultiPoly)> = basis.iter().map(|g| self.lead(g)).collect();
        let mut work = f.clone();
        loop {
            if work.is_zero() {
                return work;
            }
            budget.tick_reduction();
            // largest reducible d-monomial
            let mut target: Option<(Mono, usize)> = None;
            for (m, _) in work.terms() {
                let beta = m[n..].to_vec();
                if let Some(i) = leads.iter().position(|(gm, _)| mono_divides(gm, &beta)) {
                    if target.as_ref().is_none_or(|(t, _)| {
                        self.order.cmp(&beta, t) == core::cmp::Ordering::Greater
                    }) {
                        target = Some((beta, i));
                    }
                }
            }
            let Some((beta, i)) = target else {
                return self.strip_content(work);
            };
            let (gm, glc) = &leads[i];
            let shift = mono_sub(&beta, gm).unwrap();
            // coefficient of work at beta
            let mut wc = MultiPoly::zero(n);
            for (m, c) in work.terms() {
                if m[n..] == beta[..] {
                    wc.add_term(m[..n].to_vec(), c.clone());
                }
            }
            let dshift = WeylElement::monomial(n, &vec![0; n], &shift, Rational::one());
            let shifted = dshift.mul(&basis[i]);
            let left = WeylElement::from_poly(glc).mul(&work);
            let right = WeylElement::from_poly(&wc).mul(&shifted);
            work = self.strip_content(left.sub(&right));
        }
    }

    fn s_pair(&self, f: &WeylElement, g: &WeylElement, lcm: &Mono) -> WeylElement {
        let n = self.nvars;
        let (fm, flc) = self.lead(f);
        let (gm, glc) = self.lead(g);
        let a = mono_sub(lcm, &fm).unwrap();
        let b = mono_sub(lcm, &gm).unwrap();
        let da = WeylElement::monomial(n, &vec![0; n], &a, Rational::one());
        let db = WeylElement::monomial(n, &vec![0; n], &b, Rational::one());
        let left = WeylElement::from_poly(&glc).mul(&da.mul(f));
        let right = WeylElement::from_poly(&flc).mul(&db.mul(g));
        left.sub(&right)
    }

    fn product_criterion(&self) -> bool {
        false
    }

    fn cmp_mono(&self, a: &[u32], b: &[u32]) -> core::cmp::Ordering {
        self.order.cmp(a, b)
    }
}

/// Reduced Groebner basis of the extension of `ideal` to the rational Weyl
/// algebra: monic operators, fully tail-reduced, sorted ascending by
/// leading d-monomial.
#[derive(Debug, Clone)]
pub struct RatWeylBasis {
    pub nvars: usize,
    pub leads: Vec<Mono>,
    pub monic: Vec<RationalOperator>,
}

pub fn rational_weyl_gb(ideal: &DIdeal, budget: &Budget) -> Result<RatWeylBasis> {
    let n = ideal.nvars;
    let ring = RatWeylRing {
        nvars: n,
        order: MonomialOrder::degrevlex(n),
    };
    let basis = crate::gb::buchberger(&ring, &ideal.gens, budget, "rational weyl groebner")?;
    let minimal = crate::gb::minimalize(&ring, basis);
    // tail-reduce each element against the others, then normalize monic
    let mut reduced: Vec<WeylElement> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<WeylElement> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(ring.normal_form(&minimal[i], &others, budget));
    }
    reduced.sort_by(|a, b| ring.cmp_mono(&ring.lead(a).0, &ring.lead(b).0));
    let mut leads = Vec::with_capacity(reduced.len());
    let mut monic = Vec::with_capacity(reduced.len());
    for g in &reduced {
        let (gm, glc) = ring.lead(g);
        let inv = RationalFunction::from_poly(glc).inv();
        monic.push(RationalOperator::from_weyl(g).mul_coeff(&inv));
        leads.push(gm);
    }
    Ok(RatWeylBasis {
        nvars: n,
        leads,
        monic,
    })
}

impl RatWeylBasis {
    /// Full normal form over the rational function field; the result is
    /// supported on standard monomials.
    pub fn reduce(&self, op: &RationalOperator) -> RationalOperator {
        let order = MonomialOrder::degrevlex(self.nvars);
        let mut work = op.clone();
        loop {
            let mut target: Option<(Mono, usize)> = None;
            for (beta, _) in work.terms() {
                if let Some(i) = self.leads.iter().position(|gm| mono_divides(gm, beta)) {
                    if target.as_ref().is_none_or(|(t, _)| {
                        order.cmp(beta, t) == core::cmp::Ordering::Greater
                    }) {
                        target = Some((beta.clone(), i));
                    }
                }
            }
            let Some((beta, i)) = target else {
                return work;
            };
            let shift = mono_sub(&beta, &self.leads[i]).unwrap();
            let c = work.coeff(&beta);
            work = work.sub(&self.monic[i].lmul_term(&shift, &c));
        }
    }

    /// Standard monomials under the staircase, sorted ascending by
    /// degrevlex; None when they are not finite in number.
    pub fn standard_monomials(&self) -> Option<Vec<Mono>> {
        let n = self.nvars;
        // cofiniteness: a pure power of each d_i must lead something
        let mut bounds = vec![u32::MAX; n];
        for lead in &self.leads {
            if mono_total_degree(lead) == 0 {
                return Some(Vec::new()); // unit ideal
            }
            for i in 0..n {
                if lead.iter().enumerate().all(|(j, &e)| j == i || e == 0) {
                    bounds[i] = bounds[i].min(lead[i]);
                }
            }
        }
        if bounds.contains(&u32::MAX) {
            return None;
        }
        let mut out: Vec<Mono> = Vec::new();
        let mut cur = vec![0u32; n];
        enumerate_box(&bounds, 0, &mut cur, &mut |m: &Mono| {
            if !self.leads.iter().any(|l| mono_divides(l, m)) {
                out.push(m.clone());
            }
        });
        let order = MonomialOrder::degrevlex(n);
        out.sort_by(|a, b| order.cmp(a, b));
        Some(out)
    }
}

fn enumerate_box<F: FnMut(&Mono)>(bounds: &[u32], i: usize, cur: &mut Mono, f: &mut F) {
    if i == bounds.len() {
        f(cur);
        return;
    }
    for e in 0..bounds[i] {
        cur[i] = e;
        enumerate_box(bounds, i + 1, cur, f);
    }
    cur[i] = 0;
}

/// Holonomic rank: the number of standard monomials, or None for infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankResult {
    Finite(usize),
    Infinite,
}

impl RankResult {
    pub fn finite(&self) -> Option<usize> {
        match self {
            RankResult::Finite(r) => Some(*r),
            RankResult::Infinite => None,
        }
    }
}

pub fn holonomic_rank(ideal: &DIdeal, budget: &Budget) -> Result<RankResult> {
    let basis = rational_weyl_gb(ideal, budget)?;
    if basis.leads.is_empty() {
        // the zero ideal: free module of infinite rank over C(x) unless n = 0
        return Ok(if ideal.nvars == 0 {
            RankResult::Finite(1)
        } else {
            RankResult::Infinite
        });
    }
    Ok(match basis.standard_monomials() {
        Some(std) => RankResult::Finite(std.len()),
        None => RankResult::Infinite,
    })
}

/// First-order system d u / d x_i = A_i u on the standard monomial basis.
#[derive(Debug, Clone)]
pub struct PfaffianSystem {
    pub nvars: usize,
    pub rank: usize,
    pub basis: Vec<Mono>,
    pub matrices: Vec<Vec<Vec<RationalFunction>>>,
}

pub fn pfaffian_system(ideal: &DIdeal, budget: &Budget) -> Result<PfaffianSystem> {
    let n = ideal.nvars;
    let gb = rational_weyl_gb(ideal, budget)?;
    let std = match gb.standard_monomials() {
        Some(s) => s,
        None => return Err(Error::NotFiniteRank),
    };
    let rank = std.len();
    let index: BTreeMap<Mono, usize> = std
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let mut matrices = Vec::with_capacity(n);
    for i in 0..n {
        let mut rows = vec![vec![RationalFunction::zero(n); rank]; rank];
        for (r, s) in std.iter().enumerate() {
            let mut e = vec![0u32; n];
            e[i] = 1;
            let target = mono_add(s, &e);
            let mut op = RationalOperator::zero(n);
            op.add_term(target, RationalFunction::one(n));
            let nf = gb.reduce(&op);
            for (m, c) in nf.terms() {
                let col = *index
                    .get(m)
                    .expect("normal form supported on standard monomials");
                rows[r][col] = c.clone();
            }
        }
        matrices.push(rows);
    }
    Ok(PfaffianSystem {
        nvars: n,
        rank,
        basis: std,
        matrices,
    })
}

impl PfaffianSystem {
    /// Exact integrability: d_i(A_j) - d_j(A_i) = A_i A_j - A_j A_i.
    pub fn is_integrable(&self) -> bool {
        for i in 0..self.nvars {
            for j in i + 1..self.nvars {
                let lhs = mat_sub(
                    &mat_derive(&self.matrices[j], i),
                    &mat_derive(&self.matrices[i], j),
                );
                let rhs = mat_sub(
                    &mat_mul(&self.matrices[i], &self.matrices[j]),
                    &mat_mul(&self.matrices[j], &self.matrices[i]),
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

pub type RfMatrix = Vec<Vec<RationalFunction>>;

pub fn mat_mul(a: &RfMatrix, b: &RfMatrix) -> RfMatrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let nv = a[0][0].nvars();
    let mut out = vec![vec![RationalFunction::zero(nv); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = RationalFunction::zero(nv);
            for l in 0..k {
                acc = acc.add(&a[i][l].mul(&b[l][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_sub(a: &RfMatrix, b: &RfMatrix) -> RfMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

pub fn mat_derive(a: &RfMatrix, v: usize) -> RfMatrix {
    a.iter()
        .map(|r| r.iter().map(|x| x.derivative(v)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_i64;
    use crate::testsupport::{elem_irr, gkz_regular, gkz_confluent};

    #[test]
    fn rational_function_normal_form() {
        // (2x^2 - 2)/(4x + 4) reduces to (x - 1)/2 with monic denominator
        let n = 1;
        let x = MultiPoly::var(n, 0);
        let num = x.pow(2).mul_scalar(&rat_i64(2)).sub(&MultiPoly::constant(n, rat_i64(2)));
        let den = x.mul_scalar(&rat_i64(4)).add(&MultiPoly::constant(n, rat_i64(4)));
        let f = RationalFunction::new(num, den);
        let g = RationalFunction::new(
            x.sub(&MultiPoly::one(n)),
            MultiPoly::constant(n, rat_i64(2)),
        );
        assert_eq!(f, g);
    }

    #[test]
    fn monic_euler_basis() {
        // <x d - 1> normalizes to {d - 1/x}
        let p = WeylElement::x(1, 0)
            .mul(&WeylElement::d(1, 0))
            .sub(&WeylElement::one(1));
        let gb = rational_weyl_gb(&DIdeal::new(1, vec![p]), &Budget::new()).unwrap();
        assert_eq!(gb.monic.len(), 1);
        let op = &gb.monic[0];
        let x = MultiPoly::var(1, 0);
        assert_eq!(op.coeff(&[1]), RationalFunction::one(1));
        assert_eq!(
            op.coeff(&[0]),
            RationalFunction::new(MultiPoly::constant(1, rat_i64(-1)), x)
        );
    }

    #[test]
    fn constants_system() {
        let ideal = DIdeal::new(2, vec![WeylElement::d(2, 0), WeylElement::d(2, 1)]);
        let gb = rational_weyl_gb(&ideal, &Budget::new()).unwrap();
        assert_eq!(gb.leads, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(
            holonomic_rank(&ideal, &Budget::new()).unwrap(),
            RankResult::Finite(1)
        );
    }

    #[test]
    fn rank_of_log_example() {
        // <x d^2 + d>: standard monomials {1, d}, rank 2
        let p = WeylElement::x(1, 0)
            .mul(&WeylElement::d(1, 0).pow(2))
            .add(&WeylElement::d(1, 0));
        let ideal = DIdeal::new(1, vec![p]);
        assert_eq!(
            holonomic_rank(&ideal, &Budget::new()).unwrap(),
            RankResult::Finite(2)
        );
    }

    #[test]
    fn rank_of_corpus_ideals() {
        assert_eq!(
            holonomic_rank(&gkz_regular(), &Budget::new()).unwrap(),
            RankResult::Finite(2)
        );
        assert_eq!(
            holonomic_rank(&gkz_confluent(), &Budget::new()).unwrap(),
            RankResult::Finite(2)
        );
        assert_eq!(
            holonomic_rank(&elem_irr(), &Budget::new()).unwrap(),
            RankResult::Finite(1)
        );
    }

    #[test]
    fn rank_principal_equals_degree() {
        // scalar operator of d-degree r has rank r
        let x = WeylElement::x(1, 0);
        let d = WeylElement::d(1, 0);
        let p = x
            .pow(3)
            .mul(&d.pow(3))
            .add(&x.mul(&d).mul_scalar(&rat_i64(5)))
            .add(&WeylElement::one(1));
        assert_eq!(
            holonomic_rank(&DIdeal::new(1, vec![p]), &Budget::new()).unwrap(),
            RankResult::Finite(3)
        );
    }

    #[test]
    fn infinite_rank_detected() {
        // <x1 d1> in two variables: no pure power of d2 leads
        let p = WeylElement::x(2, 0).mul(&WeylElement::d(2, 0));
        assert_eq!(
            holonomic_rank(&DIdeal::new(2, vec![p]), &Budget::new()).unwrap(),
            RankResult::Infinite
        );
    }

    #[test]
    fn pfaffian_exponential() {
        // <d - 1>: rank 1, A = [1]
        let p = WeylElement::d(1, 0).sub(&WeylElement::one(1));
        let sys = pfaffian_system(&DIdeal::new(1, vec![p]), &Budget::new()).unwrap();
        assert_eq!(sys.rank, 1);
        assert_eq!(sys.matrices[0][0][0], RationalFunction::one(1));
    }

    #[test]
    fn pfaffian_first_order_pair() {
        // <d1 - x2, d2 - x1>: A1 = [x2], A2 = [x1], integrable
        let p = WeylElement::d(2, 0).sub(&WeylElement::x(2, 1));
        let q = WeylElement::d(2, 1).sub(&WeylElement::x(2, 0));
        let sys = pfaffian_system(&DIdeal::new(2, vec![p, q]), &Budget::new()).unwrap();
        assert_eq!(sys.rank, 1);
        assert_eq!(
            sys.matrices[0][0][0],
            RationalFunction::from_poly(MultiPoly::var(2, 1))
        );
        assert_eq!(
            sys.matrices[1][0][0],
            RationalFunction::from_poly(MultiPoly::var(2, 0))
        );
        assert!(sys.is_integrable());
    }

    #[test]
    fn pfaffian_log_example() {
        // <x d^2 + d>: basis {1, d}, A = [[0, 1], [0, -1/x]]
        let p = WeylElement::x(1, 0)
            .mul(&WeylElement::d(1, 0).pow(2))
            .add(&WeylElement::d(1, 0));
        let sys = pfaffian_system(&DIdeal::new(1, vec![p]), &Budget::new()).unwrap();
        assert_eq!(sys.rank, 2);
        assert_eq!(sys.basis, vec![vec![0], vec![1]]);
        let a = &sys.matrices[0];
        let x = MultiPoly::var(1, 0);
        assert!(a[0][0].is_zero());
        assert_eq!(a[0][1], RationalFunction::one(1));
        assert!(a[1][0].is_zero());
        assert_eq!(
            a[1][1],
            RationalFunction::new(MultiPoly::constant(1, rat_i64(-1)), x)
        );
    }

    mod props {
        use super::*;
        use crate::arith::rat;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = MultiPoly> {
            let term = (
                proptest::collection::vec(0u32..3, 2),
                (-5i64..=5, 1i64..=3),
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

            // a/b built from any blown-up representation of the same
            // fraction stores identical numerator and denominator
            #[test]
            fn normal_form_unique(a in arb_poly(), b in arb_poly(), s in arb_poly()) {
                prop_assume!(!b.is_zero() && !s.is_zero());
                let plain = RationalFunction::new(a.clone(), b.clone());
                let blown = RationalFunction::new(a.mul(&s), b.mul(&s));
                prop_assert_eq!(plain.numer(), blown.numer());
                prop_assert_eq!(plain.denom(), blown.denom());
            }

            #[test]
            fn field_inverse(a in arb_poly(), b in arb_poly()) {
                prop_assume!(!a.is_zero() && !b.is_zero());
                let f = RationalFunction::new(a, b);
                prop_assert_eq!(f.mul(&f.inv()), RationalFunction::one(2));
            }
        }
    }

    #[test]
    fn pfaffian_corpus_integrable() {
        for ideal in [gkz_regular(), gkz_confluent()] {
            let sys = pfaffian_system(&ideal, &Budget::new()).unwrap();
            assert_eq!(sys.rank, 2);
            assert!(sys.is_integrable());
        }
    }
}
