//! Commutative Groebner bases: Buchberger with normal-strategy selection and
//! Gebauer-Moller pair pruning, plus elimination, saturation and ideal
//! intersection built on top.

use crate::budget::Budget;
use crate::error::Result;
use crate::gb::GbArith;
use crate::multipoly::MultiPoly;
use crate::order::{mono_divides, mono_sub, Mono, MonomialOrder};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::One;

/// A finitely generated ideal of a commutative polynomial ring over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeIdeal {
    pub nvars: usize,
    pub gens: Vec<MultiPoly>,
}

impl CommutativeIdeal {
    pub fn new(nvars: usize, gens: Vec<MultiPoly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        CommutativeIdeal { nvars, gens }
    }
}

/// Full normal form of `f` modulo `basis`: no term of the result is
/// divisible by any basis leading monomial. The result is made primitive
/// after reduction to control coefficient growth; `unit_free` callers that
/// need the true normal form (e.g. membership tests) only care about zero
/// versus nonzero, which is unaffected.
pub fn normal_form(
    f: &MultiPoly,
    basis: &[MultiPoly],
    order: &MonomialOrder,
    budget: &Budget,
) -> MultiPoly {
    let lts: Vec<(Mono, crate::arith::Rational)> = basis
        .iter()
        .map(|g| {
            let (m, c) = g.lt(order).expect("basis elements are nonzero");
            (m.clone(), c.clone())
        })
        .collect();
    let mut work = f.clone();
    let mut out = MultiPoly::zero(f.nvars());
    'outer: while !work.is_zero() {
        budget.tick_reduction();
        let (wm, wc) = work.lt(order).unwrap();
        let wm = wm.clone();
        let wc = wc.clone();
        for (i, (gm, gc)) in lts.iter().enumerate() {
            if mono_divides(gm, &wm) {
                let shift = mono_sub(&wm, gm).unwrap();
                let c = &wc / gc;
                work = work.sub(&basis[i].mul_mono(&shift, &c));
                continue 'outer;
            }
        }
        out.add_term(wm.clone(), wc.clone());
        let mut lead = MultiPoly::zero(f.nvars());
        lead.add_term(wm, wc);
        work = work.sub(&lead);
    }
    out
}

pub fn reduces_to_zero(
    f: &MultiPoly,
    basis: &[MultiPoly],
    order: &MonomialOrder,
    budget: &Budget,
) -> bool {
    normal_form(f, basis, order, budget).is_zero()
}

/// The commutative polynomial ring with a fixed order, as a Buchberger ring.
struct PolyRing<'o> {
    order: &'o MonomialOrder,
}

impl<'o> GbArith for PolyRing<'o> {
    type Elem = MultiPoly;

    fn is_zero(&self, e: &MultiPoly) -> bool {
        e.is_zero()
    }

    fn lm(&self, e: &MultiPoly) -> Mono {
        e.lt(self.order).unwrap().0.clone()
    }

    fn normal_form(&self, f: &MultiPoly, basis: &[MultiPoly], budget: &Budget) -> MultiPoly {
        normal_form(f, basis, self.order, budget).primitive_part()
    }

    fn s_pair(&self, f: &MultiPoly, g: &MultiPoly, lcm: &Mono) -> MultiPoly {
        let (fm, fc) = f.lt(self.order).unwrap();
        let (gm, gc) = g.lt(self.order).unwrap();
        let a = mono_sub(lcm, fm).unwrap();
        let b = mono_sub(lcm, gm).unwrap();
        let left = f.mul_mono(&a, &(crate::arith::Rational::one() / fc));
        let right = g.mul_mono(&b, &(crate::arith::Rational::one() / gc));
        left.sub(&right)
    }

    fn product_criterion(&self) -> bool {
        true
    }

    fn cmp_mono(&self, a: &[u32], b: &[u32]) -> core::cmp::Ordering {
        self.order.cmp(a, b)
    }
}

/// Buchberger's algorithm returning a reduced Groebner basis: minimal,
/// fully interreduced, monic, sorted ascending by leading monomial.
/// The empty generator list yields the empty basis (the zero ideal).
pub fn groebner(
    gens: &[MultiPoly],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<MultiPoly>> {
    let ring = PolyRing { order };
    let basis = crate::gb::buchberger(&ring, gens, budget, "commutative groebner")?;
    Ok(reduce_basis(basis, order, budget))
}

/// Minimalizes and interreduces a Groebner basis; output is monic and
/// sorted ascending by leading monomial.
fn reduce_basis(
    mut basis: Vec<MultiPoly>,
    order: &MonomialOrder,
    budget: &Budget,
) -> Vec<MultiPoly> {
    // minimal: drop any element whose lt is divisible by another's
    basis.sort_by(|a, b| order.cmp(a.lt(order).unwrap().0, b.lt(order).unwrap().0));
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for g in basis {
        let gm = g.lt(order).unwrap().0.clone();
        if !minimal
            .iter()
            .any(|h| mono_divides(h.lt(order).unwrap().0, &gm))
        {
            minimal.push(g);
        }
    }
    // interreduce tails
    let n = minimal.len();
    let mut out: Vec<MultiPoly> = Vec::with_capacity(n);
    for i in 0..n {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let red = normal_form(&minimal[i], &others, order, budget);
        debug_assert!(!red.is_zero());
        let (_, lc) = red.lt(order).unwrap();
        let inv = crate::arith::Rational::one() / lc.clone();
        out.push(red.mul_scalar(&inv));
    }
    out.sort_by(|a, b| order.cmp(a.lt(order).unwrap().0, b.lt(order).unwrap().0));
    out
}

/// Soundness check: every input generator and every S-pair of the basis
/// reduces to zero against the basis.
pub fn is_groebner_for(
    basis: &[MultiPoly],
    gens: &[MultiPoly],
    order: &MonomialOrder,
    budget: &Budget,
) -> bool {
    if basis.is_empty() {
        return gens.iter().all(|g| g.is_zero());
    }
    for g in gens {
        if !reduces_to_zero(g, basis, order, budget) {
            return false;
        }
    }
    let ring = PolyRing { order };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = crate::order::mono_lcm(
                basis[i].lt(order).unwrap().0,
                basis[j].lt(order).unwrap().0,
            );
            let s = ring.s_pair(&basis[i], &basis[j], &lcm);
            if !reduces_to_zero(&s, basis, order, budget) {
                return false;
            }
        }
    }
    true
}

/// Elimination: Groebner basis elements free of the masked variables,
/// computed under a block order. Generators stay in the full variable ring.
pub fn eliminate(
    ideal: &CommutativeIdeal,
    drop: &[bool],
    budget: &Budget,
) -> Result<CommutativeIdeal> {
    assert_eq!(drop.len(), ideal.nvars);
    let order = MonomialOrder::elim(drop);
    let gb = groebner(&ideal.gens, &order, budget)?;
    let kept: Vec<MultiPoly> = gb
        .into_iter()
        .filter(|g| {
            g.terms()
                .all(|(m, _)| m.iter().zip(drop).all(|(&e, &d)| !d || e == 0))
        })
        .collect();
    Ok(CommutativeIdeal::new(ideal.nvars, kept))
}

/// Saturation (I : f^infinity) via the Rabinowitsch trick with one extra
/// variable appended on the right.
pub fn saturate_one(
    ideal: &CommutativeIdeal,
    f: &MultiPoly,
    budget: &Budget,
) -> Result<CommutativeIdeal> {
    assert!(!f.is_zero());
    let n = ideal.nvars;
    let mut gens: Vec<MultiPoly> = ideal.gens.iter().map(|g| g.extend_vars(n + 1)).collect();
    // 1 - t f
    let t = MultiPoly::var(n + 1, n);
    gens.push(MultiPoly::one(n + 1).sub(&t.mul(&f.extend_vars(n + 1))));
    let mut drop = vec![false; n + 1];
    drop[n] = true;
    let elim = eliminate(&CommutativeIdeal::new(n + 1, gens), &drop, budget)?;
    let keep = vec![true; n];
    let gens = elim
        .gens
        .iter()
        .map(|g| {
            let mut mask = keep.clone();
            mask.push(false);
            g.restrict_vars(&mask).expect("eliminated variable present")
        })
        .collect();
    Ok(CommutativeIdeal::new(n, gens))
}

/// Ideal intersection via t A + (1 - t) B and elimination of t.
pub fn intersect(
    a: &CommutativeIdeal,
    b: &CommutativeIdeal,
    budget: &Budget,
) -> Result<CommutativeIdeal> {
    assert_eq!(a.nvars, b.nvars);
    let n = a.nvars;
    let t = MultiPoly::var(n + 1, n);
    let one_minus_t = MultiPoly::one(n + 1).sub(&t);
    let mut gens: Vec<MultiPoly> = a
        .gens
        .iter()
        .map(|g| g.extend_vars(n + 1).mul(&t))
        .collect();
    gens.extend(b.gens.iter().map(|g| g.extend_vars(n + 1).mul(&one_minus_t)));
    let mut drop = vec![false; n + 1];
    drop[n] = true;
    let elim = eliminate(&CommutativeIdeal::new(n + 1, gens), &drop, budget)?;
    let gens = elim
        .gens
        .iter()
        .map(|g| {
            let mut mask = vec![true; n];
            mask.push(false);
            g.restrict_vars(&mask).expect("eliminated variable present")
        })
        .collect();
    Ok(CommutativeIdeal::new(n, gens))
}

/// Saturation by the ideal generated by the named variables, then
/// elimination of another set of variables. Returns generators of
/// (ideal : <sat_vars>^infinity) intersected with the subring without the
/// eliminated variables (still presented in the full ring).
pub fn saturate_and_eliminate(
    ideal: &CommutativeIdeal,
    sat_vars: &[usize],
    elim_vars: &[usize],
    budget: &Budget,
) -> Result<CommutativeIdeal> {
    let n = ideal.nvars;
    let mut acc: Option<CommutativeIdeal> = None;
    if sat_vars.is_empty() {
        acc = Some(ideal.clone());
    }
    for &v in sat_vars {
        let sat = saturate_one(ideal, &MultiPoly::var(n, v), budget)?;
        acc = Some(match acc {
            None => sat,
            Some(prev) => intersect(&prev, &sat, budget)?,
        });
    }
    let sat = acc.unwrap();
    let mut drop = vec![false; n];
    for &v in elim_vars {
        drop[v] = true;
    }
    eliminate(&sat, &drop, budget)
}
