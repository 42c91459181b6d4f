//! Groebner bases in the Weyl algebra.
//!
//! Two kinds of orders appear. The order filtration (weight 0 on x, 1 on d)
//! refines to a genuine term order on D_n, used for membership tests and
//! characteristic ideals. Weights (-w,w) with w >= 0 are not term orders on
//! D_n, so those bases run in the homogenized algebra and come back through
//! h = 1; the initial forms of the dehomogenized basis generate the initial
//! ideal.

use crate::arith::{weight_to_integers, Rational};
use crate::budget::Budget;
use crate::error::Result;
use crate::gb::GbArith;
use crate::order::{mono_divides, mono_sub, Mono, MonomialOrder, Tie};
use crate::weyl::{DIdeal, WeylElement};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::One;

/// Term order on D_n graded by total d-degree, reverse lex tiebreak.
pub fn order_filtration_order(nvars: usize) -> MonomialOrder {
    let slots = 2 * nvars;
    let mut drow = vec![0i64; slots];
    for i in 0..nvars {
        drow[nvars + i] = 1;
    }
    MonomialOrder::new(slots, vec![drow, vec![1; slots]], Tie::RevLex)
}

pub struct WeylRing {
    pub order: MonomialOrder,
}

impl WeylRing {
    fn lt(&self, e: &WeylElement) -> (Mono, Rational) {
        let (m, c) = e
            .terms()
            .max_by(|(a, _), (b, _)| self.order.cmp(a, b))
            .expect("leading term of zero");
        (m.clone(), c.clone())
    }
}

impl GbArith for WeylRing {
    type Elem = WeylElement;

    fn is_zero(&self, e: &WeylElement) -> bool {
        e.is_zero()
    }

    fn lm(&self, e: &WeylElement) -> Mono {
        self.lt(e).0
    }

    fn normal_form(&self, f: &WeylElement, basis: &[WeylElement], budget: &Budget) -> WeylElement {
        let lts: Vec<(Mono, Rational)> = basis.iter().map(|g| self.lt(g)).collect();
        let n = f.nvars();
        let mut work = f.clone();
        let mut out = WeylElement::zero(n);
        'outer: while !work.is_zero() {
            budget.tick_reduction();
            let (wm, wc) = self.lt(&work);
            for (i, (gm, gc)) in lts.iter().enumerate() {
                if mono_divides(gm, &wm) {
                    let shift = mono_sub(&wm, gm).unwrap();
                    let c = &wc / gc;
                    let (sx, sd) = shift.split_at(n);
                    let mult = WeylElement::monomial(n, sx, sd, c);
                    work = work.sub(&mult.mul(&basis[i]));
                    continue 'outer;
                }
            }
            out.add_term(wm.clone(), wc.clone());
            work = work.sub(&WeylElement::term(n, wm, wc));
        }
        out.primitive_part()
    }

    fn s_pair(&self, f: &WeylElement, g: &WeylElement, lcm: &Mono) -> WeylElement {
        let n = f.nvars();
        let (fm, fc) = self.lt(f);
        let (gm, gc) = self.lt(g);
        let a = mono_sub(lcm, &fm).unwrap();
        let b = mono_sub(lcm, &gm).unwrap();
        let (ax, ad) = a.split_at(n);
        let (bx, bd) = b.split_at(n);
        let left = WeylElement::monomial(n, ax, ad, Rational::one() / fc).mul(f);
        let right = WeylElement::monomial(n, bx, bd, Rational::one() / gc).mul(g);
        left.sub(&right)
    }

    fn product_criterion(&self) -> bool {
        false
    }

    fn cmp_mono(&self, a: &[u32], b: &[u32]) -> core::cmp::Ordering {
        self.order.cmp(a, b)
    }
}

/// Groebner basis under the order-filtration term order; suitable for
/// membership tests. Minimal and canonically sorted.
pub fn membership_basis(ideal: &DIdeal, budget: &Budget) -> Result<Vec<WeylElement>> {
    let ring = WeylRing {
        order: order_filtration_order(ideal.nvars),
    };
    let basis = crate::gb::buchberger(&ring, &ideal.gens, budget, "weyl groebner")?;
    let mut basis = crate::gb::minimalize(&ring, basis);
    basis.sort_by(|a, b| a.cmp_canonical(b));
    Ok(basis)
}

/// True when `f` lies in the ideal presented by a membership basis.
pub fn in_ideal(f: &WeylElement, basis: &[WeylElement], budget: &Budget) -> bool {
    if f.is_zero() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let ring = WeylRing {
        order: order_filtration_order(f.nvars()),
    };
    ring.normal_form(f, basis, budget).is_zero()
}

/// Two-sided containment check through membership bases.
pub fn ideals_equal(a: &DIdeal, b: &DIdeal, budget: &Budget) -> Result<bool> {
    let ga = membership_basis(a, budget)?;
    let gb = membership_basis(b, budget)?;
    Ok(a.gens.iter().all(|f| in_ideal(f, &gb, budget))
        && b.gens.iter().all(|f| in_ideal(f, &ga, budget)))
}

/// Soundness check under the order-filtration term order: generators and
/// S-pairs of the basis reduce to zero against the basis.
pub fn is_groebner_for(
    basis: &[WeylElement],
    gens: &[WeylElement],
    budget: &Budget,
) -> bool {
    let nvars = match basis.first().or_else(|| gens.first()) {
        Some(g) => g.nvars(),
        None => return true,
    };
    if basis.is_empty() {
        return gens.iter().all(|g| g.is_zero());
    }
    let ring = WeylRing {
        order: order_filtration_order(nvars),
    };
    for g in gens {
        if !g.is_zero() && !ring.normal_form(g, basis, budget).is_zero() {
            return false;
        }
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = crate::order::mono_lcm(&ring.lm(&basis[i]), &ring.lm(&basis[j]));
            let s = ring.s_pair(&basis[i], &basis[j], &lcm);
            if s.is_zero() {
                continue;
            }
            if !ring.normal_form(&s, basis, budget).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Groebner basis of `ideal` adapted to the weight (-w,w): computed by
/// homogenizing the generators, running Buchberger in the homogenized Weyl
/// algebra, and substituting h = 1. The initial forms of the returned
/// elements generate the (-w,w)-initial ideal.
pub fn weyl_buchberger(ideal: &DIdeal, w: &[i64], budget: &Budget) -> Result<Vec<WeylElement>> {
    assert_eq!(w.len(), ideal.nvars, "weight length mismatch");
    let hbasis = crate::hweyl::homogenized_groebner(&ideal.gens, w, budget)?;
    let mut out: Vec<WeylElement> = hbasis
        .iter()
        .map(|g| g.dehomogenize().primitive_part())
        .filter(|g| !g.is_zero())
        .collect();
    out.sort_by(|a, b| a.cmp_canonical(b));
    out.dedup();
    Ok(out)
}

/// The (-w,w)-initial ideal, generated by the initial forms of a
/// weight-adapted Groebner basis. Independent of the presentation.
pub fn initial_ideal(ideal: &DIdeal, w: &[Rational], budget: &Budget) -> Result<DIdeal> {
    assert_eq!(w.len(), ideal.nvars, "weight length mismatch");
    let wi = weight_to_integers(w);
    let basis = weyl_buchberger(ideal, &wi, budget)?;
    let mut gens: Vec<WeylElement> = basis
        .iter()
        .map(|g| {
            let (_, init) = g.weight_data(w).expect("basis elements are nonzero");
            init.primitive_part()
        })
        .collect();
    gens.sort_by(|a, b| a.cmp_canonical(b));
    gens.dedup();
    Ok(DIdeal::new(ideal.nvars, gens))
}
