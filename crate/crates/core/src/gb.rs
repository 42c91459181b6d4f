//! Generic Buchberger loop shared by the commutative ring, the homogenized
//! Weyl algebra, the order-filtration Weyl order and the rational Weyl
//! algebra.
//!
//! Pair selection is the normal strategy (smallest lcm first) and pruning is
//! Gebauer-Moller. The coprimality criterion is only sound when leading
//! terms of products never interact through commutators, so noncommutative
//! rings disable it and rely on the chain criteria alone.

use crate::budget::Budget;
use crate::error::Result;
use crate::order::{mono_coprime, mono_divides, mono_lcm, Mono};
use alloc::vec::Vec;

pub trait GbArith {
    type Elem: Clone;

    fn is_zero(&self, e: &Self::Elem) -> bool;
    /// Leading monomial as an exponent vector; `e` must be nonzero.
    fn lm(&self, e: &Self::Elem) -> Mono;
    /// Full normal form of `f` modulo `basis`, rescaled freely by units.
    fn normal_form(&self, f: &Self::Elem, basis: &[Self::Elem], budget: &Budget) -> Self::Elem;
    /// S-polynomial of `f` and `g` whose leading monomials have lcm `lcm`.
    fn s_pair(&self, f: &Self::Elem, g: &Self::Elem, lcm: &Mono) -> Self::Elem;
    /// True when S-pairs with coprime leading monomials may be skipped.
    fn product_criterion(&self) -> bool;
    /// Order used for pair selection (and leading monomials).
    fn cmp_mono(&self, a: &[u32], b: &[u32]) -> core::cmp::Ordering;
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

fn update_pairs<R: GbArith>(
    ring: &R,
    lts: &[Mono],
    pairs: Vec<Pair>,
    new_idx: usize,
) -> Vec<Pair> {
    let lt_h = &lts[new_idx];
    let mut cand: Vec<Pair> = (0..new_idx)
        .map(|i| Pair {
            i,
            j: new_idx,
            lcm: mono_lcm(&lts[i], lt_h),
        })
        .collect();

    // chain criterion among the new pairs: keep only minimal lcms, one
    // representative per lcm
    let mut keep: Vec<Pair> = Vec::new();
    'cand: while let Some(p) = cand.pop() {
        if ring.product_criterion() && mono_coprime(&lts[p.i], lt_h) {
            keep.push(p);
            continue;
        }
        for q in cand.iter().chain(keep.iter()) {
            if q.lcm != p.lcm && mono_divides(&q.lcm, &p.lcm) {
                continue 'cand;
            }
        }
        if keep.iter().any(|q| q.lcm == p.lcm) {
            continue;
        }
        keep.push(p);
    }
    if ring.product_criterion() {
        keep.retain(|p| !mono_coprime(&lts[p.i], lt_h));
    }

    // chain criterion against the new element for the old pairs
    let mut out: Vec<Pair> = pairs
        .into_iter()
        .filter(|p| {
            !mono_divides(lt_h, &p.lcm)
                || mono_lcm(&lts[p.i], lt_h) == p.lcm
                || mono_lcm(&lts[p.j], lt_h) == p.lcm
        })
        .collect();
    keep.sort_by_key(|a| a.i);
    out.extend(keep);
    out
}

/// Core Buchberger loop. Returns a (not yet reduced) Groebner basis; every
/// returned element is a normal-form survivor, so none is zero.
pub fn buchberger<R: GbArith>(
    ring: &R,
    gens: &[R::Elem],
    budget: &Budget,
    what: &str,
) -> Result<Vec<R::Elem>> {
    budget.start_call();
    let mut basis: Vec<R::Elem> = Vec::new();
    let mut lts: Vec<Mono> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for g in gens {
        if ring.is_zero(g) {
            continue;
        }
        let red = ring.normal_form(g, &basis, budget);
        if ring.is_zero(&red) {
            continue;
        }
        lts.push(ring.lm(&red));
        basis.push(red);
        pairs = update_pairs(ring, &lts, pairs, basis.len() - 1);
    }

    while !pairs.is_empty() {
        budget.tick_pair(what)?;
        let sel = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                ring.cmp_mono(&a.lcm, &b.lcm)
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)
            .unwrap();
        let p = pairs.swap_remove(sel);
        let s = ring.s_pair(&basis[p.i], &basis[p.j], &p.lcm);
        let red = ring.normal_form(&s, &basis, budget);
        if ring.is_zero(&red) {
            continue;
        }
        lts.push(ring.lm(&red));
        basis.push(red);
        pairs = update_pairs(ring, &lts, pairs, basis.len() - 1);
    }
    Ok(basis)
}

/// Drops basis elements whose leading monomial is divisible by another's;
/// ties broken toward keeping the earliest element.
pub fn minimalize<R: GbArith>(ring: &R, basis: Vec<R::Elem>) -> Vec<R::Elem> {
    let mut sorted = basis;
    sorted.sort_by(|a, b| ring.cmp_mono(&ring.lm(a), &ring.lm(b)));
    let mut out: Vec<R::Elem> = Vec::new();
    for g in sorted {
        let gm = ring.lm(&g);
        if !out.iter().any(|h| mono_divides(&ring.lm(h), &gm)) {
            out.push(g);
        }
    }
    out
}
