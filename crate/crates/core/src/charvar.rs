//! Characteristic ideals and singular loci.
//!
//! The characteristic ideal lives in Q[x, xi] (cotangent coordinates appended
//! after the base coordinates) and is generated by the principal symbols of
//! an order-filtration Groebner basis. The singular locus is its projection
//! to the base after removing the zero section: saturate by the xi's,
//! eliminate them, and read off the codimension-one part from the gcd of the
//! eliminated ideal.

use crate::budget::Budget;
use crate::cgb::{self, CommutativeIdeal};
use crate::error::Result;
use crate::multipoly::{gcd, MultiPoly};
use crate::order::MonomialOrder;
use crate::sqfree::{cmp_component, squarefree_factors};
use crate::weyl::{DIdeal, WeylElement};
use crate::wgb::membership_basis;
use alloc::vec::Vec;
use num_traits::Zero;

/// Principal symbol: the top d-degree part with d_i mapped to xi_i, as a
/// polynomial in 2n commutative variables [x | xi].
pub fn principal_symbol(p: &WeylElement) -> MultiPoly {
    let n = p.nvars();
    let top = p
        .terms()
        .map(|(m, _)| m[n..].iter().sum::<u32>())
        .max()
        .expect("symbol of zero operator");
    let mut out = MultiPoly::zero(2 * n);
    for (m, c) in p.terms() {
        if m[n..].iter().sum::<u32>() == top {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// The characteristic ideal in Q[x, xi]: symbols of an order-filtration
/// Groebner basis.
pub fn characteristic_ideal(ideal: &DIdeal, budget: &Budget) -> Result<CommutativeIdeal> {
    let basis = membership_basis(ideal, budget)?;
    let mut gens: Vec<MultiPoly> = basis
        .iter()
        .map(|g| principal_symbol(g).primitive_part())
        .collect();
    gens.sort_by(|a, b| a.cmp_canonical(b));
    gens.dedup();
    Ok(CommutativeIdeal::new(2 * ideal.nvars, gens))
}

/// Codimension-one components of the singular locus (squarefree, pairwise
/// coprime, deterministically ordered) plus a flag that is set when the
/// eliminated ideal has structure beyond its hypersurface part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularLocus {
    pub codim1: Vec<MultiPoly>,
    pub may_have_deeper_components: bool,
}

pub fn singular_locus(ideal: &DIdeal, budget: &Budget) -> Result<SingularLocus> {
    let n = ideal.nvars;
    let ch = characteristic_ideal(ideal, budget)?;
    let xi: Vec<usize> = (n..2 * n).collect();
    let eliminated = cgb::saturate_and_eliminate(&ch, &xi, &xi, budget)?;
    // restrict to the base ring
    let mut keep = alloc::vec![true; 2 * n];
    for v in &xi {
        keep[*v] = false;
    }
    let gens: Vec<MultiPoly> = eliminated
        .gens
        .iter()
        .map(|g| g.restrict_vars(&keep).expect("xi variable after elimination"))
        .collect();
    if gens.is_empty() {
        // projection imposed no equation: nothing of codimension one is
        // visible, but deeper structure cannot be ruled out
        return Ok(SingularLocus {
            codim1: Vec::new(),
            may_have_deeper_components: true,
        });
    }
    if gens.len() == 1 {
        if let Some(c) = gens[0].as_constant() {
            debug_assert!(!c.is_zero());
            return Ok(SingularLocus {
                codim1: Vec::new(),
                may_have_deeper_components: false,
            });
        }
    }
    let mut hyper = MultiPoly::zero(n);
    for g in &gens {
        hyper = gcd(&hyper, g);
    }
    let (mut codim1, reduced_hyper) = if hyper.as_constant().is_some() {
        (Vec::new(), None)
    } else {
        let factors = squarefree_factors(&hyper)?;
        let mut product = MultiPoly::one(n);
        let mut comps = Vec::with_capacity(factors.len());
        for (f, _) in factors {
            product = product.mul(&f);
            comps.push(f);
        }
        (comps, Some(product))
    };
    // flag: the eliminated ideal is strictly smaller than the principal
    // ideal of the reduced hypersurface (extra structure from deeper
    // strata or from multiplicity along a component)
    let order = MonomialOrder::degrevlex(n);
    let gb = cgb::groebner(&gens, &order, budget)?;
    let flag = match &reduced_hyper {
        None => true,
        Some(h) => !cgb::reduces_to_zero(h, &gb, &order, budget),
    };
    codim1.sort_by(cmp_component);
    Ok(SingularLocus {
        codim1,
        may_have_deeper_components: flag,
    })
}
