//! Shared test fixtures: the hypergeometric and exponential ideals used as
//! the regression corpus.

use crate::arith::{rat, Rational};
use crate::weyl::{DIdeal, WeylElement};
use alloc::vec;

fn x(i: usize) -> WeylElement {
    WeylElement::x(3, i)
}

fn d(i: usize) -> WeylElement {
    WeylElement::d(3, i)
}

fn c(r: Rational) -> WeylElement {
    WeylElement::constant(3, r)
}

/// A-hypergeometric system for A = [[1,1,1],[0,1,2]], beta = (1/4, 1/4):
/// a regular rank-2 system with singular locus x1 x3 (x2^2 - 4 x1 x3).
pub fn gkz_regular() -> DIdeal {
    let g1 = d(1).pow(2).sub(&d(0).mul(&d(2)));
    let euler1 = x(0)
        .mul(&d(0))
        .add(&x(1).mul(&d(1)))
        .add(&x(2).mul(&d(2)))
        .sub(&c(rat(1, 4)));
    let euler2 = x(1)
        .mul(&d(1))
        .add(&x(2).mul(&d(2)).mul_scalar(&rat(2, 1)))
        .sub(&c(rat(1, 4)));
    DIdeal::new(3, vec![g1, euler1, euler2])
}

/// A-hypergeometric system for A = [[1,1,0],[0,1,1]], beta = (1/4, 1/4):
/// an irregular rank-2 system, irregular exactly along x2 = 0.
pub fn gkz_confluent() -> DIdeal {
    let g1 = d(1).sub(&d(0).mul(&d(2)));
    let euler1 = x(0).mul(&d(0)).add(&x(1).mul(&d(1))).sub(&c(rat(1, 4)));
    let euler2 = x(1).mul(&d(1)).add(&x(2).mul(&d(2))).sub(&c(rat(1, 4)));
    DIdeal::new(3, vec![g1, euler1, euler2])
}

/// The initial ideal of `gkz_regular` translated to (0,1,1) under weight (1,1,1):
/// <d2, d3, x1 d1^2 + d1>.
pub fn gkz_regular_expected_initial() -> DIdeal {
    let g3 = x(0).mul(&d(0).pow(2)).add(&d(0));
    DIdeal::new(3, vec![d(1), d(2), g3])
}

/// The elementary irregular connection e^{1/x1} on the plane:
/// <x1^2 d1 + 1, d2>, rank 1, irregular along x1 = 0.
pub fn elem_irr() -> DIdeal {
    let g1 = WeylElement::x(2, 0)
        .pow(2)
        .mul(&WeylElement::d(2, 0))
        .add(&WeylElement::one(2));
    DIdeal::new(2, vec![g1, WeylElement::d(2, 1)])
}
