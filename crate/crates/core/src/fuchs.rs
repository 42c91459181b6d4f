//! Independent one-dimensional regularity criteria: the classical Fuchs
//! order test, the gr-rank criterion for cyclic D_1-modules, and a
//! line-restriction oracle that pulls a Pfaffian system back to a transverse
//! line and scalarizes it through a cyclic vector.
//!
//! The oracle cross-validates the main pipeline; it never produces the
//! primary verdict.

use crate::arith::{rat_i64, Rational};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::ratweyl::{
    holonomic_rank, pfaffian_system, PfaffianSystem, RankResult, RationalFunction,
};
use crate::rng::Rng;
use crate::sqfree::vanishing_order;
use crate::weyl::{DIdeal, WeylElement};
use crate::wgb::initial_ideal;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

/// A scalar ordinary differential operator sum a_i(x) d^i with univariate
/// rational-function coefficients and a_r != 0.
#[derive(Debug, Clone)]
pub struct ScalarOde {
    coeffs: Vec<RationalFunction>, // index i holds a_i
}

impl ScalarOde {
    pub fn new(coeffs: Vec<RationalFunction>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        assert!(
            coeffs.last().is_some_and(|c| !c.is_zero()),
            "zero operator"
        );
        ScalarOde { coeffs }
    }

    pub fn from_weyl(p: &WeylElement) -> Self {
        assert_eq!(p.nvars(), 1);
        assert!(!p.is_zero());
        let by_d = p.coeffs_by_d();
        let order = by_d.keys().map(|m| m[0]).max().unwrap() as usize;
        let mut coeffs = vec![RationalFunction::zero(1); order + 1];
        for (m, c) in by_d {
            coeffs[m[0] as usize] = RationalFunction::from_poly(c);
        }
        ScalarOde::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &RationalFunction {
        &self.coeffs[i]
    }

    /// Clears denominators to a D_1 element with coprime polynomial
    /// coefficients.
    pub fn clear_to_weyl(&self) -> WeylElement {
        let mut den = MultiPoly::one(1);
        for c in &self.coeffs {
            let g = crate::multipoly::gcd(&den, c.denom());
            den = den.mul(&c.denom().exact_div(&g).expect("gcd divides"));
        }
        let mut out = WeylElement::zero(1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let poly = c
                .numer()
                .mul(&den.exact_div(c.denom()).expect("common denominator"));
            for (m, k) in poly.terms() {
                out.add_term(vec![m[0], i as u32], k.clone());
            }
        }
        out.primitive_part()
    }
}

/// Order of a univariate rational function at a point: vanishing order of
/// the numerator minus that of the denominator; None for the zero function.
pub fn order_at(f: &RationalFunction, p: &Rational) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    let vn = vanishing_order(f.numer(), p) as i64;
    let vd = vanishing_order(f.denom(), p) as i64;
    Some(vn - vd)
}

/// The classical Fuchs criterion at x = p:
/// ord_p(a_i / a_r) >= -(r - i) for every i, zero coefficients passing
/// vacuously.
pub fn fuchs_order_test(ode: &ScalarOde, p: &Rational) -> bool {
    let r = ode.order();
    let ar = ode.coeff(r);
    for i in 0..r {
        let ai = ode.coeff(i);
        if ai.is_zero() {
            continue;
        }
        let ord = order_at(&ai.div(ar), p).unwrap();
        if ord < -((r - i) as i64) {
            return false;
        }
    }
    true
}

/// The gr-rank criterion for the cyclic module D_1 / D_1 P at 0:
/// regular exactly when the rank survives the weight-(1) deformation.
pub fn gr_rank_1d(ode: &ScalarOde, budget: &Budget) -> Result<(usize, bool)> {
    let p = ode.clear_to_weyl();
    let ideal = DIdeal::new(1, vec![p]);
    let rank = match holonomic_rank(&ideal, budget)? {
        RankResult::Finite(r) => r,
        RankResult::Infinite => return Err(Error::NotFiniteRank),
    };
    let init = initial_ideal(&ideal, &[rat_i64(1)], budget)?;
    let gr = match holonomic_rank(&init, budget)? {
        RankResult::Finite(r) => r,
        RankResult::Infinite => return Err(Error::NotFiniteRank),
    };
    Ok((gr, gr == rank))
}

/// A Pfaffian system restricted to the line x = p + t v.
#[derive(Debug, Clone)]
pub struct LineRestriction {
    pub base: Vec<Rational>,
    pub direction: Vec<Rational>,
    /// r x r matrix over Q(t): A(t) = sum_i v_i A_i(p + t v).
    pub matrix: Vec<Vec<RationalFunction>>,
}

pub fn restrict_to_line(
    system: &PfaffianSystem,
    p: &[Rational],
    v: &[Rational],
) -> Result<LineRestriction> {
    assert_eq!(p.len(), system.nvars);
    assert_eq!(v.len(), system.nvars);
    assert!(v.iter().any(|c| !c.is_zero()), "zero direction");
    let r = system.rank;
    let mut matrix = vec![vec![RationalFunction::zero(1); r]; r];
    for (i, ai) in system.matrices.iter().enumerate() {
        if v[i].is_zero() {
            continue;
        }
        for (row, arow) in ai.iter().enumerate() {
            for (col, entry) in arow.iter().enumerate() {
                let restricted = entry.eval_line(p, v).ok_or(Error::LineInPolarLocus)?;
                matrix[row][col] =
                    matrix[row][col].add(&restricted.mul_scalar(&v[i]));
            }
        }
    }
    Ok(LineRestriction {
        base: p.to_vec(),
        direction: v.to_vec(),
        matrix,
    })
}

/// Scalarizes a first-order system through a cyclic vector: tries the
/// standard basis covectors, then seeded random rational combinations.
/// The returned operator has order equal to the system rank.
pub fn cyclic_vector_scalarize(line: &LineRestriction, seed: u64) -> Result<ScalarOde> {
    let r = line.matrix.len();
    assert!(r >= 1);
    let mut rng = Rng::derive(seed, "cyclic-vector", 0);
    let budget = r + 24;
    for attempt in 0..budget {
        let c: Vec<RationalFunction> = if attempt < r {
            (0..r)
                .map(|j| {
                    if j == attempt {
                        RationalFunction::one(1)
                    } else {
                        RationalFunction::zero(1)
                    }
                })
                .collect()
        } else {
            (0..r)
                .map(|_| RationalFunction::constant(1, rng.rational(5)))
                .collect()
        };
        if let Some(ode) = try_cyclic(&line.matrix, &c) {
            return Ok(ode);
        }
    }
    Err(Error::CyclicVectorBudget)
}

/// Iterated derivatives c_{k+1} = c_k' + c_k A; when c_0..c_{r-1} are
/// independent over Q(t), solve c_r = sum gamma_k c_k.
fn try_cyclic(a: &[Vec<RationalFunction>], c0: &[RationalFunction]) -> Option<ScalarOde> {
    let r = a.len();
    let mut rows: Vec<Vec<RationalFunction>> = Vec::with_capacity(r + 1);
    rows.push(c0.to_vec());
    for _ in 0..r {
        let prev = rows.last().unwrap();
        let mut next: Vec<RationalFunction> = Vec::with_capacity(r);
        for j in 0..r {
            let mut acc = prev[j].derivative(0);
            for (i, p) in prev.iter().enumerate() {
                acc = acc.add(&p.mul(&a[i][j]));
            }
            next.push(acc);
        }
        rows.push(next);
    }
    // solve gamma . W = c_r where W has rows c_0..c_{r-1}
    let mut aug: Vec<Vec<RationalFunction>> = (0..r)
        .map(|k| {
            let mut row: Vec<RationalFunction> = (0..r).map(|j| rows[j][k].clone()).collect();
            row.push(rows[r][k].clone());
            row
        })
        .collect();
    // Gaussian elimination over Q(t); the matrix must be invertible for
    // the candidate to be cyclic, so every pivot sits on the diagonal
    for col in 0..r {
        let piv = (col..r).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(col, piv);
        let inv = aug[col][col].inv();
        for j in col..=r {
            aug[col][j] = aug[col][j].mul(&inv);
        }
        for i in 0..r {
            if i != col && !aug[i][col].is_zero() {
                let factor = aug[i][col].clone();
                for j in col..=r {
                    let sub = aug[col][j].mul(&factor);
                    aug[i][j] = aug[i][j].sub(&sub);
                }
            }
        }
    }
    let gamma: Vec<RationalFunction> = (0..r).map(|row| aug[row][r].clone()).collect();
    // P = d^r - sum gamma_k d^k
    let mut coeffs: Vec<RationalFunction> = gamma.into_iter().map(|g| g.neg()).collect();
    coeffs.push(RationalFunction::one(1));
    Some(ScalarOde::new(coeffs))
}

/// A direction transverse to the component at p: v with v . grad f(p) != 0,
/// trying coordinate directions first, then seeded random ones.
pub fn transverse_direction(
    component: &MultiPoly,
    p: &[Rational],
    seed: u64,
) -> Result<Vec<Rational>> {
    let n = component.nvars();
    let grad: Vec<Rational> = (0..n)
        .map(|i| component.derivative(i).eval(p))
        .collect();
    if grad.iter().all(|g| g.is_zero()) {
        return Err(Error::Usage(
            "point is singular on its component; no transverse direction".into(),
        ));
    }
    let dot = |v: &[Rational]| -> Rational {
        v.iter()
            .zip(&grad)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    };
    for i in 0..n {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::from_integer(1.into());
        if !dot(&v).is_zero() {
            return Ok(v);
        }
    }
    let mut rng = Rng::derive(seed, "transverse", 0);
    for _ in 0..64 {
        let v: Vec<Rational> = (0..n).map(|_| rng.rational(5)).collect();
        if v.iter().any(|c| !c.is_zero()) && !dot(&v).is_zero() {
            return Ok(v);
        }
    }
    Err(Error::Usage("no transverse direction found".into()))
}

/// Restricts the Pfaffian system of the ideal to the line through p along
/// v, scalarizes, and runs the Fuchs test at t = 0. Directions hitting the
/// polar locus are retried with fresh seeded ones.
pub fn line_regularity_oracle(
    ideal: &DIdeal,
    p: &[Rational],
    v: &[Rational],
    seed: u64,
    budget: &Budget,
) -> Result<bool> {
    let system = pfaffian_system(ideal, budget)?;
    let n = ideal.nvars;
    let mut rng = Rng::derive(seed, "oracle-direction", 0);
    let mut direction = v.to_vec();
    for _ in 0..24 {
        match restrict_to_line(&system, p, &direction) {
            Ok(line) => {
                let ode = cyclic_vector_scalarize(&line, seed)?;
                return Ok(fuchs_order_test(&ode, &Rational::zero()));
            }
            Err(Error::LineInPolarLocus) => {
                direction = (0..n).map(|_| rng.rational(5)).collect();
                if direction.iter().all(|c| c.is_zero()) {
                    direction[0] = Rational::from_integer(1.into());
                }
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::LineInPolarLocus)
}
