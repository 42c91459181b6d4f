//! Canonical text forms: rationals as p/q, polynomials and operators in
//! degrevlex-descending term order, all in the .dreg expression grammar so
//! printed generators reparse to identical elements.

use dreg_core::arith::Rational;
use dreg_core::multipoly::MultiPoly;
use dreg_core::order::{Mono, MonomialOrder};
use dreg_core::weyl::WeylElement;
use num_traits::{One, Signed};

pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_point(p: &[Rational]) -> Vec<String> {
    p.iter().map(fmt_rational).collect()
}

fn push_factors(parts: &mut Vec<String>, name: &str, exps: &[u32], offset: usize) {
    for (i, &e) in exps.iter().enumerate() {
        let _ = offset;
        if e == 1 {
            parts.push(format!("{name}{}", i + 1));
        } else if e > 1 {
            parts.push(format!("{name}{}^{}", i + 1, e));
        }
    }
}

fn fmt_terms(terms: Vec<(Mono, Rational, usize)>) -> String {
    // terms arrive sorted descending; nvars passed per term for splitting
    let mut out = String::new();
    for (idx, (mono, coeff, nvars)) in terms.iter().enumerate() {
        let mut parts: Vec<String> = Vec::new();
        let (xpart, dpart) = mono.split_at(*nvars);
        push_factors(&mut parts, "x", xpart, 0);
        push_factors(&mut parts, "dx", dpart, *nvars);
        let abs = coeff.abs();
        let body = if parts.is_empty() {
            fmt_rational(&abs)
        } else if abs.is_one() {
            parts.join("*")
        } else {
            format!("{}*{}", fmt_rational(&abs), parts.join("*"))
        };
        if idx == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if coeff.is_negative() { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn fmt_poly(f: &MultiPoly) -> String {
    let n = f.nvars();
    let order = MonomialOrder::degrevlex(n);
    let mut terms: Vec<(Mono, Rational, usize)> = f
        .terms()
        .map(|(m, c)| (m.clone(), c.clone(), n))
        .collect();
    terms.sort_by(|(a, _, _), (b, _, _)| order.cmp(b, a));
    fmt_terms(terms)
}

pub fn fmt_weyl(op: &WeylElement) -> String {
    let n = op.nvars();
    let order = MonomialOrder::degrevlex(2 * n);
    let mut terms: Vec<(Mono, Rational, usize)> = op
        .terms()
        .map(|(m, c)| (m.clone(), c.clone(), n))
        .collect();
    terms.sort_by(|(a, _, _), (b, _, _)| order.cmp(b, a));
    fmt_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_problem;
    use dreg_core::arith::{rat, rat_i64};

    #[test]
    fn poly_formatting() {
        // x2^2 - 4 x1 x3
        let f = MultiPoly::var(3, 1).pow(2).sub(
            &MultiPoly::var(3, 0)
                .mul(&MultiPoly::var(3, 2))
                .mul_scalar(&rat_i64(4)),
        );
        assert_eq!(fmt_poly(&f), "x2^2 - 4*x1*x3");
        assert_eq!(fmt_poly(&MultiPoly::zero(2)), "0");
        assert_eq!(
            fmt_poly(&MultiPoly::constant(1, rat(-3, 4))),
            "-3/4"
        );
    }

    #[test]
    fn weyl_formatting_round_trip() {
        let op = WeylElement::x(3, 0)
            .mul(&WeylElement::d(3, 0).pow(2))
            .add(&WeylElement::d(3, 0))
            .sub(&WeylElement::constant(3, rat(1, 4)));
        let text = format!("vars 3; {};", fmt_weyl(&op));
        let pf = parse_problem(&text).unwrap();
        assert_eq!(pf.gens[0], op);
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(fmt_rational(&rat(1, 2)), "1/2");
        assert_eq!(fmt_rational(&rat_i64(-7)), "-7");
        assert_eq!(fmt_rational(&rat(-3, 9)), "-1/3");
    }
}
