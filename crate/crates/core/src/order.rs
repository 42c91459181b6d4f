//! Monomial orders encoded uniformly as weight-matrix orders.
//!
//! An order is a list of integer weight rows compared in turn, refined by a
//! final lex or reverse-lex tiebreak. Degrevlex is one all-ones row with the
//! reverse-lex tiebreak; lex is the bare lex tiebreak; block elimination
//! orders prepend the indicator row of the eliminated block.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

pub type Mono = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tie {
    Lex,
    RevLex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    nvars: usize,
    rows: Vec<Vec<i64>>,
    tie: Tie,
}

impl MonomialOrder {
    pub fn new(nvars: usize, rows: Vec<Vec<i64>>, tie: Tie) -> Self {
        for r in &rows {
            assert_eq!(r.len(), nvars, "weight row length mismatch");
        }
        MonomialOrder { nvars, rows, tie }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Graded reverse lexicographic order.
    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder::new(nvars, vec![vec![1; nvars]], Tie::RevLex)
    }

    /// Pure lexicographic order, first variable heaviest.
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder::new(nvars, vec![], Tie::Lex)
    }

    /// Block elimination order: monomials containing a marked variable beat
    /// all monomials in the remaining block; degrevlex inside.
    pub fn elim(mask: &[bool]) -> Self {
        let nvars = mask.len();
        let block: Vec<i64> = mask.iter().map(|&b| if b { 1 } else { 0 }).collect();
        MonomialOrder::new(nvars, vec![block, vec![1; nvars]], Tie::RevLex)
    }

    /// A weight row refined by degrevlex. Valid as a term order only when
    /// the resulting comparison is positive on every variable; callers that
    /// need a graded guarantee prepend the all-ones row themselves.
    pub fn weighted(weight: Vec<i64>, graded: bool) -> Self {
        let nvars = weight.len();
        let mut rows = Vec::new();
        if graded {
            rows.push(vec![1; nvars]);
        }
        rows.push(weight);
        rows.push(vec![1; nvars]);
        MonomialOrder::new(nvars, rows, Tie::RevLex)
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), self.nvars);
        debug_assert_eq!(b.len(), self.nvars);
        for row in &self.rows {
            let mut acc: i128 = 0;
            for i in 0..self.nvars {
                acc += row[i] as i128 * (a[i] as i128 - b[i] as i128);
            }
            match acc.cmp(&0) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.tie {
            Tie::Lex => {
                for i in 0..self.nvars {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            Tie::RevLex => {
                for i in (0..self.nvars).rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => {}
                        // smaller exponent in the last differing slot wins
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn max<'m, I: Iterator<Item = &'m Mono>>(&self, monos: I) -> Option<&'m Mono> {
        monos.max_by(|a, b| self.cmp(a, b))
    }
}

pub fn mono_add(a: &[u32], b: &[u32]) -> Mono {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
        .collect()
}

pub fn mono_sub(a: &[u32], b: &[u32]) -> Option<Mono> {
    let mut out = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return None;
        }
        out.push(x - y);
    }
    Some(out)
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_total_degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

pub fn mono_is_one(a: &[u32]) -> bool {
    a.iter().all(|&e| e == 0)
}

pub fn mono_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_standard() {
        // x^2 y > x y^2 in degrevlex with x = var 0
        let o = MonomialOrder::degrevlex(2);
        assert_eq!(o.cmp(&[2, 1], &[1, 2]), Ordering::Greater);
        // degree dominates
        assert_eq!(o.cmp(&[0, 3], &[2, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1], &[1, 1]), Ordering::Equal);
    }

    #[test]
    fn lex_standard() {
        let o = MonomialOrder::lex(2);
        assert_eq!(o.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
    }

    #[test]
    fn elim_block_dominates() {
        // eliminate variable 0: any power of it beats anything without it
        let o = MonomialOrder::elim(&[true, false]);
        assert_eq!(o.cmp(&[1, 0], &[0, 9]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2], &[0, 1]), Ordering::Greater);
    }

    #[test]
    fn degrevlex_three_vars() {
        // classic: x z vs y^2 in degrevlex(x, y, z): xz < y^2
        let o = MonomialOrder::degrevlex(3);
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
    }
}
