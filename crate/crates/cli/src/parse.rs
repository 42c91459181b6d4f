//! Parser for .dreg problem files.
//!
//! Grammar: statements separated by `;`. `vars <n>` must precede the
//! generators. Tokens are `x<i>`, `dx<i>` (1-based), integers, rationals
//! `p/q`, the operators `+ - * ^` and parentheses; unary minus is allowed;
//! juxtaposition is not multiplication; `^` binds tighter than `*` binds
//! tighter than `+`/`-`; products are read left to right and normal-ordered
//! on construction. `#` starts a line comment.
//!
//! Besides generator expressions, a statement may be one of the directives
//! `component <expr>`, `avoid <expr>`, `point <r>,...`, `weight <r>,...`,
//! `charts <k>,...`, `seed <n>`, `height <n>`, `points <n>`, `infinity`.

use dreg_core::arith::Rational;
use dreg_core::multipoly::MultiPoly;
use dreg_core::weyl::WeylElement;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Default)]
pub struct ProblemFile {
    pub nvars: usize,
    pub gens: Vec<WeylElement>,
    pub components: Vec<MultiPoly>,
    pub avoid: Vec<MultiPoly>,
    pub points: Vec<Vec<Rational>>,
    pub weights: Vec<Vec<Rational>>,
    pub seed: Option<u64>,
    pub height_bound: Option<u64>,
    pub points_per_component: Option<usize>,
    pub check_infinity: bool,
    pub charts: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Comma,
    Semi,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '#' => {
                while let Some(&c2) = chars.peek() {
                    if c2 == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&c2) = chars.peek() {
                    if c2.is_ascii_digit() {
                        digits.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                let value: BigInt = digits.parse().expect("digits");
                out.push(Spanned {
                    tok: Tok::Int(value),
                    line: tline,
                    col: tcol,
                });
            }
            'a'..='z' | 'A'..='Z' => {
                let mut name = String::new();
                while let Some(&c2) = chars.peek() {
                    if c2.is_ascii_alphanumeric() {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Ident(name),
                    line: tline,
                    col: tcol,
                });
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(ParseError {
                            line: tline,
                            col: tcol,
                            msg: format!("unexpected character '{other}'"),
                        })
                    }
                };
                bump(&mut chars);
                out.push(Spanned {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    nvars: Option<usize>,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err_here<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self
            .peek()
            .map(|s| (s.line, s.col))
            .or_else(|| self.toks.last().map(|s| (s.line, s.col + 1)))
            .unwrap_or((1, 1));
        Err(ParseError {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn expect_semi_or_end(&mut self) -> Result<(), ParseError> {
        match self.next() {
            None => Ok(()),
            Some(Spanned { tok: Tok::Semi, .. }) => Ok(()),
            Some(s) => Err(ParseError {
                line: s.line,
                col: s.col,
                msg: "expected ';'".into(),
            }),
        }
    }

    fn nvars(&self) -> Result<usize, ParseError> {
        match self.nvars {
            Some(n) => Ok(n),
            None => Err(ParseError {
                line: 1,
                col: 1,
                msg: "'vars <n>' must precede generators".into(),
            }),
        }
    }

    fn parse_usize(&mut self, what: &str) -> Result<usize, ParseError> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Int(v), ..
            }) if !v.is_negative() => v.to_usize().map_or_else(
                || self.err_here(format!("{what} out of range")),
                Ok,
            ),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.err_here(format!("expected a nonnegative integer for {what}"))
            }
        }
    }

    fn parse_rational(&mut self) -> Result<Rational, ParseError> {
        let negative = matches!(
            self.peek(),
            Some(Spanned {
                tok: Tok::Minus,
                ..
            })
        );
        if negative {
            self.next();
        }
        let numer = match self.next() {
            Some(Spanned {
                tok: Tok::Int(v), ..
            }) => v,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return self.err_here("expected an integer or rational");
            }
        };
        let mut value = Rational::from_integer(numer);
        if matches!(
            self.peek(),
            Some(Spanned {
                tok: Tok::Slash,
                ..
            })
        ) {
            self.next();
            let denom = match self.next() {
                Some(Spanned {
                    tok: Tok::Int(v), ..
                }) if !v.is_zero() => v,
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return self.err_here("expected a nonzero denominator");
                }
            };
            value = Rational::new(value.numer().clone(), denom);
        }
        if negative {
            value = -value;
        }
        Ok(value)
    }

    fn parse_rational_list(&mut self) -> Result<Vec<Rational>, ParseError> {
        let mut out = vec![self.parse_rational()?];
        while matches!(
            self.peek(),
            Some(Spanned {
                tok: Tok::Comma,
                ..
            })
        ) {
            self.next();
            out.push(self.parse_rational()?);
        }
        Ok(out)
    }

    fn variable(&mut self, name: &str, line: usize, col: usize) -> Result<WeylElement, ParseError> {
        let n = self.nvars().map_err(|mut e| {
            e.line = line;
            e.col = col;
            e
        })?;
        let (kind, digits) = if let Some(rest) = name.strip_prefix("dx") {
            ('d', rest)
        } else if let Some(rest) = name.strip_prefix('x') {
            ('x', rest)
        } else {
            return Err(ParseError {
                line,
                col,
                msg: format!("unknown identifier '{name}'"),
            });
        };
        let idx: usize = digits.parse().map_err(|_| ParseError {
            line,
            col,
            msg: format!("malformed variable '{name}'"),
        })?;
        if idx == 0 || idx > n {
            return Err(ParseError {
                line,
                col,
                msg: format!("variable index out of range: '{name}' with vars {n}"),
            });
        }
        Ok(if kind == 'x' {
            WeylElement::x(n, idx - 1)
        } else {
            WeylElement::d(n, idx - 1)
        })
    }

    fn parse_atom(&mut self) -> Result<WeylElement, ParseError> {
        let n_known = self.nvars.is_some();
        match self.next() {
            Some(Spanned {
                tok: Tok::Int(v), ..
            }) => {
                let mut value = Rational::from_integer(v);
                if matches!(
                    self.peek(),
                    Some(Spanned {
                        tok: Tok::Slash,
                        ..
                    })
                ) {
                    self.next();
                    let denom = match self.next() {
                        Some(Spanned {
                            tok: Tok::Int(d), ..
                        }) if !d.is_zero() => d,
                        _ => {
                            self.pos = self.pos.saturating_sub(1);
                            return self.err_here("expected a nonzero denominator");
                        }
                    };
                    value = Rational::new(value.numer().clone(), denom);
                }
                if !n_known {
                    return self.err_here("'vars <n>' must precede generators");
                }
                Ok(WeylElement::constant(self.nvars()?, value))
            }
            Some(Spanned {
                tok: Tok::Ident(name),
                line,
                col,
            }) => self.variable(&name, line, col),
            Some(Spanned {
                tok: Tok::LParen, ..
            }) => {
                let inner = self.parse_expr()?;
                match self.next() {
                    Some(Spanned {
                        tok: Tok::RParen, ..
                    }) => Ok(inner),
                    _ => {
                        self.pos = self.pos.saturating_sub(1);
                        self.err_here("expected ')'")
                    }
                }
            }
            Some(Spanned {
                tok: Tok::Minus, ..
            }) => {
                let inner = self.parse_factor()?;
                Ok(inner.neg())
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.err_here("expected a term")
            }
        }
    }

    fn parse_factor(&mut self) -> Result<WeylElement, ParseError> {
        let mut base = self.parse_atom()?;
        while matches!(
            self.peek(),
            Some(Spanned {
                tok: Tok::Caret,
                ..
            })
        ) {
            self.next();
            let exp = self.parse_usize("an exponent")?;
            base = base.pow(exp as u32);
        }
        Ok(base)
    }

    fn parse_term(&mut self) -> Result<WeylElement, ParseError> {
        let mut acc = self.parse_factor()?;
        while matches!(
            self.peek(),
            Some(Spanned {
                tok: Tok::Star,
                ..
            })
        ) {
            self.next();
            let rhs = self.parse_factor()?;
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn parse_expr(&mut self) -> Result<WeylElement, ParseError> {
        let negative = matches!(
            self.peek(),
            Some(Spanned {
                tok: Tok::Minus,
                ..
            })
        );
        if negative {
            self.next();
        }
        let mut acc = self.parse_term()?;
        if negative {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Spanned {
                    tok: Tok::Plus, ..
                }) => {
                    self.next();
                    let rhs = self.parse_term()?;
                    acc = acc.add(&rhs);
                }
                Some(Spanned {
                    tok: Tok::Minus, ..
                }) => {
                    self.next();
                    let rhs = self.parse_term()?;
                    acc = acc.sub(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn commutative(&self, op: WeylElement, line: usize, col: usize) -> Result<MultiPoly, ParseError> {
        let n = op.nvars();
        let mut out = MultiPoly::zero(n);
        for (m, c) in op.terms() {
            if m[n..].iter().any(|&e| e != 0) {
                return Err(ParseError {
                    line,
                    col,
                    msg: "component/avoid polynomials must not involve dx variables".into(),
                });
            }
            out.add_term(m[..n].to_vec(), c.clone());
        }
        Ok(out)
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        nvars: None,
    };
    let mut out = ProblemFile::default();
    while let Some(head) = p.peek().cloned() {
        match &head.tok {
            Tok::Semi => {
                p.next();
                continue;
            }
            Tok::Ident(name) => match name.as_str() {
                "vars" => {
                    p.next();
                    let n = p.parse_usize("the variable count")?;
                    if n == 0 {
                        return Err(ParseError {
                            line: head.line,
                            col: head.col,
                            msg: "vars must be at least 1".into(),
                        });
                    }
                    p.nvars = Some(n);
                    out.nvars = n;
                    p.expect_semi_or_end()?;
                }
                "component" => {
                    p.next();
                    let e = p.parse_expr()?;
                    out.components
                        .push(p.commutative(e, head.line, head.col)?);
                    p.expect_semi_or_end()?;
                }
                "avoid" => {
                    p.next();
                    let e = p.parse_expr()?;
                    out.avoid.push(p.commutative(e, head.line, head.col)?);
                    p.expect_semi_or_end()?;
                }
                "point" => {
                    p.next();
                    let list = p.parse_rational_list()?;
                    let n = p.nvars()?;
                    if list.len() != n {
                        return Err(ParseError {
                            line: head.line,
                            col: head.col,
                            msg: format!("point has {} coordinates, expected {}", list.len(), n),
                        });
                    }
                    out.points.push(list);
                    p.expect_semi_or_end()?;
                }
                "weight" => {
                    p.next();
                    let list = p.parse_rational_list()?;
                    let n = p.nvars()?;
                    if list.len() != n {
                        return Err(ParseError {
                            line: head.line,
                            col: head.col,
                            msg: format!("weight has {} entries, expected {}", list.len(), n),
                        });
                    }
                    out.weights.push(list);
                    p.expect_semi_or_end()?;
                }
                "charts" => {
                    p.next();
                    let mut charts = vec![p.parse_usize("a chart index")?];
                    while matches!(
                        p.peek(),
                        Some(Spanned {
                            tok: Tok::Comma,
                            ..
                        })
                    ) {
                        p.next();
                        charts.push(p.parse_usize("a chart index")?);
                    }
                    let n = p.nvars()?;
                    for &c in &charts {
                        if c == 0 || c > n {
                            return Err(ParseError {
                                line: head.line,
                                col: head.col,
                                msg: format!("chart index {c} out of range"),
                            });
                        }
                    }
                    out.charts = Some(charts.iter().map(|&c| c - 1).collect());
                    p.expect_semi_or_end()?;
                }
                "seed" => {
                    p.next();
                    out.seed = Some(p.parse_usize("the seed")? as u64);
                    p.expect_semi_or_end()?;
                }
                "height" => {
                    p.next();
                    let h = p.parse_usize("the height bound")? as u64;
                    if h == 0 {
                        return Err(ParseError {
                            line: head.line,
                            col: head.col,
                            msg: "height bound must be positive".into(),
                        });
                    }
                    out.height_bound = Some(h);
                    p.expect_semi_or_end()?;
                }
                "points" => {
                    p.next();
                    out.points_per_component = Some(p.parse_usize("points per component")?);
                    p.expect_semi_or_end()?;
                }
                "infinity" => {
                    p.next();
                    out.check_infinity = true;
                    p.expect_semi_or_end()?;
                }
                _ => {
                    let e = p.parse_expr()?;
                    if e.is_zero() {
                        return Err(ParseError {
                            line: head.line,
                            col: head.col,
                            msg: "generator is identically zero".into(),
                        });
                    }
                    out.gens.push(e);
                    p.expect_semi_or_end()?;
                }
            },
            _ => {
                let e = p.parse_expr()?;
                if e.is_zero() {
                    return Err(ParseError {
                        line: head.line,
                        col: head.col,
                        msg: "generator is identically zero".into(),
                    });
                }
                out.gens.push(e);
                p.expect_semi_or_end()?;
            }
        }
    }
    if out.nvars == 0 {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: "missing 'vars <n>' statement".into(),
        });
    }
    if out.gens.is_empty() {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: "no generators given".into(),
        });
    }
    Ok(out)
}
