//! Recursive-descent parser for integrands.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' nat)?
//! base   := rational-literal | ident | '(' expr ')'
//! ```
//!
//! A leading sign is also accepted at the start of a term. Denominators are
//! kept factored so that `a/f^ℓ` survives parsing with its pole order.

use std::fmt;

use gdtel_core::multipoly::{Monomial, MPoly};
use gdtel_core::scalars::{Field, RatFunc, Ring};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

type P = MPoly<RatFunc>;

/// `num / Π den_i^{e_i}` with every `den_i` depending on some variable and
/// normalized to leading coefficient 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    pub num: P,
    pub den: Vec<(P, u32)>,
    /// `num` as a product of powers, while that is still known.
    factors: Option<Vec<(P, u32)>>,
}

impl Parsed {
    fn poly(p: P) -> Self {
        Parsed { factors: Some(vec![(p.clone(), 1)]), num: p, den: vec![] }
    }

    fn neg(mut self) -> Self {
        self.num = self.num.neg();
        if let Some(fs) = &mut self.factors {
            fs.push((MPoly::constant(self.num.nvars(), RatFunc::from_i64(-1)), 1));
        }
        self
    }

    fn nvars(&self) -> usize {
        self.num.nvars()
    }

    fn mul(self, o: Parsed) -> Self {
        let mut den = self.den;
        for (g, e) in o.den {
            push_factor(&mut den, g, e);
        }
        let factors = match (self.factors, o.factors) {
            (Some(mut a), Some(b)) => {
                a.extend(b);
                Some(a)
            }
            _ => None,
        };
        Parsed { num: self.num.mul(&o.num), den, factors }
    }

    fn add(self, o: Parsed) -> Self {
        let mut den = self.den.clone();
        for (g, e) in &o.den {
            match den.iter_mut().find(|(h, _)| h == g) {
                Some((_, k)) => *k = (*k).max(*e),
                None => den.push((g.clone(), *e)),
            }
        }
        let lift = |x: &Parsed| {
            let mut n = x.num.clone();
            for (g, e) in &den {
                let have = x.den.iter().find(|(h, _)| h == g).map_or(0, |(_, k)| *k);
                n = n.mul(&g.pow(e - have));
            }
            n
        };
        let num = lift(&self).add(&lift(&o));
        let factors = den.is_empty().then(|| vec![(num.clone(), 1)]);
        Parsed { num, den, factors }
    }

    fn div(self, o: Parsed, pos: usize) -> Result<Self, ParseError> {
        if o.num.is_zero() {
            return Err(ParseError { pos, msg: "division by zero".into() });
        }
        let mut num = self.num;
        for (g, e) in &o.den {
            num = num.mul(&g.pow(*e));
        }
        let mut out = Parsed { num, den: self.den, factors: None };
        match o.factors {
            Some(fs) => fs.into_iter().for_each(|(g, e)| out.divide_by(g, e)),
            None => out.divide_by(o.num, 1),
        }
        Ok(out)
    }

    fn pow(self, k: u32) -> Self {
        Parsed {
            num: self.num.pow(k),
            den: if k == 0 { vec![] } else { self.den.into_iter().map(|(g, e)| (g, e * k)).collect() },
            factors: self.factors.map(|fs| fs.into_iter().map(|(g, e)| (g, e * k)).collect()),
        }
    }

    /// Divides by `g^e` for a nonzero polynomial `g`, absorbing constants
    /// into the numerator.
    fn divide_by(&mut self, g: P, e: u32) {
        let lc = g.leading().map(|(_, c)| c.clone()).expect("nonzero divisor");
        let inv = lc.inv();
        self.num = self.num.scale(&inv.pow(e));
        if g.total_degree() != Some(0) && e > 0 {
            push_factor(&mut self.den, g.scale(&inv), e);
        }
    }
}

fn push_factor(den: &mut Vec<(P, u32)>, g: P, e: u32) {
    match den.iter_mut().find(|(h, _)| *h == g) {
        Some((_, k)) => *k += e,
        None => den.push((g, e)),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = s.as_bytes();
    let mut out = vec![];
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            let ch = s[i..].chars().next().unwrap();
            return Err(ParseError { pos: i, msg: format!("unexpected character '{ch}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    param: &'a str,
    vars: &'a [String],
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.at) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Parsed, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.at += 1;
            let mut rhs = self.term()?;
            if c == '-' {
                rhs = rhs.neg();
            }
            acc = acc.add(rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Parsed, ParseError> {
        let mut neg = false;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.at += 1;
            neg ^= c == '-';
        }
        let mut acc = self.factor()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            let pos = self.pos();
            self.at += 1;
            let rhs = self.factor()?;
            acc = if c == '*' { acc.mul(rhs) } else { acc.div(rhs, pos)? };
        }
        if neg {
            acc = acc.neg();
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Parsed, ParseError> {
        let b = self.base()?;
        if self.peek_op() == Some('^') {
            self.at += 1;
            return match self.toks.get(self.at) {
                Some((_, Tok::Num(k))) => {
                    let k = u32::try_from(k).or_else(|_| self.err("exponent too large"))?;
                    self.at += 1;
                    if self.peek_op() == Some('^') {
                        return self.err("chained exponents need parentheses");
                    }
                    Ok(b.pow(k))
                }
                _ => self.err("expected a natural number exponent"),
            };
        }
        Ok(b)
    }

    fn base(&mut self) -> Result<Parsed, ParseError> {
        let nv = self.vars.len();
        match self.toks.get(self.at).cloned() {
            Some((_, Tok::Num(v))) => {
                self.at += 1;
                Ok(Parsed::poly(MPoly::constant(nv, RatFunc::from_int(&v))))
            }
            Some((p, Tok::Ident(name))) => {
                self.at += 1;
                if name == self.param {
                    Ok(Parsed::poly(MPoly::constant(nv, RatFunc::t())))
                } else if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    Ok(Parsed::poly(MPoly::monomial(Monomial::var(nv, i), RatFunc::one())))
                } else {
                    Err(ParseError { pos: p, msg: format!("undeclared identifier '{name}'") })
                }
            }
            Some((_, Tok::Op('('))) => {
                self.at += 1;
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return self.err("expected ')'");
                }
                self.at += 1;
                Ok(e)
            }
            Some(_) => self.err("expected a number, an identifier or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` with parameter `param` and variables `vars`.
pub fn parse_expr(text: &str, param: &str, vars: &[String]) -> Result<Parsed, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, end: text.len(), param, vars };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    debug_assert_eq!(e.nvars(), vars.len());
    Ok(e)
}
