//! Text literals: series, connections, parametrizations, characteristics and
//! bivariate polynomials. Errors carry a one-based column.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::connection::{ConnGerm, DualPuiseuxChar, Place};
use crate::cycfield::CycNum;
use crate::error::{Error, Result};
use crate::germ::{GoodParam, PuiseuxChar};
use crate::poly::Poly;
use crate::puiseux::{PuiseuxSeries, Q};

/// Largest accepted exponent denominator.
pub const MAX_RAM: i64 = 1 << 16;

struct P<'a> {
    s: Vec<char>,
    i: usize,
    vars: &'a [char],
}

fn err<T>(col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { col, msg: msg.into() })
}

/// One summand: a coefficient times `var^e`.
struct Term {
    coeff: CycNum,
    exps: Vec<Q>,
    big: bool,
}

enum Item {
    Term(Term),
    Order(Q),
}

impl<'a> P<'a> {
    fn new(text: &str, vars: &'a [char]) -> P<'a> {
        P { s: text.chars().collect(), i: 0, vars }
    }

    fn col(&self) -> usize {
        self.i + 1
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(d) => err(self.col(), format!("expected '{}', found '{}'", c, d)),
                None => err(self.col(), format!("expected '{}' before end of input", c)),
            }
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.ws();
        let cs: Vec<char> = w.chars().collect();
        if self.s[self.i..].starts_with(&cs) {
            let after = self.s.get(self.i + cs.len());
            if after.map(|c| c.is_alphanumeric()).unwrap_or(false) {
                return false;
            }
            self.i += cs.len();
            true
        } else {
            false
        }
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => err(self.col(), format!("unexpected '{}'", c)),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return match self.s.get(self.i) {
                Some(c) => err(self.col(), format!("expected a number, found '{}'", c)),
                None => err(self.col(), "expected a number before end of input"),
            };
        }
        let t: String = self.s[start..self.i].iter().collect();
        Ok(t.parse().expect("ascii digits"))
    }

    fn small(&mut self) -> Result<i64> {
        self.digits()?.to_i64().ok_or(Error::ExponentOverflow)
    }

    fn uint(&mut self) -> Result<u32> {
        let col = self.col();
        let v = self.small()?;
        u32::try_from(v).or_else(|_| err(col, "integer out of range"))
    }

    fn signed_small(&mut self) -> Result<i64> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let v = self.small()?;
        Ok(if neg { -v } else { v })
    }

    /// `int ['/' int]` with an optional sign, as an exponent.
    fn exponent_rational(&mut self) -> Result<Q> {
        let n = self.signed_small()?;
        let d = if self.eat('/') {
            let col = self.col();
            let d = self.small()?;
            if d == 0 {
                return err(col, "zero denominator");
            }
            d
        } else {
            1
        };
        if d > MAX_RAM || n.checked_abs().is_none() {
            return Err(Error::ExponentOverflow);
        }
        Ok(Q::new(n, d))
    }

    fn is_var(&mut self) -> Option<char> {
        let c = self.peek()?;
        if self.vars.contains(&c) {
            let after = self.s.get(self.i + 1);
            if !after.map(|a| a.is_alphanumeric()).unwrap_or(false) {
                return Some(c);
            }
        }
        None
    }

    /// `var ['^' ('(' rational ')' | int)]`
    fn var_power(&mut self) -> Result<(char, Q)> {
        let v = self.is_var().expect("checked by caller");
        self.i += 1;
        if !self.eat('^') {
            return Ok((v, Q::one()));
        }
        if self.eat('(') {
            let e = self.exponent_rational()?;
            self.expect(')')?;
            Ok((v, e))
        } else {
            Ok((v, Q::from_integer(self.signed_small()?)))
        }
    }

    fn factor(&mut self, t: &mut Term, allow_var: bool) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let d = if self.eat('/') {
                    let col = self.col();
                    let d = self.digits()?;
                    if d.is_zero() {
                        return err(col, "zero denominator");
                    }
                    d
                } else {
                    BigInt::one()
                };
                t.coeff = &t.coeff * &CycNum::rational(BigRational::new(n, d));
                Ok(())
            }
            Some('(') => {
                self.i += 1;
                let v = self.coeff_expr()?;
                self.expect(')')?;
                t.coeff = &t.coeff * &v;
                Ok(())
            }
            Some('z') if self.eat_word("zeta") => {
                self.expect('(')?;
                let col = self.col();
                let n = self.uint()?;
                if n == 0 {
                    return err(col, "zeta needs a positive order");
                }
                self.expect(')')?;
                let k = if self.eat('^') {
                    if self.eat('(') {
                        let k = self.signed_small()?;
                        self.expect(')')?;
                        k
                    } else {
                        self.signed_small()?
                    }
                } else {
                    1
                };
                t.coeff = &t.coeff * &CycNum::zeta(n, k);
                Ok(())
            }
            Some(_) if allow_var && self.is_var().is_some() => {
                let (v, e) = self.var_power()?;
                let idx = self.vars.iter().position(|&x| x == v).unwrap();
                t.exps[idx] += e;
                t.big = true;
                Ok(())
            }
            Some(c) => err(self.col(), format!("unexpected '{}'", c)),
            None => err(self.col(), "unexpected end of input"),
        }
    }

    fn term(&mut self, allow_var: bool) -> Result<Term> {
        let mut t = Term { coeff: CycNum::one(), exps: vec![Q::zero(); self.vars.len()], big: false };
        self.factor(&mut t, allow_var)?;
        loop {
            if self.eat('*') {
                self.factor(&mut t, allow_var)?;
            } else if matches!(self.peek(), Some('z')) || (allow_var && self.is_var().is_some()) {
                self.factor(&mut t, allow_var)?;
            } else {
                break;
            }
        }
        Ok(t)
    }

    fn coeff_expr(&mut self) -> Result<CycNum> {
        let mut acc = CycNum::zero();
        let mut neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        loop {
            let t = self.term(false)?;
            acc = if neg { acc - t.coeff } else { acc + t.coeff };
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn item(&mut self) -> Result<Item> {
        if self.peek() == Some('O') && self.s.get(self.i + 1) == Some(&'(') {
            self.i += 1;
            self.expect('(')?;
            if self.is_var().is_none() {
                return err(self.col(), "expected the series variable");
            }
            let (_, e) = self.var_power()?;
            self.expect(')')?;
            return Ok(Item::Order(e));
        }
        Ok(Item::Term(self.term(true)?))
    }

    /// Sum of terms up to (not including) a delimiter or end of input.
    fn sum(&mut self) -> Result<(Vec<Term>, Option<Q>)> {
        let mut terms = Vec::new();
        let mut order = None;
        let mut neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        loop {
            let col = self.col();
            match self.item()? {
                Item::Order(e) => {
                    if neg {
                        return err(col, "an order term cannot be negated");
                    }
                    if order.is_some() {
                        return err(col, "duplicate order term");
                    }
                    order = Some(e);
                }
                Item::Term(mut t) => {
                    if neg {
                        t.coeff = -t.coeff;
                    }
                    terms.push(t);
                }
            }
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok((terms, order));
            }
        }
    }

    fn series(&mut self) -> Result<PuiseuxSeries> {
        let (terms, order) = self.sum()?;
        let mut ram: i64 = 1;
        for t in &terms {
            ram = num_integer::lcm(ram, *t.exps[0].denom());
        }
        if let Some(o) = order {
            ram = num_integer::lcm(ram, *o.denom());
        }
        if ram > MAX_RAM {
            return Err(Error::ExponentOverflow);
        }
        let list: Vec<(Q, CycNum)> = terms.into_iter().map(|t| (t.exps[0], t.coeff)).collect();
        Ok(PuiseuxSeries::from_q_terms(list, order))
    }
}

/// `series ::= term ('+' term)*`; `trunc` applies when no `O(x^(T))` term is
/// given.
pub fn parse_series(text: &str, trunc: Option<Q>) -> Result<PuiseuxSeries> {
    let mut p = P::new(text, &['x']);
    let s = p.series()?;
    p.end()?;
    Ok(apply_trunc(s, trunc))
}

fn apply_trunc(s: PuiseuxSeries, trunc: Option<Q>) -> PuiseuxSeries {
    match trunc {
        Some(t) => s.truncate(t),
        None => s,
    }
}

/// `conn(q; series; at=0|inf)`; the place defaults to `inf`.
pub fn parse_conn(text: &str, trunc: Option<Q>) -> Result<ConnGerm> {
    let mut p = P::new(text, &['x']);
    if !p.eat_word("conn") {
        return err(p.col(), "expected 'conn('");
    }
    p.expect('(')?;
    let qcol = p.col();
    let q = p.uint()?;
    if q == 0 {
        return err(qcol, "rank must be positive");
    }
    p.expect(';')?;
    let scol = p.col();
    let f = p.series()?;
    let mut place = Place::Infinity;
    if p.eat(';') {
        if !p.eat_word("at") {
            return err(p.col(), "expected 'at='");
        }
        p.expect('=')?;
        if p.eat_word("inf") {
            place = Place::Infinity;
        } else if p.eat('0') {
            place = Place::Zero;
        } else {
            return err(p.col(), "expected '0' or 'inf'");
        }
    }
    p.expect(')')?;
    p.end()?;
    let f = apply_trunc(f, trunc);
    if q % f.ram() != 0 {
        return err(scol, format!("series needs ramification {}, rank is {}", f.ram(), q));
    }
    ConnGerm::new(f, q, place)
}

/// `param(m; φ(t))`: the germ `x = t^m, y = φ(t)`.
pub fn parse_param(text: &str, trunc: Option<Q>) -> Result<GoodParam> {
    let mut p = P::new(text, &['t', 'x']);
    if !p.eat_word("param") {
        return err(p.col(), "expected 'param('");
    }
    p.expect('(')?;
    let mcol = p.col();
    let m = p.uint()?;
    if m == 0 {
        return err(mcol, "multiplicity must be positive");
    }
    p.expect(';')?;
    let scol = p.col();
    let (terms, order) = p.sum()?;
    p.expect(')')?;
    p.end()?;
    let mut list = Vec::new();
    for t in terms {
        let e = t.exps[0] + t.exps[1];
        if *e.denom() != 1 {
            return err(scol, "parameter exponents must be integers");
        }
        list.push((e, t.coeff));
    }
    let phi = apply_trunc(PuiseuxSeries::from_q_terms(list, order), trunc).with_ram(1);
    GoodParam::x_primary(m, phi)
}

fn int_list(p: &mut P, close: char) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    if p.peek() == Some(close) {
        return Ok(out);
    }
    loop {
        out.push(p.uint()?);
        if !p.eat(',') {
            return Ok(out);
        }
    }
}

/// `(q,p;β_1,…,β_g)`
pub fn parse_dpc(text: &str) -> Result<DualPuiseuxChar> {
    let mut p = P::new(text, &[]);
    p.expect('(')?;
    let q = p.uint()?;
    p.expect(',')?;
    let pp = p.uint()?;
    p.expect(';')?;
    let betas = int_list(&mut p, ')')?;
    p.expect(')')?;
    p.end()?;
    DualPuiseuxChar::new(q, pp, betas)
}

/// `(m;β_1,…,β_g)`
pub fn parse_curve_char(text: &str) -> Result<PuiseuxChar> {
    let mut p = P::new(text, &[]);
    p.expect('(')?;
    let m = p.uint()?;
    p.expect(';')?;
    let betas = int_list(&mut p, ')')?;
    p.expect(')')?;
    p.end()?;
    PuiseuxChar::new(m, betas)
}

/// Polynomial in `x, y` with rational coefficients, e.g. `y^2 - x^3`.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = P::new(text, &['x', 'y']);
    let start = p.col();
    let (terms, order) = p.sum()?;
    p.end()?;
    if order.is_some() {
        return err(start, "polynomials take no order term");
    }
    let mut out = Poly::zero();
    for t in terms {
        let c = t.coeff.as_rational().ok_or_else(|| Error::Parse {
            col: start,
            msg: "polynomial coefficients must be rational".into(),
        })?;
        let (a, b) = (t.exps[0], t.exps[1]);
        if *a.denom() != 1 || *b.denom() != 1 || a < Q::zero() || b < Q::zero() {
            return err(start, "polynomial exponents must be non-negative integers");
        }
        out.add_term((a.to_integer() as u32, b.to_integer() as u32), c);
    }
    Ok(out)
}

/// A rational such as `3`, `-1/2`.
pub fn parse_rational(text: &str) -> Result<Q> {
    let mut p = P::new(text, &[]);
    let q = p.exponent_rational()?;
    p.end()?;
    Ok(q)
}
