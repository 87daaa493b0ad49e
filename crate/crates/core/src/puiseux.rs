//! Truncated Puiseux series with exact cyclotomic coefficients.
//!
//! A series lives in `K((x^{1/r}))` for its ramification `r`; exponents are
//! stored as integer numerators over `r`. The truncation numerator `T` means
//! every coefficient of `x^{k/r}` with `k < T` is known exactly; nothing is
//! claimed at or beyond `T`. [`EXACT`] marks a series with no unknown tail.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::cycfield::CycNum;
use crate::error::{Error, Result};

pub type Q = Rational64;

/// Truncation of a series known to all orders.
pub const EXACT: i64 = i64::MAX;

fn t_add(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a + b
    }
}

fn t_scale(a: i64, k: i64) -> i64 {
    if a == EXACT {
        EXACT
    } else {
        a * k
    }
}

fn big(q: Q) -> BigRational {
    BigRational::new((*q.numer()).into(), (*q.denom()).into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxSeries {
    ram: u32,
    trunc: i64,
    terms: Vec<(i64, CycNum)>,
}

/// Exponent numerators of a series below its truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    pub ram: u32,
    pub elems: BTreeSet<i64>,
}

impl SupportSet {
    pub fn contains(&self, k: i64) -> bool {
        self.elems.contains(&k)
    }
}

impl PuiseuxSeries {
    /// Build from numerators over `ram`; duplicates are summed, zeros and
    /// terms at or past the truncation are dropped.
    pub fn new(ram: u32, trunc: i64, terms: impl IntoIterator<Item = (i64, CycNum)>) -> Self {
        assert!(ram >= 1);
        let mut acc: BTreeMap<i64, CycNum> = BTreeMap::new();
        for (k, c) in terms {
            if k >= trunc || c.is_zero() {
                continue;
            }
            match acc.get_mut(&k) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(k, c);
                }
            }
        }
        PuiseuxSeries {
            ram,
            trunc,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Build from rational exponents. `trunc = None` means exact.
    pub fn from_q_terms(terms: Vec<(Q, CycNum)>, trunc: Option<Q>) -> Self {
        let mut ram: i64 = 1;
        for (e, _) in &terms {
            ram = ram.lcm(e.denom());
        }
        if let Some(t) = trunc {
            ram = ram.lcm(t.denom());
        }
        let tn = match trunc {
            Some(t) => (t * ram).to_integer(),
            None => EXACT,
        };
        PuiseuxSeries::new(
            ram as u32,
            tn,
            terms.into_iter().map(|(e, c)| ((e * ram).to_integer(), c)),
        )
    }

    pub fn zero(trunc: Q) -> Self {
        PuiseuxSeries::from_q_terms(vec![], Some(trunc))
    }

    pub fn exact_zero() -> Self {
        PuiseuxSeries::new(1, EXACT, vec![])
    }

    pub fn constant(c: CycNum) -> Self {
        PuiseuxSeries::new(1, EXACT, vec![(0, c)])
    }

    pub fn monomial(c: CycNum, e: Q) -> Self {
        PuiseuxSeries::from_q_terms(vec![(e, c)], None)
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    /// Truncation numerator over `ram`.
    pub fn trunc_num(&self) -> i64 {
        self.trunc
    }

    pub fn trunc(&self) -> Option<Q> {
        if self.trunc == EXACT {
            None
        } else {
            Some(Q::new(self.trunc, self.ram as i64))
        }
    }

    pub fn terms(&self) -> &[(i64, CycNum)] {
        &self.terms
    }

    pub fn q_terms(&self) -> impl Iterator<Item = (Q, &CycNum)> + '_ {
        let r = self.ram as i64;
        self.terms.iter().map(move |(k, c)| (Q::new(*k, r), c))
    }

    pub fn has_terms(&self) -> bool {
        !self.terms.is_empty()
    }

    pub fn ord(&self) -> Result<Q> {
        self.terms
            .first()
            .map(|(k, _)| Q::new(*k, self.ram as i64))
            .ok_or_else(|| Error::ZeroToPrecision(format!("no term below {}", self.trunc_str())))
    }

    pub fn leading(&self) -> Result<(Q, CycNum)> {
        let o = self.ord()?;
        Ok((o, self.terms[0].1.clone()))
    }

    /// Coefficient of `x^e`; errors beyond the truncation.
    pub fn coeff(&self, e: Q) -> Result<CycNum> {
        if let Some(t) = self.trunc() {
            if e >= t {
                return Err(Error::ZeroToPrecision(format!(
                    "coefficient of x^({}) requested, series known below {}",
                    e, t
                )));
            }
        }
        let r = self.ram as i64;
        if (e * r).denom() != &1 {
            return Ok(CycNum::zero());
        }
        let k = (e * r).to_integer();
        Ok(self
            .terms
            .iter()
            .find(|(j, _)| *j == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(CycNum::zero))
    }

    fn trunc_str(&self) -> String {
        match self.trunc() {
            Some(t) => format!("x^({})", t),
            None => "infinity".into(),
        }
    }

    /// Same series over a finer ramification `r` (a multiple of the current).
    pub fn with_ram(&self, r: u32) -> Self {
        assert!(r % self.ram == 0, "ramification must be a multiple");
        let k = (r / self.ram) as i64;
        PuiseuxSeries {
            ram: r,
            trunc: t_scale(self.trunc, k),
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Declare the series to live over the coarser ramification `r`; all
    /// stored numerators must be compatible.
    pub fn coarsen(&self, r: u32) -> Result<Self> {
        if self.ram % r != 0 {
            return Err(Error::PreconditionViolated(format!(
                "ramification {} does not divide {}",
                r, self.ram
            )));
        }
        let k = (self.ram / r) as i64;
        if self.terms.iter().any(|(e, _)| e % k != 0) {
            return Err(Error::PreconditionViolated(format!(
                "series needs ramification finer than {}",
                r
            )));
        }
        let trunc = if self.trunc == EXACT {
            EXACT
        } else {
            Integer::div_ceil(&self.trunc, &k)
        };
        Ok(PuiseuxSeries {
            ram: r,
            trunc,
            terms: self.terms.iter().map(|(e, c)| (e / k, c.clone())).collect(),
        })
    }

    /// Reduce the ramification to the smallest value faithful to the known terms.
    pub fn normalize_ram(&self) -> Self {
        self.coarsen(self.min_ramification()).expect("min ramification divides")
    }

    pub fn min_ramification(&self) -> u32 {
        let mut g = self.ram as i64;
        for (k, _) in &self.terms {
            g = g.gcd(k);
        }
        self.ram / g as u32
    }

    pub fn support_set(&self) -> SupportSet {
        SupportSet {
            ram: self.ram,
            elems: self.terms.iter().map(|(k, _)| *k).collect(),
        }
    }

    /// Lower the truncation to `t` (no-op if already lower).
    pub fn truncate(&self, t: Q) -> Self {
        let r = self.ram as i64;
        let ram = (r as i64).lcm(t.denom()) as u32;
        let s = self.with_ram(ram);
        let tn = (t * ram as i64).to_integer();
        let tn = tn.min(s.trunc);
        PuiseuxSeries::new(ram, tn, s.terms)
    }

    fn align(&self, o: &Self) -> (Self, Self) {
        if self.ram == o.ram {
            return (self.clone(), o.clone());
        }
        let r = self.ram.lcm(&o.ram);
        (self.with_ram(r), o.with_ram(r))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = self.align(o);
        let t = a.trunc.min(b.trunc);
        PuiseuxSeries::new(a.ram, t, a.terms.into_iter().chain(b.terms))
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries {
            ram: self.ram,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scalar_mul(&self, c: &CycNum) -> Self {
        PuiseuxSeries::new(
            self.ram,
            self.trunc,
            self.terms.iter().map(|(k, a)| (*k, a * c)),
        )
    }

    pub fn add_constant(&self, c: &CycNum) -> Self {
        self.add(&PuiseuxSeries::constant(c.clone()))
    }

    /// Multiply by `x^e`.
    pub fn shift(&self, e: Q) -> Self {
        let r = (self.ram as i64).lcm(e.denom()) as u32;
        let s = self.with_ram(r);
        let d = (e * r as i64).to_integer();
        PuiseuxSeries {
            ram: r,
            trunc: t_add(s.trunc, d),
            terms: s.terms.into_iter().map(|(k, c)| (k + d, c)).collect(),
        }
    }

    fn low_num(&self) -> i64 {
        self.terms.first().map(|(k, _)| *k).unwrap_or(self.trunc)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.align(o);
        let t = t_add(a.trunc, b.low_num()).min(t_add(b.trunc, a.low_num()));
        let mut acc: BTreeMap<i64, CycNum> = BTreeMap::new();
        for (i, x) in &a.terms {
            for (j, y) in &b.terms {
                let k = i + j;
                if k >= t {
                    break;
                }
                let p = x * y;
                match acc.get_mut(&k) {
                    Some(v) => *v = &*v + &p,
                    None => {
                        acc.insert(k, p);
                    }
                }
            }
        }
        PuiseuxSeries::new(a.ram, t, acc)
    }

    /// `f^α` for rational `α`: the leading coefficient's root comes from
    /// [`CycNum::try_nth_root`], the unit part from the binomial recurrence.
    pub fn pow_q(&self, alpha: Q) -> Result<Self> {
        let (v, a) = match self.terms.first() {
            Some((k, c)) => (*k, c.clone()),
            None => {
                return Err(Error::ZeroToPrecision(format!(
                    "power of a series with no term below {}",
                    self.trunc_str()
                )))
            }
        };
        let r = self.ram as i64;
        let lead = if *alpha.denom() == 1 {
            a.pow(*alpha.numer())?
        } else {
            a.try_nth_root(*alpha.denom() as u32)?.pow(*alpha.numer())?
        };
        let inv_a = a.inv()?;
        let unit: Vec<(i64, CycNum)> = self.terms[1..]
            .iter()
            .map(|(k, c)| (k - v, c * &inv_a))
            .collect();
        let rel = if self.trunc == EXACT {
            if !unit.is_empty() {
                return Err(Error::PreconditionViolated(
                    "non-monomial power needs a finite truncation".into(),
                ));
            }
            EXACT
        } else {
            self.trunc - v
        };
        let coeffs = if unit.is_empty() {
            vec![CycNum::one()]
        } else {
            unit_power(&unit, alpha, rel)
        };
        let vexp = Q::new(v, r) * alpha;
        let ram = r.lcm(vexp.denom());
        let scale = ram / r;
        let base = (vexp * ram).to_integer();
        let trunc = if rel == EXACT { EXACT } else { base + rel * scale };
        Ok(PuiseuxSeries::new(
            ram as u32,
            trunc,
            coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| (base + k as i64 * scale, &c * &lead)),
        ))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.pow_q(Q::from_integer(-1))
    }

    pub fn nth_root(&self, n: u32) -> Result<Self> {
        self.pow_q(Q::new(1, n as i64))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(PuiseuxSeries::constant(CycNum::one()));
        }
        if k > 0 && !self.has_terms() {
            return Ok(PuiseuxSeries::new(self.ram, self.trunc.saturating_mul(k), vec![]));
        }
        self.pow_q(Q::from_integer(k))
    }

    /// `x^{1/r} ↦ c·x^s`.
    pub fn substitute_scaled(&self, c: &CycNum, s: Q) -> Result<Self> {
        if c.is_zero() || s <= Q::zero() {
            return Err(Error::PreconditionViolated(
                "substitution needs c ≠ 0 and s > 0".into(),
            ));
        }
        let ram = *s.denom();
        let step = *s.numer();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, a) in &self.terms {
            terms.push((k * step, a * &c.pow(*k)?));
        }
        Ok(PuiseuxSeries::new(
            ram as u32,
            t_scale(self.trunc, step),
            terms,
        ))
    }

    /// `x^{1/r} ↦ ζ_r^k x^{1/r}`.
    pub fn galois_conjugate(&self, k: i64) -> Self {
        self.substitute_scaled(&CycNum::zeta(self.ram, k), Q::new(1, self.ram as i64))
            .expect("root of unity substitution")
    }

    /// `x^{1/r} ↦ c·x^{1/r}` keeping the ramification.
    pub fn twist(&self, c: &CycNum) -> Result<Self> {
        let mut s = self.substitute_scaled(c, Q::new(1, self.ram as i64))?;
        if s.ram != self.ram {
            s = s.with_ram(self.ram);
        }
        Ok(s)
    }

    pub fn derivative(&self) -> Self {
        let r = self.ram as i64;
        PuiseuxSeries::new(
            self.ram,
            t_add(self.trunc, -r),
            self.terms.iter().map(|(k, c)| {
                (
                    k - r,
                    c.scale(&BigRational::new((*k).into(), r.into())),
                )
            }),
        )
    }

    /// View as a Laurent series in `t = x^{1/r}` (ramification 1), `r` a
    /// multiple of the current ramification.
    pub fn in_root_variable(&self, r: u32) -> Self {
        let s = self.with_ram(r);
        PuiseuxSeries {
            ram: 1,
            trunc: s.trunc,
            terms: s.terms,
        }
    }

    /// Inverse of [`in_root_variable`](Self::in_root_variable): read a
    /// ramification-1 series in `t` as a series in `x = t^r`.
    pub fn from_root_variable(&self, r: u32) -> Self {
        assert_eq!(self.ram, 1, "expected a series in the root variable");
        PuiseuxSeries {
            ram: r,
            trunc: self.trunc,
            terms: self.terms.clone(),
        }
    }

    /// `g(f)`; needs `ord f > 0`. Fractional exponents of `g` use
    /// [`nth_root`](Self::nth_root) of `f`.
    pub fn compose(g: &Self, f: &Self) -> Result<Self> {
        let v = f.ord()?;
        if v <= Q::zero() {
            return Err(Error::BadOrder(format!("inner series has order {}", v)));
        }
        if !g.has_terms() {
            let t = if g.is_exact() { None } else { Some(Q::new(g.trunc, g.ram as i64) * v) };
            return Ok(match t {
                Some(t) => PuiseuxSeries::zero(t),
                None => PuiseuxSeries::exact_zero(),
            });
        }
        let big_f = f.nth_root(g.ram)?;
        let kmin = g.terms[0].0;
        let kmax = g.terms.last().unwrap().0;
        let coeff: BTreeMap<i64, &CycNum> = g.terms.iter().map(|(k, c)| (*k, c)).collect();
        let mut acc = PuiseuxSeries::constant(coeff[&kmax].clone());
        for k in (kmin..kmax).rev() {
            acc = acc.mul(&big_f);
            if let Some(c) = coeff.get(&k) {
                acc = acc.add_constant(c);
            }
        }
        let mut out = acc.mul(&big_f.pow(kmin)?);
        if !g.is_exact() {
            let t = Q::new(g.trunc, g.ram as i64) * v;
            out = out.truncate(t);
        }
        Ok(out)
    }

    /// `ψ` with `f(ψ(u)) = u`; needs `ord f > 0`.
    pub fn revert(&self) -> Result<Self> {
        let v = self.ord()?;
        if v <= Q::zero() {
            return Err(Error::BadOrder(format!("cannot revert a series of order {}", v)));
        }
        let r = self.ram;
        let big_f = self.in_root_variable(r);
        let k = big_f.terms[0].0;
        let sigma = big_f.nth_root(k as u32)?;
        let t = revert_order_one(&sigma)?;
        let x = t.pow(r as i64)?;
        Ok(x.from_root_variable(k as u32))
    }

    /// True when both agree on every exponent below the smaller truncation.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let d = self.sub(o);
        !d.has_terms()
    }

    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (e, c) in self.q_terms() {
            let atomic = c.as_rational().is_some() || c.root_of_unity_form().is_some();
            let cs = c.to_string();
            let (neg, body) = if atomic && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else if atomic {
                (false, cs)
            } else {
                (false, format!("({})", cs))
            };
            let term = if e.is_zero() {
                body
            } else if body == "1" {
                format!("{}^({})", var, e)
            } else {
                format!("{}*{}^({})", body, var, e)
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        if let Some(t) = self.trunc() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&format!("O({}^({}))", var, t));
        } else if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

/// Coefficients `P_0..P_{n−1}` of `U^α`, where `U = 1 + Σ u_j t^j` with all
/// `j ≥ 1`. Uses `k·P_k = Σ_j ((α+1)j − k)·u_j·P_{k−j}`.
fn unit_power(unit: &[(i64, CycNum)], alpha: Q, n: i64) -> Vec<CycNum> {
    let n = n.max(0) as usize;
    let mut p: Vec<CycNum> = Vec::with_capacity(n);
    if n == 0 {
        return p;
    }
    p.push(CycNum::one());
    let a1 = alpha + Q::one();
    for k in 1..n {
        let mut s = CycNum::zero();
        for (j, u) in unit {
            let j = *j as usize;
            if j > k {
                break;
            }
            let pk = &p[k - j];
            if pk.is_zero() {
                continue;
            }
            let f = (a1 * Q::from_integer(j as i64) - Q::from_integer(k as i64))
                / Q::from_integer(k as i64);
            if f.is_zero() {
                continue;
            }
            s = &s + &(u * pk).scale(&big(f));
        }
        p.push(s);
    }
    p
}

/// Revert `σ(t) = c·t·W(t)` (ramification 1, order 1) by Lagrange inversion:
/// `[τ^{m+1}] t = [t^m] W^{−(m+1)} / (m+1)` with `τ = σ/c`.
fn revert_order_one(sigma: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    debug_assert_eq!(sigma.ram, 1);
    let (k0, c) = sigma.terms[0].clone();
    debug_assert_eq!(k0, 1);
    let inv_c = c.inv()?;
    let w: Vec<(i64, CycNum)> = sigma.terms[1..]
        .iter()
        .map(|(k, a)| (k - 1, a * &inv_c))
        .collect();
    if w.is_empty() && sigma.trunc == EXACT {
        return Ok(PuiseuxSeries::new(1, EXACT, vec![(1, inv_c)]));
    }
    if sigma.trunc == EXACT {
        return Err(Error::PreconditionViolated(
            "reversion of an exact non-monomial series needs a truncation".into(),
        ));
    }
    let rel = sigma.trunc - 1;
    let mut terms = Vec::with_capacity(rel.max(0) as usize);
    let mut cpow = inv_c.clone();
    for m in 0..rel {
        let coeff = if w.is_empty() {
            if m == 0 {
                CycNum::one()
            } else {
                CycNum::zero()
            }
        } else {
            let pw = unit_power(&w, Q::from_integer(-(m + 1)), m + 1);
            pw[m as usize].scale(&BigRational::new(1.into(), (m + 1).into()))
        };
        if !coeff.is_zero() {
            terms.push((m + 1, &coeff * &cpow));
        }
        cpow = &cpow * &inv_c;
    }
    Ok(PuiseuxSeries::new(1, rel + 1, terms))
}

/// Sign of a rational as an integer in {−1, 0, 1}.
pub fn q_sign(q: Q) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Q {
        Q::new(a, b)
    }

    fn c(i: i64) -> CycNum {
        CycNum::from_int(i)
    }

    fn ser(terms: &[(i64, i64, i64)], t: Q) -> PuiseuxSeries {
        PuiseuxSeries::from_q_terms(
            terms.iter().map(|&(a, b, k)| (q(a, b), c(k))).collect(),
            Some(t),
        )
    }

    #[test]
    fn orders() {
        assert_eq!(ser(&[(-3, 2, 1), (-1, 2, 1)], q(0, 1)).ord().unwrap(), q(-3, 2));
        assert_eq!(PuiseuxSeries::constant(c(5)).ord().unwrap(), q(0, 1));
        assert_eq!(ser(&[(-7, 4, 1), (-1, 2, 1)], q(0, 1)).ord().unwrap(), q(-7, 4));
        assert!(matches!(
            PuiseuxSeries::zero(q(1, 1)).ord(),
            Err(Error::ZeroToPrecision(_))
        ));
    }

    #[test]
    fn products() {
        let a = PuiseuxSeries::monomial(c(1), q(-3, 2));
        assert_eq!(a.mul(&a), PuiseuxSeries::monomial(c(1), q(-3, 1)).with_ram(2));
        let f = ser(&[(-1, 2, 1), (0, 1, 1)], q(3, 1));
        let g = PuiseuxSeries::monomial(c(1), q(1, 2));
        let p = f.mul(&g);
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.ord().unwrap(), q(0, 1));
        assert_eq!(p.coeff(q(1, 2)).unwrap(), c(1));
    }

    #[test]
    fn inverses() {
        let f = PuiseuxSeries::monomial(c(1), q(-3, 2));
        assert_eq!(f.inverse().unwrap(), PuiseuxSeries::monomial(c(1), q(3, 2)));
        let g = ser(&[(0, 1, 1), (1, 1, 1)], q(6, 1));
        let gi = g.inverse().unwrap();
        for k in 0..6 {
            assert_eq!(gi.coeff(q(k, 1)).unwrap(), c(if k % 2 == 0 { 1 } else { -1 }));
        }
        let h = ser(&[(-3, 1, 1), (-1, 1, 1)], q(5, 1));
        let hi = h.inverse().unwrap();
        assert_eq!(hi.trunc(), Some(q(11, 1)));
        let one = h.mul(&hi);
        assert_eq!(one.terms(), &[(0, c(1))]);
    }

    #[test]
    fn roots() {
        let f = PuiseuxSeries::monomial(c(1), q(-3, 1));
        assert_eq!(f.nth_root(3).unwrap(), PuiseuxSeries::monomial(c(1), q(-1, 1)));
        let g = ser(&[(0, 1, 1), (1, 1, 2), (2, 1, 1)], q(8, 1));
        let r = g.nth_root(2).unwrap();
        assert_eq!(r.terms(), &[(0, c(1)), (1, c(1))]);
        let h = PuiseuxSeries::monomial(c(-1), q(3, 1));
        let hr = h.nth_root(3).unwrap();
        assert_eq!(hr.leading().unwrap(), (q(1, 1), CycNum::zeta(6, 1)));
    }

    #[test]
    fn substitutions() {
        let f = PuiseuxSeries::monomial(c(1), q(-3, 2));
        assert_eq!(f.galois_conjugate(1), PuiseuxSeries::monomial(c(-1), q(-3, 2)));
        let g = PuiseuxSeries::monomial(c(1), q(-1, 1));
        for k in 0..3 {
            assert_eq!(g.galois_conjugate(k), g);
        }
        let t2 = PuiseuxSeries::monomial(c(1), q(2, 1));
        assert_eq!(
            t2.substitute_scaled(&c(1), q(3, 1)).unwrap(),
            PuiseuxSeries::monomial(c(1), q(6, 1))
        );
    }

    #[test]
    fn reversion() {
        let t = PuiseuxSeries::monomial(c(1), q(1, 1));
        assert_eq!(t.revert().unwrap(), t);
        let f = ser(&[(1, 1, 1), (2, 1, 1)], q(6, 1));
        let psi = f.revert().unwrap();
        let want = [(1, 1), (2, -1), (3, 2), (4, -5), (5, 14)];
        for (k, v) in want {
            assert_eq!(psi.coeff(q(k, 1)).unwrap(), c(v));
        }
        let id1 = PuiseuxSeries::compose(&f, &psi).unwrap();
        assert_eq!(id1.terms(), &[(1, c(1))]);
        let id2 = PuiseuxSeries::compose(&psi, &f).unwrap();
        assert_eq!(id2.terms(), &[(1, c(1))]);
        let g = ser(&[(2, 1, 1), (3, 1, 1)], q(8, 1));
        let phi = g.revert().unwrap();
        assert_eq!(phi.ord().unwrap(), q(1, 2));
        assert_eq!(phi.coeff(q(2, 2)).unwrap(), CycNum::frac(-1, 2));
        let back = PuiseuxSeries::compose(&g, &phi).unwrap();
        assert_eq!(back.normalize_ram().terms(), &[(1, c(1))]);
        assert!(matches!(
            PuiseuxSeries::constant(c(1)).revert(),
            Err(Error::BadOrder(_))
        ));
    }

    #[test]
    fn compositions() {
        let y2 = PuiseuxSeries::monomial(c(1), q(2, 1));
        let t3 = PuiseuxSeries::monomial(c(1), q(3, 1));
        assert_eq!(
            PuiseuxSeries::compose(&y2, &t3).unwrap(),
            PuiseuxSeries::monomial(c(1), q(6, 1))
        );
        let yinv = PuiseuxSeries::monomial(c(1), q(-1, 1));
        let f = ser(&[(1, 1, 1), (2, 1, 1)], q(7, 1));
        let h = PuiseuxSeries::compose(&yinv, &f).unwrap();
        assert_eq!(h.mul(&f).terms(), &[(0, c(1))]);
        let y = PuiseuxSeries::monomial(c(1), q(1, 1));
        assert!(PuiseuxSeries::compose(&y, &f).unwrap().agrees_with(&f));
    }

    #[test]
    fn ramification() {
        assert_eq!(PuiseuxSeries::monomial(c(1), q(-3, 2)).min_ramification(), 2);
        let f = PuiseuxSeries::new(4, 0, vec![(-6, c(1)), (-2, c(1))]);
        assert_eq!(f.min_ramification(), 2);
        assert_eq!(PuiseuxSeries::monomial(c(1), q(-1, 1)).min_ramification(), 1);
    }

    #[test]
    fn rendering() {
        let f = PuiseuxSeries::from_q_terms(
            vec![(q(-3, 2), c(1)), (q(0, 1), CycNum::frac(-1, 2)), (q(-1, 3), CycNum::zeta(6, 1))],
            Some(q(1, 1)),
        );
        assert_eq!(
            f.to_string(),
            "x^(-3/2) + zeta(6)*x^(-1/3) - 1/2 + O(x^(1))"
        );
    }
}
