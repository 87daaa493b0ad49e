//! Irreducible connections `E_{f,q}` and their invariants.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::cycfield::CycNum;
use crate::error::{Error, Result};
use crate::germ::{self, GoodParam, PuiseuxChar};
use crate::puiseux::{PuiseuxSeries, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Zero,
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", match self {
            Place::Zero => "0",
            Place::Infinity => "inf",
        })
    }
}

/// `E_{f,q}` with `f ∈ K((x^{1/q}))`. Only the principal part and the
/// constant of `f` matter; when both are known the series is stored exactly
/// with its positive-exponent tail dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnGerm {
    f: PuiseuxSeries,
    q: u32,
    place: Place,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DualPuiseuxChar {
    pub q: u32,
    pub p: u32,
    pub betas: Vec<u32>,
}

impl DualPuiseuxChar {
    pub fn new(q: u32, p: u32, betas: Vec<u32>) -> Result<DualPuiseuxChar> {
        let d = DualPuiseuxChar { q, p, betas };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::PreconditionViolated(format!("{}: {}", self, why)));
        if self.q == 0 || self.p == 0 {
            return bad("q and p must be positive");
        }
        match self.betas.first() {
            Some(&b1) if b1 > self.p => return bad("beta_1 exceeds p"),
            Some(&b1) if b1 < self.p && self.p % self.q != 0 => {
                return bad("p must equal beta_1 unless q divides p")
            }
            None if self.p % self.q != 0 => return bad("p must be divisible by q"),
            _ => {}
        }
        let mut e = self.q;
        let mut prev = u32::MAX;
        for &b in &self.betas {
            if b >= prev || b == 0 {
                return bad("betas must be strictly decreasing and positive");
            }
            if b % e == 0 {
                return bad("beta divisible by the running gcd");
            }
            prev = b;
            e = e.gcd(&b);
        }
        if e != 1 {
            return bad("gcd chain does not reach 1");
        }
        Ok(())
    }

    pub fn e_chain(&self) -> Vec<u32> {
        let mut out = vec![self.q];
        for &b in &self.betas {
            let last = *out.last().unwrap();
            out.push(last.gcd(&b));
        }
        out
    }

    pub fn g(&self) -> usize {
        self.betas.len()
    }

    /// Characteristic read off a descending list of exponent numerators with
    /// the gcd chain started at `q`.
    pub fn from_candidates(
        q: u32,
        p: u32,
        cands: impl IntoIterator<Item = u32>,
    ) -> Result<DualPuiseuxChar> {
        let mut e = q;
        let mut betas = Vec::new();
        for b in cands {
            if e == 1 {
                break;
            }
            if b % e != 0 {
                betas.push(b);
                e = e.gcd(&b);
            }
        }
        DualPuiseuxChar::new(q, p, betas)
    }

    /// `Σ (e_{i−1} − e_i) β_i`.
    pub fn irr_end(&self) -> u64 {
        let e = self.e_chain();
        self.betas
            .iter()
            .enumerate()
            .map(|(i, b)| (e[i] - e[i + 1]) as u64 * *b as u64)
            .sum()
    }
}

impl fmt::Display for DualPuiseuxChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.betas.iter().map(|b| b.to_string()).collect();
        write!(f, "({},{};{})", self.q, self.p, b.join(","))
    }
}

impl ConnGerm {
    /// Irreducible connection; errors when `f` needs less than `q`.
    pub fn new(f: PuiseuxSeries, q: u32, place: Place) -> Result<ConnGerm> {
        let c = ConnGerm::new_reducible(f, q, place)?;
        if !c.is_irreducible() {
            return Err(Error::PreconditionViolated(format!(
                "E_(f,{}) is reducible: f is defined over a smaller ramification",
                q
            )));
        }
        Ok(c)
    }

    /// Same as [`new`](Self::new) without the irreducibility requirement.
    pub fn new_reducible(f: PuiseuxSeries, q: u32, place: Place) -> Result<ConnGerm> {
        if q == 0 || q % f.ram() != 0 {
            return Err(Error::PreconditionViolated(format!(
                "series ramification {} does not divide q = {}",
                f.ram(),
                q
            )));
        }
        let f = f.with_ram(q);
        let f = if f.trunc_num() > 0 {
            PuiseuxSeries::new(
                q,
                crate::puiseux::EXACT,
                f.terms().iter().filter(|(k, _)| *k <= 0).cloned(),
            )
        } else {
            f
        };
        if !f.terms().iter().any(|(k, _)| *k < 0) {
            return Err(Error::PreconditionViolated(
                "f has no negative exponent: its image in R_q is zero".into(),
            ));
        }
        Ok(ConnGerm { f, q, place })
    }

    pub fn f(&self) -> &PuiseuxSeries {
        &self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn place(&self) -> Place {
        self.place
    }

    pub fn at(&self, place: Place) -> ConnGerm {
        ConnGerm { place, ..self.clone() }
    }

    /// `p` with `ord f = −p/q`.
    pub fn p(&self) -> u32 {
        (-self.f.terms()[0].0) as u32
    }

    /// Principal part and constant both known.
    pub fn has_constant(&self) -> bool {
        self.f.trunc_num() > 0
    }

    pub fn is_irreducible(&self) -> bool {
        let mut g = self.q as i64;
        for (k, _) in self.f.terms() {
            if *k < 0 {
                g = g.gcd(k);
            }
        }
        g == 1
    }

    /// `f(ζ_q^i x^{1/q})`.
    pub fn conjugate(&self, i: i64) -> PuiseuxSeries {
        self.f.galois_conjugate(i)
    }

    pub fn dual_puiseux_char(&self) -> Result<DualPuiseuxChar> {
        if self.f.trunc_num() < 0 {
            return Err(Error::ZeroToPrecision(format!(
                "principal part unknown above x^({})",
                self.f.trunc().unwrap()
            )));
        }
        let negs = self
            .f
            .terms()
            .iter()
            .filter(|(k, _)| *k < 0)
            .map(|(k, _)| (-k) as u32);
        DualPuiseuxChar::from_candidates(self.q, self.p(), negs)
    }

    /// `f ↦ f + a·x^{−n}`.
    pub fn addition(&self, a: &CycNum, n: i64) -> Result<ConnGerm> {
        if n < 1 {
            return Err(Error::PreconditionViolated("addition needs n ≥ 1".into()));
        }
        let f = self
            .f
            .add(&PuiseuxSeries::monomial(a.clone(), Q::from_integer(-n)));
        ConnGerm::new(f, self.q, self.place)
    }

    /// `x = t^q, y = 1/f(t)` with `y` known below `t^{p+rel}`.
    pub fn associated_curve_to(&self, rel: i64) -> Result<GoodParam> {
        let ft = self.f.in_root_variable(self.q);
        let lo = ft.terms()[0].0;
        let ft = ft.truncate(Q::from_integer(lo + rel.max(1)));
        let y = ft.inverse()?;
        GoodParam::x_primary(self.q, y)
    }

    /// Precision enough to certify the characteristic of the curve.
    pub fn associated_curve(&self) -> Result<GoodParam> {
        let rel = 2 * (self.p() as i64 + self.q as i64) + 2;
        self.associated_curve_to(rel)
    }
}

impl fmt::Display for ConnGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conn({}; {}; at={})", self.q, self.f.render("x"), self.place)
    }
}

pub fn is_irreducible(c: &ConnGerm) -> bool {
    c.is_irreducible()
}

/// `∃ r: f(x^{1/q}) − g(ζ_q^r x^{1/q}) ∈ x^{1/q}K[[x^{1/q}]] + (1/q)ℤ`.
pub fn is_isomorphic(a: &ConnGerm, b: &ConnGerm) -> Result<bool> {
    if a.place != b.place {
        return Err(Error::PreconditionViolated(
            "isomorphism is only defined at a common place".into(),
        ));
    }
    if a.q != b.q {
        return Ok(false);
    }
    for c in [a, b] {
        if !c.has_constant() {
            return Err(Error::ZeroToPrecision(format!(
                "constant term of {} unknown",
                c
            )));
        }
    }
    let q = a.q as i64;
    for r in 0..q {
        let d = a.f.sub(&b.conjugate(r));
        if d.terms().iter().any(|(k, _)| *k < 0) {
            continue;
        }
        let c0 = d.coeff(Q::zero())?;
        if c0.is_zero() {
            return Ok(true);
        }
        if let Some(v) = c0.as_rational() {
            if (v * num_rational::BigRational::from_integer(q.into())).is_integer() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrrMode {
    Formula,
    Series,
}

pub fn irr_end(c: &ConnGerm, mode: IrrMode) -> Result<u64> {
    match mode {
        IrrMode::Formula => Ok(c.dual_puiseux_char()?.irr_end()),
        IrrMode::Series => {
            let q = c.q as i64;
            let conj: Vec<PuiseuxSeries> = (0..q).map(|i| c.conjugate(i)).collect();
            let mut total = Q::zero();
            for i in 0..q as usize {
                for j in 0..q as usize {
                    if i != j {
                        total += conj[i].sub(&conj[j]).ord()?;
                    }
                }
            }
            q_to_u64(-total)
        }
    }
}

fn q_to_u64(v: Q) -> Result<u64> {
    if *v.denom() != 1 || v < Q::zero() {
        return Err(Error::PreconditionViolated(format!("non-integral irregularity {}", v)));
    }
    Ok(v.to_integer() as u64)
}

/// `−ord_x ∏_{i,j} (g_i − f_j)`.
pub fn irr_hom(a: &ConnGerm, b: &ConnGerm) -> Result<u64> {
    if a.place == b.place && is_isomorphic(a, b)? {
        return Err(Error::Isomorphic);
    }
    let fa: Vec<PuiseuxSeries> = (0..a.q as i64).map(|j| a.conjugate(j)).collect();
    let mut total = Q::zero();
    for i in 0..b.q as i64 {
        let gi = b.conjugate(i);
        for fj in &fa {
            let d = gi.sub(fj);
            let o = d.ord().map_err(|_| Error::Isomorphic)?;
            if o < Q::zero() {
                total += o;
            }
        }
    }
    q_to_u64(-total)
}

/// `pq' + p'q − Irr(Hom)`.
pub fn intersection_via_irr(a: &ConnGerm, b: &ConnGerm) -> Result<u64> {
    let h = irr_hom(a, b)?;
    let base = a.p() as u64 * b.q as u64 + b.p() as u64 * a.q as u64;
    Ok(base - h)
}

/// Intersection of the associated curves, raising precision until the
/// branch differences are resolved. Non-isomorphic branches differ by
/// `ord_x(y_a − y_b) ≤ p_a/q_a + p_b/q_b`, which fixes the starting precision.
pub fn curve_intersection(a: &ConnGerm, b: &ConnGerm) -> Result<u64> {
    let need = |x: &ConnGerm, y: &ConnGerm| (x.q as i64 * y.p() as i64 + y.q as i64 - 1) / y.q as i64 + 2;
    let (mut ra, mut rb) = (need(a, b), need(b, a));
    for _ in 0..6 {
        let ca = a.associated_curve_to(ra)?;
        let cb = b.associated_curve_to(rb)?;
        match germ::intersection_number(&ca, &cb) {
            Err(Error::ZeroToPrecision(_)) => {
                ra *= 2;
                rb *= 2;
            }
            r => return r,
        }
    }
    Err(Error::ZeroToPrecision("associated curves agree to working precision".into()))
}

/// `(2p − 1)(q − 1) − Irr(End)`.
pub fn milnor_via_irr(c: &ConnGerm) -> Result<u64> {
    let d = c.dual_puiseux_char()?;
    let base = (2 * d.p as u64 - 1) * (d.q as u64 - 1);
    Ok(base - d.irr_end())
}

/// Characteristic of the associated curve; entries divisible by the running
/// gcd are dropped.
pub fn dpc_to_curve_char(d: &DualPuiseuxChar) -> Result<PuiseuxChar> {
    if d.p >= d.q {
        PuiseuxChar::from_candidates(d.q, d.betas.iter().map(|b| 2 * d.p - b))
    } else {
        PuiseuxChar::from_candidates(d.p, d.betas.iter().map(|b| d.p + d.q - b))
    }
}
