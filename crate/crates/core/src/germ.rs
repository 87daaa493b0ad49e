//! Irreducible plane curve germs through their good parametrizations.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cycfield::CycNum;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::puiseux::{PuiseuxSeries, Q};

/// Relative working precision used when an exact non-monomial series has to
/// go through a root or a reversion.
pub const WORK_REL: i64 = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

/// `primary = scale·t^m`, `secondary = φ(t)`; the primary coordinate is `x`
/// for [`Axis::X`] and `y` for [`Axis::Y`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodParam {
    pub axis: Axis,
    pub m: u32,
    pub scale: CycNum,
    pub phi: PuiseuxSeries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuiseuxChar {
    pub m: u32,
    pub betas: Vec<u32>,
}

impl PuiseuxChar {
    pub fn new(m: u32, betas: Vec<u32>) -> Result<PuiseuxChar> {
        let c = PuiseuxChar { m, betas };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::PreconditionViolated("multiplicity must be positive".into()));
        }
        let mut e = self.m;
        let mut prev = 0;
        for &b in &self.betas {
            if b <= prev || b % e == 0 {
                return Err(Error::PreconditionViolated(format!(
                    "invalid characteristic {}",
                    self
                )));
            }
            prev = b;
            e = e.gcd(&b);
        }
        if e != 1 {
            return Err(Error::PreconditionViolated(format!(
                "characteristic {} does not end in gcd 1",
                self
            )));
        }
        Ok(())
    }

    /// `e_0 = m, e_k = gcd(e_{k−1}, β_k)`.
    pub fn e_chain(&self) -> Vec<u32> {
        let mut out = vec![self.m];
        for &b in &self.betas {
            let last = *out.last().unwrap();
            out.push(last.gcd(&b));
        }
        out
    }

    pub fn is_regular(&self) -> bool {
        self.betas.is_empty()
    }

    /// Keep the entries of an ascending list that are not divisible by the
    /// running gcd.
    pub fn from_candidates(m: u32, cands: impl IntoIterator<Item = u32>) -> Result<PuiseuxChar> {
        let mut e = m;
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
        PuiseuxChar::new(m, betas)
    }
}

impl fmt::Display for PuiseuxChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.betas.iter().map(|b| b.to_string()).collect();
        write!(f, "({};{})", self.m, b.join(","))
    }
}

fn work(s: &PuiseuxSeries) -> PuiseuxSeries {
    if s.is_exact() && s.terms().len() > 1 {
        let top = s.terms().last().unwrap().0;
        let lo = s.terms()[0].0;
        s.truncate(Q::from_integer(top.max(lo + WORK_REL) + WORK_REL))
    } else {
        s.clone()
    }
}

fn ord_int(s: &PuiseuxSeries) -> Result<i64> {
    let o = s.ord()?;
    if *o.denom() != 1 {
        return Err(Error::PreconditionViolated(format!(
            "parametrization exponent {} is not an integer",
            o
        )));
    }
    Ok(o.to_integer())
}

impl GoodParam {
    /// `x = t^m, y = φ(t)`.
    pub fn x_primary(m: u32, phi: PuiseuxSeries) -> Result<GoodParam> {
        GoodParam::build(Axis::X, m, CycNum::one(), phi)
    }

    /// `y = t^n, x = ψ(t)`.
    pub fn y_primary(n: u32, psi: PuiseuxSeries) -> Result<GoodParam> {
        GoodParam::build(Axis::Y, n, CycNum::one(), psi)
    }

    pub fn build(axis: Axis, m: u32, scale: CycNum, phi: PuiseuxSeries) -> Result<GoodParam> {
        if m == 0 || scale.is_zero() {
            return Err(Error::PreconditionViolated("degenerate primary coordinate".into()));
        }
        if phi.ram() != 1 {
            let phi2 = phi.coarsen(1).map_err(|_| {
                Error::PreconditionViolated("parametrization must use integer powers of t".into())
            })?;
            return GoodParam::build(axis, m, scale, phi2);
        }
        if phi.has_terms() && ord_int(&phi)? <= 0 {
            return Err(Error::InvalidCenter("germ does not pass through the origin".into()));
        }
        let mut g = m as i64;
        for (k, _) in phi.terms() {
            g = g.gcd(k);
        }
        if g != 1 && phi.is_exact() {
            return Err(Error::PreconditionViolated(format!(
                "parametrization is not minimal (gcd {})",
                g
            )));
        }
        Ok(GoodParam { axis, m, scale, phi })
    }

    /// `(x(t), y(t))`.
    pub fn coords(&self) -> (PuiseuxSeries, PuiseuxSeries) {
        let prim = PuiseuxSeries::monomial(self.scale.clone(), Q::from_integer(self.m as i64));
        match self.axis {
            Axis::X => (prim, self.phi.clone()),
            Axis::Y => (self.phi.clone(), prim),
        }
    }

    pub fn coord(&self, a: Axis) -> PuiseuxSeries {
        let (x, y) = self.coords();
        match a {
            Axis::X => x,
            Axis::Y => y,
        }
    }

    /// `I(C, x)` and `I(C, y)`.
    pub fn axis_orders(&self) -> Result<(i64, i64)> {
        let (x, y) = self.coords();
        Ok((ord_int(&x)?, ord_int(&y)?))
    }

    pub fn multiplicity(&self) -> Result<u32> {
        let (a, b) = self.axis_orders()?;
        Ok(a.min(b) as u32)
    }

    pub fn is_regular(&self) -> Result<bool> {
        Ok(self.multiplicity()? == 1)
    }

    /// Reparametrize a pair of series in `t` so that the coordinate `axis`
    /// becomes `c·u^k`.
    pub fn from_coords(x: &PuiseuxSeries, y: &PuiseuxSeries, axis: Axis) -> Result<GoodParam> {
        let (p, s) = match axis {
            Axis::X => (x, y),
            Axis::Y => (y, x),
        };
        let k = ord_int(p)?;
        if k <= 0 {
            return Err(Error::InvalidCenter("coordinate does not vanish at the center".into()));
        }
        let c = p.terms()[0].1.clone();
        let (phi, k) = if p.terms().len() == 1 && p.is_exact() {
            (s.clone(), k)
        } else {
            let pw = work(p);
            let unit = pw.scalar_mul(&c.inv()?).shift(Q::from_integer(-k));
            let tau = unit.nth_root(k as u32)?.shift(Q::one());
            let rho = tau.revert()?;
            let phi = PuiseuxSeries::compose(&work(s), &rho)?;
            (phi, k)
        };
        let phi = phi.coarsen(1)?;
        let mut g = k;
        for (e, _) in phi.terms() {
            g = g.gcd(e);
        }
        if g > 1 {
            let phi = PuiseuxSeries::new(
                1,
                if phi.is_exact() {
                    crate::puiseux::EXACT
                } else {
                    Integer::div_ceil(&phi.trunc_num(), &g)
                },
                phi.terms().iter().map(|(e, c)| (e / g, c.clone())),
            );
            return GoodParam::build(axis, (k / g) as u32, c, phi);
        }
        GoodParam::build(axis, k as u32, c, phi)
    }

    /// Primary axis on the coordinate of smaller order (ties keep `x`).
    pub fn normalized(&self) -> Result<GoodParam> {
        let (a, b) = self.axis_orders()?;
        let want = if a <= b { Axis::X } else { Axis::Y };
        if want == self.axis {
            Ok(self.clone())
        } else {
            let (x, y) = self.coords();
            GoodParam::from_coords(&x, &y, want)
        }
    }

    pub fn reflect(&self, a: Axis) -> GoodParam {
        let mut out = self.clone();
        if a == self.axis {
            out.scale = -&out.scale;
        } else {
            out.phi = out.phi.neg();
        }
        out
    }

    /// Defining polynomial `∏_i (y − φ(ζ_m^i x^{1/m}))` for an exact
    /// `x`-primary parametrization with unit scale and rational result.
    pub fn implicit_polynomial(&self) -> Result<Poly> {
        if !self.scale.is_one() || !self.phi.is_exact() {
            return Err(Error::PreconditionViolated(
                "implicit equation needs an exact parametrization with unit scale".into(),
            ));
        }
        // keys (s-exponent, y-exponent), x = s^m
        let mut prod: BTreeMap<(i64, u32), CycNum> = BTreeMap::new();
        prod.insert((0, 0), CycNum::one());
        for i in 0..self.m as i64 {
            let conj = self.phi.galois_twist_int(self.m, i);
            let mut next: BTreeMap<(i64, u32), CycNum> = BTreeMap::new();
            for ((se, ye), c) in &prod {
                let e = next.entry((*se, ye + 1)).or_insert_with(CycNum::zero);
                *e = &*e + c;
                for (k, a) in conj.terms() {
                    let e = next.entry((se + k, *ye)).or_insert_with(CycNum::zero);
                    *e = &*e - &(c * a);
                }
            }
            next.retain(|_, c| !c.is_zero());
            prod = next;
        }
        let (xa, ya) = match self.axis {
            Axis::X => (0usize, 1usize),
            Axis::Y => (1, 0),
        };
        let mut out = Poly::zero();
        for ((se, ye), c) in prod {
            if se % self.m as i64 != 0 {
                return Err(Error::PreconditionViolated("non-invariant product".into()));
            }
            let r = c.as_rational().ok_or_else(|| {
                Error::NotRepresentable("implicit equation has non-rational coefficients".into())
            })?;
            let e = [(se / self.m as i64) as u32, ye];
            out.add_term((e[xa], e[ya]), r);
        }
        Ok(out)
    }
}

impl fmt::Display for GoodParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (pn, sn) = match self.axis {
            Axis::X => ("x", "y"),
            Axis::Y => ("y", "x"),
        };
        let prim = PuiseuxSeries::monomial(self.scale.clone(), Q::from_integer(self.m as i64));
        write!(f, "{} = {}, {} = {}", pn, prim.render("t"), sn, self.phi.render("t"))
    }
}

impl PuiseuxSeries {
    /// `t ↦ ζ_m^i t` on a ramification-1 series.
    pub(crate) fn galois_twist_int(&self, m: u32, i: i64) -> PuiseuxSeries {
        PuiseuxSeries::new(
            1,
            self.trunc_num(),
            self.terms()
                .iter()
                .map(|(k, c)| (*k, c * &CycNum::zeta(m, i * k))),
        )
    }
}

pub fn puiseux_char(p: &GoodParam) -> Result<PuiseuxChar> {
    let p = p.normalized()?;
    let m = p.m;
    let mut e = m;
    let mut betas = Vec::new();
    for (k, _) in p.phi.terms() {
        if e == 1 {
            break;
        }
        let k = *k as u32;
        if k % e != 0 {
            betas.push(k);
            e = e.gcd(&k);
        }
    }
    if e != 1 {
        return Err(if p.phi.is_exact() {
            Error::PreconditionViolated("parametrization is not minimal".into())
        } else {
            Error::ZeroToPrecision(format!(
                "characteristic undetermined below t^{}",
                p.phi.trunc_num()
            ))
        });
    }
    PuiseuxChar::new(m, betas)
}

pub fn milnor_number(c: &PuiseuxChar) -> u64 {
    let e = c.e_chain();
    c.betas
        .iter()
        .enumerate()
        .map(|(i, b)| (e[i] - e[i + 1]) as u64 * (*b as u64 - 1))
        .sum()
}

fn branch_orders(a: &GoodParam, b: &GoodParam) -> Result<Vec<Q>> {
    let pa = work(&a.coord(b.axis));
    let sa = work(&a.coord(b.axis.other()));
    let w = pa.scalar_mul(&b.scale.inv()?).nth_root(b.m)?;
    let phib = work(&b.phi);
    let mut out = Vec::with_capacity(b.m as usize);
    for i in 0..b.m as i64 {
        let wi = w.scalar_mul(&CycNum::zeta(b.m, i));
        let d = sa.sub(&PuiseuxSeries::compose(&phib, &wi)?);
        match d.ord() {
            Ok(o) => out.push(o),
            Err(_) => {
                return Err(if a.phi.is_exact() && b.phi.is_exact() {
                    Error::SameGerm
                } else {
                    Error::ZeroToPrecision(format!(
                        "branch difference vanishes below t^({})",
                        d.trunc().map(|t| t.to_string()).unwrap_or_default()
                    ))
                });
            }
        }
    }
    Ok(out)
}

/// `ord_t C_b(x_a(t), y_a(t))`.
pub fn intersection_number(a: &GoodParam, b: &GoodParam) -> Result<u64> {
    let s: Q = branch_orders(a, b)?.into_iter().sum();
    if *s.denom() != 1 || s < Q::zero() {
        return Err(Error::PreconditionViolated(format!("non-integral intersection order {}", s)));
    }
    Ok(s.to_integer() as u64)
}

/// True when `a` lies on `b` to the available precision and both have the
/// same axis orders.
pub fn same_germ(a: &GoodParam, b: &GoodParam) -> Result<bool> {
    if a.axis_orders()? != b.axis_orders()? {
        return Ok(false);
    }
    match branch_orders(a, b) {
        Err(Error::SameGerm) | Err(Error::ZeroToPrecision(_)) => Ok(true),
        Ok(_) => Ok(false),
        Err(e) => Err(e),
    }
}

/// How far `a` is known to lie on `b`: `Some(None)` for an exact match,
/// `Some(Some(t))` when some conjugate difference vanishes below `t^t`,
/// `None` when the germs differ.
pub fn agreement(a: &GoodParam, b: &GoodParam) -> Result<Option<Option<Q>>> {
    if a.axis_orders()? != b.axis_orders()? {
        return Ok(None);
    }
    let pa = work(&a.coord(b.axis));
    let sa = work(&a.coord(b.axis.other()));
    let w = pa.scalar_mul(&b.scale.inv()?).nth_root(b.m)?;
    let phib = work(&b.phi);
    let mut best: Option<Option<Q>> = None;
    for i in 0..b.m as i64 {
        let wi = w.scalar_mul(&CycNum::zeta(b.m, i));
        let d = sa.sub(&PuiseuxSeries::compose(&phib, &wi)?);
        if !d.has_terms() {
            let t = d.trunc();
            best = match (best, t) {
                (_, None) => return Ok(Some(None)),
                (Some(Some(old)), Some(t)) => Some(Some(old.max(t))),
                (_, Some(t)) => Some(Some(t)),
            };
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorReport {
    pub mu: u64,
    pub i_fx: u64,
    pub i_fy: u64,
    pub i_x: u64,
    pub i_y: u64,
    pub pass: bool,
}

/// Checks `μ = I(f,f_x) − I(f,y) + 1` and `μ = I(f,f_y) − I(f,x) + 1`, with
/// the intersections read off the branch: `I(f,f_y)` from the conjugate
/// product along `y` and `I(f,f_x)` from `f_x = −f_y·dy/dx`.
pub fn milnor_cross_check(c: &PuiseuxChar, p: &GoodParam) -> Result<MilnorReport> {
    let mu = milnor_number(c);
    let (ix, iy) = p.axis_orders()?;
    let q = p.normalized()?;
    let (x, y) = q.coords();
    let x = work(&x);
    let y = work(&y);
    // the conjugates of the branch over the primary coordinate
    let (prim, sec) = match q.axis {
        Axis::X => (&x, &y),
        Axis::Y => (&y, &x),
    };
    let _ = prim;
    let mut i_sec = Q::zero();
    for i in 1..q.m as i64 {
        let d = sec.sub(&sec.galois_twist_int(q.m, i));
        i_sec += d.ord()?;
    }
    // I(f, ∂f/∂sec) for the Weierstrass form in the secondary variable
    let dsec_dprim = {
        let dp = prim.derivative();
        let ds = sec.derivative();
        ds.mul(&dp.inverse()?)
    };
    let i_prim = i_sec + dsec_dprim.ord()?;
    let (i_fx, i_fy) = match q.axis {
        Axis::X => (i_prim, i_sec),
        Axis::Y => (i_sec, i_prim),
    };
    let to_u = |v: Q| -> Result<u64> {
        if *v.denom() != 1 || v < Q::zero() {
            Err(Error::PreconditionViolated(format!("non-integral order {}", v)))
        } else {
            Ok(v.to_integer() as u64)
        }
    };
    let i_fx = to_u(i_fx)?;
    let i_fy = to_u(i_fy)?;
    let (ix, iy) = (ix as u64, iy as u64);
    let pass = i_fx + 1 == mu + iy && i_fy + 1 == mu + ix;
    Ok(MilnorReport { mu, i_fx, i_fy, i_x: ix, i_y: iy, pass })
}

/// Strict transform: `σ_1` for an `x`-primary germ, `σ_2` for a `y`-primary
/// one, translated when the two orders coincide.
pub fn blowup(p: &GoodParam) -> Result<GoodParam> {
    let p = p.normalized()?;
    if p.is_regular()? {
        return Err(Error::Regular);
    }
    let m = p.m as i64;
    let mut phi1 = p.phi.scalar_mul(&p.scale.inv()?).shift(Q::from_integer(-m));
    if ord_int(&p.phi)? == m {
        let lead = phi1.terms()[0].1.clone();
        phi1 = phi1.add_constant(&-&lead);
    }
    GoodParam::build(p.axis, p.m, p.scale.clone(), phi1)
}

pub fn blowup_char(c: &PuiseuxChar) -> Result<PuiseuxChar> {
    if c.is_regular() {
        return Err(Error::Regular);
    }
    let m = c.m;
    let b1 = c.betas[0];
    if b1 > 2 * m {
        PuiseuxChar::new(m, c.betas.iter().map(|b| b - m).collect())
    } else {
        let d = b1 - m;
        let tail = c.betas[1..].iter().map(|b| b - b1 + m);
        if m % d != 0 {
            PuiseuxChar::new(d, std::iter::once(m).chain(tail).collect())
        } else {
            PuiseuxChar::new(d, tail.collect())
        }
    }
}

/// `(x, y) ↦ (y/x, y)`.
pub fn sigma3_transform(p: &GoodParam) -> Result<GoodParam> {
    let (x, y) = p.coords();
    let (ox, oy) = p.axis_orders()?;
    if ox >= oy {
        return Err(Error::InvalidCenter(format!(
            "sigma3 needs ord x < ord y, got {} and {}",
            ox, oy
        )));
    }
    let x = work(&x);
    let y = work(&y);
    let x1 = y.mul(&x.inverse()?);
    GoodParam::from_coords(&x1, &y, Axis::Y)?.normalized()
}

/// `(x, y) ↦ (x/y, y)`, without translation.
pub fn sigma2_transform(p: &GoodParam) -> Result<GoodParam> {
    let (x, y) = p.coords();
    let x = work(&x);
    let y = work(&y);
    let x1 = x.mul(&y.inverse()?);
    GoodParam::from_coords(&x1, &y, Axis::Y)?.normalized()
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_t(terms: &[(i64, i64)]) -> PuiseuxSeries {
        PuiseuxSeries::new(1, crate::puiseux::EXACT, terms.iter().map(|&(k, c)| (k, CycNum::from_int(c))))
    }

    fn xp(m: u32, terms: &[(i64, i64)]) -> GoodParam {
        GoodParam::x_primary(m, poly_t(terms)).unwrap()
    }

    #[test]
    fn characteristics() {
        assert_eq!(puiseux_char(&xp(2, &[(3, 1)])).unwrap(), PuiseuxChar::new(2, vec![3]).unwrap());
        let c = puiseux_char(&xp(4, &[(6, 1), (7, 1)])).unwrap();
        assert_eq!(c.betas, vec![6, 7]);
        assert_eq!(c.e_chain(), vec![4, 2, 1]);
        assert!(puiseux_char(&xp(1, &[(5, 1)])).unwrap().is_regular());
        // y = t^2 + t^3 with x = t^3 flips to the y axis
        assert_eq!(puiseux_char(&xp(3, &[(2, 1)])).unwrap(), PuiseuxChar::new(2, vec![3]).unwrap());
    }

    #[test]
    fn milnor_formula() {
        assert_eq!(milnor_number(&PuiseuxChar::new(2, vec![3]).unwrap()), 2);
        assert_eq!(milnor_number(&PuiseuxChar::new(4, vec![6, 7]).unwrap()), 16);
        assert_eq!(milnor_number(&PuiseuxChar::new(1, vec![]).unwrap()), 0);
    }

    #[test]
    fn intersections() {
        let cusp = xp(2, &[(3, 1)]);
        let parab = xp(2, &[(1, 1)]);
        assert_eq!(intersection_number(&cusp, &parab).unwrap(), 2);
        assert_eq!(intersection_number(&parab, &cusp).unwrap(), 2);
        let yaxis = GoodParam::y_primary(1, PuiseuxSeries::exact_zero()).unwrap();
        assert_eq!(intersection_number(&cusp, &yaxis).unwrap(), 2);
        let xaxis = GoodParam::x_primary(1, PuiseuxSeries::exact_zero()).unwrap();
        assert_eq!(intersection_number(&cusp, &xaxis).unwrap(), 3);
        assert!(matches!(intersection_number(&cusp, &cusp), Err(Error::SameGerm)));
    }

    #[test]
    fn cross_checks() {
        let cusp = xp(2, &[(3, 1)]);
        let r = milnor_cross_check(&puiseux_char(&cusp).unwrap(), &cusp).unwrap();
        assert_eq!((r.mu, r.i_fx, r.i_fy, r.pass), (2, 4, 3, true));
        let p25 = xp(2, &[(5, 1)]);
        let r = milnor_cross_check(&puiseux_char(&p25).unwrap(), &p25).unwrap();
        assert_eq!((r.mu, r.i_fx, r.pass), (4, 8, true));
        let reg = xp(1, &[(2, 1)]);
        assert!(milnor_cross_check(&puiseux_char(&reg).unwrap(), &reg).unwrap().pass);
    }

    #[test]
    fn blowups() {
        let b = blowup(&xp(2, &[(3, 1)])).unwrap();
        assert!(b.is_regular().unwrap());
        assert_eq!(b.phi, poly_t(&[(1, 1)]));
        assert_eq!(blowup(&xp(2, &[(5, 1)])).unwrap().phi, poly_t(&[(3, 1)]));
        assert_eq!(blowup(&xp(2, &[(2, 1), (3, 1)])).unwrap().phi, poly_t(&[(1, 1)]));
        assert!(matches!(blowup(&xp(1, &[(3, 1)])), Err(Error::Regular)));
    }

    #[test]
    fn blowup_characteristics() {
        let c = |m, b: &[u32]| PuiseuxChar::new(m, b.to_vec()).unwrap();
        assert_eq!(blowup_char(&c(2, &[5])).unwrap(), c(2, &[3]));
        assert_eq!(blowup_char(&c(2, &[3])).unwrap(), c(1, &[]));
        assert_eq!(blowup_char(&c(4, &[6, 7])).unwrap(), c(2, &[5]));
        assert_eq!(blowup_char(&c(3, &[5])).unwrap(), c(2, &[3]));
    }

    #[test]
    fn sigma3() {
        let p = GoodParam::y_primary(3, poly_t(&[(2, 1)])).unwrap();
        let s = sigma3_transform(&p).unwrap();
        assert_eq!(s.axis_orders().unwrap(), (1, 3));
        let p2 = GoodParam::y_primary(3, poly_t(&[(2, 1), (3, 1)])).unwrap();
        let s2 = sigma3_transform(&p2).unwrap();
        assert_eq!(s2.axis_orders().unwrap(), (1, 3));
        let eq = GoodParam::y_primary(2, poly_t(&[(2, 1), (3, 1)])).unwrap();
        assert!(matches!(sigma3_transform(&eq), Err(Error::InvalidCenter(_))));
    }

    #[test]
    fn implicit_equations() {
        let f = xp(4, &[(6, 1), (7, 1)]).implicit_polynomial().unwrap();
        assert_eq!(crate::poly::milnor_bruteforce_auto(&f, 40).unwrap(), 16);
        let cusp = xp(2, &[(3, 1)]).implicit_polynomial().unwrap();
        assert_eq!(cusp.to_string(), "-x^3 + y^2");
    }
}
