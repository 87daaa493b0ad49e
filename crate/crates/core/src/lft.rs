//! Local Fourier transforms of `E_{f,q}` on series and on characteristics.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::connection::{ConnGerm, DualPuiseuxChar, Place};
use crate::cycfield::CycNum;
use crate::error::{Error, Result};
use crate::germ::{self, Axis, GoodParam};
use crate::puiseux::{PuiseuxSeries, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LftDir {
    #[serde(rename = "0inf")]
    ZeroInf,
    #[serde(rename = "inf0")]
    InfZero,
    #[serde(rename = "infinf")]
    InfInf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LftKind {
    pub dir: LftDir,
    pub inverse: bool,
}

impl LftDir {
    pub fn name(self) -> &'static str {
        match self {
            LftDir::ZeroInf => "0inf",
            LftDir::InfZero => "inf0",
            LftDir::InfInf => "infinf",
        }
    }
}

impl FromStr for LftDir {
    type Err = Error;
    fn from_str(s: &str) -> Result<LftDir> {
        match s {
            "0inf" | "zero_to_inf" => Ok(LftDir::ZeroInf),
            "inf0" | "inf_to_zero" => Ok(LftDir::InfZero),
            "infinf" | "inf_to_inf" => Ok(LftDir::InfInf),
            _ => Err(Error::Parse {
                col: 1,
                msg: format!("unknown transform kind '{}'", s),
            }),
        }
    }
}

/// Coupling data: the new coordinate is `κ·w^a·F^b` with `F` the input
/// (minus `shift_in` for inverses), and the output is `σ·F + shift_out`.
struct Coupling {
    kappa: i64,
    a: i64,
    b: i64,
    sigma: i64,
    new_q: u32,
    shift_in: Q,
    shift_out: Q,
}

impl LftKind {
    pub const ZERO_INF: LftKind = LftKind { dir: LftDir::ZeroInf, inverse: false };
    pub const INF_ZERO: LftKind = LftKind { dir: LftDir::InfZero, inverse: false };
    pub const INF_INF: LftKind = LftKind { dir: LftDir::InfInf, inverse: false };

    pub fn forward(dir: LftDir) -> LftKind {
        LftKind { dir, inverse: false }
    }

    pub fn inverse_of(dir: LftDir) -> LftKind {
        LftKind { dir, inverse: true }
    }

    pub fn inverted(self) -> LftKind {
        LftKind { inverse: !self.inverse, ..self }
    }

    pub fn place_in(self) -> Place {
        match (self.dir, self.inverse) {
            (LftDir::ZeroInf, false) => Place::Zero,
            (LftDir::InfZero, true) => Place::Zero,
            _ => Place::Infinity,
        }
    }

    pub fn place_out(self) -> Place {
        match (self.dir, self.inverse) {
            (LftDir::InfZero, false) => Place::Zero,
            (LftDir::ZeroInf, true) => Place::Zero,
            _ => Place::Infinity,
        }
    }

    /// Rank of the output for an input of rank `q` and slope `p/q`.
    pub fn new_rank(self, q: u32, p: u32) -> Result<u32> {
        let bad = |why: &str| {
            Err(Error::PreconditionViolated(format!(
                "{} needs {} (q = {}, p = {})",
                self, why, q, p
            )))
        };
        match (self.dir, self.inverse) {
            (LftDir::ZeroInf, false) | (LftDir::InfZero, true) => Ok(p + q),
            (LftDir::InfZero, false) | (LftDir::ZeroInf, true) => {
                if p < q {
                    Ok(q - p)
                } else {
                    bad("p < q")
                }
            }
            (LftDir::InfInf, _) => {
                if p > q {
                    Ok(p - q)
                } else {
                    bad("p > q")
                }
            }
        }
    }

    fn coupling(self, q: u32, p: u32) -> Result<Coupling> {
        let new_q = self.new_rank(q, p)?;
        let (pq, pi) = (p as i64, q as i64);
        let half = |den: i64| Q::new(pq, 2 * den);
        let c = match (self.dir, self.inverse) {
            (LftDir::ZeroInf, false) => Coupling {
                kappa: -1, a: 1, b: -1, sigma: 1, new_q,
                shift_in: Q::zero(), shift_out: half(pq + pi),
            },
            (LftDir::InfZero, false) => Coupling {
                kappa: 1, a: 1, b: 1, sigma: -1, new_q,
                shift_in: Q::zero(), shift_out: half(pi - pq),
            },
            (LftDir::InfInf, false) => Coupling {
                kappa: 1, a: -1, b: -1, sigma: -1, new_q,
                shift_in: Q::zero(), shift_out: half(pq - pi),
            },
            (LftDir::ZeroInf, true) => Coupling {
                kappa: -1, a: 1, b: 1, sigma: 1, new_q,
                shift_in: half(pi), shift_out: Q::zero(),
            },
            (LftDir::InfZero, true) => Coupling {
                kappa: -1, a: 1, b: -1, sigma: -1, new_q,
                shift_in: half(pi), shift_out: Q::zero(),
            },
            (LftDir::InfInf, true) => Coupling {
                kappa: -1, a: -1, b: -1, sigma: -1, new_q,
                shift_in: half(pi), shift_out: Q::zero(),
            },
        };
        Ok(c)
    }

    /// Constant added to the output by a forward transform.
    pub fn output_shift(self, q: u32, p: u32) -> Result<Q> {
        Ok(self.coupling(q, p)?.shift_out)
    }
}

impl fmt::Display for LftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.dir.name())
        } else {
            write!(f, "{}", self.dir.name())
        }
    }
}

fn cq(v: Q) -> CycNum {
    CycNum::frac(*v.numer(), *v.denom())
}

/// Series-level transform.
pub fn lft_series(k: LftKind, c: &ConnGerm) -> Result<ConnGerm> {
    if c.place() != k.place_in() {
        return Err(Error::PreconditionViolated(format!(
            "{} acts on connections at {}, got one at {}",
            k,
            k.place_in(),
            c.place()
        )));
    }
    if !c.has_constant() {
        return Err(Error::ZeroToPrecision("constant term of the input is unknown".into()));
    }
    let (q, p) = (c.q(), c.p());
    let cp = k.coupling(q, p)?;
    let big_f = c.f().add_constant(&-cq(cp.shift_in));
    let mut rel = p as i64 + 2;
    for _ in 0..8 {
        let g = solve(&big_f, q, &cp, rel).map_err(hint)?;
        if g.trunc_num() > 0 {
            return ConnGerm::new(g, cp.new_q, k.place_out());
        }
        rel *= 2;
    }
    Err(Error::ZeroToPrecision(format!("{}: output constant not resolved", k)))
}

fn hint(e: Error) -> Error {
    match e {
        Error::NotRepresentable(m) => Error::NotRepresentable(format!(
            "{}; the characteristic-level transform is still available, or rescale so the \
             leading coefficient is a rational power times a root of unity",
            m
        )),
        e => e,
    }
}

fn solve(big_f: &PuiseuxSeries, q: u32, cp: &Coupling, rel: i64) -> Result<PuiseuxSeries> {
    let lo = big_f.terms()[0].0;
    let fw = big_f.truncate(Q::new(lo + rel, q as i64));
    // work in t = w^(1/q)
    let ft = fw.in_root_variable(q);
    let fb = if cp.b == 1 { ft.clone() } else { ft.inverse()? };
    let n = fb
        .shift(Q::from_integer(cp.a * q as i64))
        .scalar_mul(&CycNum::from_int(cp.kappa));
    let tau = n.revert()?;
    let g = PuiseuxSeries::compose(&ft, &tau)?
        .scalar_mul(&CycNum::from_int(cp.sigma))
        .add_constant(&cq(cp.shift_out));
    let g = g.normalize_ram();
    if cp.new_q % g.ram() != 0 {
        return Err(Error::PreconditionViolated(format!(
            "output needs ramification {}, expected a divisor of {}",
            g.ram(),
            cp.new_q
        )));
    }
    Ok(g.with_ram(cp.new_q))
}

pub fn lft_inverse_series(dir: LftDir, c: &ConnGerm) -> Result<ConnGerm> {
    lft_series(LftKind::inverse_of(dir), c)
}

/// Characteristic-level transform. Every kind reads the new characteristic
/// off `[p, β_1, …, β_g]` with the gcd chain started at the new rank.
pub fn lft_char(k: LftKind, d: &DualPuiseuxChar) -> Result<DualPuiseuxChar> {
    let nq = k.new_rank(d.q, d.p)?;
    DualPuiseuxChar::from_candidates(nq, d.p, std::iter::once(d.p).chain(d.betas.iter().copied()))
}

#[derive(Clone, Debug, Serialize)]
pub struct BlowupReport {
    pub kind: String,
    pub lhs: String,
    pub rhs: String,
    pub agreed_below: Option<String>,
    pub pass: bool,
}

/// Compare the associated curve of the transform with the blown-up (or
/// `σ_3`-transformed) associated curve of the input.
pub fn check_fourier_blowup(k: LftKind, c: &ConnGerm) -> Result<BlowupReport> {
    if k.inverse {
        return Err(Error::PreconditionViolated(
            "the blowup correspondence is stated for forward transforms".into(),
        ));
    }
    let out = lft_series(k, c)?;
    let shift = k.output_shift(c.q(), c.p())?;
    let g0 = ConnGerm::new(out.f().add_constant(&-cq(shift)), out.q(), out.place())?;
    // curves only as far as the isomorphism classes determine them
    let cf = c.associated_curve_to(c.p() as i64 + 1)?;
    let cg = g0.associated_curve_to(g0.p() as i64 + 1)?;
    let (lhs, rhs) = match k.dir {
        LftDir::InfZero => (germ::sigma2_transform(&cf)?, cg.reflect(Axis::Y)),
        LftDir::ZeroInf => (germ::sigma2_transform(&cg)?, cf.reflect(Axis::X)),
        LftDir::InfInf => (germ::sigma3_transform(&cf)?, cg.reflect(Axis::Y)),
    };
    let agreed = agreement(&lhs, &rhs)?;
    let need = germ::puiseux_char(&lhs)
        .ok()
        .and_then(|pc| pc.betas.last().copied())
        .unwrap_or(0) as i64;
    let pass = match agreed {
        Some(None) => true,
        Some(Some(t)) => t > Q::from_integer(need),
        None => false,
    };
    Ok(BlowupReport {
        kind: k.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        agreed_below: agreed.map(|t| t.map(|t| format!("t^({})", t)).unwrap_or_else(|| "exact".into())),
        pass,
    })
}

fn agreement(a: &GoodParam, b: &GoodParam) -> Result<Option<Option<Q>>> {
    let a = a.normalized()?;
    let b = b.normalized()?;
    if a.axis_orders()? != b.axis_orders()? {
        return Ok(None);
    }
    germ::agreement(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::is_isomorphic;

    fn conn(terms: &[(i64, i64, i64)], q: u32, place: Place) -> ConnGerm {
        let f = PuiseuxSeries::from_q_terms(
            terms.iter().map(|&(a, b, c)| (Q::new(a, b), CycNum::from_int(c))).collect(),
            None,
        );
        ConnGerm::new(f, q, place).unwrap()
    }

    fn dpc(q: u32, p: u32, b: &[u32]) -> DualPuiseuxChar {
        DualPuiseuxChar::new(q, p, b.to_vec()).unwrap()
    }

    #[test]
    fn zero_to_inf() {
        let c = conn(&[(-1, 2, 1)], 2, Place::Zero);
        let g = lft_series(LftKind::ZERO_INF, &c).unwrap();
        assert_eq!(g.q(), 3);
        assert_eq!(g.f().ord().unwrap(), Q::new(-1, 3));
        assert_eq!(g.f().coeff(Q::zero()).unwrap(), CycNum::frac(1, 6));
        assert_eq!(g.dual_puiseux_char().unwrap(), dpc(3, 1, &[1]));
        // ẑ = −z^{−3/2}: the relation f = −z ẑ holds with z^{1/2} = (−ζ̂)^{1/3}
        let lead = g.f().terms()[0].1.clone();
        assert_eq!(lead.pow(3).unwrap(), CycNum::from_int(-1));
        let back = lft_inverse_series(LftDir::ZeroInf, &g).unwrap();
        assert!(is_isomorphic(&back, &c).unwrap());
    }

    #[test]
    fn inf_to_zero() {
        let c = conn(&[(-1, 2, 1)], 2, Place::Infinity);
        let g = lft_series(LftKind::INF_ZERO, &c).unwrap();
        assert_eq!(g.q(), 1);
        assert_eq!(g.f().terms(), &[(-1, CycNum::from_int(-1)), (0, CycNum::frac(1, 2))]);
        assert_eq!(g.dual_puiseux_char().unwrap(), dpc(1, 1, &[]));
        let back = lft_inverse_series(LftDir::InfZero, &g).unwrap();
        assert!(is_isomorphic(&back, &c).unwrap());
    }

    #[test]
    fn inf_to_inf() {
        let c = conn(&[(-3, 2, 1)], 2, Place::Infinity);
        let g = lft_series(LftKind::INF_INF, &c).unwrap();
        assert_eq!(g.q(), 1);
        assert_eq!(g.f().terms(), &[(-3, CycNum::from_int(-1)), (0, CycNum::frac(3, 2))]);
        assert_eq!(g.dual_puiseux_char().unwrap(), dpc(1, 3, &[]));
        let back = lft_inverse_series(LftDir::InfInf, &g).unwrap();
        assert!(is_isomorphic(&back, &c).unwrap());
    }

    #[test]
    fn characteristics() {
        assert_eq!(lft_char(LftKind::INF_INF, &dpc(2, 3, &[3])).unwrap(), dpc(1, 3, &[]));
        assert_eq!(lft_char(LftKind::ZERO_INF, &dpc(2, 1, &[1])).unwrap(), dpc(3, 1, &[1]));
        assert_eq!(lft_char(LftKind::INF_ZERO, &dpc(4, 1, &[1])).unwrap(), dpc(3, 1, &[1]));
        assert_eq!(lft_char(LftKind::INF_INF, &dpc(4, 6, &[6, 3])).unwrap(), dpc(2, 6, &[3]));
        assert_eq!(
            lft_char(LftKind::inverse_of(LftDir::InfInf), &dpc(1, 5, &[])).unwrap(),
            dpc(4, 5, &[5])
        );
        assert!(lft_char(LftKind::INF_ZERO, &dpc(2, 3, &[3])).is_err());
    }

    #[test]
    fn series_and_char_agree() {
        let cases = [
            (vec![(-3, 2, 1), (-5, 4, 1)], 4, LftKind::INF_INF, Place::Infinity),
            (vec![(-2, 1, 1), (-3, 2, 1)], 2, LftKind::INF_INF, Place::Infinity),
            (vec![(-2, 1, 1), (-3, 2, 1)], 2, LftKind::ZERO_INF, Place::Zero),
            (vec![(-2, 3, 2), (-1, 3, 1)], 3, LftKind::INF_ZERO, Place::Infinity),
        ];
        for (t, q, k, pl) in cases {
            let c = conn(&t, q, pl);
            let g = lft_series(k, &c).unwrap();
            assert_eq!(
                g.dual_puiseux_char().unwrap(),
                lft_char(k, &c.dual_puiseux_char().unwrap()).unwrap(),
                "{} on {}",
                k,
                c
            );
            let back = lft_series(k.inverted(), &g).unwrap();
            assert!(is_isomorphic(&back, &c).unwrap(), "round trip of {} on {}", k, c);
        }
    }

    #[test]
    fn blowup_correspondence() {
        let r = check_fourier_blowup(LftKind::INF_ZERO, &conn(&[(-1, 2, 1)], 2, Place::Infinity)).unwrap();
        assert!(r.pass, "{:?}", r);
        let r = check_fourier_blowup(LftKind::INF_INF, &conn(&[(-3, 2, 1)], 2, Place::Infinity)).unwrap();
        assert!(r.pass, "{:?}", r);
        let r = check_fourier_blowup(LftKind::ZERO_INF, &conn(&[(-1, 2, 1)], 2, Place::Zero)).unwrap();
        assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn wrong_place_is_refused() {
        let c = conn(&[(-3, 2, 1)], 2, Place::Zero);
        assert!(matches!(lft_series(LftKind::INF_INF, &c), Err(Error::PreconditionViolated(_))));
    }
}
