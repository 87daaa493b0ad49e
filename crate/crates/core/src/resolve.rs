//! Resolution of ramified irregular singularities by additions and local
//! Fourier transforms.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::connection::{ConnGerm, DualPuiseuxChar};
use crate::error::{Error, Result};
use crate::lft::{self, LftDir, LftKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Directive {
    CancelLeading,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum ResolutionMove {
    /// Cancel every integer exponent of the principal part above `β_1`;
    /// `n` is the leading exponent removed.
    Addition { n: u32, directive: Directive },
    Lft { kind: LftDir },
}

impl fmt::Display for ResolutionMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolutionMove::Addition { n, .. } => write!(f, "addition(cancel x^-{}..)", n),
            ResolutionMove::Lft { kind } => write!(f, "lft({})", kind.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionPlan {
    pub initial: DualPuiseuxChar,
    pub moves: Vec<ResolutionMove>,
    /// `trace[i]` is the characteristic after `moves[i]`.
    pub trace: Vec<DualPuiseuxChar>,
    pub terminal: DualPuiseuxChar,
    pub success: bool,
    pub stuck: Option<DualPuiseuxChar>,
    pub violated: Option<usize>,
}

impl ResolutionPlan {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// First index `i` (1-based) with `e_{i−1} ≢ ±e_i (mod β_i)`.
pub fn first_violation(d: &DualPuiseuxChar) -> Option<usize> {
    let e = d.e_chain();
    d.betas.iter().enumerate().find_map(|(i, &b)| {
        let (a, c) = (e[i] % b, e[i + 1] % b);
        if a == c || (a + c) % b == 0 {
            None
        } else {
            Some(i + 1)
        }
    })
}

pub fn is_resolvable(d: &DualPuiseuxChar) -> bool {
    first_violation(d).is_none()
}

/// `2·Σ (e_{i−1}/e_i + 1)`.
pub fn length_bound(d: &DualPuiseuxChar) -> usize {
    let e = d.e_chain();
    (0..d.g()).map(|i| 2 * (e[i] / e[i + 1]) as usize + 2).sum()
}

fn addition_char(d: &DualPuiseuxChar) -> DualPuiseuxChar {
    DualPuiseuxChar {
        p: d.betas[0],
        ..d.clone()
    }
}

/// Greedy plan: additions bring `p` down to `β_1`, then `inf_to_zero` while
/// `p < q` and `inf_to_inf` while `p > q`.
pub fn plan(d: &DualPuiseuxChar) -> ResolutionPlan {
    let mut moves = Vec::new();
    let mut trace = Vec::new();
    let mut cur = d.clone();
    let mut seen = HashSet::new();
    let mut stuck = None;
    while cur.q > 1 {
        if cur.p != cur.betas[0] {
            moves.push(ResolutionMove::Addition {
                n: cur.p,
                directive: Directive::CancelLeading,
            });
            cur = addition_char(&cur);
            trace.push(cur.clone());
        }
        if !seen.insert(cur.clone()) {
            stuck = Some(cur.clone());
            break;
        }
        let dir = if cur.p < cur.q { LftDir::InfZero } else { LftDir::InfInf };
        let next = lft::lft_char(LftKind::forward(dir), &cur)
            .expect("lft_char preconditions hold by construction");
        moves.push(ResolutionMove::Lft { kind: dir });
        cur = next;
        trace.push(cur.clone());
    }
    let success = cur.q == 1;
    let violated = if success {
        None
    } else {
        Some(first_violation(d).unwrap_or(0))
    };
    ResolutionPlan {
        initial: d.clone(),
        moves,
        trace,
        terminal: cur,
        success,
        stuck,
        violated,
    }
}

#[derive(Clone, Debug)]
pub enum Execution {
    Done(ConnGerm),
    /// Stopped at the first move that is not representable over the
    /// cyclotomic numbers; `partial` holds the connections reached so far.
    Unavailable {
        step: usize,
        reason: String,
        partial: Vec<ConnGerm>,
    },
}

/// Runs a successful plan on an actual connection. Each transform is applied
/// with the connection placed where that transform acts.
pub fn execute_series(p: &ResolutionPlan, c: &ConnGerm) -> Result<Execution> {
    if !p.success {
        return Err(Error::PreconditionViolated(format!(
            "plan for {} does not resolve",
            p.initial
        )));
    }
    let d0 = c.dual_puiseux_char()?;
    if d0 != p.initial {
        return Err(Error::PreconditionViolated(format!(
            "connection has characteristic {}, plan starts at {}",
            d0, p.initial
        )));
    }
    let mut cur = c.clone();
    let mut partial = Vec::new();
    for (i, mv) in p.moves.iter().enumerate() {
        let next = match mv {
            ResolutionMove::Addition { .. } => cancel_leading(&cur),
            ResolutionMove::Lft { kind } => {
                let k = LftKind::forward(*kind);
                lft::lft_series(k, &cur.at(k.place_in()))
            }
        };
        cur = match next {
            Ok(n) => n,
            Err(Error::NotRepresentable(reason)) => {
                return Ok(Execution::Unavailable { step: i, reason, partial })
            }
            Err(e) => return Err(e),
        };
        let got = cur.dual_puiseux_char()?;
        if got != p.trace[i] {
            return Err(Error::TraceMismatch {
                step: i,
                expected: p.trace[i].to_string(),
                got: got.to_string(),
            });
        }
        partial.push(cur.clone());
    }
    Ok(Execution::Done(cur))
}

fn cancel_leading(c: &ConnGerm) -> Result<ConnGerm> {
    let d = c.dual_puiseux_char()?;
    let b1 = d.betas.first().copied().unwrap_or(0) as i64;
    let q = c.q() as i64;
    let mut out = c.clone();
    for (k, a) in c.f().terms() {
        if *k < -b1 {
            out = out.addition(&-a, -k / q)?;
        }
    }
    Ok(out)
}

/// Every valid characteristic with `q ≤ qmax`, `p ≤ pmax` and at most `gmax`
/// characteristic exponents, sorted.
pub fn enumerate_dpcs(qmax: u32, pmax: u32, gmax: usize) -> Vec<DualPuiseuxChar> {
    let mut out = Vec::new();
    for q in 1..=qmax {
        for p in 1..=pmax {
            if q == 1 {
                out.push(DualPuiseuxChar { q, p, betas: vec![] });
                continue;
            }
            let top = if p % q == 0 { p } else { p + 1 };
            let mut betas = Vec::new();
            extend(q, p, q, top, gmax, &mut betas, &mut out);
        }
    }
    out.sort();
    out
}

fn extend(
    q: u32,
    p: u32,
    e: u32,
    below: u32,
    left: usize,
    betas: &mut Vec<u32>,
    out: &mut Vec<DualPuiseuxChar>,
) {
    if left == 0 {
        return;
    }
    let lo = if betas.is_empty() && p % q != 0 { p } else { 1 };
    for b in lo..below.min(p + 1) {
        if b % e == 0 {
            continue;
        }
        let ne = num_integer::gcd(e, b);
        betas.push(b);
        if ne == 1 {
            out.push(DualPuiseuxChar { q, p, betas: betas.clone() });
        } else {
            extend(q, p, ne, b, left - 1, betas, out);
        }
        betas.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub dpc: DualPuiseuxChar,
    pub resolvable: bool,
    pub plan_ok: bool,
    pub plan_len: usize,
}

impl CensusRow {
    pub fn csv(&self) -> String {
        let b: Vec<String> = self.dpc.betas.iter().map(|b| b.to_string()).collect();
        format!(
            "{},{},{},{},{}",
            self.dpc.q,
            self.dpc.p,
            b.join(" "),
            self.resolvable,
            if self.plan_ok { self.plan_len.to_string() } else { String::new() }
        )
    }
}

pub const CENSUS_HEADER: &str = "q,p,betas,resolvable,plan_len";

fn census_row(d: &DualPuiseuxChar) -> CensusRow {
    let pl = plan(d);
    CensusRow {
        dpc: d.clone(),
        resolvable: is_resolvable(d),
        plan_ok: pl.success,
        plan_len: pl.len(),
    }
}

/// Resolvability and plan outcome for every enumerated characteristic, in
/// enumeration order.
pub fn census(qmax: u32, pmax: u32, gmax: usize) -> Vec<CensusRow> {
    let all = enumerate_dpcs(qmax, pmax, gmax);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        all.par_iter().map(census_row).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        all.iter().map(census_row).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::Place;
    use crate::cycfield::CycNum;
    use crate::puiseux::{PuiseuxSeries, Q};

    fn dpc(q: u32, p: u32, b: &[u32]) -> DualPuiseuxChar {
        DualPuiseuxChar::new(q, p, b.to_vec()).unwrap()
    }

    fn conn(terms: &[(i64, i64, i64)], q: u32, place: Place) -> ConnGerm {
        let f = PuiseuxSeries::from_q_terms(
            terms.iter().map(|&(a, b, c)| (Q::new(a, b), CycNum::from_int(c))).collect(),
            None,
        );
        ConnGerm::new(f, q, place).unwrap()
    }

    #[test]
    fn congruences() {
        assert!(is_resolvable(&dpc(2, 3, &[3])));
        assert!(!is_resolvable(&dpc(2, 5, &[5])));
        assert_eq!(first_violation(&dpc(2, 5, &[5])), Some(1));
        assert!(is_resolvable(&dpc(4, 6, &[6, 3])));
    }

    #[test]
    fn plans() {
        let pl = plan(&dpc(2, 3, &[3]));
        assert!(pl.success);
        assert_eq!(pl.moves, vec![ResolutionMove::Lft { kind: LftDir::InfInf }]);
        assert_eq!(pl.terminal, dpc(1, 3, &[]));

        let pl = plan(&dpc(4, 6, &[6, 3]));
        assert!(pl.success);
        assert_eq!(pl.len(), 3);
        assert_eq!(pl.trace, vec![dpc(2, 6, &[3]), dpc(2, 3, &[3]), dpc(1, 3, &[])]);
        assert!(matches!(pl.moves[1], ResolutionMove::Addition { n: 6, .. }));

        let pl = plan(&dpc(2, 5, &[5]));
        assert!(!pl.success);
        assert_eq!(pl.violated, Some(1));
        assert!(pl.stuck.is_some());
    }

    #[test]
    fn series_runs() {
        let c = conn(&[(-3, 2, 1)], 2, Place::Infinity);
        let pl = plan(&c.dual_puiseux_char().unwrap());
        match execute_series(&pl, &c).unwrap() {
            Execution::Done(g) => {
                assert_eq!(g.q(), 1);
                assert_eq!(g.f().terms(), &[(-3, CycNum::from_int(-1)), (0, CycNum::frac(3, 2))]);
            }
            e => panic!("{:?}", e),
        }
        let c = conn(&[(-1, 2, 1)], 2, Place::Infinity);
        let pl = plan(&c.dual_puiseux_char().unwrap());
        assert_eq!(pl.moves, vec![ResolutionMove::Lft { kind: LftDir::InfZero }]);
        assert!(matches!(execute_series(&pl, &c).unwrap(), Execution::Done(g) if g.q() == 1));

        let c = conn(&[(-5, 2, 1)], 2, Place::Infinity);
        assert!(execute_series(&plan(&c.dual_puiseux_char().unwrap()), &c).is_err());
    }

    #[test]
    fn series_with_addition() {
        let c = conn(&[(-3, 2, 1), (-3, 4, 1)], 4, Place::Infinity);
        assert_eq!(c.dual_puiseux_char().unwrap(), dpc(4, 6, &[6, 3]));
        let pl = plan(&dpc(4, 6, &[6, 3]));
        match execute_series(&pl, &c).unwrap() {
            Execution::Done(g) => assert_eq!(g.q(), 1),
            e => panic!("{:?}", e),
        }
    }

    #[test]
    fn small_census() {
        let rows = census(12, 16, 3);
        for r in &rows {
            assert_eq!(r.resolvable, r.plan_ok, "{}", r.dpc);
            if r.plan_ok {
                assert!(r.plan_len <= length_bound(&r.dpc), "{}", r.dpc);
            }
        }
        assert!(rows.iter().all(|r| r.dpc.validate().is_ok()));
    }
}
