//! Seeded random corpora: connections with prescribed characteristic,
//! coefficient perturbations, and semigroup-supported unit series.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connection::{ConnGerm, DualPuiseuxChar, Place};
use crate::cycfield::CycNum;
use crate::puiseux::{PuiseuxSeries, Q};
use crate::resolve::enumerate_dpcs;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct ConnOptions {
    /// Allow coefficients from `Q(ζ_3)` and `Q(ζ_4)`.
    pub cyclotomic: bool,
    /// Leading coefficient `±1`.
    pub unit_lead: bool,
    /// Non-characteristic terms that keep the characteristic fixed.
    pub extras: bool,
    pub constant: bool,
}

impl Default for ConnOptions {
    fn default() -> Self {
        ConnOptions { cyclotomic: true, unit_lead: false, extras: true, constant: true }
    }
}

/// Characteristic drawn uniformly from all valid ones in the box.
pub fn random_dpc(
    rng: &mut Rng8,
    q: std::ops::RangeInclusive<u32>,
    pmax: u32,
    gmax: usize,
    filter: impl Fn(&DualPuiseuxChar) -> bool,
) -> DualPuiseuxChar {
    let all: Vec<DualPuiseuxChar> = enumerate_dpcs(*q.end(), pmax, gmax)
        .into_iter()
        .filter(|d| q.contains(&d.q) && filter(d))
        .collect();
    all.choose(rng).expect("non-empty box").clone()
}

fn small_nonzero(rng: &mut Rng8) -> i64 {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

pub fn random_coeff(rng: &mut Rng8, cyclotomic: bool) -> CycNum {
    let a = CycNum::from_int(small_nonzero(rng));
    if !cyclotomic {
        return a;
    }
    match rng.gen_range(0..5) {
        0 => a * CycNum::zeta(3, 1),
        1 => a * CycNum::zeta(4, 1),
        2 => a + CycNum::zeta(4, 1),
        _ => a,
    }
}

/// A connection with exactly the characteristic `d`.
pub fn random_conn_with(rng: &mut Rng8, d: &DualPuiseuxChar, place: Place, opt: ConnOptions) -> ConnGerm {
    let e = d.e_chain();
    let mut terms: Vec<(i64, CycNum)> = Vec::new();
    let lead = |rng: &mut Rng8| {
        if opt.unit_lead {
            CycNum::from_int(if rng.gen_bool(0.5) { 1 } else { -1 })
        } else {
            random_coeff(rng, opt.cyclotomic)
        }
    };
    for k in (1..=d.p as i64).rev() {
        let pos = d.betas.iter().position(|&b| b as i64 == k);
        let top = k == d.p as i64;
        if pos.is_some() || top {
            let c = if top { lead(rng) } else { random_coeff(rng, opt.cyclotomic) };
            terms.push((-k, c));
            continue;
        }
        if !opt.extras || !rng.gen_bool(0.3) {
            continue;
        }
        // running gcd just above k
        let i = d.betas.iter().filter(|&&b| b as i64 > k).count();
        if k % e[i] as i64 == 0 {
            terms.push((-k, random_coeff(rng, opt.cyclotomic)));
        }
    }
    if opt.constant && rng.gen_bool(0.5) {
        terms.push((0, CycNum::frac(small_nonzero(rng), rng.gen_range(1..=4))));
    }
    let f = PuiseuxSeries::new(d.q, crate::puiseux::EXACT, terms);
    let c = ConnGerm::new(f, d.q, place).expect("generated connection is irreducible");
    debug_assert_eq!(&c.dual_puiseux_char().unwrap(), d);
    c
}

/// Same support, every coefficient scaled by an independent random factor.
pub fn perturb(rng: &mut Rng8, c: &ConnGerm, cyclotomic: bool) -> ConnGerm {
    let terms: Vec<(Q, CycNum)> = c
        .f()
        .q_terms()
        .map(|(e, a)| (e, a * &random_coeff(rng, cyclotomic)))
        .collect();
    let f = PuiseuxSeries::from_q_terms(terms, None).with_ram(c.q());
    ConnGerm::new(f, c.q(), c.place()).expect("perturbation keeps the support")
}

/// An additive semigroup `S ⊂ ℤ_{≥0}` below `bound`, with a marked set `S_0`
/// of indecomposable elements.
#[derive(Clone, Debug)]
pub struct Semigroup {
    pub gens: Vec<i64>,
    pub bound: i64,
    pub elems: BTreeSet<i64>,
    pub marked: BTreeSet<i64>,
}

impl Semigroup {
    pub fn generated(gens: &[i64], bound: i64) -> Semigroup {
        let mut elems = BTreeSet::new();
        elems.insert(0);
        for s in 1..bound {
            if gens.iter().any(|&g| s >= g && elems.contains(&(s - g))) {
                elems.insert(s);
            }
        }
        Semigroup { gens: gens.to_vec(), bound, elems, marked: BTreeSet::new() }
    }

    pub fn contains(&self, s: i64) -> bool {
        self.elems.contains(&s)
    }

    pub fn is_indecomposable(&self, s: i64) -> bool {
        s != 0
            && self.contains(s)
            && !self
                .elems
                .iter()
                .any(|&a| a > 0 && a < s && self.contains(s - a))
    }

    /// `𝒪_S` membership below the truncation of `f`.
    pub fn supports(&self, f: &PuiseuxSeries) -> bool {
        f.q_terms().all(|(e, _)| {
            *e.denom() == 1 && (e.to_integer() >= self.bound || self.contains(e.to_integer()))
        })
    }

    /// `𝒪*_S` membership below the truncation of `f`.
    pub fn supports_star(&self, f: &PuiseuxSeries) -> bool {
        let known = |s: i64| f.trunc().map(|t| Q::from_integer(s) < t).unwrap_or(true);
        self.supports(f)
            && self
                .marked
                .iter()
                .all(|&s| !known(s) || !f.coeff(Q::from_integer(s)).map(|c| c.is_zero()).unwrap_or(true))
    }
}

pub fn random_semigroup(rng: &mut Rng8, bound: i64) -> Semigroup {
    let k = rng.gen_range(1..=3);
    let mut gens: Vec<i64> = (0..k).map(|_| rng.gen_range(2..=9)).collect();
    gens.sort();
    gens.dedup();
    let mut s = Semigroup::generated(&gens, bound);
    let atoms: Vec<i64> = s.elems.iter().copied().filter(|&x| s.is_indecomposable(x)).collect();
    s.marked = atoms.into_iter().filter(|_| rng.gen_bool(0.7)).collect();
    s
}

/// A unit `α` with `α(0) ≠ 0`. With `inside` it lies in `𝒪*_S`; otherwise it
/// may leave `𝒪_S` or miss a marked coefficient.
pub fn random_unit_on(rng: &mut Rng8, s: &Semigroup, inside: bool) -> PuiseuxSeries {
    let mut terms = vec![(0, CycNum::from_int(small_nonzero(rng)))];
    for &e in s.elems.iter().filter(|&&e| e > 0) {
        if s.marked.contains(&e) || rng.gen_bool(0.5) {
            terms.push((e, CycNum::from_int(small_nonzero(rng))));
        }
    }
    if !inside {
        if rng.gen_bool(0.5) {
            let outside: Vec<i64> = (1..s.bound).filter(|x| !s.contains(*x)).collect();
            if let Some(&x) = outside.choose(rng) {
                terms.push((x, CycNum::from_int(1)));
            }
        } else if let Some(&m) = s.marked.iter().collect::<Vec<_>>().choose(rng) {
            terms.retain(|(e, _)| e != m);
        }
    }
    PuiseuxSeries::new(1, s.bound, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_connections_have_their_characteristic() {
        let mut r = rng(7);
        for _ in 0..40 {
            let d = random_dpc(&mut r, 2..=6, 20, 3, |_| true);
            let c = random_conn_with(&mut r, &d, Place::Infinity, ConnOptions::default());
            assert_eq!(c.dual_puiseux_char().unwrap(), d);
            let c2 = perturb(&mut r, &c, true);
            assert_eq!(c2.dual_puiseux_char().unwrap(), d);
        }
    }

    #[test]
    fn semigroups() {
        let s = Semigroup::generated(&[3, 5], 20);
        assert!(s.contains(8) && !s.contains(7));
        assert!(s.is_indecomposable(5) && !s.is_indecomposable(6));
    }
}
