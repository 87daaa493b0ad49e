//! Stokes directions of `E_{f,q}`, the sequence of total orders of the
//! conjugates `f̃_1, …, f̃_q` around the circle, and its permutation words.

use std::cmp::Ordering;
use std::fmt;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::connection::{ConnGerm, DualPuiseuxChar};
use crate::cycfield::CycNum;
use crate::error::{Error, Result};
use crate::hp::Hp;
use crate::puiseux::{PuiseuxSeries, Q};

pub const DEFAULT_PRECISION: usize = 128;
const MAX_PRECISION: usize = 2048;
pub const CONJUGACY_BOUND: usize = 12;

/// Characteristic-exponent truncation `f̃ = Σ a_{β_i} x^{−β_i/q}`.
pub fn stokes_core(c: &ConnGerm) -> Result<PuiseuxSeries> {
    let d = c.dual_puiseux_char()?;
    let mut terms = Vec::new();
    for &b in &d.betas {
        let e = Q::new(-(b as i64), d.q as i64);
        terms.push((e, c.f().coeff(e)?));
    }
    Ok(PuiseuxSeries::from_q_terms(terms, None))
}

struct Core {
    dpc: DualPuiseuxChar,
    coeffs: Vec<CycNum>,
}

impl Core {
    fn new(c: &ConnGerm) -> Result<Core> {
        let dpc = c.dual_puiseux_char()?;
        let mut coeffs = Vec::new();
        for &b in &dpc.betas {
            coeffs.push(c.f().coeff(Q::new(-(b as i64), dpc.q as i64))?);
        }
        Ok(Core { dpc, coeffs })
    }

    fn q(&self) -> usize {
        self.dpc.q as usize
    }

    /// Level of the leading term of `f̃_{j+1} − f̃_{k+1}` and its root of
    /// unity factor `ζ^{−(j+1)β} − ζ^{−(k+1)β}`.
    fn leading(&self, j: usize, k: usize) -> Option<(usize, CycNum)> {
        let q = self.dpc.q;
        let (lj, lk) = (j as i64 + 1, k as i64 + 1);
        self.dpc.betas.iter().enumerate().find_map(|(t, &b)| {
            let b = b as i64;
            if ((lj - lk) * b).rem_euclid(q as i64) != 0 {
                Some((t, CycNum::zeta(q, -lj * b) - CycNum::zeta(q, -lk * b)))
            } else {
                None
            }
        })
    }

    /// Class index of every conjugate under `f̃_i ∼_k f̃_j`.
    fn classes(&self, k: u32) -> Vec<usize> {
        let q = self.q();
        let big: Vec<u32> = self.dpc.betas.iter().copied().filter(|&b| b >= k).collect();
        let mut ids = vec![usize::MAX; q];
        let mut next = 0;
        for i in 0..q {
            if ids[i] != usize::MAX {
                continue;
            }
            for j in i..q {
                let same = big
                    .iter()
                    .all(|&b| ((j - i) as u64 * b as u64) % q as u64 == 0);
                if same {
                    ids[j] = next;
                }
            }
            next += 1;
        }
        ids
    }
}

/// `arg(c)/π` modulo 1 when it is rational, read off `c/c̄`.
fn arg_over_pi(c: &CycNum) -> Option<Rational64> {
    let r = c * &c.conj().inv().ok()?;
    let (s, m, l) = r.root_of_unity_form()?;
    if s != BigRational::from_integer(1.into()) {
        return None;
    }
    Some(Rational64::new(m as i64, l as i64))
}

fn r64_big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// A basic Stokes direction with the conjugate pairs that cross there.
#[derive(Clone, Debug, Serialize)]
pub struct StokesDir {
    /// `d/π` when the direction is a rational multiple of `π`.
    #[serde(serialize_with = "ser_opt_rat")]
    pub over_pi: Option<Rational64>,
    #[serde(skip)]
    pub value: BigFloat,
    pub approx: f64,
    pub pairs: Vec<(usize, usize)>,
}

fn ser_opt_rat<S: serde::Serializer>(r: &Option<Rational64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl StokesDir {
    /// `"pi/3"`, `"5pi/3"` or a decimal.
    pub fn describe(&self) -> String {
        match self.over_pi {
            Some(r) => pi_multiple(r),
            None => format!("{:.12}", self.approx),
        }
    }
}

pub fn pi_multiple(r: Rational64) -> String {
    let (n, d) = (*r.numer(), *r.denom());
    let num = match n {
        0 => return "0".into(),
        1 => "pi".to_string(),
        -1 => "-pi".to_string(),
        _ => format!("{}pi", n),
    };
    if d == 1 {
        num
    } else {
        format!("{}/{}", num, d)
    }
}

struct Candidate {
    level: usize,
    rho: Rational64,
    over_pi: Option<Rational64>,
    value: BigFloat,
    approx: f64,
    pair: (usize, usize),
}

struct PairData {
    j: usize,
    k: usize,
    level: usize,
    re: BigFloat,
    im: BigFloat,
}

struct Engine {
    core: Core,
    hp: Hp,
    tol: BigFloat,
    pairs: Vec<PairData>,
    /// Directions in a window reaching past `[0, 2π)` on both sides.
    ext: Vec<StokesDir>,
    /// Index range of the basic directions inside `ext`.
    basic: std::ops::Range<usize>,
}

impl Engine {
    fn new(c: &ConnGerm, prec: usize) -> Result<Engine> {
        let mut prec = prec.max(64);
        loop {
            match Engine::at(c, prec) {
                Err(Error::TolClash(_)) if prec < MAX_PRECISION => prec *= 2,
                r => return r,
            }
        }
    }

    fn at(c: &ConnGerm, prec: usize) -> Result<Engine> {
        let core = Core::new(c)?;
        let hp = Hp::new(prec);
        let tol = hp.pow2_neg(prec / 2);
        let q = core.q();
        let mut e = Engine { core, hp, tol, pairs: Vec::new(), ext: Vec::new(), basic: 0..0 };
        if q < 2 {
            return Ok(e);
        }
        for j in 0..q {
            for k in j + 1..q {
                let (level, u) = e.core.leading(j, k).expect("distinct conjugates differ");
                let a0 = &e.core.coeffs[level] * &u;
                let z = a0.approx(&mut e.hp);
                e.pairs.push(PairData { j, k, level, re: z.re, im: z.im });
            }
        }
        let cands = e.candidates()?;
        e.ext = e.merge(cands)?;
        e.basic = e.basic_range()?;
        Ok(e)
    }

    fn candidates(&mut self) -> Result<Vec<Candidate>> {
        let q = self.core.q() as i64;
        let bmin = *self.core.dpc.betas.last().unwrap() as i64;
        let lo = -(q as f64 / bmin as f64) - 1.0;
        let hi = 2.0 + q as f64 / bmin as f64 + 1.0;
        let thetas: Vec<(BigFloat, Option<Rational64>)> = self
            .core
            .coeffs
            .iter()
            .map(|a| {
                let z = a.approx(&mut self.hp);
                (self.hp.atan2(&z.im, &z.re), arg_over_pi(a))
            })
            .collect();
        let mut out = Vec::new();
        for j in 0..q as usize {
            for k in j + 1..q as usize {
                let (level, u) = self.core.leading(j, k).unwrap();
                let tau_u = arg_over_pi(&u).expect("difference of roots of unity");
                let beta = self.core.dpc.betas[level] as i64;
                let scale = Rational64::new(q, beta);
                let (theta, tau_t) = &thetas[level];
                let x = self.hp.to_f64(theta) / std::f64::consts::PI;
                let m_t = tau_t.map(|t| (x - t.to_f64().unwrap()).round() as i64);
                let base = tau_u + Rational64::new(1, 2);
                let kmin = ((lo / scale.to_f64().unwrap()) - x - 2.0).floor() as i64;
                let kmax = ((hi / scale.to_f64().unwrap()) - x + 2.0).ceil() as i64;
                for kk in kmin..=kmax {
                    let rho = base + kk;
                    let sum = self.hp.pi_times(&r64_big(rho));
                    let sum = self.hp.add(theta, &sum);
                    let sc = self.hp.ratio(&r64_big(scale));
                    let value = self.hp.mul(&sum, &sc);
                    let approx = self.hp.to_f64(&value);
                    let op = approx / std::f64::consts::PI;
                    if op < lo || op >= hi {
                        continue;
                    }
                    let over_pi = match (tau_t, m_t) {
                        (Some(t), Some(m)) => Some((*t + m + rho) * scale),
                        _ => None,
                    };
                    out.push(Candidate { level, rho, over_pi, value, approx, pair: (j + 1, k + 1) });
                }
            }
        }
        let hp = &self.hp;
        out.sort_by(|a, b| {
            if hp.lt(&a.value, &b.value) {
                Ordering::Less
            } else if hp.lt(&b.value, &a.value) {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        });
        Ok(out)
    }

    fn same(&self, a: &Candidate, b: &Candidate) -> Result<bool> {
        if let (Some(x), Some(y)) = (a.over_pi, b.over_pi) {
            return Ok(x == y);
        }
        if a.level == b.level && a.rho == b.rho {
            return Ok(true);
        }
        let d = self.hp.sub(&a.value, &b.value);
        if self.hp.abs_lt(&d, &self.tol) {
            return Err(Error::TolClash(self.hp.prec));
        }
        Ok(false)
    }

    fn merge(&mut self, cands: Vec<Candidate>) -> Result<Vec<StokesDir>> {
        let mut out: Vec<StokesDir> = Vec::new();
        let mut head: Option<Candidate> = None;
        for c in cands {
            let join = match &head {
                Some(h) => self.same(h, &c)?,
                None => false,
            };
            if join {
                let last = out.last_mut().unwrap();
                if !last.pairs.contains(&c.pair) {
                    last.pairs.push(c.pair);
                }
                if last.over_pi.is_none() {
                    last.over_pi = c.over_pi;
                }
            } else {
                out.push(StokesDir {
                    over_pi: c.over_pi,
                    value: c.value.clone(),
                    approx: c.approx,
                    pairs: vec![c.pair],
                });
                head = Some(c);
            }
        }
        for d in &mut out {
            d.pairs.sort();
        }
        Ok(out)
    }

    fn basic_range(&mut self) -> Result<std::ops::Range<usize>> {
        let two_pi = {
            let pi = self.hp.pi();
            self.hp.mul(&pi, &self.hp.int(2))
        };
        let zero = self.hp.int(0);
        let mut inside = Vec::new();
        for (i, d) in self.ext.iter().enumerate() {
            let is_in = match d.over_pi {
                Some(r) => r >= Rational64::zero() && r < Rational64::from_integer(2),
                None => {
                    let near0 = self.hp.abs_lt(&d.value, &self.tol);
                    let near2 = self.hp.abs_lt(&self.hp.sub(&d.value, &two_pi), &self.tol);
                    if near0 || near2 {
                        return Err(Error::TolClash(self.hp.prec));
                    }
                    !self.hp.lt(&d.value, &zero) && self.hp.lt(&d.value, &two_pi)
                }
            };
            if is_in {
                inside.push(i);
            }
        }
        Ok(match (inside.first(), inside.last()) {
            (Some(&a), Some(&b)) => a..b + 1,
            _ => {
                let first_pos = self
                    .ext
                    .iter()
                    .position(|d| !self.hp.lt(&d.value, &zero))
                    .unwrap_or(self.ext.len());
                first_pos..first_pos
            }
        })
    }

    fn directions(&self) -> Vec<StokesDir> {
        self.ext[self.basic.clone()].to_vec()
    }

    /// Orders at `d_0 + ε, d_1 + ε, …, d_h + ε`.
    fn sequence(&mut self) -> Result<OrderSequence> {
        let q = self.core.q();
        let labels: Vec<usize> = (1..=q).collect();
        if q < 2 {
            return Ok(OrderSequence { labels, orders: vec![vec![0]] });
        }
        let samples = if self.basic.is_empty() {
            vec![self.hp.pi()]
        } else {
            let lo = self.basic.start - 1;
            let hi = self.basic.end;
            let mut eps: Option<BigFloat> = None;
            for i in lo..hi {
                let g = self.hp.sub(&self.ext[i + 1].value, &self.ext[i].value);
                if eps.as_ref().map(|e| self.hp.lt(&g, e)).unwrap_or(true) {
                    eps = Some(g);
                }
            }
            let eps = self.hp.div(&eps.unwrap(), &self.hp.int(2));
            (lo..hi).map(|i| self.hp.add(&self.ext[i].value, &eps)).collect()
        };
        let mut orders = Vec::with_capacity(samples.len());
        for s in &samples {
            orders.push(self.order_at(s)?);
        }
        Ok(OrderSequence { labels, orders })
    }

    fn order_at(&mut self, s: &BigFloat) -> Result<Vec<usize>> {
        let q = self.core.q();
        let mut less = vec![vec![false; q]; q];
        for p in &self.pairs {
            let beta = self.core.dpc.betas[p.level] as i64;
            let l0 = self.hp.ratio(&BigRational::new(beta.into(), (q as i64).into()));
            let phi = self.hp.mul(&l0, s);
            let (c, sn) = (self.hp.cos(&phi), self.hp.sin(&phi));
            let v = self.hp.add(&self.hp.mul(&p.re, &c), &self.hp.mul(&p.im, &sn));
            if self.hp.abs_lt(&v, &self.tol) {
                return Err(Error::TolClash(self.hp.prec));
            }
            if v.is_negative() {
                less[p.j][p.k] = true;
            } else {
                less[p.k][p.j] = true;
            }
        }
        let mut ord: Vec<usize> = (0..q).collect();
        ord.sort_by(|&a, &b| {
            if a == b {
                Ordering::Equal
            } else if less[a][b] {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        });
        for u in 0..q {
            for v in u + 1..q {
                if !less[ord[u]][ord[v]] {
                    return Err(Error::IllDefined("sampled relation is not a total order".into()));
                }
            }
        }
        Ok(ord)
    }
}

/// Basic Stokes directions in `[0, 2π)`.
pub fn stokes_directions(c: &ConnGerm, precision: usize) -> Result<Vec<StokesDir>> {
    Ok(Engine::new(c, precision)?.directions())
}

pub fn order_sequence(c: &ConnGerm, precision: usize) -> Result<OrderSequence> {
    Engine::new(c, precision)?.sequence()
}

/// Total orders `<_0, …, <_h` of a finite set. Each order lists element
/// indices from smallest to largest; `labels[e]` names element `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderSequence {
    pub labels: Vec<usize>,
    pub orders: Vec<Vec<usize>>,
}

impl OrderSequence {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn h(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn first(&self) -> &[usize] {
        &self.orders[0]
    }

    pub fn last(&self) -> &[usize] {
        self.orders.last().unwrap()
    }

    /// The sequence restricted to a subset of elements.
    pub fn restrict(&self, subset: &[usize]) -> OrderSequence {
        let index = |e: usize| subset.iter().position(|&s| s == e);
        OrderSequence {
            labels: subset.iter().map(|&e| self.labels[e]).collect(),
            orders: self
                .orders
                .iter()
                .map(|o| o.iter().filter_map(|&e| index(e)).collect())
                .collect(),
        }
    }

    pub fn render_order(&self, i: usize) -> String {
        let v: Vec<String> = self.orders[i].iter().map(|&e| self.labels[e].to_string()).collect();
        v.join("<")
    }
}

impl fmt::Display for OrderSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = (0..self.orders.len()).map(|i| self.render_order(i)).collect();
        write!(f, "[{}]", v.join(", "))
    }
}

pub type Perm = Vec<usize>;

fn is_identity(r: &[usize]) -> bool {
    r.iter().enumerate().all(|(i, &x)| i == x)
}

fn inverse(r: &[usize]) -> Perm {
    let mut out = vec![0; r.len()];
    for (i, &x) in r.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// `s3`, `id` or cycle notation such as `(1 3)(2 4)`.
pub fn perm_name(r: &[usize]) -> String {
    if is_identity(r) {
        return "id".into();
    }
    let moved: Vec<usize> = (0..r.len()).filter(|&i| r[i] != i).collect();
    if moved.len() == 2 && moved[1] == moved[0] + 1 {
        return format!("s{}", moved[0] + 1);
    }
    let mut seen = vec![false; r.len()];
    let mut out = String::new();
    for i in 0..r.len() {
        if seen[i] || r[i] == i {
            continue;
        }
        let mut cyc = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            cyc.push((j + 1).to_string());
            j = r[j];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    out
}

fn cycle_type(r: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; r.len()];
    let mut out = Vec::new();
    for i in 0..r.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = r[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort();
    out
}

/// `φ_0` with the word `r_ν = φ_ν ∘ φ_{ν−1}^{−1}` acting on ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermSequence {
    pub n: usize,
    pub phi0: Vec<usize>,
    pub word: Vec<Perm>,
    pub reduced: bool,
}

impl PermSequence {
    pub fn names(&self) -> Vec<String> {
        self.word.iter().map(|r| perm_name(r)).collect()
    }

    pub fn transpositions(&self) -> usize {
        self.word
            .iter()
            .map(|r| cycle_type(r).iter().map(|l| l - 1).sum::<usize>())
            .sum()
    }
}

impl fmt::Display for PermSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names().join(","))
    }
}

fn ranks(order: &[usize]) -> Vec<usize> {
    inverse(order)
}

pub fn to_permutations(s: &OrderSequence) -> PermSequence {
    let phis: Vec<Vec<usize>> = s.orders.iter().map(|o| ranks(o)).collect();
    let word = (1..s.orders.len())
        .map(|v| s.orders[v - 1].iter().map(|&e| phis[v][e]).collect())
        .collect();
    PermSequence { n: s.n(), phi0: phis[0].clone(), word, reduced: false }
}

pub fn reduce(p: &PermSequence) -> PermSequence {
    PermSequence {
        word: p.word.iter().filter(|r| !is_identity(r)).cloned().collect(),
        reduced: true,
        ..p.clone()
    }
}

/// Rebuild the orders from `φ_0` and the word, `φ_ν = r_ν ∘ φ_{ν−1}`.
pub fn to_orders(p: &PermSequence, labels: &[usize]) -> OrderSequence {
    let mut phi = p.phi0.clone();
    let mut orders = vec![inverse(&phi)];
    for r in &p.word {
        phi = phi.iter().map(|&x| r[x]).collect();
        orders.push(inverse(&phi));
    }
    OrderSequence { labels: labels.to_vec(), orders }
}

/// `(s_1 s_2 ⋯ s_{k−1})^m` as a sequence of `(k−1)·m` transpositions.
pub fn reference_word(k: usize, m: usize) -> PermSequence {
    let mut word = Vec::new();
    for _ in 0..m {
        for i in 0..k.saturating_sub(1) {
            let mut r: Perm = (0..k).collect();
            r.swap(i, i + 1);
            word.push(r);
        }
    }
    PermSequence { n: k, phi0: (0..k).collect(), word, reduced: true }
}

/// `ω` with `r_ν = ω^{−1} r'_ν ω` for every `ν`, searched over `𝔖_n`.
pub fn conjugacy_check(a: &PermSequence, b: &PermSequence) -> Result<Option<Perm>> {
    if a.n != b.n || a.word.len() != b.word.len() {
        return Ok(None);
    }
    let n = a.n;
    if n > CONJUGACY_BOUND {
        return Err(Error::TooLarge(n));
    }
    for (r, s) in a.word.iter().zip(&b.word) {
        if cycle_type(r) != cycle_type(s) {
            return Ok(None);
        }
    }
    let inv_a: Vec<Perm> = a.word.iter().map(|r| inverse(r)).collect();
    let inv_b: Vec<Perm> = b.word.iter().map(|r| inverse(r)).collect();
    let mut omega = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(if search(a, b, &inv_a, &inv_b, &mut omega, &mut used) {
        Some(omega)
    } else {
        None
    })
}

/// Splits every letter that is a product of disjoint adjacent transpositions
/// into its factors, lowest first; `None` when some letter is not of that form.
pub fn split_simultaneous(p: &PermSequence) -> Option<PermSequence> {
    let mut word = Vec::new();
    for r in &p.word {
        let mut i = 0;
        while i < r.len() {
            if r[i] == i {
                i += 1;
            } else if i + 1 < r.len() && r[i] == i + 1 && r[i + 1] == i {
                let mut t: Perm = (0..r.len()).collect();
                t.swap(i, i + 1);
                word.push(t);
                i += 2;
            } else {
                return None;
            }
        }
    }
    Some(PermSequence { word, ..p.clone() })
}

/// Smallest rotation `k` of `a`'s word with a simultaneous conjugator onto
/// `b`, together with that conjugator.
pub fn cyclic_conjugacy_check(a: &PermSequence, b: &PermSequence) -> Result<Option<(usize, Perm)>> {
    let h = a.word.len();
    for k in 0..h.max(1) {
        let mut rot = a.clone();
        rot.word.rotate_left(k.min(h));
        if let Some(w) = conjugacy_check(&rot, b)? {
            return Ok(Some((k, w)));
        }
    }
    Ok(None)
}

fn search(
    a: &PermSequence,
    b: &PermSequence,
    inv_a: &[Perm],
    inv_b: &[Perm],
    omega: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let x = match omega.iter().position(|&v| v == usize::MAX) {
        Some(x) => x,
        None => return true,
    };
    for y in 0..omega.len() {
        if used[y] {
            continue;
        }
        let saved = (omega.clone(), used.clone());
        if propagate(a, b, inv_a, inv_b, omega, used, x, y) && search(a, b, inv_a, inv_b, omega, used) {
            return true;
        }
        *omega = saved.0;
        *used = saved.1;
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn propagate(
    a: &PermSequence,
    b: &PermSequence,
    inv_a: &[Perm],
    inv_b: &[Perm],
    omega: &mut [usize],
    used: &mut [bool],
    x: usize,
    y: usize,
) -> bool {
    let mut stack = vec![(x, y)];
    while let Some((x, y)) = stack.pop() {
        if omega[x] != usize::MAX {
            if omega[x] != y {
                return false;
            }
            continue;
        }
        if used[y] {
            return false;
        }
        omega[x] = y;
        used[y] = true;
        for v in 0..a.word.len() {
            stack.push((a.word[v][x], b.word[v][y]));
            stack.push((inv_a[v][x], inv_b[v][y]));
        }
    }
    true
}

/// `ℐ^{(k)}`: the induced orders on `∼_k` classes.
pub fn quotient_mod(s: &OrderSequence, c: &ConnGerm, k: u32) -> Result<OrderSequence> {
    let core = Core::new(c)?;
    if !core.dpc.betas.contains(&k) {
        return Err(Error::PreconditionViolated(format!(
            "{} is not a characteristic exponent of {}",
            k, core.dpc
        )));
    }
    quotient(s, &core.classes(k))
}

fn quotient(s: &OrderSequence, cls: &[usize]) -> Result<OrderSequence> {
    if s.n() != cls.len() {
        return Err(Error::PreconditionViolated("quotient needs the full sequence".into()));
    }
    let m = cls.iter().max().map(|x| x + 1).unwrap_or(0);
    let mut labels = vec![usize::MAX; m];
    for (e, &c) in cls.iter().enumerate() {
        labels[c] = labels[c].min(s.labels[e]);
    }
    let mut orders = Vec::with_capacity(s.orders.len());
    for o in &s.orders {
        let mut seq: Vec<usize> = Vec::new();
        for &e in o {
            let c = cls[e];
            if seq.last() != Some(&c) {
                if seq.contains(&c) {
                    return Err(Error::IllDefined(format!(
                        "class of f{} is split by the order {:?}",
                        s.labels[e], o
                    )));
                }
                seq.push(c);
            }
        }
        orders.push(seq);
    }
    Ok(OrderSequence { labels, orders })
}

/// `ℐ_1 * ℐ_2`, gluing the last order of `a` to the first of `b` by rank.
pub fn product(a: &OrderSequence, b: &OrderSequence) -> Result<OrderSequence> {
    if a.n() != b.n() {
        return Err(Error::NoGluing(format!("sizes {} and {}", a.n(), b.n())));
    }
    let mut back = vec![0; b.n()];
    for (r, &v) in b.first().iter().enumerate() {
        back[v] = a.last()[r];
    }
    let mut orders = a.orders.clone();
    for o in &b.orders[1..] {
        orders.push(o.iter().map(|&v| back[v]).collect());
    }
    Ok(OrderSequence { labels: a.labels.clone(), orders })
}

/// `Σ_ν Σ_{(j,k) ∈ ρ_ν} α_j α_k`.
pub fn rep_dimension(s: &OrderSequence, alpha: &[u64]) -> u64 {
    let mut total = 0;
    for v in 1..s.orders.len() {
        let before = ranks(&s.orders[v - 1]);
        let after = ranks(&s.orders[v]);
        for j in 0..s.n() {
            for k in 0..s.n() {
                if j != k && before[k] < before[j] && after[j] < after[k] {
                    total += alpha[j] * alpha[k];
                }
            }
        }
    }
    total
}

/// Precomputed data for the level-wise constructions.
pub struct Stokes {
    core: Core,
    pub full: OrderSequence,
    pub directions: Vec<StokesDir>,
}

impl Stokes {
    pub fn new(c: &ConnGerm, precision: usize) -> Result<Stokes> {
        if !c.is_irreducible() {
            return Err(Error::PreconditionViolated("connection is reducible".into()));
        }
        let mut e = Engine::new(c, precision)?;
        let full = e.sequence()?;
        let directions = e.directions();
        Ok(Stokes { core: e.core, full, directions })
    }

    pub fn dpc(&self) -> &DualPuiseuxChar {
        &self.core.dpc
    }

    pub fn g(&self) -> usize {
        self.core.dpc.g()
    }

    fn level_classes(&self, i: usize) -> Vec<usize> {
        if i == 0 {
            vec![0; self.core.q()]
        } else {
            self.core.classes(self.core.dpc.betas[i - 1])
        }
    }

    /// `ℐ^{(β_i)}`, `1 ≤ i ≤ g`.
    pub fn level(&self, i: usize) -> Result<OrderSequence> {
        self.check_level(i)?;
        quotient(&self.full, &self.level_classes(i))
    }

    fn check_level(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.g() {
            return Err(Error::PreconditionViolated(format!(
                "level {} outside 1..={}",
                i,
                self.g()
            )));
        }
        Ok(())
    }

    /// The fibers `ℐ^{(β_i)}_a` over the classes of `f̃_1, f̃_2, …` at level
    /// `i − 1`, in orbit order.
    pub fn fibers(&self, i: usize) -> Result<Vec<OrderSequence>> {
        self.check_level(i)?;
        let lvl = self.level(i)?;
        let cur = self.level_classes(i);
        let prev = self.level_classes(i - 1);
        let e = self.core.dpc.e_chain();
        let orbit = self.core.q() / e[i - 1] as usize;
        let mut out = Vec::with_capacity(orbit);
        for r in 0..orbit {
            let a = prev[r];
            let mut members: Vec<usize> = (0..self.core.q())
                .filter(|&x| prev[x] == a)
                .map(|x| cur[x])
                .collect();
            members.sort();
            members.dedup();
            out.push(lvl.restrict(&members));
        }
        Ok(out)
    }

    /// `ℐ̃^{(β_i)}`.
    pub fn tilde(&self, i: usize) -> Result<OrderSequence> {
        if i == 1 {
            return self.level(1);
        }
        let fibers = self.fibers(i)?;
        let mut acc = fibers[0].clone();
        for f in &fibers[1..] {
            acc = product(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn tilde_word(&self, i: usize) -> Result<PermSequence> {
        Ok(reduce(&to_permutations(&self.tilde(i)?)))
    }
}

pub fn tilde_sequence(c: &ConnGerm, i: usize, precision: usize) -> Result<OrderSequence> {
    Stokes::new(c, precision)?.tilde(i)
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub dpc: String,
    pub lhs: u64,
    pub by_fibers: Vec<u64>,
    pub by_tilde: Vec<u64>,
    pub irr_end: u64,
    pub pass: bool,
}

/// Compares `dim Rep(ℐ, (1,…,1))` with the level-wise sums over fibers and
/// over the `ℐ̃` products.
pub fn decomposition_check(c: &ConnGerm, precision: usize) -> Result<DecompositionReport> {
    let st = Stokes::new(c, precision)?;
    let e = st.dpc().e_chain();
    let lhs = rep_dimension(&st.full, &vec![1; st.full.n()]);
    let mut by_fibers = Vec::new();
    let mut by_tilde = Vec::new();
    for i in 1..=st.g() {
        let w = e[i] as u64;
        if i == 1 {
            let l = st.level(1)?;
            by_fibers.push(rep_dimension(&l, &vec![w; l.n()]));
        } else {
            let s = st
                .fibers(i)?
                .iter()
                .map(|f| rep_dimension(f, &vec![w; f.n()]))
                .sum();
            by_fibers.push(s);
        }
        let t = st.tilde(i)?;
        by_tilde.push(rep_dimension(&t, &vec![w; t.n()]));
    }
    let sf: u64 = by_fibers.iter().sum();
    let st_sum: u64 = by_tilde.iter().sum();
    Ok(DecompositionReport {
        dpc: st.dpc().to_string(),
        lhs,
        irr_end: st.dpc().irr_end(),
        pass: lhs == sf && lhs == st_sum,
        by_fibers,
        by_tilde,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidLevel {
    pub level: usize,
    pub beta: u32,
    pub strands: usize,
    pub power: usize,
    pub word: Vec<String>,
    pub reference: Vec<String>,
    pub transpositions: usize,
    /// One-based images `ω(1), …, ω(n)`.
    pub witness: Option<Vec<usize>>,
    pub pass: bool,
    /// Filled only when the strict check fails: the word with simultaneous
    /// crossings split into commuting factors, matched up to rotation.
    pub split: Option<SplitMatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitMatch {
    pub word: Vec<String>,
    pub rotation: usize,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidReport {
    pub dpc: String,
    pub levels: Vec<BraidLevel>,
    pub pass: bool,
}

/// Level by level, compare the reduced word of `ℐ̃^{(β_i)}` with
/// `(s_1 ⋯ s_{k−1})^{β_i/e_i}`, `k = e_{i−1}/e_i`, up to conjugation.
pub fn iterated_braid_check(c: &ConnGerm, precision: usize) -> Result<BraidReport> {
    let st = Stokes::new(c, precision)?;
    let e = st.dpc().e_chain();
    let mut levels = Vec::new();
    for i in 1..=st.g() {
        let beta = st.dpc().betas[i - 1];
        let k = (e[i - 1] / e[i]) as usize;
        let m = (beta / e[i]) as usize;
        let word = st.tilde_word(i)?;
        let reference = reference_word(k, m);
        let witness = conjugacy_check(&word, &reference)?;
        let split = match (&witness, split_simultaneous(&word)) {
            (None, Some(sw)) => cyclic_conjugacy_check(&sw, &reference)?.map(|(rotation, w)| SplitMatch {
                word: sw.names(),
                rotation,
                witness: w.iter().map(|x| x + 1).collect(),
            }),
            _ => None,
        };
        levels.push(BraidLevel {
            level: i,
            beta,
            strands: k,
            power: m,
            word: word.names(),
            reference: reference.names(),
            transpositions: word.transpositions(),
            pass: witness.is_some(),
            witness: witness.map(|w| w.iter().map(|x| x + 1).collect()),
            split,
        });
    }
    Ok(BraidReport {
        dpc: st.dpc().to_string(),
        pass: levels.iter().all(|l| l.pass),
        levels,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugateLevel {
    pub level: usize,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub witness: Option<Vec<usize>>,
    /// Letters moved from the front of `left` to its end before relabelling;
    /// nonzero when the two base directions differ.
    pub rotation: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugateReport {
    pub dpc: String,
    pub levels: Vec<ConjugateLevel>,
    pub pass: bool,
}

/// For two connections with the same characteristic, the words of every
/// `ℐ̃^{(β_i)}` are conjugate. Both words start at argument 0, which is not
/// intrinsic, so a rotation is allowed when no direct conjugator exists.
pub fn conjugate_levels(a: &ConnGerm, b: &ConnGerm, precision: usize) -> Result<ConjugateReport> {
    let sa = Stokes::new(a, precision)?;
    let sb = Stokes::new(b, precision)?;
    if sa.dpc() != sb.dpc() {
        return Err(Error::PreconditionViolated(format!(
            "characteristics differ: {} and {}",
            sa.dpc(),
            sb.dpc()
        )));
    }
    let mut levels = Vec::new();
    for i in 1..=sa.g() {
        let wa = sa.tilde_word(i)?;
        let wb = sb.tilde_word(i)?;
        let found = match conjugacy_check(&wa, &wb)? {
            Some(w) => Some((0, w)),
            None => cyclic_conjugacy_check(&wa, &wb)?,
        };
        levels.push(ConjugateLevel {
            level: i,
            left: wa.names(),
            right: wb.names(),
            witness: found.as_ref().map(|(_, w)| w.iter().map(|x| x + 1).collect()),
            rotation: found.map(|(k, _)| k),
        });
    }
    Ok(ConjugateReport {
        dpc: sa.dpc().to_string(),
        pass: levels.iter().all(|l| l.witness.is_some()),
        levels,
    })
}

/// `h` and the direction descriptions.
pub fn describe_directions(dirs: &[StokesDir]) -> Vec<String> {
    dirs.iter().map(|d| d.describe()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::Place;

    fn conn(terms: &[(i64, i64, i64)], q: u32) -> ConnGerm {
        let f = PuiseuxSeries::from_q_terms(
            terms.iter().map(|&(a, b, c)| (Q::new(a, b), CycNum::from_int(c))).collect(),
            None,
        );
        ConnGerm::new(f, q, Place::Zero).unwrap()
    }

    #[test]
    fn core_truncation() {
        let c = conn(&[(-3, 2, 1), (-1, 1, 1), (0, 1, 7)], 2);
        assert_eq!(stokes_core(&c).unwrap(), PuiseuxSeries::from_q_terms(vec![(Q::new(-3, 2), CycNum::one())], None));
        let c = conn(&[(-3, 2, 1), (-5, 4, 1)], 4);
        assert_eq!(stokes_core(&c).unwrap().terms().len(), 2);
        let c = conn(&[(-1, 1, 1)], 1);
        assert!(!stokes_core(&c).unwrap().has_terms());
    }

    #[test]
    fn cusp_directions() {
        let c = conn(&[(-3, 2, 1)], 2);
        let d = stokes_directions(&c, 128).unwrap();
        let names = describe_directions(&d);
        assert_eq!(names, vec!["pi/3", "pi", "5pi/3"]);
        let s = order_sequence(&c, 128).unwrap();
        assert_eq!(s.orders.len(), 4);
        let w = reduce(&to_permutations(&s));
        assert_eq!(w.names(), vec!["s1", "s1", "s1"]);
        assert_eq!(rep_dimension(&s, &[1, 1]), 3);
    }

    #[test]
    fn half_directions() {
        let c = conn(&[(-1, 2, 1)], 2);
        assert_eq!(describe_directions(&stokes_directions(&c, 128).unwrap()), vec!["pi"]);
        assert_eq!(order_sequence(&c, 128).unwrap().orders.len(), 2);
        let c = conn(&[(-1, 1, 1)], 1);
        assert!(stokes_directions(&c, 128).unwrap().is_empty());
        assert_eq!(order_sequence(&c, 128).unwrap().orders.len(), 1);
    }

    #[test]
    fn round_trip_and_products() {
        let c = conn(&[(-5, 4, 1)], 4);
        let s = order_sequence(&c, 128).unwrap();
        let p = to_permutations(&s);
        assert_eq!(to_orders(&p, &s.labels), s);
        assert_eq!(rep_dimension(&s, &[1; 4]), 15);
        let a = order_sequence(&conn(&[(-3, 2, 1)], 2), 128).unwrap();
        let aa = product(&a, &a).unwrap();
        assert_eq!(aa.h(), 6);
        let constant = OrderSequence { labels: vec![1, 2], orders: vec![vec![0, 1], vec![0, 1]] };
        assert_eq!(reduce(&to_permutations(&constant)).word.len(), 0);
        assert!(product(&a, &s).is_err());
    }

    #[test]
    fn conjugacy() {
        let a = reference_word(3, 1);
        let s2 = PermSequence { word: vec![a.word[1].clone()], ..a.clone() };
        let s1 = PermSequence { word: vec![a.word[0].clone()], ..a.clone() };
        let w = conjugacy_check(&s1, &s2).unwrap().unwrap();
        // ω s1 = s2 ω
        let lhs: Vec<usize> = (0..3).map(|x| w[s1.word[0][x]]).collect();
        let rhs: Vec<usize> = (0..3).map(|x| s2.word[0][w[x]]).collect();
        assert_eq!(lhs, rhs);
        let two = reference_word(2, 2);
        let one = reference_word(2, 1);
        assert_eq!(conjugacy_check(&two, &one).unwrap(), None);
    }

    #[test]
    fn two_levels() {
        let c = conn(&[(-3, 2, 1), (-5, 4, 1)], 4);
        let st = Stokes::new(&c, 128).unwrap();
        assert_eq!(st.level(1).unwrap().n(), 2);
        assert_eq!(st.level(2).unwrap().n(), 4);
        assert_eq!(st.fibers(2).unwrap().len(), 2);
        assert_eq!(st.tilde(2).unwrap().n(), 2);
        let r = iterated_braid_check(&c, 128).unwrap();
        assert!(r.pass, "{:?}", r);
        assert_eq!(r.levels[0].word, vec!["s1"; 3]);
        assert_eq!(r.levels[1].word, vec!["s1"; 5]);
        let d = decomposition_check(&c, 128).unwrap();
        assert_eq!(d.lhs, 17);
        assert!(d.pass, "{:?}", d);
        assert_eq!(d.irr_end, 17);
    }

    #[test]
    fn rotated_base_direction() {
        let a = conn(&[(-9, 4, 1), (-15, 8, 1)], 8);
        let f = PuiseuxSeries::from_q_terms(
            vec![(Q::new(-9, 4), CycNum::zeta(3, 1)), (Q::new(-15, 8), CycNum::from_int(1))],
            None,
        );
        let b = ConnGerm::new(f, 8, Place::Zero).unwrap();
        let r = conjugate_levels(&a, &b, 256).unwrap();
        assert!(r.pass);
        assert!(r.levels.iter().all(|l| l.witness.is_some()));
        let same = conjugate_levels(&a, &a, 256).unwrap();
        assert!(same.levels.iter().all(|l| l.rotation == Some(0)));
    }

    #[test]
    fn quartic_simultaneous_crossings() {
        let c = conn(&[(-5, 4, 1)], 4);
        let r = iterated_braid_check(&c, 128).unwrap();
        let l = &r.levels[0];
        assert_eq!((l.strands, l.power, l.word.len(), l.transpositions), (4, 5, 10, 15));
        assert!(!l.pass);
        let m = l.split.as_ref().expect("split word matches up to rotation");
        assert_eq!(m.word.len(), 15);
        assert_eq!(m.witness, vec![4, 3, 2, 1]);
        let sw = split_simultaneous(&reduce(&to_permutations(&order_sequence(&c, 128).unwrap()))).unwrap();
        assert_eq!(sw.transpositions(), 15);
        assert!(split_simultaneous(&reference_word(3, 1)).is_some());
    }
}
