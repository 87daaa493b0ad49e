//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored as an integer polynomial in `ζ_N` of degree below
//! `φ(N)` over a common positive denominator, always reduced modulo the
//! cyclotomic polynomial `Φ_N`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hp::{Hp, HpComplex};

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r as usize
}

fn mobius(mut n: u32) -> i32 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

/// Coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    let mut p = vec![1i64];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            let d = d as usize;
            let mut out = vec![0i64; p.len() + d];
            for (i, &c) in p.iter().enumerate() {
                out[i + d] += c;
                out[i] -= c;
            }
            p = out;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            let d = d as usize;
            let deg = p.len() - 1;
            let mut q = vec![0i64; deg - d + 1];
            for j in (d..=deg).rev() {
                let above = if j < q.len() { q[j] } else { 0 };
                q[j - d] = p[j] + above;
            }
            p = q;
        }
    }
    p
}

fn reduce(mut poly: Vec<BigInt>, phi: &[i64]) -> Vec<BigInt> {
    let d = phi.len() - 1;
    if poly.len() < d {
        poly.resize(d, BigInt::zero());
        return poly;
    }
    for i in (d..poly.len()).rev() {
        let c = std::mem::take(&mut poly[i]);
        if c.is_zero() {
            continue;
        }
        for (j, &pj) in phi.iter().enumerate().take(d) {
            if pj != 0 {
                poly[i - d + j] -= &c * pj;
            }
        }
    }
    poly.truncate(d);
    poly
}

#[derive(Clone, Debug)]
pub struct CycNum {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero() -> CycNum {
        CycNum {
            n: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> CycNum {
        CycNum::from_int(1)
    }

    pub fn from_int(i: i64) -> CycNum {
        CycNum {
            n: 1,
            num: vec![BigInt::from(i)],
            den: BigInt::one(),
        }
    }

    pub fn frac(a: i64, b: i64) -> CycNum {
        CycNum::rational(BigRational::new(a.into(), b.into()))
    }

    pub fn rational(r: BigRational) -> CycNum {
        CycNum {
            n: 1,
            num: vec![r.numer().clone()],
            den: r.denom().clone(),
        }
    }

    /// `ζ_n^k`.
    pub fn zeta(n: u32, k: i64) -> CycNum {
        assert!(n >= 1, "conductor must be positive");
        let k = k.rem_euclid(n as i64) as usize;
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        let mut v = vec![BigInt::zero(); d.max(k + 1)];
        v[k] = BigInt::one();
        CycNum {
            n,
            num: reduce(v, &phi),
            den: BigInt::one(),
        }
        .demote()
    }

    /// Build from coefficients in the power basis of `ζ_n`; any length is
    /// accepted and reduced.
    pub fn from_coefficients(n: u32, coeffs: &[BigRational]) -> CycNum {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let v: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let phi = cyclotomic_poly(n);
        CycNum {
            n,
            num: reduce(v, &phi),
            den,
        }
        .normalize()
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Coefficients in the power basis `1, ζ_N, …, ζ_N^{φ(N)−1}`.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Number of nonzero basis coefficients.
    pub fn weight(&self) -> usize {
        self.num.iter().filter(|c| !c.is_zero()).count()
    }

    fn normalize(mut self) -> CycNum {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
        } else if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
        self.demote()
    }

    fn demote(self) -> CycNum {
        let mut a = self;
        loop {
            let n0 = a.n;
            a = a.demote_step();
            if a.n == n0 {
                return a;
            }
        }
    }

    fn demote_step(mut self) -> CycNum {
        if self.n == 1 {
            return self;
        }
        if self.n % 4 == 2 {
            return self.halve();
        }
        for p in prime_factors(self.n) {
            if self.n % (p * p) == 0
                && self
                    .num
                    .iter()
                    .enumerate()
                    .all(|(i, c)| i % p as usize == 0 || c.is_zero())
            {
                let v = self.num.iter().step_by(p as usize).cloned().collect();
                return CycNum {
                    n: self.n / p,
                    num: v,
                    den: self.den,
                };
            }
        }
        let nz: Vec<usize> = (0..self.num.len())
            .filter(|&i| !self.num[i].is_zero())
            .collect();
        match nz.as_slice() {
            [] => CycNum::zero(),
            [0] => {
                self.num.truncate(1);
                self.n = 1;
                self
            }
            [i] => {
                let g = (*i as u32).gcd(&self.n);
                if g == 1 {
                    return self;
                }
                let n2 = self.n / g;
                let mut v = vec![BigInt::zero(); euler_phi(n2)];
                v[*i / g as usize] = std::mem::take(&mut self.num[*i]);
                CycNum {
                    n: n2,
                    num: v,
                    den: self.den,
                }
            }
            _ => self,
        }
    }

    /// `Q(ζ_{2m}) = Q(ζ_m)` for odd `m`, via `ζ_{2m} = −ζ_m^{(m+1)/2}`.
    fn halve(self) -> CycNum {
        let m = self.n / 2;
        let half = (m as usize + 1) / 2;
        let mut v = vec![BigInt::zero(); (m as usize).max(1)];
        for (i, c) in self.num.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = if m == 1 { 0 } else { (i * half) % m as usize };
            if i % 2 == 0 {
                v[j] += c;
            } else {
                v[j] -= c;
            }
        }
        let phi = cyclotomic_poly(m);
        CycNum {
            n: m,
            num: reduce(v, &phi),
            den: self.den,
        }
    }

    /// Re-express in `Q(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn promote(&self, m: u32) -> CycNum {
        assert!(m % self.n == 0, "promotion target must be a multiple");
        if m == self.n {
            return self.clone();
        }
        let k = (m / self.n) as usize;
        let phi = cyclotomic_poly(m);
        let d = phi.len() - 1;
        let mut v = vec![BigInt::zero(); d.max((self.num.len() - 1) * k + 1)];
        for (i, c) in self.num.iter().enumerate() {
            v[i * k] = c.clone();
        }
        CycNum {
            n: m,
            num: reduce(v, &phi),
            den: self.den.clone(),
        }
    }

    fn common(&self, o: &CycNum) -> (CycNum, CycNum) {
        if self.n == o.n {
            return (self.clone(), o.clone());
        }
        let m = self.n.lcm(&o.n);
        (self.promote(m), o.promote(m))
    }

    fn add_impl(&self, o: &CycNum) -> CycNum {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let (a, b) = self.common(o);
        let num = if a.den == b.den {
            a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| x * &b.den + y * &a.den)
                .collect()
        };
        let den = if a.den == b.den { a.den.clone() } else { &a.den * &b.den };
        CycNum { n: a.n, num, den }.normalize()
    }

    fn mul_impl(&self, o: &CycNum) -> CycNum {
        if self.is_zero() || o.is_zero() {
            return CycNum::zero();
        }
        if self.n == 1 {
            return o.scale_int(&self.num[0], &self.den);
        }
        if o.n == 1 {
            return self.scale_int(&o.num[0], &o.den);
        }
        let (a, b) = self.common(o);
        let d = a.num.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let phi = cyclotomic_poly(a.n);
        CycNum {
            n: a.n,
            num: reduce(prod, &phi),
            den: &a.den * &b.den,
        }
        .normalize()
    }

    fn scale_int(&self, num: &BigInt, den: &BigInt) -> CycNum {
        CycNum {
            n: self.n,
            num: self.num.iter().map(|c| c * num).collect(),
            den: &self.den * den,
        }
        .normalize()
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        self.scale_int(r.numer(), r.denom())
    }

    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::rational(r.recip()));
        }
        let phi: Vec<BigRational> = cyclotomic_poly(self.n)
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        let a: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let b = poly_inverse_mod(&a, &phi).ok_or(Error::DivisionByZero)?;
        // (num/den)^{-1} = den · (num)^{-1}
        let den = BigRational::from_integer(self.den.clone());
        let coeffs: Vec<BigRational> = b.into_iter().map(|c| c * &den).collect();
        Ok(CycNum::from_coefficients(self.n, &coeffs))
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Write `self = s·ζ_L^k` with `s > 0` rational and `0 ≤ k < L`, where `L`
    /// is the number of roots of unity in `Q(ζ_N)`.
    pub fn root_of_unity_form(&self) -> Option<(BigRational, u32, u32)> {
        if self.is_zero() {
            return None;
        }
        let l = self.n.lcm(&2);
        let a = self.promote(l);
        let phi = cyclotomic_poly(l);
        let d = phi.len() - 1;
        // x^{-1} ≡ −P(x)/Φ(0) where Φ = x·P + Φ(0)
        let phi0 = phi[0];
        let mut b = a.num.clone();
        for k in 0..l {
            if b.iter().skip(1).all(|c| c.is_zero()) {
                let s = BigRational::new(b[0].clone(), a.den.clone());
                return Some(if s.is_positive() {
                    (s, k, l)
                } else {
                    (-s, (k + l / 2) % l, l)
                });
            }
            // b ← b·x^{-1}
            let b0 = std::mem::take(&mut b[0]);
            let mut next: Vec<BigInt> = b[1..].to_vec();
            next.push(BigInt::zero());
            if !b0.is_zero() {
                for j in 0..d {
                    let pj = phi[j + 1];
                    if pj != 0 {
                        next[j] -= &b0 * (pj / phi0);
                    }
                }
            }
            b = next;
        }
        None
    }

    /// An `n`-th root inside some cyclotomic field: rational powers times roots
    /// of unity, square roots of rationals, and `n`-th powers of elements of
    /// `Q(ζ_N)` up to a root of unity. The branch is the one of smallest
    /// nonnegative argument.
    pub fn try_nth_root(&self, n: u32) -> Result<CycNum> {
        assert!(n >= 1);
        if self.is_zero() {
            return Err(Error::PreconditionViolated("root of zero".into()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let not_rep = || Error::NotRepresentable(format!("({})^(1/{})", self, n));
        if let Some((s, k, l)) = self.root_of_unity_form() {
            if let (Some(rn), Some(rd)) = (exact_root(s.numer(), n), exact_root(s.denom(), n)) {
                let m = n.checked_mul(l).ok_or(Error::ExponentOverflow)?;
                return Ok(CycNum::zeta(m, k as i64).scale(&BigRational::new(rn, rd)));
            }
        }
        let r = self
            .sqrt_power_form(n)
            .or_else(|| self.nth_root_general(n))
            .ok_or_else(not_rep)?;
        let arg = |z: &CycNum| {
            let (re, im) = z.approx_f64();
            im.atan2(re).rem_euclid(2.0 * std::f64::consts::PI)
        };
        Ok((0..n as i64)
            .map(|j| &r * &CycNum::zeta(n, j))
            .min_by(|a, b| arg(a).total_cmp(&arg(b)))
            .unwrap())
    }

    /// `s·ζ_L^k` with `s` a rational `(n/2)`-th power: `ζ_{nL}^k·√(s^{2/n})`.
    fn sqrt_power_form(&self, n: u32) -> Option<CycNum> {
        if n % 2 != 0 {
            return None;
        }
        let (s, k, l) = self.root_of_unity_form()?;
        let u = BigRational::new(exact_root(s.numer(), n / 2)?, exact_root(s.denom(), n / 2)?);
        Some(&CycNum::zeta(n * l, k as i64) * &sqrt_rational(&u)?)
    }

    /// Search `ζ_{nL}^j·c` with `c ∈ Q(ζ_L)`: the embeddings of `c` are guessed
    /// from floating point roots, its coordinates recovered by continued
    /// fractions and the candidate checked exactly.
    fn nth_root_general(&self, n: u32) -> Option<CycNum> {
        let l = self.n.lcm(&2);
        let phi = euler_phi(l);
        if phi < 2 {
            return None;
        }
        let reps: Vec<u32> = (1..l / 2).filter(|k| gcd_u64(*k as u64, l as u64) == 1).collect();
        let h = reps.len();
        let tries = (n as u64).checked_pow(h as u32).filter(|t| t * (l as u64) <= 50_000)?;
        let tau = 2.0 * std::f64::consts::PI;
        let embed = |coeffs: &[f64], k: u32| {
            coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
                let ang = tau * (k as f64) * (i as f64) / l as f64;
                (re + c * ang.cos(), im + c * ang.sin())
            })
        };
        // rows: Re and Im of each embedding applied to the power basis
        let mut basis = Vec::with_capacity(phi);
        for &k in &reps {
            let row = |f: fn(f64) -> f64| -> Vec<f64> {
                (0..phi).map(|i| f(tau * (k as f64) * (i as f64) / l as f64)).collect()
            };
            basis.push(row(f64::cos));
            basis.push(row(f64::sin));
        }
        for j in 0..l {
            let a = (self * &CycNum::zeta(l, -(j as i64))).promote(l);
            let coeffs: Vec<f64> = a.coefficients().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
            let principal: Vec<(f64, f64)> = reps
                .iter()
                .map(|&k| {
                    let (re, im) = embed(&coeffs, k);
                    let r = re.hypot(im).powf(1.0 / n as f64);
                    (r, im.atan2(re) / n as f64)
                })
                .collect();
            for t in 0..tries {
                let mut rhs = Vec::with_capacity(phi);
                let mut t = t;
                for &(r, ang) in &principal {
                    let b = (t % n as u64) as f64;
                    t /= n as u64;
                    let ang = ang + tau * b / n as f64;
                    rhs.push(r * ang.cos());
                    rhs.push(r * ang.sin());
                }
                let Some(x) = solve_real(basis.clone(), rhs) else { continue };
                let Some(qs) = x.iter().map(|v| approx_rational(*v)).collect::<Option<Vec<_>>>() else {
                    continue;
                };
                let c = CycNum::from_coefficients(l, &qs);
                if c.pow(n as i64).ok().as_ref() == Some(&a) {
                    return Some(&CycNum::zeta(n * l, j as i64) * &c);
                }
            }
        }
        None
    }

    pub fn approx(&self, hp: &mut Hp) -> HpComplex {
        let mut re = hp.int(0);
        let mut im = hp.int(0);
        let pi = hp.pi();
        let den = hp.big(&self.den);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = hp.big(c);
            let c = hp.div(&c, &den);
            if k == 0 {
                re = hp.add(&re, &c);
                continue;
            }
            let ang = hp.div(&hp.mul(&pi, &hp.int(2 * k as i64)), &hp.int(self.n as i64));
            let (cs, sn) = (hp.cos(&ang), hp.sin(&ang));
            re = hp.add(&re, &hp.mul(&c, &cs));
            im = hp.add(&im, &hp.mul(&c, &sn));
        }
        HpComplex { re, im }
    }

    pub fn approx_f64(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re, im)
    }

    /// True when the text rendering is a single summand.
    pub fn is_monomial(&self) -> bool {
        self.weight() <= 1
    }

    /// Complex conjugate, `ζ_n ↦ ζ_n^{-1}`.
    pub fn conj(&self) -> CycNum {
        let n = self.n;
        self.coefficients()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(CycNum::zero(), |acc, (i, c)| {
                acc + CycNum::zeta(n, -(i as i64)).scale(c)
            })
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn exact_root(a: &BigInt, n: u32) -> Option<BigInt> {
    if a.is_negative() {
        return None;
    }
    let r = a.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *a {
        Some(r)
    } else {
        None
    }
}

/// `√u` for positive rational `u` with small squarefree part, through
/// quadratic Gauss sums.
fn sqrt_rational(u: &BigRational) -> Option<CycNum> {
    let m = u.numer() * u.denom();
    let mut rest = m.to_u64()?;
    let (mut sq, mut free) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            sq *= p;
        }
        if rest % p == 0 {
            rest /= p;
            free *= p;
        }
        p += 1;
    }
    free *= rest;
    if free > 1000 {
        return None;
    }
    let mut root = CycNum::from_int(sq as i64);
    for p in prime_factors(free as u32) {
        let g = if p == 2 {
            &CycNum::zeta(8, 1) + &CycNum::zeta(8, 7)
        } else {
            let mut g = CycNum::zero();
            for k in 1..p {
                let legendre = num_traits::pow(BigInt::from(k), ((p - 1) / 2) as usize) % p;
                let c = if legendre.is_one() { 1 } else { -1 };
                g = &g + &CycNum::zeta(p, k as i64).scale(&BigRational::from_integer(c.into()));
            }
            if p % 4 == 1 { g } else { &g * &CycNum::zeta(4, 3) }
        };
        root = &root * &g;
    }
    Some(root.scale(&BigRational::new(BigInt::one(), u.denom().clone())))
}

fn solve_real(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c].abs() < 1e-12 {
            return None;
        }
        m.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for c in (0..n).rev() {
        let s: f64 = (c + 1..n).map(|k| m[c][k] * x[k]).sum();
        x[c] = (b[c] - s) / m[c][c];
    }
    Some(x)
}

/// Continued fraction convergent within `1e-7` with denominator below `1e6`.
fn approx_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        let (p2, q2) = (a as i64 * p1 + p0, a as i64 * q1 + q0);
        if q2 > 1_000_000 {
            return None;
        }
        if (x - p2 as f64 / q2 as f64).abs() < 1e-7 * (1.0 + x.abs()) {
            return Some(BigRational::new(p2.into(), q2.into()));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = y - a;
        if frac.abs() < 1e-15 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_is_zero(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = &r[i] / &lead;
        for j in 0..=db {
            let t = &c * &b[j];
            r[i - db + j] -= t;
        }
        q[i - db] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` over `Q`, if the two are coprime.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !poly_is_zero(&r1) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if r0.len() != 1 || r0[0].is_zero() {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|x| x / &c).collect())
}

impl PartialEq for CycNum {
    fn eq(&self, o: &CycNum) -> bool {
        if self.n == o.n {
            return self.den == o.den && self.num == o.num;
        }
        let (a, b) = self.common(o);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

impl From<i64> for CycNum {
    fn from(i: i64) -> CycNum {
        CycNum::from_int(i)
    }
}

impl From<BigRational> for CycNum {
    fn from(r: BigRational) -> CycNum {
        CycNum::rational(r)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $m(self, o: &'a CycNum) -> CycNum {
                $body(self, o)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                $body(&self, &o)
            }
        }
    };
}

binop!(Add, add, |a: &CycNum, b: &CycNum| a.add_impl(b));
binop!(Sub, sub, |a: &CycNum, b: &CycNum| a.add_impl(&-b));
binop!(Mul, mul, |a: &CycNum, b: &CycNum| a.mul_impl(b));
binop!(Div, div, |a: &CycNum, b: &CycNum| a
    .mul_impl(&b.inv().expect("division by zero")));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_rational(&r));
        }
        if let Some((s, k, l)) = self.root_of_unity_form() {
            let g = k.gcd(&l);
            let (k, l) = (k / g, l / g);
            let z = if k == 1 {
                format!("zeta({})", l)
            } else {
                format!("zeta({})^{}", l, k)
            };
            return if s.is_one() {
                write!(f, "{}", z)
            } else {
                write!(f, "{}*{}", fmt_rational(&s), z)
            };
        }
        let coeffs = self.coefficients();
        let mut first = true;
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let z = match k {
                0 => String::new(),
                1 => format!("zeta({})", self.n),
                _ => format!("zeta({})^{}", self.n, k),
            };
            let body = if k == 0 {
                fmt_rational(&mag)
            } else if mag.is_one() {
                z
            } else {
                format!("{}*{}", fmt_rational(&mag), z)
            };
            match (first, neg) {
                (true, true) => write!(f, "-{}", body)?,
                (true, false) => write!(f, "{}", body)?,
                (false, true) => write!(f, " - {}", body)?,
                (false, false) => write!(f, " + {}", body)?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Ordering on rationals embedded as `CycNum`; `None` for irrational values.
pub fn rational_cmp(a: &CycNum, b: &CycNum) -> Option<Ordering> {
    Some(a.as_rational()?.cmp(&b.as_rational()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> CycNum {
        CycNum::frac(a, b)
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for n in 1..60 {
            assert_eq!(cyclotomic_poly(n).len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn basic_arithmetic() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        let z4 = CycNum::zeta(4, 1);
        assert_eq!(&z4 * &z4, CycNum::from_int(-1));
        let z3 = CycNum::zeta(3, 1);
        assert_eq!(z3.inv().unwrap(), CycNum::zeta(3, 2));
        assert_eq!(CycNum::zeta(3, 2), &CycNum::from_int(-1) - &z3);
        assert_eq!(CycNum::zeta(2, 1), CycNum::from_int(-1));
        assert_eq!(CycNum::zeta(6, 3), CycNum::from_int(-1));
        assert_eq!(CycNum::zeta(7, 0), CycNum::one());
        assert_eq!(CycNum::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn demotion_of_monomials() {
        let a = CycNum::zeta(12, 4);
        assert_eq!(a.conductor(), 3);
        assert_eq!(a, CycNum::zeta(3, 1));
        let b = &CycNum::zeta(6, 1) * &CycNum::zeta(6, 1);
        assert_eq!(b, CycNum::zeta(3, 1));
    }

    #[test]
    fn mixed_conductors() {
        let a = &CycNum::zeta(4, 1) + &CycNum::zeta(3, 1);
        assert_eq!(a.conductor(), 12);
        let back = &a - &CycNum::zeta(4, 1);
        assert_eq!(back, CycNum::zeta(3, 1));
        let p = (&a * &a.inv().unwrap()).as_rational().unwrap();
        assert!(p.is_one());
    }

    #[test]
    fn nth_roots() {
        assert_eq!(CycNum::from_int(-1).try_nth_root(3).unwrap(), CycNum::zeta(6, 1));
        assert_eq!(q(1, 8).try_nth_root(3).unwrap(), q(1, 2));
        assert!(matches!(
            CycNum::from_int(2).try_nth_root(3),
            Err(Error::NotRepresentable(_))
        ));
        let z = CycNum::zeta(5, 2).scale(&BigRational::new(9.into(), 4.into()));
        let r = z.try_nth_root(2).unwrap();
        assert_eq!(&r * &r, z);
        assert_eq!(r, CycNum::zeta(5, 1).scale(&BigRational::new(3.into(), 2.into())));
        let w = (&CycNum::zeta(3, 1) + &CycNum::one()).try_nth_root(2).unwrap();
        assert_eq!(&w * &w, &CycNum::zeta(3, 1) + &CycNum::one());
        for d in [-3, 2, 5, -7, 12, -1] {
            let r = CycNum::from_int(d).try_nth_root(2).unwrap();
            assert_eq!(&r * &r, CycNum::from_int(d));
        }
        let r = q(9, 4).try_nth_root(4).unwrap();
        assert_eq!(r.pow(4).unwrap(), q(9, 4));
        let i = CycNum::zeta(4, 1);
        let a = &(&CycNum::one() - &i) * &q(1, 4);
        let r = a.try_nth_root(3).unwrap();
        assert_eq!(r.pow(3).unwrap(), a);
        let b = &(&CycNum::from_int(2) + &CycNum::zeta(5, 1)) * &CycNum::zeta(5, 3);
        let r = b.pow(2).unwrap().try_nth_root(2).unwrap();
        assert_eq!(&r * &r, b.pow(2).unwrap());
        assert!(matches!(
            (&CycNum::from_int(2) + &i).try_nth_root(2),
            Err(Error::NotRepresentable(_))
        ));
    }

    #[test]
    fn root_form_detects_non_units() {
        let a = &CycNum::zeta(5, 1) + &CycNum::from_int(2);
        assert!(a.root_of_unity_form().is_none());
        let (s, k, l) = CycNum::from_int(-3).root_of_unity_form().unwrap();
        assert_eq!((s, k, l), (BigRational::from_integer(3.into()), 1, 2));
    }

    #[test]
    fn approximations() {
        let (re, im) = CycNum::zeta(4, 1).approx_f64();
        assert!(re.abs() < 1e-15 && (im - 1.0).abs() < 1e-15);
        let (re, im) = CycNum::zeta(3, 1).approx_f64();
        assert!((re + 0.5).abs() < 1e-15 && (im - 0.75f64.sqrt()).abs() < 1e-15);
        assert_eq!(q(5, 4).approx_f64(), (1.25, 0.0));
        let mut hp = Hp::new(128);
        let z = CycNum::zeta(3, 1).approx(&mut hp);
        assert!((hp.to_f64(&z.re) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn rendering() {
        assert_eq!(q(-3, 2).to_string(), "-3/2");
        assert_eq!(CycNum::zeta(6, 1).to_string(), "zeta(6)");
        assert_eq!(CycNum::zeta(5, 2).to_string(), "zeta(5)^2");
        let a = &q(1, 2) - &CycNum::zeta(5, 3).scale(&BigRational::new(3.into(), 1.into()));
        assert_eq!(a.to_string(), "1/2 - 3*zeta(5)^3");
    }
}
