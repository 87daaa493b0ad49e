//! Bivariate rational polynomials and the Jacobian-quotient Milnor oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `Σ c_{ab} x^a y^b` over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), BigRational)>) -> Poly {
        let mut p = Poly::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: (u32, u32), c: BigRational) {
        let e = self.terms.entry(k).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dx(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|((a, _), _)| *a > 0)
                .map(|((a, b), c)| ((a - 1, *b), c * BigRational::from_integer((*a).into()))),
        )
    }

    pub fn dy(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| *b > 0)
                .map(|((a, b), c)| ((*a, b - 1), c * BigRational::from_integer((*b).into()))),
        )
    }

    /// Lowest total degree of a term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).min()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in self.terms.iter().rev() {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !mag.is_one() || (*a == 0 && *b == 0) {
                parts.push(mag.to_string());
            }
            match a {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{}", a)),
            }
            match b {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{}", b)),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// `dim Q[x,y]/(J + m^cap)` for the Jacobian ideal `J` of `f`.
pub fn jacobian_colength(f: &Poly, cap: u32) -> usize {
    let monos: Vec<(u32, u32)> = (0..cap)
        .flat_map(|d| (0..=d).map(move |a| (a, d - a)))
        .collect();
    let index: BTreeMap<(u32, u32), usize> =
        monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let gens = [f.dx(), f.dy()];
    let mut pivots: BTreeMap<usize, Vec<(usize, BigRational)>> = BTreeMap::new();
    for g in &gens {
        let low = match g.order() {
            Some(o) => o,
            None => continue,
        };
        for &(a, b) in &monos {
            if a + b + low >= cap {
                continue;
            }
            let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
            for ((ga, gb), c) in g.terms() {
                let k = (ga + a, gb + b);
                if let Some(&i) = index.get(&k) {
                    row.insert(i, c.clone());
                }
            }
            reduce_insert(&mut pivots, row);
        }
    }
    monos.len() - pivots.len()
}

fn reduce_insert(
    pivots: &mut BTreeMap<usize, Vec<(usize, BigRational)>>,
    mut row: BTreeMap<usize, BigRational>,
) {
    loop {
        let (&lead, lc) = match row.iter().next() {
            Some(x) => x,
            None => return,
        };
        match pivots.get(&lead) {
            None => {
                let inv = lc.recip();
                let normed = row.into_iter().map(|(i, c)| (i, c * &inv)).collect();
                pivots.insert(lead, normed);
                return;
            }
            Some(p) => {
                let factor = lc.clone();
                for (i, c) in p {
                    let e = row.entry(*i).or_insert_with(BigRational::zero);
                    *e -= &factor * c;
                    if e.is_zero() {
                        row.remove(i);
                    }
                }
            }
        }
    }
}

/// Milnor number of an isolated singularity at the origin, accepted when the
/// colengths at `cap` and `cap + 2` agree.
pub fn milnor_bruteforce(f: &Poly, cap: u32) -> Result<usize> {
    let a = jacobian_colength(f, cap);
    let b = jacobian_colength(f, cap + 2);
    if a == b {
        Ok(a)
    } else {
        Err(Error::NotStabilized(cap as usize))
    }
}

/// Raise the cap from 4 until two consecutive evaluations agree.
pub fn milnor_bruteforce_auto(f: &Poly, max_cap: u32) -> Result<usize> {
    let mut cap = 4;
    loop {
        match milnor_bruteforce(f, cap) {
            Ok(mu) => return Ok(mu),
            Err(Error::NotStabilized(_)) if cap < max_cap => cap = (cap * 3 / 2).max(cap + 2),
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &[(u32, u32, i64)]) -> Poly {
        Poly::from_terms(t.iter().map(|&(a, b, c)| ((a, b), BigRational::from_integer(c.into()))))
    }

    #[test]
    fn cusps_and_nodes() {
        assert_eq!(milnor_bruteforce(&p(&[(0, 2, 1), (3, 0, -1)]), 8).unwrap(), 2);
        assert_eq!(milnor_bruteforce(&p(&[(0, 2, 1), (5, 0, -1)]), 8).unwrap(), 4);
        assert_eq!(milnor_bruteforce(&p(&[(1, 1, 1)]), 6).unwrap(), 1);
        assert_eq!(milnor_bruteforce(&p(&[(0, 3, 1), (4, 0, -1)]), 10).unwrap(), 6);
    }

    #[test]
    fn two_characteristic_pairs() {
        // (y^2 - x^3)^2 - 4 x^5 y - x^7
        let f = p(&[(0, 4, 1), (3, 2, -2), (6, 0, 1), (5, 1, -4), (7, 0, -1)]);
        assert_eq!(milnor_bruteforce_auto(&f, 40).unwrap(), 16);
    }

    #[test]
    fn low_cap_is_reported() {
        let f = p(&[(0, 2, 1), (9, 0, -1)]);
        assert!(matches!(milnor_bruteforce(&f, 4), Err(Error::NotStabilized(4))));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[(0, 2, 1), (3, 0, -1)]).to_string(), "-x^3 + y^2");
    }
}
