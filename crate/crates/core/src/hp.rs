//! Thin helpers over `astro-float` for the numeric side of the Stokes
//! computations.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub const RM: RoundingMode = RoundingMode::ToEven;

/// A working precision together with the constant cache it needs.
pub struct Hp {
    pub prec: usize,
    cc: Consts,
}

#[derive(Clone, Debug)]
pub struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Hp {
    pub fn new(prec: usize) -> Hp {
        Hp {
            prec: prec.max(64),
            cc: Consts::new().expect("constant cache"),
        }
    }

    pub fn int(&self, i: i64) -> BigFloat {
        BigFloat::from_i64(i, self.prec)
    }

    pub fn big(&mut self, i: &BigInt) -> BigFloat {
        match i.to_i64() {
            Some(v) => self.int(v),
            None => BigFloat::parse(&i.to_string(), Radix::Dec, self.prec, RM, &mut self.cc),
        }
    }

    pub fn ratio(&mut self, r: &BigRational) -> BigFloat {
        let n = self.big(r.numer());
        let d = self.big(r.denom());
        n.div(&d, self.prec, RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, RM)
    }

    /// `r·π` for a rational `r`.
    pub fn pi_times(&mut self, r: &BigRational) -> BigFloat {
        let pi = self.pi();
        let r = self.ratio(r);
        pi.mul(&r, self.prec, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.prec, RM, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.prec, RM, &mut self.cc)
    }

    /// Argument of `x + iy` in `(-π, π]`.
    pub fn atan2(&mut self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        let pi = self.pi();
        if x.is_zero() {
            let half = pi.div(&self.int(2), self.prec, RM);
            return if y.is_negative() { half.neg() } else { half };
        }
        let t = y.div(x, self.prec, RM).atan(self.prec, RM, &mut self.cc);
        if x.is_positive() {
            t
        } else if y.is_negative() {
            t.sub(&pi, self.prec, RM)
        } else {
            t.add(&pi, self.prec, RM)
        }
    }

    pub fn abs_lt(&self, a: &BigFloat, b: &BigFloat) -> bool {
        a.abs().cmp(b).map(|c| c < 0).unwrap_or(false)
    }

    pub fn lt(&self, a: &BigFloat, b: &BigFloat) -> bool {
        a.cmp(b).map(|c| c < 0).unwrap_or(false)
    }

    /// `2^{-k}`.
    pub fn pow2_neg(&self, k: usize) -> BigFloat {
        let two = self.int(2);
        self.int(1).div(&two.powi(k, self.prec, RM), self.prec, RM)
    }

    pub fn to_f64(&mut self, a: &BigFloat) -> f64 {
        if a.is_zero() {
            return 0.0;
        }
        match a.format(Radix::Dec, RM, &mut self.cc) {
            Ok(s) => s.parse::<f64>().unwrap_or(f64::NAN),
            Err(_) => f64::NAN,
        }
    }

    pub fn to_decimal(&mut self, a: &BigFloat) -> String {
        a.format(Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "nan".into())
    }
}
