//! Exact scalars: arbitrary-precision rationals, optionally truncated
//! polynomials ("jets") in one formal deformation parameter `t`.
//!
//! Jet arithmetic is exact modulo `t^{T+1}` for a truncation order `T` that is
//! uniform within one computation context. Mixing a plain rational with a jet
//! promotes the rational to a constant jet; mixing jets of different orders is
//! a programming error and panics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};

/// Rational coefficients of a polynomial in `t`, truncated at order `ord`
/// (arithmetic modulo `t^{ord+1}`). Trailing zero coefficients are trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    pub ord: u32,
    pub c: Vec<BigRational>,
}

impl Jet {
    fn trim(mut self) -> Jet {
        while matches!(self.c.last(), Some(x) if x.is_zero()) {
            self.c.pop();
        }
        self
    }

    fn coeff(&self, k: usize) -> BigRational {
        self.c.get(k).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// An exact scalar: a rational number or a truncated polynomial in `t`.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rat(BigRational),
    Jet(Jet),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rat(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The deformation parameter `t` as a jet of truncation order `ord`.
    pub fn t(ord: u32) -> Scalar {
        assert!(ord >= 1, "truncation order must admit a linear term");
        Scalar::Jet(Jet {
            ord,
            c: vec![BigRational::zero(), BigRational::one()],
        })
    }

    /// Constant jet of the given truncation order.
    pub fn const_jet(&self, ord: u32) -> Scalar {
        Scalar::Jet(self.as_jet(ord))
    }

    /// Parse a rational from a `p/q` (or integer) string.
    pub fn parse_rat(s: &str) -> Result<Scalar> {
        let s = s.trim();
        let r = BigRational::from_str(s)
            .map_err(|e| CoreError::Parse(format!("bad rational `{s}`: {e}")))?;
        Ok(Scalar::Rat(r))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Jet(j) => j.c.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Jet(j) => j.coeff(0).is_one() && j.c.iter().skip(1).all(|x| x.is_zero()),
        }
    }

    /// Units: nonzero rationals, jets with nonzero constant term.
    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Rat(r) => !r.is_zero(),
            Scalar::Jet(j) => !j.coeff(0).is_zero(),
        }
    }

    /// Lowest power of `t` with nonzero coefficient; `None` for the zero scalar.
    pub fn t_valuation(&self) -> Option<u32> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(0)
                }
            }
            Scalar::Jet(j) => j.c.iter().position(|x| !x.is_zero()).map(|k| k as u32),
        }
    }

    /// Truncation order of the ambient jet context, if any.
    pub fn jet_order(&self) -> Option<u32> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Jet(j) => Some(j.ord),
        }
    }

    pub fn as_jet(&self, ord: u32) -> Jet {
        match self {
            Scalar::Rat(r) => Jet {
                ord,
                c: vec![r.clone()],
            }
            .trim(),
            Scalar::Jet(j) => {
                assert_eq!(j.ord, ord, "mixed jet truncation orders in one context");
                j.clone()
            }
        }
    }

    /// Constant term as a rational.
    pub fn constant_term(&self) -> BigRational {
        match self {
            Scalar::Rat(r) => r.clone(),
            Scalar::Jet(j) => j.coeff(0),
        }
    }

    /// Multiplicative inverse. Defined for units only.
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    Err(CoreError::arg("division by zero"))
                } else {
                    Ok(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Jet(j) => {
                let a0 = j.coeff(0);
                if a0.is_zero() {
                    return Err(CoreError::arg(
                        "division by non-unit jet (zero constant term)",
                    ));
                }
                // Power series inversion: c_0 = 1/a_0,
                // c_n = -(1/a_0) * sum_{k=1}^{n} a_k c_{n-k}.
                let n = j.ord as usize + 1;
                let inv0 = a0.recip();
                let mut c = vec![BigRational::zero(); n];
                c[0] = inv0.clone();
                for m in 1..n {
                    let mut s = BigRational::zero();
                    for k in 1..=m {
                        let ak = j.coeff(k);
                        if !ak.is_zero() && !c[m - k].is_zero() {
                            s += ak * c[m - k].clone();
                        }
                    }
                    c[m] = -&inv0 * s;
                }
                Ok(Scalar::Jet(Jet { ord: j.ord, c }.trim()))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    fn binop(
        &self,
        other: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        jet: impl Fn(&Jet, &Jet) -> Jet,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(rat(a, b)),
            _ => {
                let ord = self
                    .jet_order()
                    .or(other.jet_order())
                    .expect("one side is a jet");
                if let (Some(a), Some(b)) = (self.jet_order(), other.jet_order()) {
                    assert_eq!(a, b, "mixed jet truncation orders in one context");
                }
                Scalar::Jet(jet(&self.as_jet(ord), &other.as_jet(ord)).trim())
            }
        }
    }
}

fn jet_add(a: &Jet, b: &Jet) -> Jet {
    let n = a.c.len().max(b.c.len());
    let c = (0..n).map(|k| a.coeff(k) + b.coeff(k)).collect();
    Jet { ord: a.ord, c }
}

fn jet_sub(a: &Jet, b: &Jet) -> Jet {
    let n = a.c.len().max(b.c.len());
    let c = (0..n).map(|k| a.coeff(k) - b.coeff(k)).collect();
    Jet { ord: a.ord, c }
}

fn jet_mul(a: &Jet, b: &Jet) -> Jet {
    let n = a.ord as usize + 1;
    let mut c = vec![BigRational::zero(); n.min(a.c.len() + b.c.len()).max(1)];
    for (i, ai) in a.c.iter().enumerate() {
        if ai.is_zero() || i >= n {
            continue;
        }
        for (j, bj) in b.c.iter().enumerate() {
            if i + j >= n {
                break;
            }
            if !bj.is_zero() {
                c[i + j] += ai * bj;
            }
        }
    }
    Jet { ord: a.ord, c }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for Scalar {}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $ratop:expr, $jetop:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.binop(rhs, $ratop, $jetop)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a + b, jet_add);
forward_binop!(Sub, sub, |a, b| a - b, jet_sub);
forward_binop!(Mul, mul, |a, b| a * b, jet_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Jet(j) => Scalar::Jet(Jet {
                ord: j.ord,
                c: j.c.iter().map(|x| -x).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rat(r)),
            Scalar::Jet(j) => {
                if self.is_zero() {
                    return write!(f, "0");
                }
                let mut parts = Vec::new();
                for (k, c) in j.c.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let coeff = fmt_rat(&c.abs());
                    let body = match k {
                        0 => coeff,
                        1 if c.abs().is_one() => "t".to_string(),
                        1 => format!("{coeff}*t"),
                        _ if c.abs().is_one() => format!("t^{k}"),
                        _ => format!("{coeff}*t^{k}"),
                    };
                    if parts.is_empty() {
                        parts.push(if c.is_negative() {
                            format!("-{body}")
                        } else {
                            body
                        });
                    } else if c.is_negative() {
                        parts.push(format!("- {body}"));
                    } else {
                        parts.push(format!("+ {body}"));
                    }
                }
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_basics() {
        let a = Scalar::rat(1, 2);
        let b = Scalar::rat(1, 3);
        assert_eq!(&a + &b, Scalar::rat(5, 6));
        assert_eq!(&a * &b, Scalar::rat(1, 6));
        assert_eq!(a.div(&b).unwrap(), Scalar::rat(3, 2));
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn parse_and_display() {
        let a = Scalar::parse_rat("-7/3").unwrap();
        assert_eq!(a, Scalar::rat(-7, 3));
        assert_eq!(a.to_string(), "-7/3");
        assert!(Scalar::parse_rat("x").is_err());
    }

    #[test]
    fn jet_truncation() {
        let t = Scalar::t(3);
        // (1 + t)^4 mod t^4 = 1 + 4t + 6t^2 + 4t^3
        let one_plus_t = Scalar::one() + t.clone();
        let p = &(&one_plus_t * &one_plus_t) * &(&one_plus_t * &one_plus_t);
        let expect = Scalar::one()
            + Scalar::from_int(4) * t.clone()
            + Scalar::from_int(6) * (&t * &t)
            + Scalar::from_int(4) * (&(&t * &t) * &t);
        assert_eq!(p, expect);
        // t^4 vanishes at order 3
        let t4 = &(&t * &t) * &(&t * &t);
        assert!(t4.is_zero());
    }

    #[test]
    fn jet_inverse_is_exact() {
        let t = Scalar::t(5);
        let f = Scalar::rat(2, 1) + Scalar::rat(3, 1) * t.clone() + &t * &t;
        let g = f.inv().unwrap();
        assert!((f * g - Scalar::one()).is_zero());
        // non-units are rejected
        assert!(t.inv().is_err());
    }

    #[test]
    fn jet_associativity_and_truncation_commute() {
        // (fg)h = f(gh) with truncation applied throughout
        let t = Scalar::t(4);
        let f = Scalar::one() + &t * &Scalar::rat(1, 2);
        let g = Scalar::rat(-2, 3) + &t * &t;
        let h = t.clone() + Scalar::from_int(5);
        assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn valuation() {
        assert_eq!(Scalar::zero().t_valuation(), None);
        assert_eq!(Scalar::rat(2, 7).t_valuation(), Some(0));
        let t = Scalar::t(4);
        assert_eq!((&t * &t).t_valuation(), Some(2));
    }
}
