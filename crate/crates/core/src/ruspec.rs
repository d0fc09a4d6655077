//! The rational functions `R(T) = C(T) / B(T)` with all zeros and poles in
//! the constant field, and the case analysis of `ord R(s)`.

use alloc::format;
use alloc::vec::Vec;

use crate::arith::{ConstField, Fe, Poly};
use crate::error::{Error, Result};
use crate::place::{ord_at, Place};
use crate::ratfunc::{product_of_linears, RatFunc};

/// `R(T) = prod (T - c_i)^{n_i} / prod (T - b_i)^{j_i}`; `a` is the first
/// zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuSpec {
    pub q: u64,
    pub zeros: Vec<(Fe, u64)>,
    pub poles: Vec<(Fe, u64)>,
}

/// Which branch of the case analysis produced `ord R(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderCase {
    /// Exactly one root `c` with `ord(s - c) > 0`; value `n(c) * ord(s - c)`.
    Root { c: Fe, n: i64, ord: i64 },
    /// All `ord(s - c) = 0`; value 0.
    Unit,
    /// A pole of `s`; value `ord(s) * (deg C - deg B)`.
    Pole { ord_s: i64 },
}

impl RuSpec {
    pub fn new(q: u64, zeros: Vec<(Fe, u64)>, poles: Vec<(Fe, u64)>) -> Self {
        RuSpec { q, zeros, poles }
    }

    /// The distinguished zero `a = c_1`.
    pub fn a(&self) -> &Fe {
        &self.zeros[0].0
    }

    pub fn deg_c(&self) -> i64 {
        self.zeros.iter().map(|(_, n)| *n as i64).sum()
    }

    pub fn deg_b(&self) -> i64 {
        self.poles.iter().map(|(_, j)| *j as i64).sum()
    }

    /// `deg C - deg B`.
    pub fn degree(&self) -> i64 {
        self.deg_c() - self.deg_b()
    }

    /// The root set with signed multiplicities `n(c)` (negative for poles).
    pub fn roots(&self) -> Vec<(Fe, i64)> {
        let mut v: Vec<(Fe, i64)> = self.zeros.iter().map(|(c, n)| (c.clone(), *n as i64)).collect();
        v.extend(self.poles.iter().map(|(b, j)| (b.clone(), -(*j as i64))));
        v
    }

    pub fn c_poly(&self, field: &ConstField) -> Poly {
        let mut p = Poly::one(field);
        for (c, n) in &self.zeros {
            p = &p * &Poly::linear(field, c).pow(*n);
        }
        p
    }

    pub fn b_poly(&self, field: &ConstField) -> Poly {
        let mut p = Poly::one(field);
        for (b, j) in &self.poles {
            p = &p * &Poly::linear(field, b).pow(*j);
        }
        p
    }

    /// `R` as an element of `F(T)`.
    pub fn as_ratfunc(&self, field: &ConstField) -> Result<RatFunc> {
        product_of_linears(field, &self.roots())
    }

    /// Checks the standing assumptions; the error names the violated clause.
    pub fn validate(&self, field: &ConstField) -> Result<()> {
        let ch = field.characteristic();
        if !crate::arith::field::is_prime(self.q) {
            return Err(Error::Invalid(format!("q = {} is not prime", self.q)));
        }
        if self.q == ch {
            return Err(Error::Invalid(format!("q = {} equals the characteristic", self.q)));
        }
        if self.zeros.is_empty() {
            return Err(Error::Invalid("R has no zeros (a = c_1 is undefined)".into()));
        }
        let roots = self.roots();
        for (c, m) in &roots {
            if !field.contains(c) {
                return Err(Error::Invalid(format!("root {c} is not in {field}")));
            }
            if *m == 0 {
                return Err(Error::Invalid("multiplicities must be positive".into()));
            }
        }
        for i in 0..roots.len() {
            for j in 0..i {
                if roots[i].0 == roots[j].0 {
                    return Err(Error::Invalid(format!(
                        "zeros and poles must be distinct ({} repeats)",
                        roots[i].0
                    )));
                }
            }
        }
        if self.zeros[0].1 % self.q == 0 {
            return Err(Error::Invalid(format!(
                "n_1 = {} is divisible by q = {}",
                self.zeros[0].1, self.q
            )));
        }
        let d = self.degree();
        if d <= 0 {
            return Err(Error::Invalid(format!("deg C - deg B = {d} is not positive")));
        }
        if d % self.q as i64 == 0 {
            return Err(Error::Invalid(format!(
                "deg C - deg B = {d} is divisible by q = {}",
                self.q
            )));
        }
        Ok(())
    }

    /// `R(s)`; fails when `s` is identically a pole of `R`.
    pub fn eval(&self, s: &RatFunc) -> Result<RatFunc> {
        let field = s.field();
        let mut num = RatFunc::one(field);
        let mut den = RatFunc::one(field);
        for (c, m) in self.roots() {
            let lin = s - &RatFunc::constant(field, c.clone());
            if m > 0 {
                num = &num * &lin.pow(m)?;
            } else {
                if lin.is_zero() {
                    return Err(Error::Domain(format!("R is undefined at {s} (pole {c})")));
                }
                den = &den * &lin.pow(-m)?;
            }
        }
        num.div(&den)
    }
}

/// `ord_p R(s)` computed through the case analysis, cross-checked against a
/// direct evaluation of `R(s)`.
pub fn order_of_r_at(r: &RuSpec, s: &RatFunc, p: &Place) -> Result<(Option<i64>, OrderCase)> {
    let field = s.field();
    let direct = ord_at(p, &r.eval(s)?);
    let (value, case) = order_by_cases(r, s, p, field)?;
    if value != direct {
        return Err(Error::Internal(format!(
            "case analysis gives {value:?} but ord R(s) = {direct:?} at {p} for s = {s}"
        )));
    }
    Ok((value, case))
}

/// The case analysis alone (no cross-check).
pub fn order_by_cases(
    r: &RuSpec,
    s: &RatFunc,
    p: &Place,
    field: &ConstField,
) -> Result<(Option<i64>, OrderCase)> {
    let ord_s = ord_at(p, s);
    if let Some(os) = ord_s {
        if os < 0 {
            return Ok((Some(os * r.degree()), OrderCase::Pole { ord_s: os }));
        }
    }
    let mut hit = None;
    for (c, n) in r.roots() {
        let diff = s - &RatFunc::constant(field, c.clone());
        match ord_at(p, &diff) {
            None => {
                if n < 0 {
                    return Err(Error::Domain(format!("s = {s} equals the pole {c}")));
                }
                return Ok((None, OrderCase::Root { c, n, ord: i64::MAX }));
            }
            Some(o) if o > 0 => {
                if hit.is_some() {
                    return Err(Error::Internal("two roots of R coincide at a place".into()));
                }
                hit = Some((c, n, o));
            }
            _ => {}
        }
    }
    Ok(match hit {
        Some((c, n, o)) => (Some(n * o), OrderCase::Root { c, n, ord: o }),
        None => (Some(0), OrderCase::Unit),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(field: &ConstField) -> RuSpec {
        // T^2 / (T - 1)
        RuSpec::new(5, alloc::vec![(field.zero(), 2)], alloc::vec![(field.one(), 1)])
    }

    #[test]
    fn cases() {
        let q = ConstField::Rational;
        let r = sample(&q);
        let t = RatFunc::t(&q);
        let p0 = Place::linear(&q, &q.zero());
        let (v, c) = order_of_r_at(&r, &t, &p0).unwrap();
        assert_eq!(v, Some(2));
        assert!(matches!(c, OrderCase::Root { n: 2, ord: 1, .. }));
        let (v, c) = order_of_r_at(&r, &t, &Place::Infinite).unwrap();
        assert_eq!(v, Some(-1));
        assert_eq!(c, OrderCase::Pole { ord_s: -1 });

        let lin = RuSpec::new(3, alloc::vec![(q.zero(), 1)], alloc::vec![]);
        let s = &t - &RatFunc::from_i64(&q, 5);
        let (v, c) = order_of_r_at(&lin, &s, &Place::linear(&q, &q.from_i64(3))).unwrap();
        assert_eq!((v, c), (Some(0), OrderCase::Unit));
    }

    #[test]
    fn pole_value_is_domain_error() {
        let q = ConstField::Rational;
        let r = sample(&q);
        let s = RatFunc::one(&q);
        assert!(matches!(r.eval(&s), Err(Error::Domain(_))));
    }

    #[test]
    fn validation_clauses() {
        let f7 = ConstField::prime(7).unwrap();
        assert!(RuSpec::new(3, alloc::vec![(Fe::P(0), 1)], alloc::vec![]).validate(&f7).is_ok());
        assert!(RuSpec::new(7, alloc::vec![(Fe::P(0), 1)], alloc::vec![]).validate(&f7).is_err());
        let flat = RuSpec::new(3, alloc::vec![(Fe::P(0), 1)], alloc::vec![(Fe::P(1), 1)]);
        assert!(flat.validate(&f7).is_err());
        let n1 = RuSpec::new(3, alloc::vec![(Fe::P(0), 3), (Fe::P(1), 1)], alloc::vec![]);
        assert!(n1.validate(&f7).is_err());
    }
}
