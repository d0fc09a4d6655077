//! Elements of the rational function field `F(t)`.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::arith::{ConstField, Fe, Poly};
use crate::error::{Error, Result};

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(num.field()));
        }
        let g = num.gcd(&den)?;
        let (num, den) = (num.div_exact(&g)?, den.div_exact(&g)?);
        let lc = den.lc();
        let inv = num.field().inv(&lc)?;
        Ok(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.field());
        RatFunc { num: p, den }
    }

    pub fn zero(field: &ConstField) -> Self {
        RatFunc::from_poly(Poly::zero(field))
    }

    pub fn one(field: &ConstField) -> Self {
        RatFunc::from_poly(Poly::one(field))
    }

    pub fn constant(field: &ConstField, c: Fe) -> Self {
        RatFunc::from_poly(Poly::constant(field, c))
    }

    pub fn from_i64(field: &ConstField, c: i64) -> Self {
        RatFunc::constant(field, field.from_i64(c))
    }

    /// The transcendental `t`.
    pub fn t(field: &ConstField) -> Self {
        RatFunc::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> &ConstField {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<Fe> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn try_add(&self, o: &RatFunc) -> Result<RatFunc> {
        if self.field() != o.field() {
            return Err(Error::FieldMismatch);
        }
        if self.den == o.den {
            return RatFunc::new(self.num.try_add(&o.num)?, self.den.clone());
        }
        let num = (&self.num * &o.den).try_add(&(&o.num * &self.den))?;
        RatFunc::new(num, &self.den * &o.den)
    }

    pub fn try_mul(&self, o: &RatFunc) -> Result<RatFunc> {
        if self.field() != o.field() {
            return Err(Error::FieldMismatch);
        }
        if self.is_zero() || o.is_zero() {
            return Ok(RatFunc::zero(self.field()));
        }
        // Cross-cancel first to keep the gcd small.
        let g1 = self.num.gcd(&o.den)?;
        let g2 = o.num.gcd(&self.den)?;
        let num = &self.num.div_exact(&g1)? * &o.num.div_exact(&g2)?;
        let den = &self.den.div_exact(&g2)? * &o.den.div_exact(&g1)?;
        let inv = self.field().inv(&den.lc())?;
        Ok(RatFunc { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        self.try_mul(&o.inv()?)
    }

    pub fn scale(&self, c: &Fe) -> RatFunc {
        if self.field().is_zero(c) {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Value at a constant; fails at a pole.
    pub fn eval(&self, x: &Fe) -> Result<Fe> {
        let d = self.den.eval(x);
        if self.field().is_zero(&d) {
            return Err(Error::Domain(alloc::format!("{self} has a pole at {x}")));
        }
        self.field().div(&self.num.eval(x), &d)
    }

    /// `p(self)` for a polynomial `p` over the same field.
    pub fn eval_poly_at(p: &Poly, s: &RatFunc) -> Result<RatFunc> {
        let f = s.field();
        let mut acc = RatFunc::zero(f);
        for c in p.coeffs().iter().rev() {
            acc = acc.try_mul(s)?.try_add(&RatFunc::constant(f, c.clone()))?;
        }
        Ok(acc)
    }

    /// `self(s)`, substituting `s` for `t`.
    pub fn compose(&self, s: &RatFunc) -> Result<RatFunc> {
        let n = RatFunc::eval_poly_at(&self.num, s)?;
        let d = RatFunc::eval_poly_at(&self.den, s)?;
        if d.is_zero() {
            return Err(Error::Domain(alloc::format!("{self} is undefined at {s}")));
        }
        n.div(&d)
    }

    /// `deg num - deg den` (`None` for zero).
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.num.deg_i64() - self.den.deg_i64())
        }
    }

    pub fn display(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.display(var);
        }
        alloc::format!("({})/({})", self.num.display(var), self.den.display(var))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("t"))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.try_add(rhs).expect("rational function field mismatch")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.try_add(&-rhs).expect("rational function field mismatch")
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.try_mul(rhs).expect("rational function field mismatch")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

/// Convenience: the product of `(t - c)^k` over the given pairs.
pub fn product_of_linears(field: &ConstField, pairs: &[(Fe, i64)]) -> Result<RatFunc> {
    let mut r = RatFunc::one(field);
    for (c, k) in pairs {
        let lin = RatFunc::from_poly(Poly::linear(field, c));
        r = r.try_mul(&lin.pow(*k)?)?;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let q = ConstField::Rational;
        let num = Poly::from_i64s(&q, &[-2, 0, 2]);
        let den = Poly::from_i64s(&q, &[-3, 3]);
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r.num(), &Poly::from_i64s(&q, &[2, 2]).scale(&q.rational(1, 3).unwrap()));
        assert!(r.den().is_one());
    }

    #[test]
    fn compose_and_eval() {
        let f7 = ConstField::prime(7).unwrap();
        let t = RatFunc::t(&f7);
        let r = RatFunc::new(Poly::from_i64s(&f7, &[0, 0, 1]), Poly::from_i64s(&f7, &[-1, 1])).unwrap();
        let s = &t + &RatFunc::from_i64(&f7, 2);
        let c = r.compose(&s).unwrap();
        assert_eq!(c.eval(&Fe::P(0)).unwrap(), r.eval(&Fe::P(2)).unwrap());
        assert!(r.eval(&Fe::P(1)).is_err());
    }
}
