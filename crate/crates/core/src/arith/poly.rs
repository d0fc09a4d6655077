//! Dense univariate polynomials over a [`ConstField`].

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::field::{ConstField, Fe};
use crate::error::{Error, Result};

/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: ConstField,
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(field: ConstField, coeffs: Vec<Fe>) -> Self {
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(field: &ConstField, coeffs: &[i64]) -> Self {
        Poly::new(field.clone(), coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &ConstField) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &ConstField) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &ConstField, c: Fe) -> Self {
        Poly::new(field.clone(), vec![c])
    }

    /// `c * X^n`.
    pub fn monomial(field: &ConstField, c: Fe, n: usize) -> Self {
        let mut v = vec![field.zero(); n + 1];
        v[n] = c;
        Poly::new(field.clone(), v)
    }

    /// The indeterminate `X`.
    pub fn x(field: &ConstField) -> Self {
        Poly::monomial(field, field.one(), 1)
    }

    /// `X - c`.
    pub fn linear(field: &ConstField, c: &Fe) -> Self {
        Poly::new(field.clone(), vec![field.neg(c), field.one()])
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.field.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn field(&self) -> &ConstField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = -1`.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> Fe {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, c: &Fe) -> Poly {
        Poly::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lc()).expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Multiplication by `X^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); n];
        v.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs: v }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| self.field.add(&self.coeff(i), &other.coeff(i))).collect();
        Ok(Poly::new(self.field.clone(), v))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        Ok(Poly::new(f.clone(), v))
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        let inv_lc = f.inv(&d.lc())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(&r[top], &inv_lc);
            if f.is_zero(&c) {
                continue;
            }
            let shift = top - dd;
            for (i, di) in d.coeffs.iter().enumerate() {
                r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, di));
            }
            q[shift] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(f.clone(), q), Poly::new(f.clone(), r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor (`gcd(0, 0) = 0`).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check_field(other)?;
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s2);
            t0 = core::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = f.inv(&r0.lc())?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_usize(i)))
            .collect();
        Poly::new(f.clone(), v)
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut r = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        r
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Result<Poly> {
        let base = self.rem(m)?;
        let mut r = Poly::one(&self.field).rem(m)?;
        for i in (0..e.bits()).rev() {
            r = (&r * &r).rem(m)?;
            if e.bit(i) {
                r = (&r * &base).rem(m)?;
            }
        }
        Ok(r)
    }

    /// `self(g(X))`.
    pub fn compose(&self, g: &Poly) -> Result<Poly> {
        self.check_field(g)?;
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(&self.field, c.clone());
        }
        Ok(acc)
    }

    /// Multiplicity of `d` (non-constant) as a factor, and the cofactor.
    pub fn valuation_by(&self, d: &Poly) -> Result<(u64, Poly)> {
        if d.is_constant() {
            return Err(Error::Precondition("valuation by a constant".into()));
        }
        if self.is_zero() {
            return Err(Error::Precondition("valuation of zero".into()));
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(d)?;
            if !r.is_zero() {
                return Ok((k, cur));
            }
            cur = q;
            k += 1;
        }
    }

    /// Applies a map to the coefficients, landing in another field.
    pub fn map_coeffs(&self, target: &ConstField, f: impl Fn(&Fe) -> Fe) -> Poly {
        Poly::new(target.clone(), self.coeffs.iter().map(f).collect())
    }

    /// Human-readable form in the given variable name.
    pub fn display(&self, var: &str) -> String {
        let mut s = String::new();
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            if !first {
                s.push_str(" + ");
            }
            first = false;
            let one = f.is_one(c);
            match i {
                0 => {
                    let _ = write!(s, "{c}");
                }
                1 => {
                    if !one {
                        let _ = write!(s, "{c}*");
                    }
                    s.push_str(var);
                }
                _ => {
                    if !one {
                        let _ = write!(s, "{c}*");
                    }
                    let _ = write!(s, "{var}^{i}");
                }
            }
        }
        s
    }
}

/// Degree first, then coefficients from the constant term upward.
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("T"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial field mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial field mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> ConstField {
        ConstField::prime(7).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let q = ConstField::Rational;
        let a = Poly::from_i64s(&q, &[-1, 0, 1]);
        let b = Poly::from_i64s(&q, &[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);

        let f5 = ConstField::prime(5).unwrap();
        let t = Poly::x(&f5);
        let t1 = Poly::from_i64s(&f5, &[1, 1]);
        assert!(t.gcd(&t1).unwrap().is_one());

        let t3 = Poly::from_i64s(&q, &[0, 0, 0, 2]);
        assert_eq!(Poly::zero(&q).gcd(&t3).unwrap(), t3.monic());
    }

    #[test]
    fn gcd_rejects_mismatched_fields() {
        let a = Poly::x(&f7());
        let b = Poly::x(&ConstField::Rational);
        assert_eq!(a.gcd(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn xgcd_bezout() {
        let f = f7();
        let a = Poly::from_i64s(&f, &[1, 2, 3, 1]);
        let b = Poly::from_i64s(&f, &[5, 0, 1]);
        let (g, s, t) = a.xgcd(&b).unwrap();
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn div_rem_identity() {
        let f = f7();
        let a = Poly::from_i64s(&f, &[3, 1, 4, 1, 5]);
        let d = Poly::from_i64s(&f, &[2, 6, 1]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn valuation_by_factor() {
        let f = ConstField::Rational;
        let t1 = Poly::from_i64s(&f, &[-1, 1]);
        let p = &(&t1 * &t1) * &Poly::from_i64s(&f, &[0, 1]);
        let (k, rest) = p.valuation_by(&t1).unwrap();
        assert_eq!(k, 2);
        assert_eq!(rest, Poly::x(&f));
    }
}
