//! Constant fields: prime fields, finite extensions of prime fields, and the
//! rationals.
//!
//! Elements ([`Fe`]) do not carry their field; every operation goes through a
//! [`ConstField`] value. Representatives are always canonical: residues in
//! `0..p`, extension elements reduced modulo the stored modulus, rationals in
//! lowest terms.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand_core::RngCore;

use crate::error::{Error, Result};

/// Largest supported characteristic. Products of residues fit in `u128`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 32;

/// A field element. The variant must match the field it is used with.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fe {
    /// Residue in `0..p`.
    P(u64),
    /// Coefficients (lowest degree first, exactly `d` entries) modulo the
    /// extension modulus.
    E(Vec<u64>),
    /// A rational number in lowest terms.
    Q(BigRational),
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fe::P(v) => write!(f, "{v}"),
            Fe::E(c) => {
                write!(f, "[")?;
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
            Fe::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// `F_p[x] / (modulus)` with a monic irreducible modulus of degree `d >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    p: u64,
    modulus: Vec<u64>,
}

impl ExtField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Monic modulus, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConstField {
    Prime(u64),
    Ext(Arc<ExtField>),
    Rational,
}

impl fmt::Display for ConstField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstField::Prime(p) => write!(f, "F_{p}"),
            ConstField::Ext(e) => write!(f, "F_{}^{}", e.p, e.degree()),
            ConstField::Rational => write!(f, "Q"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(mod_pow(a, p - 2, p))
    }
}

// Dense F_p polynomial helpers used by the extension-field arithmetic.

fn vtrim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn vrem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    vtrim(&mut r);
    let dm = m.len() - 1;
    let inv_lc = inv_mod(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mul_mod(r[top], inv_lc, p);
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            let s = mul_mod(c, mi, p);
            r[shift + i] = (r[shift + i] + p - s) % p;
        }
        vtrim(&mut r);
    }
    r
}

fn vmul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % pp;
        }
    }
    let mut v: Vec<u64> = out.into_iter().map(|x| x as u64).collect();
    vtrim(&mut v);
    v
}

/// Inverse of `a` modulo `m` over `F_p` via the extended Euclidean algorithm.
fn vinv(p: u64, a: &[u64], m: &[u64]) -> Option<Vec<u64>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    vtrim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        // q, r = divmod(r0, r1)
        let mut r = r0.clone();
        let d1 = r1.len() - 1;
        let inv_lc = inv_mod(r1[d1], p)?;
        let mut q = vec![0u64; r.len().saturating_sub(d1).max(1)];
        while r.len() > d1 {
            let top = r.len() - 1;
            let c = mul_mod(r[top], inv_lc, p);
            let shift = top - d1;
            q[shift] = c;
            for (i, &mi) in r1.iter().enumerate() {
                let s = mul_mod(c, mi, p);
                r[shift + i] = (r[shift + i] + p - s) % p;
            }
            vtrim(&mut r);
        }
        vtrim(&mut q);
        let qs = vmul(p, &q, &s1);
        let mut s2 = vec![0u64; s0.len().max(qs.len())];
        for (i, v) in s2.iter_mut().enumerate() {
            let a = s0.get(i).copied().unwrap_or(0);
            let b = qs.get(i).copied().unwrap_or(0);
            *v = (a + p - b) % p;
        }
        vtrim(&mut s2);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd, a nonzero constant when a is invertible.
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p)?;
    Some(s0.iter().map(|&x| mul_mod(x, c, p)).collect())
}

fn pad(mut v: Vec<u64>, d: usize) -> Vec<u64> {
    v.resize(d, 0);
    v
}

impl ConstField {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::Unsupported(alloc::format!(
                "characteristic {p} exceeds 2^32"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ConstField::Prime(p))
    }

    /// `F_{p^d}` with the smallest monic irreducible modulus of degree `d`,
    /// where polynomials are ordered by the base-`p` integer whose digits are
    /// their coefficients (constant term least significant).
    pub fn extension(p: u64, d: usize) -> Result<Self> {
        let base = Self::prime(p)?;
        if d == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        if d == 1 {
            return Ok(base);
        }
        let m = crate::arith::factor::smallest_irreducible(p, d)?;
        Ok(ConstField::Ext(Arc::new(ExtField { p, modulus: m })))
    }

    /// `F_p[x]/(modulus)`; the modulus must be monic and irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let base = Self::prime(p)?;
        let mut m: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        vtrim(&mut m);
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(Error::Invalid("modulus must be monic of positive degree".into()));
        }
        if m.len() == 2 {
            return Ok(base);
        }
        let poly = crate::arith::poly::Poly::new(
            base,
            m.iter().map(|&c| Fe::P(c)).collect(),
        );
        if !crate::arith::factor::is_irreducible(&poly)? {
            return Err(Error::Invalid("modulus is not irreducible".into()));
        }
        Ok(ConstField::Ext(Arc::new(ExtField { p, modulus: m })))
    }

    /// Skips the irreducibility check. Used for residue fields whose modulus
    /// is a minimal polynomial by construction.
    pub(crate) fn with_modulus_unchecked(p: u64, modulus: Vec<u64>) -> Self {
        if modulus.len() == 2 {
            ConstField::Prime(p)
        } else {
            ConstField::Ext(Arc::new(ExtField { p, modulus }))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ConstField::Prime(p) => *p,
            ConstField::Ext(e) => e.p,
            ConstField::Rational => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, ConstField::Rational)
    }

    /// Degree over the prime field (`0` for the rationals).
    pub fn degree(&self) -> usize {
        match self {
            ConstField::Prime(_) => 1,
            ConstField::Ext(e) => e.degree(),
            ConstField::Rational => 0,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<BigUint> {
        match self {
            ConstField::Rational => None,
            _ => Some(BigUint::from(self.characteristic()).pow(self.degree() as u32)),
        }
    }

    /// Number of elements if it fits in `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().and_then(|o| o.to_u64())
    }

    pub fn zero(&self) -> Fe {
        match self {
            ConstField::Prime(_) => Fe::P(0),
            ConstField::Ext(e) => Fe::E(vec![0; e.degree()]),
            ConstField::Rational => Fe::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Fe {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        match self {
            ConstField::Prime(p) => Fe::P(v.rem_euclid(*p as i64) as u64),
            ConstField::Ext(e) => {
                let mut c = vec![0; e.degree()];
                c[0] = v.rem_euclid(e.p as i64) as u64;
                Fe::E(c)
            }
            ConstField::Rational => Fe::Q(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> Result<Fe> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        self.div(&n, &d)
    }

    /// The generator `x` of an extension field (`None` for other fields).
    pub fn generator(&self) -> Option<Fe> {
        match self {
            ConstField::Ext(e) => {
                let mut c = vec![0; e.degree()];
                c[1] = 1;
                Some(Fe::E(c))
            }
            _ => None,
        }
    }

    /// Builds an extension element from prime-field coordinates.
    pub fn from_coords(&self, coords: &[u64]) -> Result<Fe> {
        match self {
            ConstField::Prime(p) => {
                let mut v = 0;
                if coords.len() > 1 && coords[1..].iter().any(|&c| c % p != 0) {
                    return Err(Error::Invalid("too many coordinates".into()));
                }
                if let Some(&c) = coords.first() {
                    v = c % p;
                }
                Ok(Fe::P(v))
            }
            ConstField::Ext(e) => {
                let v: Vec<u64> = coords.iter().map(|&c| c % e.p).collect();
                let r = vrem(e.p, &v, &e.modulus);
                Ok(Fe::E(pad(r, e.degree())))
            }
            ConstField::Rational => Err(Error::Invalid("rationals have no coordinates".into())),
        }
    }

    /// Prime-field coordinates of an element of a finite field.
    pub fn coords(&self, a: &Fe) -> Vec<u64> {
        match a {
            Fe::P(v) => vec![*v],
            Fe::E(c) => c.clone(),
            Fe::Q(_) => panic!("coords of a rational"),
        }
    }

    pub fn is_zero(&self, a: &Fe) -> bool {
        match a {
            Fe::P(v) => *v == 0,
            Fe::E(c) => c.iter().all(|&x| x == 0),
            Fe::Q(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Fe) -> bool {
        *a == self.one()
    }

    /// Whether `a` lies in the prime subfield (always true for `Prime`/`Rational`).
    pub fn prime_subfield_value(&self, a: &Fe) -> Option<Fe> {
        match a {
            Fe::E(c) => {
                if c[1..].iter().all(|&x| x == 0) {
                    Some(Fe::P(c[0]))
                } else {
                    None
                }
            }
            other => Some(other.clone()),
        }
    }

    pub fn contains(&self, a: &Fe) -> bool {
        match (self, a) {
            (ConstField::Prime(p), Fe::P(v)) => v < p,
            (ConstField::Ext(e), Fe::E(c)) => c.len() == e.degree() && c.iter().all(|&x| x < e.p),
            (ConstField::Rational, Fe::Q(_)) => true,
            _ => false,
        }
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        match (self, a, b) {
            (ConstField::Prime(p), Fe::P(x), Fe::P(y)) => Fe::P((x + y) % p),
            (ConstField::Ext(e), Fe::E(x), Fe::E(y)) => {
                Fe::E(x.iter().zip(y).map(|(u, v)| (u + v) % e.p).collect())
            }
            (ConstField::Rational, Fe::Q(x), Fe::Q(y)) => Fe::Q(x + y),
            _ => panic!("field element mismatch in add"),
        }
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        match (self, a) {
            (ConstField::Prime(p), Fe::P(x)) => Fe::P((p - x) % p),
            (ConstField::Ext(e), Fe::E(x)) => Fe::E(x.iter().map(|u| (e.p - u) % e.p).collect()),
            (ConstField::Rational, Fe::Q(x)) => Fe::Q(-x),
            _ => panic!("field element mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        match (self, a, b) {
            (ConstField::Prime(p), Fe::P(x), Fe::P(y)) => Fe::P(mul_mod(*x, *y, *p)),
            (ConstField::Ext(e), Fe::E(x), Fe::E(y)) => {
                let prod = vmul(e.p, x, y);
                Fe::E(pad(vrem(e.p, &prod, &e.modulus), e.degree()))
            }
            (ConstField::Rational, Fe::Q(x), Fe::Q(y)) => Fe::Q(x * y),
            _ => panic!("field element mismatch in mul"),
        }
    }

    pub fn inv(&self, a: &Fe) -> Result<Fe> {
        match (self, a) {
            (ConstField::Prime(p), Fe::P(x)) => inv_mod(*x, *p).map(Fe::P).ok_or(Error::DivisionByZero),
            (ConstField::Ext(e), Fe::E(x)) => vinv(e.p, x, &e.modulus)
                .map(|v| Fe::E(pad(v, e.degree())))
                .ok_or(Error::DivisionByZero),
            (ConstField::Rational, Fe::Q(x)) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Fe::Q(x.recip()))
                }
            }
            _ => panic!("field element mismatch in inv"),
        }
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Result<Fe> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Fe, mut e: u64) -> Fe {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        r
    }

    /// `a^e` for a signed exponent; negative powers of zero fail.
    pub fn pow_i64(&self, a: &Fe, e: i64) -> Result<Fe> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn pow_big(&self, a: &Fe, e: &BigUint) -> Fe {
        let mut r = self.one();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    /// Unique `p`-th root in a finite field (inverse Frobenius).
    pub fn pth_root(&self, a: &Fe) -> Fe {
        match self {
            ConstField::Prime(_) => a.clone(),
            ConstField::Ext(e) => {
                let exp = BigUint::from(e.p).pow(e.degree() as u32 - 1);
                self.pow_big(a, &exp)
            }
            ConstField::Rational => a.clone(),
        }
    }

    /// All elements in canonical order (finite fields of size at most `limit`).
    pub fn elements(&self, limit: u64) -> Result<Vec<Fe>> {
        let n = self
            .order_u64()
            .ok_or_else(|| Error::Unsupported("cannot enumerate the rationals".into()))?;
        if n > limit {
            return Err(Error::Unsupported(alloc::format!(
                "field of size {n} exceeds enumeration limit {limit}"
            )));
        }
        Ok((0..n).map(|i| self.element_from_index(i)).collect())
    }

    /// The element whose base-`p` digits are its coordinates.
    pub fn element_from_index(&self, mut i: u64) -> Fe {
        match self {
            ConstField::Prime(p) => Fe::P(i % p),
            ConstField::Ext(e) => {
                let mut c = vec![0; e.degree()];
                for v in c.iter_mut() {
                    *v = i % e.p;
                    i /= e.p;
                }
                Fe::E(c)
            }
            ConstField::Rational => Fe::Q(BigRational::from_integer(BigInt::from(i))),
        }
    }

    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> Fe {
        match self {
            ConstField::Prime(p) => Fe::P(rng.next_u64() % p),
            ConstField::Ext(e) => Fe::E((0..e.degree()).map(|_| rng.next_u64() % e.p).collect()),
            ConstField::Rational => {
                let n = (rng.next_u64() % 21) as i64 - 10;
                let d = (rng.next_u64() % 5) as i64 + 1;
                Fe::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
        }
    }

    /// Maps an element of `base` (the prime field, or the rationals) into
    /// this field.
    pub fn lift_prime(&self, a: &Fe) -> Fe {
        match (self, a) {
            (ConstField::Ext(e), Fe::P(v)) => {
                let mut c = vec![0; e.degree()];
                c[0] = *v;
                Fe::E(c)
            }
            _ => a.clone(),
        }
    }

    /// Integer value of a rational, if it is an integer fitting in `i64`.
    pub fn as_i64(&self, a: &Fe) -> Option<i64> {
        match a {
            Fe::P(v) => Some(*v as i64),
            Fe::Q(r) if r.is_integer() => r.numer().to_i64(),
            _ => None,
        }
    }

    /// `n mod p` as a field element, for the characteristic-sensitive integer
    /// multiples in formal derivatives.
    pub fn from_usize(&self, n: usize) -> Fe {
        match self {
            ConstField::Rational => Fe::Q(BigRational::from_integer(BigInt::from(n))),
            _ => self.from_i64((n as u64 % self.characteristic()) as i64),
        }
    }
}

/// Rational `q`-th root of a rational number, if one exists. For even `q`
/// the positive root is returned.
pub(crate) fn rational_qth_root(a: &BigRational, q: u32) -> Option<BigRational> {
    if a.is_zero() {
        return Some(BigRational::zero());
    }
    if a.is_negative() && q % 2 == 0 {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(q);
        if r.pow(q) == n.abs() {
            Some(if n.is_negative() { -r } else { r })
        } else {
            None
        }
    };
    let n = root_int(a.numer())?;
    let d = root_int(a.denom())?;
    Some(BigRational::new(n, d))
}
