//! Places of `F(t)`, orders, divisors and weak approximation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::arith::{factor, is_irreducible, ConstField, Fe, Poly};
use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;

/// A finite place is a monic irreducible polynomial; `Infinite` is the place
/// where `1/t` vanishes. Finite places sort before the infinite one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(Poly),
    Infinite,
}

impl Place {
    /// Checks that `pi` is monic and irreducible.
    pub fn finite(pi: Poly) -> Result<Place> {
        if !pi.is_monic() || !is_irreducible(&pi)? {
            return Err(Error::Invalid(format!("{pi} is not monic irreducible")));
        }
        Ok(Place::Finite(pi))
    }

    /// The place `t - c`.
    pub fn linear(field: &ConstField, c: &Fe) -> Place {
        Place::Finite(Poly::linear(field, c))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinite => 1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }

    /// `pi`, or `1/t` at infinity.
    pub fn uniformizer(&self, field: &ConstField) -> RatFunc {
        match self {
            Place::Finite(p) => RatFunc::from_poly(p.clone()),
            Place::Infinite => RatFunc::t(field).inv().expect("t is nonzero"),
        }
    }

    /// Residue field `k` of the place together with the image `theta` of `t`
    /// (for the infinite place, `theta` is unused and reported as zero).
    ///
    /// Only prime fields and the rationals are supported as constant
    /// fields; over the rationals only degree-one places are.
    pub fn residue_field(&self, field: &ConstField) -> Result<(ConstField, Fe)> {
        let pi = match self {
            Place::Infinite => return Ok((field.clone(), field.zero())),
            Place::Finite(pi) => pi,
        };
        if pi.degree() == Some(1) {
            return Ok((field.clone(), field.neg(&pi.coeff(0))));
        }
        match field {
            ConstField::Prime(p) => {
                let m: Vec<u64> = pi.coeffs().iter().map(|c| field.coords(c)[0]).collect();
                let k = ConstField::with_modulus_unchecked(*p, m);
                let theta = k.generator().expect("extension field");
                Ok((k, theta))
            }
            _ => Err(Error::Unsupported(format!(
                "residue field of a degree-{} place over {field}",
                pi.degree().unwrap_or(0)
            ))),
        }
    }

    /// Order and residue of the unit part: `x = w^k * u` with `w` the
    /// uniformizer and `u` a unit; returns `(k, u mod place)` in the
    /// residue field `k` given by [`Place::residue_field`].
    pub fn split_unit(&self, x: &RatFunc, k: &ConstField, theta: &Fe) -> Result<(i64, Fe)> {
        if x.is_zero() {
            return Err(Error::Precondition("unit part of zero".into()));
        }
        match self {
            Place::Infinite => {
                let ord = x.den().deg_i64() - x.num().deg_i64();
                let f = x.field();
                Ok((ord, f.div(&x.num().lc(), &x.den().lc())?))
            }
            Place::Finite(pi) => {
                let (a, n) = x.num().valuation_by(pi)?;
                let (b, d) = x.den().valuation_by(pi)?;
                let nv = eval_in(&n, k, theta);
                let dv = eval_in(&d, k, theta);
                Ok((a as i64 - b as i64, k.div(&nv, &dv)?))
            }
        }
    }

    pub fn display(&self) -> alloc::string::String {
        match self {
            Place::Finite(p) => format!("({p})"),
            Place::Infinite => "inf".into(),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// Evaluates a polynomial over the prime field (or `Q`) at an element of an
/// extension `k` of it.
pub fn eval_in(p: &Poly, k: &ConstField, x: &Fe) -> Fe {
    let mut acc = k.zero();
    for c in p.coeffs().iter().rev() {
        acc = k.add(&k.mul(&acc, x), &k.lift_prime(c));
    }
    acc
}

/// `ord_p x`, with `None` standing for `+infinity` (x = 0).
pub fn ord_at(p: &Place, x: &RatFunc) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(match p {
        Place::Infinite => x.den().deg_i64() - x.num().deg_i64(),
        Place::Finite(pi) => {
            let a = x.num().valuation_by(pi).expect("non-constant place").0;
            let b = x.den().valuation_by(pi).expect("non-constant place").0;
            a as i64 - b as i64
        }
    })
}

/// A finite formal sum of places with nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    terms: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Place, i64)>) -> Self {
        let mut d = Divisor::new();
        for (p, k) in terms {
            d.add_term(p, k);
        }
        d
    }

    pub fn add_term(&mut self, p: Place, k: i64) {
        let e = self.terms.entry(p).or_insert(0);
        *e += k;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Place, i64> {
        &self.terms
    }

    pub fn coeff(&self, p: &Place) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum k * deg(place)`.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, k)| k * p.degree() as i64).sum()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, k) in &other.terms {
            d.add_term(p.clone(), *k);
        }
        d
    }

    pub fn neg(&self) -> Divisor {
        Divisor { terms: self.terms.iter().map(|(p, k)| (p.clone(), -k)).collect() }
    }

    /// True iff every coefficient is divisible by `q`.
    pub fn divisible_by(&self, q: i64) -> bool {
        self.terms.values().all(|k| k % q == 0)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{k}*{p}")?;
        }
        Ok(())
    }
}

/// The divisor of a nonzero rational function.
pub fn divisor_of(x: &RatFunc) -> Result<Divisor> {
    if x.is_zero() {
        return Err(Error::UndefinedDivisor);
    }
    let mut d = Divisor::new();
    for (g, m) in factor(x.num())?.factors {
        d.add_term(Place::Finite(g), m as i64);
    }
    for (g, m) in factor(x.den())?.factors {
        d.add_term(Place::Finite(g), -(m as i64));
    }
    let inf = ord_at(&Place::Infinite, x).expect("nonzero");
    if inf != 0 {
        d.add_term(Place::Infinite, inf);
    }
    Ok(d)
}

/// An element with exactly the prescribed orders at the given places.
///
/// The result is the product of `pi^k` over the constrained finite places.
/// When the infinite place is constrained, its order is corrected by powers
/// of the least unconstrained degree-one place, or, if every degree-one place
/// is constrained, of the two least unconstrained places of degrees `d` and
/// `d + 1`. Places are ordered by degree and then coefficients, with
/// constants ordered by their canonical index.
pub fn weak_approx(field: &ConstField, constraints: &[(Place, i64)]) -> Result<RatFunc> {
    let mut seen = BTreeMap::new();
    for (p, k) in constraints {
        if let Place::Finite(pi) = p {
            if pi.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !pi.is_monic() || !is_irreducible(pi)? {
                return Err(Error::Invalid(format!("{pi} is not a place")));
            }
        }
        if seen.insert(p.clone(), *k).is_some() {
            return Err(Error::Precondition(format!("place {p} constrained twice")));
        }
    }
    let mut x = RatFunc::one(field);
    for (p, k) in &seen {
        if let Place::Finite(pi) = p {
            x = x.try_mul(&RatFunc::from_poly(pi.clone()).pow(*k)?)?;
        }
    }
    if let Some(target) = seen.get(&Place::Infinite) {
        let cur = ord_at(&Place::Infinite, &x).expect("nonzero");
        // Each factor pi^m contributes -m * deg(pi) at infinity.
        let need = cur - target;
        if need != 0 {
            x = x.try_mul(&infinity_correction(field, &seen, need)?)?;
        }
    }
    Ok(x)
}

/// An element supported on unconstrained finite places and infinity with
/// total degree `n` (so order `-n` at infinity).
fn infinity_correction(field: &ConstField, used: &BTreeMap<Place, i64>, n: i64) -> Result<RatFunc> {
    let free = |pi: &Poly| !used.contains_key(&Place::Finite(pi.clone()));
    if let Some(pi) = linear_places(field).find(|pi| free(pi)) {
        return RatFunc::from_poly(pi).pow(n);
    }
    let mut d = 2;
    loop {
        let a = irreducibles(field, d)?.into_iter().find(|pi| free(pi));
        let b = irreducibles(field, d + 1)?.into_iter().find(|pi| free(pi));
        if let (Some(a), Some(b)) = (a, b) {
            // m1 * d + m2 * (d + 1) = n
            let e = (d as i64).extended_gcd(&(d as i64 + 1));
            let (m1, m2) = (e.x * n, e.y * n);
            let ra = RatFunc::from_poly(a).pow(m1)?;
            let rb = RatFunc::from_poly(b).pow(m2)?;
            return ra.try_mul(&rb);
        }
        d += 1;
    }
}

/// Degree-one places `t - c` in canonical order of `c` (for the rationals:
/// 0, 1, -1, 2, -2, ...).
pub fn linear_places(field: &ConstField) -> impl Iterator<Item = Poly> + '_ {
    let limit = field.order_u64();
    (0u64..)
        .take_while(move |i| limit.is_none_or(|n| *i < n))
        .map(move |i| {
            let c = match field {
                ConstField::Rational => {
                    let v = i.div_ceil(2) as i64;
                    field.from_i64(if i % 2 == 1 { v } else { -v })
                }
                _ => field.element_from_index(i),
            };
            Poly::linear(field, &c)
        })
}

/// All monic irreducible polynomials of degree `d` over a finite field, in
/// canonical order.
pub fn irreducibles(field: &ConstField, d: usize) -> Result<Vec<Poly>> {
    let q = field
        .order_u64()
        .ok_or_else(|| Error::Unsupported("enumerating irreducibles over Q".into()))?;
    let count = q.checked_pow(d as u32).ok_or_else(|| Error::Unsupported("too many polynomials".into()))?;
    if count > 1 << 22 {
        return Err(Error::Unsupported(format!("{count} candidate polynomials")));
    }
    let mut out = Vec::new();
    for i in 0..count {
        let mut c = Vec::with_capacity(d + 1);
        let mut k = i;
        for _ in 0..d {
            c.push(field.element_from_index(k % q));
            k /= q;
        }
        c.push(field.one());
        let p = Poly::new(field.clone(), c);
        if is_irreducible(&p)? {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ord_examples() {
        let f7 = ConstField::prime(7).unwrap();
        let t = RatFunc::t(&f7);
        let p0 = Place::linear(&f7, &Fe::P(0));
        let p1 = Place::linear(&f7, &Fe::P(1));
        assert_eq!(ord_at(&p0, &t.pow(3).unwrap()), Some(3));
        assert_eq!(ord_at(&Place::Infinite, &t), Some(-1));
        let x = (&t - &RatFunc::one(&f7)).pow(2).unwrap().div(&t).unwrap();
        assert_eq!(ord_at(&p1, &x), Some(2));
        assert_eq!(ord_at(&p1, &RatFunc::zero(&f7)), None);
    }

    #[test]
    fn divisor_examples() {
        let f7 = ConstField::prime(7).unwrap();
        let t = RatFunc::t(&f7);
        let d = divisor_of(&t).unwrap();
        assert_eq!(d, Divisor::from_terms([(Place::linear(&f7, &Fe::P(0)), 1), (Place::Infinite, -1)]));
        assert_eq!(d.degree(), 0);
        assert!(divisor_of(&RatFunc::from_i64(&f7, 5)).unwrap().is_empty());
        assert_eq!(divisor_of(&RatFunc::zero(&f7)), Err(Error::UndefinedDivisor));

        let q = ConstField::Rational;
        let t = RatFunc::t(&q);
        let x = (&(&t * &t) - &RatFunc::one(&q)).div(&t).unwrap();
        let d = divisor_of(&x).unwrap();
        let lin = |c| Place::linear(&q, &q.from_i64(c));
        assert_eq!(
            d,
            Divisor::from_terms([(lin(1), 1), (lin(-1), 1), (lin(0), -1), (Place::Infinite, -1)])
        );
    }

    #[test]
    fn weak_approx_examples() {
        let f7 = ConstField::prime(7).unwrap();
        let p0 = Place::linear(&f7, &Fe::P(0));
        let p1 = Place::linear(&f7, &Fe::P(1));
        let x = weak_approx(&f7, &[(p0.clone(), -1), (p1.clone(), 2)]).unwrap();
        assert_eq!(ord_at(&p0, &x), Some(-1));
        assert_eq!(ord_at(&p1, &x), Some(2));
        assert!(weak_approx(&f7, &[(p0.clone(), 0)]).unwrap().is_one());
        assert!(weak_approx(&f7, &[]).unwrap().is_one());
        let y = weak_approx(&f7, &[(Place::Infinite, -3), (p0.clone(), 3)]).unwrap();
        assert_eq!(y, RatFunc::t(&f7).pow(3).unwrap());
    }

    #[test]
    fn weak_approx_all_linear_places_used() {
        let f2 = ConstField::prime(2).unwrap();
        let p0 = Place::linear(&f2, &Fe::P(0));
        let p1 = Place::linear(&f2, &Fe::P(1));
        let cons = [(p0.clone(), 1), (p1.clone(), -2), (Place::Infinite, 4)];
        let x = weak_approx(&f2, &cons).unwrap();
        for (p, k) in &cons {
            assert_eq!(ord_at(p, &x), Some(*k));
        }
    }
}
