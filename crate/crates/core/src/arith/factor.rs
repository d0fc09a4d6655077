//! Factorization of univariate polynomials.
//!
//! Over finite fields: squarefree decomposition, distinct-degree splitting,
//! then Cantor–Zassenhaus equal-degree splitting driven by a fixed-seed
//! ChaCha stream. Over the rationals: rational roots, and quadratic pairs for
//! quartics. Anything else over the rationals is reported as unsupported.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use super::field::{rational_qth_root, ConstField, Fe};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Degree bound for factoring over the rationals.
pub const RATIONAL_DEGREE_BOUND: usize = 4;

const EDF_SEED: u64 = 0x6b75_6d6d_6572;

/// `f = unit * prod g_i^{m_i}` with monic irreducible `g_i`, sorted by
/// degree and then by coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(Poly, u64)>,
}

impl Factorization {
    pub fn expand(&self, field: &ConstField) -> Poly {
        let mut r = Poly::constant(field, self.unit.clone());
        for (g, m) in &self.factors {
            r = &r * &g.pow(*m);
        }
        r
    }
}

/// Squarefree decomposition of a nonzero polynomial: monic, pairwise coprime
/// squarefree parts with their multiplicities, constants omitted.
pub fn squarefree(f: &Poly) -> Result<Vec<(Poly, u64)>> {
    if f.is_zero() {
        return Err(Error::Precondition("squarefree decomposition of zero".into()));
    }
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out)?;
    out.sort();
    Ok(out)
}

fn sqf_rec(f: &Poly, scale: u64, out: &mut Vec<(Poly, u64)>) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    let p = f.field().characteristic();
    let d = f.derivative();
    if d.is_zero() {
        return sqf_rec(&poly_pth_root(f), scale * p, out);
    }
    let mut c = f.gcd(&d)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if !z.is_one() {
            out.push((z, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w)?;
    }
    if !c.is_one() {
        sqf_rec(&poly_pth_root(&c), scale * p, out)?;
    }
    Ok(())
}

/// `g` with `g(X)^p = f(X)` for `f` a polynomial in `X^p` over a finite field.
fn poly_pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| field.pth_root(c))
        .collect();
    Poly::new(field.clone(), coeffs)
}

/// Distinct-degree factorization of a monic squarefree polynomial over a
/// finite field: `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    let order = field
        .order()
        .ok_or_else(|| Error::Unsupported("distinct-degree splitting needs a finite field".into()))?;
    let x = Poly::x(field);
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&order, &rest)?;
        let g = rest.gcd(&(&h - &x))?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    Ok(out)
}

/// Splits a monic squarefree product of irreducibles of degree `d`.
pub fn equal_degree(f: &Poly, d: usize) -> Result<Vec<Poly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut out = Vec::new();
    edf_rec(f, d, &mut rng, &mut out)?;
    out.sort();
    Ok(out)
}

fn edf_rec(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) -> Result<()> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        out.push(f.clone());
        return Ok(());
    }
    if n == 0 {
        return Ok(());
    }
    let field = f.field();
    let order = field.order().expect("finite field");
    let even = field.characteristic() == 2;
    let exp = if even {
        BigUint::zero()
    } else {
        (order.pow(d as u32) - 1u32) / 2u32
    };
    loop {
        let a = Poly::new(field.clone(), (0..n).map(|_| field.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if even {
            let k = order.bits() as usize - 1;
            let mut t = a.rem(f)?;
            let mut acc = t.clone();
            for _ in 1..k * d {
                t = (&t * &t).rem(f)?;
                acc = &acc + &t;
            }
            acc
        } else {
            &a.pow_mod(&exp, f)? - &Poly::one(field)
        };
        let g = f.gcd(&b)?;
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_exact(&g)?;
            edf_rec(&g, d, rng, out)?;
            edf_rec(&h, d, rng, out)?;
            return Ok(());
        }
    }
}

/// Full factorization into monic irreducibles.
pub fn factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::Precondition("factorization of zero".into()));
    }
    let field = f.field();
    let unit = f.lc();
    let mut factors = Vec::new();
    for (g, m) in squarefree(f)? {
        let parts = if field.is_finite() {
            split_finite(&g)?
        } else {
            split_rational(&g)?
        };
        factors.extend(parts.into_iter().map(|h| (h, m)));
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

fn split_finite(g: &Poly) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for (h, d) in distinct_degree(g)? {
        out.extend(equal_degree(&h, d)?);
    }
    Ok(out)
}

pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let field = f.field();
    if let Some(order) = field.order() {
        // Rabin's test.
        let f = f.monic();
        let x = Poly::x(field);
        let frob = |k: usize| -> Result<Poly> { x.pow_mod(&order.pow(k as u32), &f) };
        if !(&frob(n)? - &x).rem(&f)?.is_zero() {
            return Ok(false);
        }
        for r in super::field::prime_divisors(n as u64) {
            let h = &frob(n / r as usize)? - &x;
            if !f.gcd(&h)?.is_one() {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let fac = factor(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// Smallest monic irreducible polynomial of degree `d` over `F_p`, ordering
/// candidates by the base-`p` integer with the constant term as lowest digit.
pub fn smallest_irreducible(p: u64, d: usize) -> Result<Vec<u64>> {
    let field = ConstField::prime(p)?;
    let count = (p as u128).checked_pow(d as u32).ok_or_else(|| {
        Error::Unsupported(format!("search space p^{d} too large"))
    })?;
    for i in 0..count {
        let mut c = Vec::with_capacity(d + 1);
        let mut k = i;
        for _ in 0..d {
            c.push((k % p as u128) as u64);
            k /= p as u128;
        }
        c.push(1);
        if c[0] == 0 && d > 1 {
            continue;
        }
        let poly = Poly::new(field.clone(), c.iter().map(|&v| Fe::P(v)).collect());
        if is_irreducible(&poly)? {
            return Ok(c);
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {d} over F_{p}")))
}

/// Distinct roots in the constant field, sorted canonically.
pub fn roots(f: &Poly) -> Result<Vec<Fe>> {
    if f.is_zero() {
        return Err(Error::Precondition("roots of zero".into()));
    }
    let field = f.field();
    let mut out = Vec::new();
    if let Some(order) = field.order() {
        let x = Poly::x(field);
        let monic = f.monic();
        if monic.is_constant() {
            return Ok(out);
        }
        let h = &x.pow_mod(&order, &monic)? - &x;
        let lin = monic.gcd(&h)?;
        if !lin.is_constant() {
            for g in equal_degree(&lin, 1)? {
                out.push(field.neg(&g.coeff(0)));
            }
        }
    } else {
        for (g, _) in squarefree(f)? {
            for r in rational_roots(&g)? {
                out.push(r);
            }
        }
    }
    sort_canonical(field, &mut out);
    out.dedup();
    Ok(out)
}

/// Sort key agreeing with the base-`p` index of an element for finite
/// fields and with numeric order for the rationals.
pub fn canonical_key(a: &Fe) -> Vec<u64> {
    match a {
        Fe::P(v) => vec![*v],
        Fe::E(c) => c.iter().rev().copied().collect(),
        Fe::Q(_) => Vec::new(),
    }
}

pub fn sort_canonical(field: &ConstField, v: &mut [Fe]) {
    match field {
        ConstField::Rational => v.sort_by(|a, b| match (a, b) {
            (Fe::Q(x), Fe::Q(y)) => x.cmp(y),
            _ => a.cmp(b),
        }),
        _ => v.sort_by_key(canonical_key),
    }
}

/// The least `b` with `b^q = a` in the constant field, if any. Over the
/// rationals the positive root is returned for even `q`.
pub fn qth_root_const(field: &ConstField, a: &Fe, q: u64) -> Result<Option<Fe>> {
    if field.is_zero(a) {
        return Ok(Some(field.zero()));
    }
    match (field, a) {
        (ConstField::Rational, Fe::Q(r)) => {
            let q32 = u32::try_from(q).map_err(|_| Error::Unsupported("exponent too large".into()))?;
            Ok(rational_qth_root(r, q32).map(Fe::Q))
        }
        _ => {
            if q == field.characteristic() {
                return Ok(Some(field.pth_root(a)));
            }
            Ok(qth_roots_finite(field, a, q)?.into_iter().next())
        }
    }
}

/// All `b` in a finite field with `b^q = a`, `q` a prime other than the
/// characteristic, `a ≠ 0`; sorted canonically. Uses the Adleman-Manders-Miller
/// extension of Tonelli-Shanks.
pub fn qth_roots_finite(field: &ConstField, a: &Fe, q: u64) -> Result<Vec<Fe>> {
    let order = field
        .order()
        .ok_or_else(|| Error::Precondition("finite field expected".into()))?;
    if field.is_zero(a) {
        return Ok(vec![field.zero()]);
    }
    let n = order - 1u32;
    let qb = BigUint::from(q);
    if !(&n % &qb).is_zero() {
        // x -> x^q is a bijection; its inverse is x -> x^{q^{-1} mod n}.
        let inv = BigInt::from(q)
            .extended_gcd(&BigInt::from(n.clone()))
            .x
            .mod_floor(&BigInt::from(n.clone()));
        return Ok(vec![field.pow_big(a, &inv.to_biguint().expect("nonnegative"))]);
    }
    if !field.is_one(&field.pow_big(a, &(&n / &qb))) {
        return Ok(Vec::new());
    }
    // n = q^s t with q ∤ t.
    let mut s = 0u32;
    let mut t = n.clone();
    while (&t % &qb).is_zero() {
        t /= &qb;
        s += 1;
    }
    let z = (2..)
        .map(|i| field.element_from_index(i))
        .find(|z| !field.is_one(&field.pow_big(z, &(&n / &qb))))
        .expect("a non-residue exists");
    // c generates the Sylow q-subgroup, of order q^s.
    let c = field.pow_big(&z, &t);
    // x0^q = a * e with e in the Sylow subgroup.
    let u = if t.is_one() {
        BigUint::zero()
    } else {
        BigInt::from(q)
            .extended_gcd(&BigInt::from(t.clone()))
            .x
            .mod_floor(&BigInt::from(t.clone()))
            .to_biguint()
            .expect("nonnegative")
    };
    let x0 = field.pow_big(a, &u);
    let e = field.div(&field.pow(&x0, q), a)?;
    // Solve c^m = e^{-1} digit by digit in base q.
    let target = field.inv(&e)?;
    let qs: Vec<BigUint> = (0..=s).map(|i| qb.pow(i)).collect();
    let gamma = field.pow_big(&c, &qs[s as usize - 1]);
    let mut m = BigUint::zero();
    for i in 0..s as usize {
        let rest = field.div(&target, &field.pow_big(&c, &m))?;
        let h = field.pow_big(&rest, &qs[s as usize - 1 - i]);
        let mut g = field.one();
        let mut d = 0u64;
        while g != h {
            g = field.mul(&g, &gamma);
            d += 1;
            if d >= q {
                return Err(Error::Internal("discrete logarithm failed".into()));
            }
        }
        m += &qs[i] * d;
    }
    if !(&m % &qb).is_zero() {
        return Err(Error::Internal("q-th root of a q-th power not found".into()));
    }
    let b = field.mul(&x0, &field.pow_big(&c, &(m / &qb)));
    let mut out = Vec::with_capacity(q as usize);
    let mut r = b;
    for _ in 0..q {
        out.push(r.clone());
        r = field.mul(&r, &gamma);
    }
    sort_canonical(field, &mut out);
    Ok(out)
}

fn to_primitive_integer(f: &Poly) -> Vec<BigInt> {
    let qs: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Fe::Q(r) => r.clone(),
            _ => unreachable!("rational polynomial expected"),
        })
        .collect();
    let mut l = BigInt::one();
    for r in &qs {
        l = l.lcm(r.denom());
    }
    let ints: Vec<BigInt> = qs.iter().map(|r| (r * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    ints.into_iter().map(|v| v / &g).collect()
}

fn divisors(n: &BigInt) -> Result<Vec<u128>> {
    let n = n
        .abs()
        .to_u128()
        .ok_or_else(|| Error::Unsupported("coefficient too large for root search".into()))?;
    if n > 1u128 << 80 {
        return Err(Error::Unsupported("coefficient too large for root search".into()));
    }
    let mut ds = Vec::new();
    let mut i: u128 = 1;
    while i * i <= n {
        if n % i == 0 {
            ds.push(i);
            if i * i != n {
                ds.push(n / i);
            }
        }
        i += 1;
        if i > 1 << 24 {
            return Err(Error::Unsupported("coefficient too large for root search".into()));
        }
    }
    ds.sort_unstable();
    Ok(ds)
}

fn eval_int(c: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    // den^n * f(num/den)
    let n = c.len() - 1;
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    let mut terms = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        terms.push(dpow.clone());
        dpow *= den;
    }
    let mut npow = BigInt::one();
    for (i, ci) in c.iter().enumerate() {
        acc += ci * &npow * &terms[n - i];
        npow *= num;
    }
    acc
}

fn rational_roots(f: &Poly) -> Result<Vec<Fe>> {
    let mut out = Vec::new();
    let mut f = f.clone();
    while !f.is_zero() && f.degree().unwrap_or(0) > 0 && f.field().is_zero(&f.coeff(0)) {
        out.push(f.field().zero());
        f = f.div_exact(&Poly::x(f.field()))?;
    }
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let c = to_primitive_integer(&f);
    let nums = divisors(&c[0])?;
    let dens = divisors(c.last().unwrap())?;
    for d in &dens {
        for n in &nums {
            let (n, d) = (BigInt::from(*n), BigInt::from(*d));
            if n.gcd(&d) != BigInt::one() {
                continue;
            }
            for s in [n.clone(), -n.clone()] {
                if eval_int(&c, &s, &d).is_zero() {
                    out.push(Fe::Q(BigRational::new(s, d.clone())));
                }
            }
        }
    }
    Ok(out)
}

/// Splits a squarefree rational polynomial into irreducibles.
fn split_rational(g: &Poly) -> Result<Vec<Poly>> {
    let field = g.field().clone();
    let mut out = Vec::new();
    let mut rest = g.monic();
    for r in rational_roots(&rest)? {
        let lin = Poly::linear(&field, &r);
        rest = rest.div_exact(&lin)?;
        out.push(lin);
    }
    match rest.degree().unwrap_or(0) {
        0 => {}
        1..=3 => out.push(rest),
        4 => out.extend(split_quartic(&rest)?),
        n => {
            return Err(Error::Unsupported(format!(
                "factorization over Q of a degree-{n} polynomial without rational roots (bound {RATIONAL_DEGREE_BOUND})"
            )))
        }
    }
    Ok(out)
}

/// A monic quartic over Q without rational roots is either irreducible or a
/// product of two quadratics. Uses `h(x) = a^3 f(x/a)` to get a monic
/// integer quartic and then searches integer quadratic pairs.
fn split_quartic(f: &Poly) -> Result<Vec<Poly>> {
    let c = to_primitive_integer(f);
    let a = c[4].clone();
    let mut h: Vec<BigInt> = (0..4).map(|i| &c[i] * a.pow(3 - i as u32)).collect();
    h.push(BigInt::one());
    let (b3, b2, b1, b0) = (&h[3], &h[2], &h[1], &h[0]);
    let field = f.field().clone();
    for r in divisors(b0)? {
        for r in [BigInt::from(r), -BigInt::from(r)] {
            let t = b0 / &r;
            let prod = b2 - &r - &t;
            let disc = b3 * b3 - BigInt::from(4) * &prod;
            if disc.is_negative() {
                continue;
            }
            let sq = disc.sqrt();
            if &sq * &sq != disc {
                continue;
            }
            for sign in [1i32, -1] {
                let num = b3 + BigInt::from(sign) * &sq;
                if num.is_odd() {
                    continue;
                }
                let p = num / 2;
                let s = b3 - &p;
                if &p * &t + &s * &r != *b1 {
                    continue;
                }
                // x^2 + p x + r in h's variable; back-substitute x = a y.
                let back = |lin: &BigInt, cst: &BigInt| -> Poly {
                    let aa = BigRational::from_integer(a.clone());
                    let q1 = BigRational::from_integer(lin.clone()) / &aa;
                    let q0 = BigRational::from_integer(cst.clone()) / (&aa * &aa);
                    Poly::new(
                        field.clone(),
                        vec![Fe::Q(q0), Fe::Q(q1), Fe::Q(BigRational::one())],
                    )
                };
                let g1 = back(&p, &r);
                let g2 = back(&s, &t);
                if &g1 * &g2 == *f {
                    let mut v = vec![g1, g2];
                    v.sort();
                    return Ok(v);
                }
            }
        }
    }
    Ok(vec![f.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_roots(p: u64, f: &Poly) -> Vec<Fe> {
        (0..p).map(Fe::P).filter(|x| f.field().is_zero(&f.eval(x))).collect()
    }

    #[test]
    fn qth_roots_match_exhaustive_search() {
        for (p, d) in [(7u64, 1usize), (7, 2), (11, 1), (13, 2), (31, 1), (5, 3)] {
            let k = ConstField::extension(p, d).unwrap();
            let size = p.pow(d as u32);
            let all: Vec<Fe> = (0..size).map(|i| k.element_from_index(i)).collect();
            for q in [2u64, 3, 5] {
                if q == p {
                    continue;
                }
                for a in all.iter().skip(1) {
                    let mut want: Vec<Fe> = all.iter().filter(|b| k.pow(b, q) == *a).cloned().collect();
                    sort_canonical(&k, &mut want);
                    assert_eq!(qth_roots_finite(&k, a, q).unwrap(), want, "p={p} d={d} q={q} a={a}");
                }
            }
        }
    }

    #[test]
    fn x2_minus_3_irreducible_mod_7() {
        let f7 = ConstField::prime(7).unwrap();
        let f = Poly::from_i64s(&f7, &[-3, 0, 1]);
        let squares: Vec<u64> = (1..7).map(|x| x * x % 7).collect();
        assert!(!squares.contains(&3));
        assert!(is_irreducible(&f).unwrap());
        assert_eq!(factor(&f).unwrap().factors, vec![(f.clone(), 1)]);
    }

    #[test]
    fn x3_minus_1_mod_7() {
        let f7 = ConstField::prime(7).unwrap();
        let f = Poly::from_i64s(&f7, &[-1, 0, 0, 1]);
        let rs = brute_roots(7, &f);
        let fac = factor(&f).unwrap();
        let got: Vec<Fe> = fac.factors.iter().map(|(g, _)| f7.neg(&g.coeff(0))).collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, rs);
        assert_eq!(rs, vec![Fe::P(1), Fe::P(2), Fe::P(4)]);
        assert_eq!(fac.expand(&f7), f);
    }

    #[test]
    fn x_squared_over_q() {
        let q = ConstField::Rational;
        let f = Poly::from_i64s(&q, &[0, 0, 1]);
        assert_eq!(factor(&f).unwrap().factors, vec![(Poly::x(&q), 2)]);
    }

    #[test]
    fn quartic_pairs_over_q() {
        let q = ConstField::Rational;
        // (x^2 + 1)(x^2 - 2)
        let f = Poly::from_i64s(&q, &[-2, 0, -1, 0, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&q), f);
        // x^4 + 1 is irreducible over Q
        let g = Poly::from_i64s(&q, &[1, 0, 0, 0, 1]);
        assert!(is_irreducible(&g).unwrap());
        // 2x^4 - 8 = 2 (x^2 - 2)(x^2 + 2)
        let h = Poly::from_i64s(&q, &[-8, 0, 0, 0, 2]);
        let fac = factor(&h).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&q), h);
    }

    #[test]
    fn quintic_over_q_unsupported() {
        let q = ConstField::Rational;
        let f = Poly::from_i64s(&q, &[-2, 0, 0, 0, 0, 1]);
        assert!(matches!(factor(&f), Err(Error::Unsupported(_))));
    }

    #[test]
    fn qth_root_examples() {
        let f7 = ConstField::prime(7).unwrap();
        let squares: Vec<(u64, u64)> = (0..7).map(|x| (x, x * x % 7)).collect();
        let least = squares.iter().find(|(_, s)| *s == 2).unwrap().0;
        assert_eq!(qth_root_const(&f7, &Fe::P(2), 2).unwrap(), Some(Fe::P(least)));
        assert_eq!(least, 3);
        assert_eq!(qth_root_const(&f7, &Fe::P(3), 2).unwrap(), None);
        let q = ConstField::Rational;
        assert_eq!(qth_root_const(&q, &q.one(), 5).unwrap(), Some(q.one()));
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(2, 3).unwrap(), vec![1, 1, 0, 1]);
        assert_eq!(smallest_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn char_two_splitting() {
        let f2 = ConstField::prime(2).unwrap();
        // x^4 - x over F_2 = x (x+1) (x^2+x+1)
        let f = Poly::from_i64s(&f2, &[0, 1, 0, 0, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(&f2), f);
        let f4 = ConstField::extension(2, 2).unwrap();
        let g = Poly::new(f4.clone(), vec![f4.zero(), f4.neg(&f4.one()), f4.zero(), f4.zero(), f4.one()]);
        assert_eq!(roots(&g).unwrap().len(), 4);
    }

    #[test]
    fn inseparable_squarefree() {
        let f3 = ConstField::prime(3).unwrap();
        // (x^3 - 1) = (x - 1)^3 over F_3, times x
        let f = Poly::from_i64s(&f3, &[0, -1, 0, 0, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(Poly::x(&f3), 1), (Poly::from_i64s(&f3, &[-1, 1]), 3)]);
    }
}
