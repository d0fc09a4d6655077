//! Random instances.

use kummer_core::arith::{is_irreducible, ConstField, Fe, Poly};
use kummer_core::{Place, RatFunc, RuSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn pick<'a, T>(rng: &mut ChaCha8Rng, v: &'a [T]) -> &'a T {
    &v[rng.random_range(0..v.len())]
}

/// One of `F_5`, `F_7`, `F_11`, `Q`.
pub fn small_field(rng: &mut ChaCha8Rng) -> ConstField {
    match rng.random_range(0..4) {
        0 => ConstField::prime(5).unwrap(),
        1 => ConstField::prime(7).unwrap(),
        2 => ConstField::prime(11).unwrap(),
        _ => ConstField::Rational,
    }
}

pub fn element(rng: &mut ChaCha8Rng, f: &ConstField) -> Fe {
    match f {
        ConstField::Rational => {
            let n = rng.random_range(-6..=6);
            let d = rng.random_range(1..=3);
            f.rational(n, d).unwrap()
        }
        _ => f.random(rng),
    }
}

pub fn nonzero(rng: &mut ChaCha8Rng, f: &ConstField) -> Fe {
    loop {
        let c = element(rng, f);
        if !f.is_zero(&c) {
            return c;
        }
    }
}

/// A polynomial of degree exactly `d`.
pub fn poly(rng: &mut ChaCha8Rng, f: &ConstField, d: usize) -> Poly {
    let mut c: Vec<Fe> = (0..d).map(|_| element(rng, f)).collect();
    c.push(nonzero(rng, f));
    Poly::new(f.clone(), c)
}

/// A nonzero rational function with numerator degree `<= 3` and monic
/// denominator of degree `<= 2`.
pub fn ratfunc(rng: &mut ChaCha8Rng, f: &ConstField) -> RatFunc {
    let (dn, dd) = (rng.random_range(0..=3), rng.random_range(0..=2));
    let num = poly(rng, f, dn);
    let den = poly(rng, f, dd).monic();
    RatFunc::new(num, den).unwrap()
}

pub fn nonconstant_ratfunc(rng: &mut ChaCha8Rng, f: &ConstField) -> RatFunc {
    loop {
        let x = ratfunc(rng, f);
        if !x.is_constant() {
            return x;
        }
    }
}

/// A prime `q` other than the characteristic.
pub fn prime_q(rng: &mut ChaCha8Rng, f: &ConstField, choices: &[u64]) -> u64 {
    loop {
        let q = *pick(rng, choices);
        if q != f.characteristic() {
            return q;
        }
    }
}

/// `R` with distinct zeros and poles in `f`; `valid` also asks for the
/// conditions on degrees and on the first multiplicity.
pub fn ruspec(rng: &mut ChaCha8Rng, f: &ConstField, q: u64, valid: bool) -> RuSpec {
    loop {
        let nz = rng.random_range(1..=3);
        let np = rng.random_range(0..=2);
        let mut roots: Vec<Fe> = Vec::new();
        while roots.len() < nz + np {
            let c = element(rng, f);
            if !roots.contains(&c) {
                roots.push(c);
            }
            if f.order_u64().is_some_and(|n| (n as usize) < nz + np) {
                break;
            }
        }
        if roots.len() < nz + np {
            continue;
        }
        let zeros = roots[..nz].iter().map(|c| (c.clone(), rng.random_range(1..=4))).collect();
        let poles = roots[nz..].iter().map(|c| (c.clone(), rng.random_range(1..=3))).collect();
        let r = RuSpec::new(q, zeros, poles);
        if !valid || r.validate(f).is_ok() {
            return r;
        }
    }
}

/// Fixed irreducibles over `Q` used as places.
fn rational_places(f: &ConstField) -> Vec<Poly> {
    [[1, 0, 1], [-2, 0, 1], [1, 1, 1]]
        .iter()
        .map(|c| Poly::from_i64s(f, c))
        .chain(std::iter::once(Poly::from_i64s(f, &[-2, 0, 0, 1])))
        .collect()
}

/// `∞`, a linear place, or a place of degree 2 or 3.
pub fn place(rng: &mut ChaCha8Rng, f: &ConstField) -> Place {
    match rng.random_range(0..6) {
        0 => Place::Infinite,
        1..=3 => Place::linear(f, &element(rng, f)),
        _ => match f {
            ConstField::Rational => Place::Finite(pick(rng, &rational_places(f)).clone()),
            _ => {
                let d = rng.random_range(2..=3);
                loop {
                    let p = poly(rng, f, d).monic();
                    if is_irreducible(&p).unwrap() {
                        return Place::Finite(p);
                    }
                }
            }
        },
    }
}
