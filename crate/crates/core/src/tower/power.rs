//! Deciding whether a tower element is a `q`-th power.
//!
//! Elements of `F(t)` are settled by factoring. Higher up, an element not
//! involving the top generator `β` with `β^{q'} = W` reduces to the level
//! below: for `q ≠ q'` the degrees are coprime, and for `q = q'` the
//! `q`-th powers of `E(β)` lying in `E` are `E^q ⟨W⟩`. Multiples `c β^f`, `c ∈ E`, are
//! handled through norms, and square roots in quadratic steps are solved
//! for explicitly. Everything else is settled by a local obstruction (order
//! not divisible by `q`, or a residue that is not a `q`-th power); failing
//! that, the answer is `Unsupported`.

use alloc::format;
use alloc::vec::Vec;

use super::place::reachable_chains;
use super::{Tower, TowerElement};
use crate::arith::factor::{qth_root_const, squarefree};
use crate::arith::{ConstField, Poly};
use crate::error::{Error, Result};
use crate::place::{divisor_of, irreducibles, linear_places, Place};
use crate::ratfunc::RatFunc;

/// Chains examined per base place in the obstruction search.
const CHAINS_PER_PLACE: usize = 8;
/// Degree-one places tried over the rationals.
const RATIONAL_LINEAR_PLACES: usize = 12;

impl Tower {
    /// A `y` with `y^q = x`, or `None` when `x` is not a `q`-th power.
    pub fn is_qth_power(&self, x: &TowerElement, q: u64) -> Result<Option<TowerElement>> {
        self.is_qth_power_with_hints(x, q, &[])
    }

    /// As [`Tower::is_qth_power`], additionally searching the given base
    /// places for a local obstruction.
    pub fn is_qth_power_with_hints(
        &self,
        x: &TowerElement,
        q: u64,
        hints: &[Place],
    ) -> Result<Option<TowerElement>> {
        if x.is_zero() {
            return Err(Error::Precondition("q-th power test of zero".into()));
        }
        if !self.contains(x) {
            return Err(Error::Precondition("element is not in the tower".into()));
        }
        if self.level() > 0 && self.quick_obstruction(x, q, hints)? {
            return Ok(None);
        }
        let y = self.power_rec(x, q, self.level(), hints)?;
        if let Some(y) = &y {
            if self.pow(y, q) != *x {
                return Err(Error::Internal(format!("q-th root check failed for {x}")));
            }
        }
        Ok(y)
    }

    /// Decides the question in `E_level`, given that `x ∈ E_level`.
    fn power_rec(
        &self,
        x: &TowerElement,
        q: u64,
        level: usize,
        hints: &[Place],
    ) -> Result<Option<TowerElement>> {
        if level == 0 {
            let c = x.as_ratfunc().expect("level-zero element");
            return Ok(base_qth_root(c, q)?.map(TowerElement::from_ratfunc));
        }
        let j = level - 1;
        let qj = self.steps[j].q;
        if x.level() <= j {
            if q != qj {
                return self.power_rec(x, q, j, hints);
            }
            // x = y^q W^k = (y β^k)^q for some k when x is a q-th power.
            let w = &self.steps[j].w;
            let winv = self.inv_rec(w)?;
            let mut z = x.clone();
            let mut undecided = None;
            let below = self.truncate(j);
            for k in 0..q {
                if k > 0 && j > 0 && below.quick_obstruction(&z, q, hints)? {
                    z = self.mul(&z, &winv);
                    continue;
                }
                match self.power_rec(&z, q, j, hints) {
                    Ok(Some(y)) => return Ok(Some(self.mul(&y, &self.pow(&self.generator(j), k)))),
                    Ok(None) => {}
                    Err(Error::Unsupported(m)) => undecided = Some(m),
                    Err(e) => return Err(e),
                }
                z = self.mul(&z, &winv);
            }
            return match undecided {
                Some(m) => Err(Error::Unsupported(m)),
                None => Ok(None),
            };
        }
        let parts = x.split_at(j, qj as usize);
        let mut nonzero = parts.iter().enumerate().filter(|(_, c)| !c.is_zero());
        if let (Some((f, cp)), None) = (nonzero.next(), nonzero.next()) {
            let f = f as u64;
            if q != qj {
                // x β^{q k'} drops to E_j when f + q k' ≡ 0 mod q_j.
                let kp = (1..qj).find(|k| (f + q * k) % qj == 0).expect("q is invertible mod q_j");
                let shifted = self.mul(x, &self.pow(&self.generator(j), q * kp));
                return match self.power_rec(&shifted, q, j, hints)? {
                    None => Ok(None),
                    Some(y) => {
                        let beta = self.pow(&self.generator(j), qj - kp);
                        Ok(Some(self.div(&self.mul(&y, &beta), &self.steps[j].w)?))
                    }
                };
            }
            if q != 2 {
                // The norm of c β^f is c^q W^f, and W is not a q-th power.
                return Ok(None);
            }
            return self.sqrt_of_beta_multiple(cp, j, hints);
        }
        if q == 2 && qj == 2 {
            return self.sqrt_quadratic(x, j, hints);
        }
        let here = self.truncate(level);
        if here.local_obstruction(x, q, hints)? {
            return Ok(None);
        }
        Err(Error::Unsupported(format!(
            "could not decide whether {x} is a {q}-th power: no local obstruction found"
        )))
    }

    /// Square roots of `c β` in `E_j(β)`, `β^2 = W`: writing the root as
    /// `d (s + β)` forces `s^2 = -W` and `d^2 = c / (2s)`.
    fn sqrt_of_beta_multiple(
        &self,
        c: &TowerElement,
        j: usize,
        hints: &[Place],
    ) -> Result<Option<TowerElement>> {
        let w = &self.steps[j].w;
        let Some(s) = self.power_rec(&w.neg(), 2, j, hints)? else {
            return Ok(None);
        };
        let two = RatFunc::from_i64(&self.field, 2);
        for s in [s.clone(), s.neg()] {
            let d2 = self.div(c, &s.scale(&two))?;
            if let Some(d) = self.power_rec(&d2, 2, j, hints)? {
                return Ok(Some(self.mul(&d, &s.add(&self.generator(j)))));
            }
        }
        Ok(None)
    }

    /// Square roots of `a + b β` in `E_j(β)`, `β^2 = W`, `b ≠ 0`: the root
    /// `c + d β` has `d^2 = (a ± sqrt(a^2 - W b^2)) / (2W)` and `c = b / (2d)`.
    fn sqrt_quadratic(
        &self,
        x: &TowerElement,
        j: usize,
        hints: &[Place],
    ) -> Result<Option<TowerElement>> {
        let parts = x.split_at(j, 2);
        let (a, b) = (&parts[0], &parts[1]);
        let w = &self.steps[j].w;
        let norm = self.mul(a, a).sub(&self.mul(w, &self.mul(b, b)));
        let s = if norm.is_zero() {
            TowerElement::zero()
        } else {
            match self.power_rec(&norm, 2, j, hints)? {
                Some(s) => s,
                None => return Ok(None),
            }
        };
        let two = RatFunc::from_i64(&self.field, 2);
        let two_w = w.scale(&two);
        for cand in [a.add(&s), a.sub(&s)] {
            if cand.is_zero() {
                continue;
            }
            let d2 = self.div(&cand, &two_w)?;
            if let Some(d) = self.power_rec(&d2, 2, j, hints)? {
                let c = self.div(b, &d.scale(&two))?;
                return Ok(Some(c.add(&self.mul(&d, &self.generator(j)))));
            }
        }
        Ok(None)
    }

    /// Searches places of small degree for an order not divisible by `q` or
    /// a residue that is not a `q`-th power.
    fn local_obstruction(&self, x: &TowerElement, q: u64, hints: &[Place]) -> Result<bool> {
        for p in self.candidate_places(x, hints)? {
            let chains = match reachable_chains(self, &p, CHAINS_PER_PLACE) {
                Ok(c) => c,
                Err(Error::Ambiguous(_)) | Err(Error::Unsupported(_)) => continue,
                Err(e) => return Err(e),
            };
            for c in chains {
                let (o, ac) = match c.value(x) {
                    Ok(Some(v)) => v,
                    Ok(None) => unreachable!("nonzero element"),
                    Err(Error::Ambiguous(_)) => continue,
                    Err(e) => return Err(e),
                };
                if o % q as i64 != 0 {
                    return Ok(true);
                }
                if qth_root_const(c.residue_field(), &ac, q)?.is_none() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// As `local_obstruction`, over the hints, the supports and degree-one
    /// places only, following a single chain above each.
    fn quick_obstruction(&self, x: &TowerElement, q: u64, hints: &[Place]) -> Result<bool> {
        let places = self.candidate_places(x, hints)?;
        for p in places.iter().filter(|p| p.degree() <= 1 || hints.contains(p)) {
            let chains = match reachable_chains(self, p, 1) {
                Ok(c) => c,
                Err(Error::Ambiguous(_)) | Err(Error::Unsupported(_)) => continue,
                Err(e) => return Err(e),
            };
            for c in chains {
                let (o, ac) = match c.value(x) {
                    Ok(Some(v)) => v,
                    Ok(None) => unreachable!("nonzero element"),
                    Err(Error::Ambiguous(_)) => continue,
                    Err(e) => return Err(e),
                };
                if o % q as i64 != 0 || qth_root_const(c.residue_field(), &ac, q)?.is_none() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn candidate_places(&self, x: &TowerElement, hints: &[Place]) -> Result<Vec<Place>> {
        let field = &self.field;
        let mut out: Vec<Place> = hints.to_vec();
        let push = |p: Place, out: &mut Vec<Place>| {
            if !out.contains(&p) {
                out.push(p);
            }
        };
        let coeffs = x.terms().values().chain(self.steps.iter().flat_map(|s| s.w.terms().values()));
        for c in coeffs {
            if !c.is_constant() {
                let d = match divisor_of(c) {
                    Ok(d) => d,
                    Err(Error::Unsupported(_)) => continue,
                    Err(e) => return Err(e),
                };
                for p in d.terms().keys() {
                    push(p.clone(), &mut out);
                }
            }
        }
        push(Place::Infinite, &mut out);
        let linear: Vec<Poly> = match field {
            ConstField::Rational => linear_places(field).take(RATIONAL_LINEAR_PLACES).collect(),
            _ => linear_places(field).collect(),
        };
        for pi in linear {
            push(Place::Finite(pi), &mut out);
        }
        if let ConstField::Prime(p) = field {
            if *p <= 13 {
                for pi in irreducibles(field, 2)? {
                    push(Place::Finite(pi), &mut out);
                }
            }
        }
        Ok(out)
    }
}

/// `q`-th root in `F(t)`: every multiplicity divisible by `q` and the ratio of
/// leading coefficients a `q`-th power of a constant.
pub fn base_qth_root(x: &RatFunc, q: u64) -> Result<Option<RatFunc>> {
    if x.is_zero() {
        return Ok(Some(x.clone()));
    }
    let field = x.field();
    let num = poly_root(x.num(), q)?;
    let den = poly_root(x.den(), q)?;
    let (Some(num), Some(den)) = (num, den) else {
        return Ok(None);
    };
    let c = field.div(&x.num().lc(), &x.den().lc())?;
    let Some(r) = qth_root_const(field, &c, q)? else {
        return Ok(None);
    };
    let y = RatFunc::new(num.scale(&r), den)?;
    Ok(Some(y))
}

/// Monic `g` with `g^q = f / lc(f)`.
fn poly_root(f: &Poly, q: u64) -> Result<Option<Poly>> {
    let mut g = Poly::one(f.field());
    if f.is_constant() {
        return Ok(Some(g));
    }
    for (h, m) in squarefree(&f.monic())? {
        if h.is_constant() {
            continue;
        }
        if m % q != 0 {
            return Ok(None);
        }
        g = &g * &h.pow(m / q);
    }
    Ok(Some(g))
}
