//! Mod-`q` valuation calculus for `R(s)`: which case makes `ord_p R(w - u)`
//! divisible by `q`, elements `b` whose `R(b)` has a prescribed order modulo
//! `q`, and divisibility of divisors of `w` when `v - w` and `v - 1/w` are
//! both `q`-th powers.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::Fe;
use crate::error::{Error, Result};
use crate::place::{divisor_of, ord_at, weak_approx, Place};
use crate::ratfunc::RatFunc;
use crate::ruspec::{order_of_r_at, RuSpec};
use crate::tower::place::all_chains;
use crate::tower::{Tower, TowerElement};

/// The five disjuncts of the classification, numbered as conditions 1 to 5;
/// the first three mean "divisible", the last two "not divisible".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cond {
    /// A unique `c` with `ord(s - c) > 0` and `n(c) ord(s - c) ≡ 0`.
    C1,
    /// `ord(s - c) = 0` for every root `c`.
    C2,
    /// `ord s < 0` and `ord s ≡ 0`.
    C3,
    /// `ord s ≥ 0` and `n(c) ord(s - c) ≢ 0` for some `c`.
    C4,
    /// `ord s < 0` and `ord s ≢ 0`.
    C5,
}

impl Cond {
    pub fn divisible(self) -> bool {
        matches!(self, Cond::C1 | Cond::C2 | Cond::C3)
    }

    pub fn id(self) -> &'static str {
        match self {
            Cond::C1 => "cond:1",
            Cond::C2 => "cond:2",
            Cond::C3 => "cond:3",
            Cond::C4 => "cond:4",
            Cond::C5 => "cond:5",
        }
    }
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub divisible: bool,
    pub cond: Cond,
    /// `ord_p R(w - u)`.
    pub ord: i64,
    /// Truth values of the five disjuncts read literally, without the
    /// `ord w ≥ 0` guard on the first one.
    pub literal: [bool; 5],
}

impl Classification {
    /// Whether the literal reading of the first three disjuncts disagrees
    /// with the order. This happens at a pole of `w` when some `n(c)` is
    /// divisible by `q` while `ord w` is not.
    pub fn literal_mismatch(&self) -> bool {
        let lit_div = self.literal[0] || self.literal[1] || self.literal[2];
        let lit_ndiv = self.literal[3] || self.literal[4];
        lit_div != self.divisible || lit_ndiv == self.divisible
    }
}

/// Classifies `ord_p R(w - u) mod q` by the case analysis and checks the
/// answer against a direct evaluation.
pub fn classify_mod_q(r: &RuSpec, w: &RatFunc, u: &Fe, p: &Place) -> Result<Classification> {
    let q = r.q as i64;
    let d = r.degree();
    if d.rem_euclid(q) == 0 {
        return Err(Error::Precondition(format!(
            "deg C - deg B = {d} is divisible by q = {q}"
        )));
    }
    let field = w.field();
    let s = w - &RatFunc::constant(field, u.clone());
    let roots = r.roots();
    let mut ords = Vec::with_capacity(roots.len());
    for (c, n) in &roots {
        let o = ord_at(p, &(&s - &RatFunc::constant(field, c.clone()))).ok_or_else(|| {
            Error::Precondition(format!("w - u equals the root {c} identically"))
        })?;
        ords.push((*n, o));
    }
    let ord_s = ord_at(p, &s).unwrap_or(i64::MAX);
    let ord_w = ord_at(p, w).unwrap_or(i64::MAX);
    let m = |x: i64| x.rem_euclid(q) == 0;
    let literal = [
        ords.iter().any(|(n, o)| m(n * o) && *o != 0),
        ords.iter().all(|(_, o)| *o == 0),
        ord_w < 0 && ords.iter().any(|(_, o)| m(*o)),
        ord_w >= 0 && ords.iter().any(|(n, o)| !m(n * o)),
        ord_w < 0 && ords.iter().any(|(_, o)| !m(*o)),
    ];
    let cond = if ord_s < 0 {
        if m(ord_s) {
            Cond::C3
        } else {
            Cond::C5
        }
    } else {
        let hits: Vec<&(i64, i64)> = ords.iter().filter(|(_, o)| *o > 0).collect();
        match hits.as_slice() {
            [] => Cond::C2,
            [(n, o)] => {
                if m(n * o) {
                    Cond::C1
                } else {
                    Cond::C4
                }
            }
            _ => return Err(Error::Internal("two roots of R coincide at a place".into())),
        }
    };
    let (direct, _) = order_of_r_at(r, &s, p)?;
    let ord = direct.ok_or_else(|| Error::Precondition("R(w - u) is zero".into()))?;
    if m(ord) != cond.divisible() {
        return Err(Error::Internal(format!(
            "case analysis says {cond} but ord R(w - u) = {ord} at {p}"
        )));
    }
    if !literal[cond as usize] {
        return Err(Error::Internal(format!("{cond} selected but does not hold")));
    }
    Ok(Classification { divisible: cond.divisible(), cond, ord, literal })
}

/// The three properties asked of `b`, evaluated directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanfindCheck {
    pub ord_t_rb: i64,
    pub minus_ords: Vec<(Place, i64)>,
    pub inverse_ords: Vec<(Place, i64)>,
}

impl CanfindCheck {
    pub fn holds(&self, q: u64) -> bool {
        let q = q as i64;
        self.ord_t_rb.rem_euclid(q) != 0
            && self.minus_ords.iter().all(|(_, o)| o.rem_euclid(q) == 0)
            && self.inverse_ords.iter().all(|(_, o)| o.rem_euclid(q) == 0)
    }
}

/// Evaluates `ord_t R(b)` and, at each place of `places`, the orders of
/// `R(a)^q - R(b)` and `R(a)^q - 1/R(b)`.
pub fn canfind_check(r: &RuSpec, a: &RatFunc, b: &RatFunc, t: &Place, places: &[Place]) -> Result<CanfindCheck> {
    let ra = r.eval(a)?;
    let rb = r.eval(b)?;
    let raq = ra.pow(r.q as i64)?;
    let ord_of = |p: &Place, x: &RatFunc| {
        ord_at(p, x).ok_or_else(|| Error::Internal(format!("unexpected zero at {p}")))
    };
    let ord_t_rb = ord_of(t, &rb)?;
    let minus = &raq - &rb;
    let inverse = &raq - &rb.inv()?;
    let mut minus_ords = Vec::new();
    let mut inverse_ords = Vec::new();
    for p in places {
        minus_ords.push((p.clone(), ord_of(p, &minus)?));
        inverse_ords.push((p.clone(), ord_of(p, &inverse)?));
    }
    Ok(CanfindCheck { ord_t_rb, minus_ords, inverse_ords })
}

/// A `b` with `ord_t R(b) ≢ 0 mod q` while `R(a)^q - R(b)` and
/// `R(a)^q - 1/R(b)` have orders divisible by `q` at every place of
/// `places`; `t` must be a pole of `a` in `places`.
///
/// `b` has order `-1` at `t` and order `-q (|ord_p R(a)| + 1)` at every
/// other place, the least such order magnitude divisible by `q`.
pub fn find_b_canfind(r: &RuSpec, a: &RatFunc, places: &[Place], t: &Place) -> Result<RatFunc> {
    let q = r.q;
    if r.deg_c() <= r.deg_b() {
        return Err(Error::Precondition("deg C must exceed deg B".into()));
    }
    if r.degree().rem_euclid(q as i64) == 0 {
        return Err(Error::Precondition("deg C - deg B is divisible by q".into()));
    }
    if a.is_constant() {
        return Err(Error::Precondition("a must not be constant".into()));
    }
    if !places.contains(t) {
        return Err(Error::Precondition(format!("{t} is not among the given places")));
    }
    if ord_at(t, a).is_none_or(|o| o >= 0) {
        return Err(Error::Precondition(format!("{t} is not a pole of a")));
    }
    let distinct: BTreeSet<&Place> = places.iter().collect();
    if distinct.len() != places.len() {
        return Err(Error::Precondition("places must be distinct".into()));
    }
    let ra = r.eval(a)?;
    let mut constraints = Vec::with_capacity(places.len());
    for p in places {
        if p == t {
            constraints.push((p.clone(), -1));
        } else {
            let o = ord_at(p, &ra).ok_or_else(|| Error::Internal("R(a) is zero".into()))?;
            constraints.push((p.clone(), -(q as i64) * (o.abs() + 1)));
        }
    }
    let b = weak_approx(a.field(), &constraints)?;
    let check = canfind_check(r, a, &b, t, places)?;
    if !check.holds(q) {
        return Err(Error::Internal(format!("b = {b} fails its postconditions: {check:?}")));
    }
    Ok(b)
}

/// Outcome of testing the divisibility criterion on one `(w, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForeveryCheck {
    /// Both `v - w` and `v - 1/w` are `q`-th powers.
    pub hypothesis: bool,
    /// Every order of `w` is divisible by `q`.
    pub conclusion: bool,
}

impl ForeveryCheck {
    /// False exactly for a counterexample.
    pub fn consistent(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

/// Tests the criterion for `w ∈ F(t)`.
pub fn check_forevery(w: &RatFunc, v: &Fe, q: u64) -> Result<ForeveryCheck> {
    if w.is_zero() {
        return Err(Error::Precondition("w must be nonzero".into()));
    }
    let field = w.field();
    let vf = RatFunc::constant(field, v.clone());
    let power = |x: RatFunc| -> Result<bool> {
        Ok(x.is_zero() || crate::tower::base_qth_root(&x, q)?.is_some())
    };
    let hypothesis = power(&vf - w)? && power(&vf - &w.inv()?)?;
    let conclusion = divisor_of(w)?.divisible_by(q as i64);
    Ok(ForeveryCheck { hypothesis, conclusion })
}

/// Tests the criterion for `w` in a tower, checking orders at every place above
/// the base places where `w` or a radicand has a zero or pole.
pub fn check_forevery_tower(tower: &Tower, w: &TowerElement, v: &Fe, q: u64) -> Result<ForeveryCheck> {
    if w.is_zero() {
        return Err(Error::Precondition("w must be nonzero".into()));
    }
    let vf = tower.from_ratfunc(RatFunc::constant(tower.field(), v.clone()));
    let power = |x: TowerElement| -> Result<bool> {
        Ok(x.is_zero() || tower.is_qth_power(&x, q)?.is_some())
    };
    let hypothesis = power(vf.sub(w))? && power(vf.sub(&tower.inv(w)?))?;
    let mut bases: BTreeSet<Place> = BTreeSet::new();
    bases.insert(Place::Infinite);
    let coeffs = w.terms().values().chain(tower.steps().flat_map(|s| s.w.terms().values()));
    for c in coeffs {
        bases.extend(divisor_of(c)?.terms().keys().cloned());
    }
    let mut conclusion = true;
    for p in &bases {
        for chain in all_chains(tower, p)? {
            if chain.ord(w)?.rem_euclid(q as i64) != 0 {
                conclusion = false;
            }
        }
    }
    Ok(ForeveryCheck { hypothesis, conclusion })
}
