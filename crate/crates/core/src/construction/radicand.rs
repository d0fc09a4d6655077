//! `R_u` applied to tower elements, and chains kept unramified for one `q`.

use alloc::format;
use alloc::vec::Vec;

use crate::arith::factor::qth_root_const;
use crate::arith::{ConstField, Fe, Poly};
use crate::error::{Error, Result};
use crate::place::Place;
use crate::ratfunc::RatFunc;
use crate::ruspec::RuSpec;
use crate::tower::place::split_partial;
use crate::tower::{Tower, TowerElement, TowerPlace};

/// `(C(x), B(x))`, so that `R(x) = C(x) / B(x)`.
pub(crate) fn r_parts(tower: &Tower, r: &RuSpec, x: &TowerElement) -> (TowerElement, TowerElement) {
    let field = tower.field();
    let mut num = tower.one();
    let mut den = tower.one();
    for (c, m) in r.roots() {
        let lin = x.sub(&TowerElement::from_ratfunc(RatFunc::constant(field, c)));
        let p = tower.pow(&lin, m.unsigned_abs());
        if m > 0 {
            num = tower.mul(&num, &p);
        } else {
            den = tower.mul(&den, &p);
        }
    }
    (num, den)
}

/// `C(x) B(x)^{q-1}`, which differs from `R(x)` by a `q`-th power.
pub(crate) fn cleared_r(tower: &Tower, r: &RuSpec, x: &TowerElement) -> Result<TowerElement> {
    let (a, b) = r_parts(tower, r, x);
    if b.is_zero() {
        return Err(Error::Domain(format!("R is undefined at {x}")));
    }
    Ok(tower.mul(&a, &tower.pow(&b, r.q - 1)))
}

/// `ord_p R(x)` as `Σ n(c) ord_p(x - c)`; `None` when `R(x) = 0`.
pub(crate) fn ord_r_at(
    field: &ConstField,
    p: &TowerPlace,
    r: &RuSpec,
    x: &TowerElement,
) -> Result<Option<i64>> {
    let mut total = 0i64;
    for (c, m) in r.roots() {
        let lin = x.sub(&TowerElement::from_ratfunc(RatFunc::constant(field, c.clone())));
        if lin.is_zero() {
            if m > 0 {
                return Ok(None);
            }
            return Err(Error::Domain(format!("R is undefined at {x} (pole {c})")));
        }
        total += m * p.ord(&lin)?;
    }
    Ok(Some(total))
}

/// `t^q - g + a`.
pub(crate) fn shift(field: &ConstField, r: &RuSpec, g: &Fe) -> RatFunc {
    let mut c = alloc::vec![field.zero(); r.q as usize + 1];
    c[0] = field.sub(r.a(), g);
    c[r.q as usize] = field.one();
    RatFunc::from_poly(Poly::new(field.clone(), c))
}

/// `R(z)` cleared of its denominator up to `q`-th powers, as a polynomial.
pub(crate) fn cleared_base(r: &RuSpec, z: &RatFunc) -> Result<RatFunc> {
    let v = r.eval(z)?;
    let den = v.den().pow(r.q - 1);
    Ok(RatFunc::from_poly(v.num() * &den))
}

/// The `g ∈ F` for which some `t^q - g + a - c` vanishes at the base place
/// (the only shifts whose `R`-value can have nonzero order there).
pub(crate) fn shift_candidates(field: &ConstField, base: &Place, r: &RuSpec) -> Result<Vec<Fe>> {
    if base.is_infinite() {
        return Ok(Vec::new());
    }
    let (k, theta) = base.residue_field(field)?;
    let tq = k.pow(&theta, r.q);
    let mut out: Vec<Fe> = Vec::new();
    for (c, _) in r.roots() {
        let g = k.sub(&k.add(&tq, &k.lift_prime(r.a())), &k.lift_prime(&c));
        if let Some(g) = k.prime_subfield_value(&g) {
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// The place `t - ρ` with `ρ^q = r` (canonical root), else `t^q - r`.
pub(crate) fn shift_place(field: &ConstField, q: u64, r: &Fe) -> Result<Place> {
    if let Some(rho) = qth_root_const(field, r, q)? {
        return Ok(Place::linear(field, &rho));
    }
    let mut c = alloc::vec![field.zero(); q as usize + 1];
    c[0] = field.neg(r);
    c[q as usize] = field.one();
    Place::finite(Poly::new(field.clone(), c))
}

/// A chain through the whole tower above `p` that never ramifies with index
/// `avoid` after `p`'s level.
pub(crate) fn extend_chain(tower: &Tower, p: &TowerPlace, avoid: Option<u64>) -> Result<TowerPlace> {
    if p.level() == tower.level() {
        return Ok(p.clone());
    }
    for c in split_partial(tower, p)?.0 {
        let last = c.levels().last().expect("child level");
        if avoid == Some(last.e) && last.e > 1 {
            continue;
        }
        match extend_chain(tower, &c, avoid) {
            Ok(found) => return Ok(found),
            Err(Error::Unsupported(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Unsupported(format!(
        "no chain above {} avoids ramification index {:?}",
        p.describe(),
        avoid
    )))
}
