//! Deliberately corrupted states for the invariant checkers.
//!
//! Each corruption is built from a healthy state by one edit that is known,
//! by a computation independent of the checker, to break the invariant.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::radicand::{extend_chain, shift, shift_place};
use super::{ConstructionState, Witness};
use crate::arith::Fe;
use crate::error::Result;
use crate::place::{irreducibles, ord_at, Place};
use crate::ratfunc::RatFunc;
use crate::tower::TowerPlace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Checker {
    EqOdd,
    EqEven,
    Part1,
}

#[derive(Clone, Debug)]
pub struct Corruption {
    pub checker: Checker,
    pub name: String,
    pub state: ConstructionState,
    /// Pair witnesses handed to the pair check.
    pub witnesses: Vec<(usize, Fe, Fe)>,
}

impl Corruption {
    /// Whether the targeted checker reports a failure.
    pub fn flagged(&self) -> bool {
        match self.checker {
            Checker::EqOdd => !self.state.check_eq_odd().passed(),
            Checker::EqEven => !self.state.check_eq_even(&self.witnesses).passed(),
            Checker::Part1 => !self.state.check_part1().passed(),
        }
    }
}

/// Field elements, by brute force.
fn elements(s: &ConstructionState) -> Vec<Fe> {
    s.field().elements(1 << 10).unwrap_or_default()
}

/// `R_u(c)` for a constant, when finite and nonzero.
fn r_const(s: &ConstructionState, u: usize, c: &Fe) -> Option<Fe> {
    let v = s.r(u).eval(&RatFunc::constant(s.field(), c.clone())).ok()?;
    let k = s.field();
    let x = k.div(&v.num().lc(), &v.den().lc()).ok()?;
    (!k.is_zero(&x)).then_some(x)
}

fn is_power(s: &ConstructionState, u: usize, x: &Fe) -> bool {
    elements(s).iter().any(|d| s.field().pow(d, s.q(u)) == *x)
}

/// Up to `n` states on which the order check must fail.
pub fn eq_odd(s: &ConstructionState, n: usize) -> Result<Vec<Corruption>> {
    let k = s.field();
    let mut out = Vec::new();
    let push = |out: &mut Vec<Corruption>, name: String, state: ConstructionState| {
        if out.len() < n {
            out.push(Corruption { checker: Checker::EqOdd, name, state, witnesses: Vec::new() });
        }
    };
    let members: Vec<(usize, usize)> =
        (0..s.s_sets.len()).flat_map(|u| (0..s.s_sets[u].len()).map(move |i| (u, i))).collect();
    // Move a designated place to a base place where R(s) is a unit.
    let mut bases: Vec<Place> = elements(s).iter().map(|c| Place::linear(k, c)).collect();
    bases.extend(irreducibles(k, 2)?.into_iter().map(Place::Finite));
    for &(u, i) in &members {
        let w = &s.s_sets[u][i];
        let Some(z) = w.s.as_ratfunc().and_then(|x| s.r(u).eval(x).ok()) else { continue };
        for b in bases.iter().filter(|b| ord_at(b, &z) == Some(0) && *b != w.place.base()).take(2) {
            let Ok(place) = extend_chain(&s.tower, &TowerPlace::over_base(k, b)?, None) else { continue };
            let mut c = s.clone();
            c.s_sets[u][i].place = place;
            push(&mut out, format!("S_{u}[{i}] designated at {b}, where R(s) is a unit"), c);
        }
    }
    // Replace s by a constant with R(s) a nonzero constant.
    for &(u, i) in &members {
        for x in elements(s).iter().filter(|x| r_const(s, u, x).is_some()).take(2) {
            let mut c = s.clone();
            c.s_sets[u][i].s = s.tower.from_ratfunc(RatFunc::constant(k, x.clone()));
            push(&mut out, format!("S_{u}[{i}] replaced by the constant {x}"), c);
        }
    }
    // Leave a designated place below the top of the tower.
    if s.tower.level() > 0 {
        for &(u, i) in &members {
            let mut c = s.clone();
            c.s_sets[u][i].place = TowerPlace::over_base(k, s.s_sets[u][i].place.base())?;
            push(&mut out, format!("S_{u}[{i}] designated at a base place"), c);
        }
    }
    Ok(out)
}

/// Up to `n` states where two bad shifts sum into `A_u`.
pub fn eq_even(s: &ConstructionState, n: usize) -> Result<Vec<Corruption>> {
    let k = s.field();
    let mut out = Vec::new();
    for u in 0..s.s_sets.len() {
        let q = s.q(u);
        for a in s.config.indices[u].a_set.clone() {
            for g1 in elements(s) {
                let g2 = k.sub(&a, &g1);
                // Unordered pairs of nonzero shifts.
                if k.is_zero(&g1) || k.is_zero(&g2) || g2 < g1 || out.len() >= n {
                    continue;
                }
                let mut c = s.clone();
                let mut placed = true;
                for g in [&g1, &g2] {
                    // R(t^q - g + a_1) has order n_1 ≢ 0 at a zero of t^q - g.
                    let base = TowerPlace::over_base(k, &shift_place(k, q, g)?)?;
                    let Ok(place) = extend_chain(&s.tower, &base, None) else {
                        placed = false;
                        break;
                    };
                    let x = s.tower.from_ratfunc(shift(k, s.r(u), g));
                    c.s_sets[u].push(Witness { s: x, place, stage: s.stage });
                }
                if !placed {
                    continue;
                }
                out.push(Corruption {
                    checker: Checker::EqEven,
                    name: format!("u = {u}: shifts {g1} and {g2} witnessed, sum {a}"),
                    state: c,
                    witnesses: alloc::vec![(u, g1.clone(), g2)],
                });
            }
        }
    }
    Ok(out)
}

/// Up to `n` states with a member of some `S_u` whose `R`-value is a
/// `q_u`-th power.
pub fn part1(s: &ConstructionState, n: usize) -> Result<Vec<Corruption>> {
    let k = s.field();
    let mut out = Vec::new();
    for u in 0..s.s_sets.len() {
        let Some(w) = s.s_sets[u].first() else { continue };
        // Constants c with R(c) zero or a q-th power in F.
        let powers: Vec<Fe> = elements(s)
            .into_iter()
            .filter(|c| s.r(u).zeros.iter().any(|(z, _)| z == c) || r_const(s, u, c).is_some_and(|x| is_power(s, u, &x)))
            .collect();
        for c in powers {
            for replace in [false, true] {
                if out.len() >= n {
                    return Ok(out);
                }
                let mut st = s.clone();
                let x = s.tower.from_ratfunc(RatFunc::constant(k, c.clone()));
                let how = if replace {
                    st.s_sets[u][0].s = x;
                    "replaces"
                } else {
                    st.s_sets[u].push(Witness { s: x, place: w.place.clone(), stage: s.stage });
                    "joins"
                };
                out.push(Corruption {
                    checker: Checker::Part1,
                    name: format!("u = {u}: the constant {c} {how} a member"),
                    state: st,
                    witnesses: Vec::new(),
                });
            }
        }
    }
    Ok(out)
}
