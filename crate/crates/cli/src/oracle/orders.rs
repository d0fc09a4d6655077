//! Suites over `F(t)`: orders of `R(s)` and the element `b` with prescribed
//! orders.

use kummer_core::arith::ConstField;
use kummer_core::lemmas::{classify_mod_q, find_b_canfind, Cond};
use kummer_core::ruspec::order_by_cases;
use kummer_core::{ord_at, Error, Place, RatFunc};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::gen::*;
use super::SuiteReport;

const QS: [u64; 4] = [2, 3, 5, 7];

/// Case analysis of `ord_p R(s)` against `ord_p` of the evaluated `R(s)`.
pub fn le_order(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("le_order");
    while rep.trials < trials {
        let f = small_field(rng);
        let q = prime_q(rng, &f, &QS);
        let r = ruspec(rng, &f, q, false);
        let s = ratfunc(rng, &f);
        let p = place(rng, &f);
        let Ok(rs) = r.eval(&s) else {
            rep.redrawn += 1;
            continue;
        };
        let direct = ord_at(&p, &rs);
        match order_by_cases(&r, &s, &p, &f) {
            Ok((v, _)) if v == direct => rep.pass(),
            Ok((v, case)) => rep.fail(format!("R = {r:?}, s = {s}, p = {p}: {case:?} gives {v:?}, direct {direct:?}")),
            Err(e) => rep.fail(format!("R = {r:?}, s = {s}, p = {p}: {e}")),
        }
    }
    rep
}

/// Which of the five conditions hold, read with the guard `ord s ≥ 0` on
/// the root conditions.
fn firing(ords: &[(i64, i64)], ord_s: i64, q: i64) -> Vec<Cond> {
    let m = |x: i64| x.rem_euclid(q) == 0;
    let hits: Vec<&(i64, i64)> = ords.iter().filter(|(_, o)| *o > 0).collect();
    let mut out = Vec::new();
    if ord_s >= 0 && hits.len() == 1 && m(hits[0].0 * hits[0].1) {
        out.push(Cond::C1);
    }
    if ords.iter().all(|(_, o)| *o == 0) {
        out.push(Cond::C2);
    }
    if ord_s < 0 && m(ord_s) {
        out.push(Cond::C3);
    }
    if ord_s >= 0 && ords.iter().any(|(n, o)| *o > 0 && !m(n * o)) {
        out.push(Cond::C4);
    }
    if ord_s < 0 && !m(ord_s) {
        out.push(Cond::C5);
    }
    out
}

/// Exactly one condition fires, it is the one reported, and its verdict
/// agrees with `ord R(w - u) mod q`.
pub fn le_notq(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("le_notq");
    while rep.trials < trials {
        let f = small_field(rng);
        let q = prime_q(rng, &f, &QS);
        let r = ruspec(rng, &f, q, false);
        if r.degree().rem_euclid(q as i64) == 0 {
            rep.redrawn += 1;
            continue;
        }
        let w = ratfunc(rng, &f);
        let u = element(rng, &f);
        let p = place(rng, &f);
        let s = &w - &RatFunc::constant(&f, u.clone());
        let ords: Option<Vec<(i64, i64)>> = r
            .roots()
            .into_iter()
            .map(|(c, n)| ord_at(&p, &(&s - &RatFunc::constant(&f, c))).map(|o| (n, o)))
            .collect();
        let (Some(ords), Some(ord_s)) = (ords, ord_at(&p, &s).or(Some(i64::MAX))) else {
            rep.redrawn += 1;
            continue;
        };
        let direct = ord_at(&p, &r.eval(&s).expect("no root of s vanishes identically"));
        let Some(direct) = direct else {
            rep.redrawn += 1;
            continue;
        };
        let fired = firing(&ords, ord_s, q as i64);
        match classify_mod_q(&r, &w, &u, &p) {
            Ok(c) => {
                let verdict = direct.rem_euclid(q as i64) == 0;
                if fired.len() == 1 && fired[0] == c.cond && c.divisible == verdict && c.ord == direct {
                    rep.pass();
                } else {
                    rep.fail(format!("R = {r:?}, w = {w}, u = {u}, p = {p}: {} vs fired {fired:?}, ord {direct}", c.cond));
                }
            }
            Err(Error::Precondition(_)) => rep.redrawn += 1,
            Err(e) => rep.fail(format!("R = {r:?}, w = {w}, u = {u}, p = {p}: {e}")),
        }
    }
    rep
}

/// `find_b_canfind` on random `(R, a, places)`; the three order conditions
/// are re-evaluated with `R` composed as a rational function.
pub fn canfind(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("canfind");
    while rep.trials < trials {
        let f = small_field(rng);
        let q = prime_q(rng, &f, &QS);
        let r = ruspec(rng, &f, q, true);
        let a = nonconstant_ratfunc(rng, &f);
        // b has degree about q |ord R(a)| per place, and R(b) multiplies
        // that by deg R; over Q the coefficients of R(a)^q - R(b) then grow
        // too fast for a desk-scale suite.
        let size = r.deg_c() + r.deg_b();
        if f == ConstField::Rational && (q > 3 || size > 3 || a.num().deg_i64().max(a.den().deg_i64()) > 2) {
            rep.redrawn += 1;
            continue;
        }
        // A pole of a: ∞ when deg num > deg den, else a factor of den.
        let t = if a.num().degree() > a.den().degree() {
            Place::Infinite
        } else {
            match kummer_core::divisor_of(&a) {
                Ok(d) => match d.terms().iter().find(|(_, k)| **k < 0) {
                    Some((p, _)) => p.clone(),
                    None => {
                        rep.redrawn += 1;
                        continue;
                    }
                },
                Err(e) => {
                    rep.fail(format!("divisor of {a}: {e}"));
                    continue;
                }
            }
        };
        let mut places = vec![t.clone()];
        for _ in 0..rng.random_range(0..=3) {
            let p = place(rng, &f);
            if !places.contains(&p) {
                places.push(p);
            }
        }
        let b = match find_b_canfind(&r, &a, &places, &t) {
            Ok(b) => b,
            Err(Error::Precondition(_)) => {
                rep.redrawn += 1;
                continue;
            }
            Err(e) => {
                rep.fail(format!("R = {r:?}, a = {a}: {e}"));
                continue;
            }
        };
        let rf = r.as_ratfunc(&f).expect("R as a rational function");
        let (ra, rb) = (rf.compose(&a).unwrap(), rf.compose(&b).unwrap());
        let raq = ra.pow(q as i64).unwrap();
        let minus = &raq - &rb;
        let inverse = &raq - &rb.inv().unwrap();
        let qi = q as i64;
        let ok_t = ord_at(&t, &rb).is_some_and(|o| o.rem_euclid(qi) != 0);
        let ok_rest = places.iter().all(|p| {
            [&minus, &inverse].iter().all(|x| ord_at(p, x).is_some_and(|o| o.rem_euclid(qi) == 0))
        });
        if ok_t && ok_rest {
            rep.pass();
        } else {
            rep.fail(format!("R = {r:?}, a = {a}, b = {b}: order conditions fail"));
        }
    }
    rep
}
