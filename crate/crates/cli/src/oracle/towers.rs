//! Suites over Kummer towers.

use std::collections::BTreeMap;

use kummer_core::arith::{ConstField, Poly};
use kummer_core::place::irreducibles;
use kummer_core::tower::place::{all_chains, ramification_in_step, split_place, unramified_by_discriminant};
use kummer_core::{Place, RatFunc, Tower, TowerElement};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::gen::*;
use super::SuiteReport;

const PS: [u64; 4] = [5, 7, 11, 13];
const QS: [u64; 3] = [2, 3, 5];

fn finite_field(rng: &mut ChaCha8Rng) -> ConstField {
    ConstField::prime(*pick(rng, &PS)).unwrap()
}

/// `c ∏ π_i^{k_i}` with its divisor on the base, `∞` included.
fn radicand(rng: &mut ChaCha8Rng, f: &ConstField) -> (RatFunc, BTreeMap<Place, i64>) {
    let mut x = RatFunc::constant(f, nonzero(rng, f));
    let mut div: BTreeMap<Place, i64> = BTreeMap::new();
    let mut deg = 0i64;
    for _ in 0..rng.random_range(1..=3) {
        let pi = if rng.random_bool(0.7) {
            Poly::linear(f, &element(rng, f))
        } else {
            loop {
                let p = poly(rng, f, 2).monic();
                if kummer_core::arith::is_irreducible(&p).unwrap() {
                    break p;
                }
            }
        };
        let k = rng.random_range(-4i64..=5);
        if k == 0 {
            continue;
        }
        deg += k * pi.deg_i64();
        x = x.try_mul(&RatFunc::from_poly(pi.clone()).pow(k).unwrap()).unwrap();
        *div.entry(Place::Finite(pi)).or_default() += k;
    }
    div.retain(|_, k| *k != 0);
    if deg != 0 {
        div.insert(Place::Infinite, -deg);
    }
    (x, div)
}

/// Ramification index from the known divisor, against the library and the
/// places found by splitting.
pub fn ramification(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("ramification");
    while rep.trials < trials {
        let f = finite_field(rng);
        let q = prime_q(rng, &f, &QS);
        let mut below = Tower::base(&f);
        if rng.random_bool(0.5) {
            let q0 = prime_q(rng, &f, &QS);
            let (w0, _) = radicand(rng, &f);
            match below.adjoin(q0, &TowerElement::from_ratfunc(w0)) {
                Ok(t) => below = t,
                Err(_) => {
                    rep.redrawn += 1;
                    continue;
                }
            }
        }
        let (w, div) = radicand(rng, &f);
        let we = TowerElement::from_ratfunc(w.clone());
        let Ok(top) = below.adjoin(q, &we) else {
            rep.redrawn += 1;
            continue;
        };
        let mut bases: Vec<Place> = div.keys().cloned().collect();
        bases.push(Place::Infinite);
        bases.push(place(rng, &f));
        let base = pick(rng, &bases).clone();
        let ord_base = div.get(&base).copied().unwrap_or(0);
        let chains = match all_chains(&below, &base) {
            Ok(c) => c,
            Err(e) => {
                rep.fail(format!("chains above {base}: {e}"));
                continue;
            }
        };
        let chain = pick(rng, &chains).clone();
        let expect = if (chain.e() as i64 * ord_base).rem_euclid(q as i64) != 0 { q } else { 1 };
        let got = ramification_in_step(&chain, q, &we);
        let disc = unramified_by_discriminant(&chain, q, &we);
        let children = split_place(&top, &chain);
        let desc = format!("F_{}, q = {q}, w = {w}, above {}", f.characteristic(), chain.describe());
        match (got, disc, children) {
            (Ok(g), Ok(d), Ok(ch)) => {
                let es_ok = ch.iter().all(|c| c.levels().last().is_some_and(|l| l.e == expect));
                let ef: u64 = ch.iter().map(|c| c.levels().last().map_or(0, |l| l.e * l.f)).sum();
                if g == expect && d == (expect == 1) && es_ok && ef == q {
                    rep.pass();
                } else {
                    rep.fail(format!("{desc}: expected e = {expect}, got {g}, discriminant says {d}, Σef = {ef}"));
                }
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => rep.fail(format!("{desc}: {e}")),
        }
    }
    rep
}

/// A random tower with the given exponents; radicands are redrawn until
/// they are not powers.
fn random_tower(rng: &mut ChaCha8Rng, f: &ConstField, qs: &[u64]) -> Tower {
    let mut t = Tower::base(f);
    for &q in qs {
        loop {
            let (w, _) = radicand(rng, f);
            if let Ok(next) = t.adjoin(q, &TowerElement::from_ratfunc(w)) {
                t = next;
                break;
            }
        }
    }
    t
}

/// For each trial tower over `F_p` with at most three steps, every chain
/// above every base place of degree at most 3 splits with `Σ e f = q` at
/// every step.
pub fn ef_sum(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("ef_sum");
    let mut places: BTreeMap<u64, Vec<Place>> = BTreeMap::new();
    for (i, _) in (0..trials).enumerate() {
        let p = PS[i % PS.len()];
        let f = ConstField::prime(p).unwrap();
        let qs: Vec<u64> = (0..rng.random_range(1..=3)).map(|_| prime_q(rng, &f, &QS)).collect();
        let tower = random_tower(rng, &f, &qs);
        let bases = places.entry(p).or_insert_with(|| {
            let mut v = vec![Place::Infinite];
            for d in 1..=3 {
                v.extend(irreducibles(&f, d).unwrap().into_iter().map(Place::Finite));
            }
            v
        });
        let mut bad = None;
        'outer: for base in bases.iter() {
            for j in 0..tower.level() {
                let below = tower.truncate(j);
                let above = tower.truncate(j + 1);
                let chains = match all_chains(&below, base) {
                    Ok(c) => c,
                    Err(e) => {
                        bad = Some(format!("chains above {base}: {e}"));
                        break 'outer;
                    }
                };
                for c in chains {
                    let sum: Result<u64, _> = split_place(&above, &c)
                        .map(|ch| ch.iter().map(|x| x.levels().last().map_or(0, |l| l.e * l.f)).sum());
                    match sum {
                        Ok(s) if s == qs[j] => {}
                        Ok(s) => {
                            bad = Some(format!("step {j} (q = {}) above {}: Σef = {s}", qs[j], c.describe()));
                            break 'outer;
                        }
                        Err(e) => {
                            bad = Some(format!("step {j} above {}: {e}", c.describe()));
                            break 'outer;
                        }
                    }
                }
            }
        }
        match bad {
            None => rep.pass(),
            Some(m) => rep.fail(format!("F_{p}, exponents {qs:?}: {m}")),
        }
    }
    rep
}

/// Towers with distinct prime exponents have a monomial basis of size
/// `∏ q_i`; each radicand is certified a non-power by a place where its
/// order is prime to `q`.
pub fn compositum(rng: &mut ChaCha8Rng, trials: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("compositum");
    while rep.trials < trials {
        let f = finite_field(rng);
        let mut qs: Vec<u64> = [2u64, 3, 5, 7].into_iter().filter(|q| *q != f.characteristic()).collect();
        for i in (1..qs.len()).rev() {
            let j = rng.random_range(0..=i);
            qs.swap(i, j);
        }
        qs.truncate(rng.random_range(1..=3));
        let mut t = Tower::base(&f);
        let mut certified = true;
        for &q in &qs {
            // (t - a) to the first power certifies the radicand.
            let a = element(rng, &f);
            let lin = RatFunc::from_poly(Poly::linear(&f, &a));
            let (w, _) = radicand(rng, &f);
            let w = TowerElement::from_ratfunc(lin.try_mul(&w).unwrap());
            let Ok(next) = t.adjoin(q, &w) else {
                certified = false;
                break;
            };
            let witness = all_chains(&t, &Place::linear(&f, &a))
                .map(|cs| cs.iter().any(|c| c.ord(&w).is_ok_and(|o| o.rem_euclid(q as i64) != 0)))
                .unwrap_or(false);
            certified &= witness;
            t = next;
        }
        if !certified {
            rep.redrawn += 1;
            continue;
        }
        let product: u64 = qs.iter().product();
        let roots_ok = (0..t.level()).all(|j| t.pow(&t.generator(j), t.step(j).q) == t.step(j).w);
        if t.basis().len() as u64 == product && t.degree() == product && roots_ok {
            rep.pass();
        } else {
            rep.fail(format!("F_{}, exponents {qs:?}: basis {} vs {product}", f.characteristic(), t.basis().len()));
        }
    }
    rep
}
