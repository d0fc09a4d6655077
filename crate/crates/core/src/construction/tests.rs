use alloc::vec;
use alloc::vec::Vec;

use super::radicand::{extend_chain, shift, shift_place};
use super::*;
use crate::place::{ord_at, Place};
use crate::tower::place::chain_e;

fn f7() -> ConstField {
    ConstField::prime(7).unwrap()
}

fn t(k: &ConstField) -> RatFunc {
    RatFunc::t(k)
}

fn c(k: &ConstField, v: i64) -> RatFunc {
    RatFunc::from_i64(k, v)
}

/// `F_7`, one index with `R = T`, `q = 3`, `A = {0}`.
fn config(gens: Vec<Generator>, stages: usize) -> ConstructionConfig {
    let k = f7();
    ConstructionConfig {
        field: k.clone(),
        indices: vec![IndexConfig {
            r: RuSpec::new(3, vec![(Fe::P(0), 1)], vec![]),
            a_set: vec![Fe::P(0)],
            stream: None,
        }],
        generators: gens,
        max_stages: stages,
        seed: 1,
        even_witnesses: vec![],
    }
}

fn run(cfg: ConstructionConfig) -> ConstructionState {
    ConstructionState::new(cfg).unwrap().run().unwrap()
}

/// `ord R(s)` at a chain, from the base order times the chain's ramification.
/// Valid when `R(s) ∈ F(t)`.
fn oracle_ord(s: &ConstructionState, u: usize, w: &Witness) -> i64 {
    let z = s.r(u).eval(w.s.as_ratfunc().unwrap()).unwrap();
    let e = chain_e(&w.place, 0, w.place.level()).unwrap() as i64;
    ord_at(w.place.base(), &z).unwrap() * e
}

#[test]
fn new_state_validates_config() {
    let k = f7();
    let ok = ConstructionState::new(config(vec![Generator::Element(t(&k))], 4)).unwrap();
    assert_eq!(ok.tower.level(), 0);
    assert!(ok.s_sets[0].is_empty());

    let mut bad_q = config(vec![Generator::Element(t(&k))], 4);
    bad_q.indices[0].r = RuSpec::new(7, vec![(Fe::P(0), 1)], vec![]);
    assert!(matches!(ConstructionState::new(bad_q), Err(Error::Invalid(_))));

    let mut flat = config(vec![Generator::Element(t(&k))], 4);
    flat.indices[0].r = RuSpec::new(3, vec![(Fe::P(0), 1)], vec![(Fe::P(1), 1)]);
    assert!(matches!(ConstructionState::new(flat), Err(Error::Invalid(_))));

    let mut witness = config(vec![Generator::Element(t(&k))], 4);
    witness.even_witnesses = vec![(0, Fe::P(1), Fe::P(2))];
    assert!(matches!(ConstructionState::new(witness), Err(Error::Invalid(_))));
}

#[test]
fn finished_state_refuses_to_step() {
    let k = f7();
    let s = run(config(vec![Generator::Element(t(&k))], 1));
    assert!(s.is_finished());
    assert!(matches!(s.step(), Err(Error::Precondition(_))));
}

#[test]
fn stage_zero_on_an_element_changes_nothing() {
    let k = f7();
    let s = run(config(vec![Generator::Element(t(&k))], 1));
    assert_eq!(s.tower.level(), 0);
    assert!(s.log[0].adjunctions.is_empty());
    assert_eq!(s.log[0].case, 0);
}

#[test]
fn stage_zero_adjoins_a_radical() {
    let k = f7();
    let g = Generator::Radical { q: 2, radicand: t(&k) };
    let s = run(config(vec![g], 1));
    assert_eq!(s.tower.exponents(), vec![2]);
    assert_eq!(s.adjoined, vec![(0, 0)]);
    // β^2 = t.
    let b = s.resolve(0).unwrap().unwrap();
    assert_eq!(s.tower.pow(&b, 2), s.tower.from_ratfunc(t(&k)));
}

#[test]
fn stage_zero_skips_a_radical_of_degree_q() {
    let k = f7();
    let g = Generator::Radical { q: 3, radicand: t(&k) };
    let s = run(config(vec![g], 1));
    assert_eq!(s.tower.level(), 0);
    assert!(!s.log[0].notes.is_empty());
}

#[test]
fn norm_stage_adjoins_cube_root_of_t() {
    let k = f7();
    let s = run(config(vec![Generator::Element(t(&k))], 2));
    assert_eq!(s.tower.exponents(), vec![3]);
    assert_eq!(s.log[1].adjunctions.len(), 1);
    assert_eq!(s.log[1].adjunctions[0].u, Some(0));
    // R(t) = t is now a cube.
    assert!(s.in_a(0, &s.tower.from_ratfunc(t(&k))).unwrap());
}

#[test]
fn norm_stage_leaves_a_cube_alone() {
    let k = f7();
    let s = run(config(vec![Generator::Element(c(&k, 1))], 2));
    assert_eq!(s.tower.level(), 0);
    assert!(s.s_sets[0].is_empty());
}

#[test]
fn norm_stage_adjoins_when_no_designated_place_sees_it() {
    // S is empty, so R(t^2) = t^2 is made a cube even though ord_t = 2.
    let k = f7();
    let t2 = t(&k).pow(2).unwrap();
    let s = run(config(vec![Generator::Element(t2)], 2));
    assert_eq!(s.tower.exponents(), vec![3]);
    assert!(s.s_sets[0].is_empty());
}

#[test]
fn norm_stage_witnesses_at_a_designated_place() {
    // Stage 3 splits 1 = 3 + 5, designating a place of t^3 - 3. At stage 5,
    // (t^3 - 3)^2 has order 2 there.
    let k = f7();
    let sq = shift(&k, &RuSpec::new(3, vec![(Fe::P(0), 1)], vec![]), &Fe::P(3)).pow(2).unwrap();
    let mut cfg = config(vec![Generator::Element(c(&k, 1)), Generator::Element(sq.clone())], 6);
    cfg.indices[0].stream = Some(vec![Fe::P(3)]);
    let s = run(cfg);
    assert_eq!(s.tower.level(), 0);
    let w = s.s_sets[0].iter().find(|w| w.stage == 5).expect("witnessed at stage 5");
    assert_eq!(w.s, s.tower.from_ratfunc(sq));
    assert_eq!(w.place, s.s_sets[0][0].place);
    assert_eq!(oracle_ord(&s, 0, w).rem_euclid(3), 2);
}

#[test]
fn split_stage_adds_two_witnessed_shifts() {
    let k = f7();
    let s = run(config(vec![Generator::Element(c(&k, 1))], 4));
    assert_eq!(s.s_sets[0].len(), 2);
    assert_eq!(s.pairs.len(), 1);
    let p = &s.pairs[0];
    assert_eq!(k.add(&p.r1, &p.r2), Fe::P(1));
    assert!(p.r1 != p.r2 && !k.is_zero(&p.r1) && !k.is_zero(&p.r2));
    for (w, r) in s.s_sets[0].iter().zip([&p.r1, &p.r2]) {
        assert_eq!(w.s, s.tower.from_ratfunc(shift(&k, s.r(0), r)));
        assert_ne!(oracle_ord(&s, 0, w) % 3, 0);
    }
    let odd = s.check_eq_odd();
    assert_eq!(odd.len(), 2);
    assert!(odd.passed());
    assert!(s.check_eq_even(&[]).passed());
}

#[test]
fn split_stage_over_a_cubic_extension() {
    let k = f7();
    let s = run(config(vec![Generator::Element(t(&k)), Generator::Element(c(&k, 1))], 8));
    assert!(s.tower.exponents().iter().all(|&e| e == 3));
    let split: Vec<_> = s.s_sets[0].iter().filter(|w| w.stage == 7).collect();
    assert_eq!(split.len(), 2);
    for w in split {
        assert_eq!(w.place.level(), s.tower.level());
        let e = chain_e(&w.place, 0, s.tower.level()).unwrap();
        assert_ne!(e % 3, 0);
        assert_ne!(oracle_ord(&s, 0, w) % 3, 0);
    }
}

#[test]
fn pole_stage_rejects_t_in_the_formula_for_f() {
    let k = f7();
    let s = run(config(vec![Generator::Element(t(&k))], 3));
    let x = s.tower.from_ratfunc(t(&k));
    let b = match s.eval_def_f(&x, &s.s_sets[0].iter().map(|w| w.s.clone()).collect::<Vec<_>>()) {
        FOutcome::Rejected(b) => b,
        other => panic!("expected a counterexample, got {other:?}"),
    };
    assert!(s.in_s(0, &b));
    // Independent check with R = T: t^3 + b and t^3 + 1/b are cubes, b is not.
    let tw = &s.tower;
    let t3 = tw.pow(&x, 3);
    let plus = t3.add(&b);
    let minus = t3.add(&tw.inv(&b).unwrap());
    assert!(tw.is_qth_power(&plus, 3).unwrap().is_some());
    assert!(tw.is_qth_power(&minus, 3).unwrap().is_some());
    assert!(tw.is_qth_power(&b, 3).unwrap().is_none());
}

#[test]
fn formula_for_f_accepts_constants() {
    let k = f7();
    let s = run(config(vec![Generator::Element(t(&k)), Generator::Element(c(&k, 1))], 4));
    let frag: Vec<_> = s.s_sets[0].iter().map(|w| w.s.clone()).collect();
    for v in [1, 2, 5] {
        let a = s.tower.from_ratfunc(c(&k, v));
        assert_eq!(s.eval_def_f(&a, &frag), FOutcome::Accepted);
    }
    assert_eq!(s.eval_def_f(&s.tower.one(), &[]), FOutcome::Accepted);
}

#[test]
fn formula_for_a_u_on_constants() {
    let k = f7();
    let s = run(config(vec![Generator::Element(c(&k, 1))], 4));
    assert_eq!(s.eval_def_au(0, &Fe::P(1), &[]), AuOutcome::Out);
    // No decomposition known.
    assert_eq!(s.eval_def_au(0, &Fe::P(3), &[]), AuOutcome::Undetermined);
    // Neither side of 0 = 1 + 6 is in A_1 yet, and neither is witnessed.
    assert_ne!(s.eval_def_au(0, &Fe::P(0), &[(Fe::P(1), Fe::P(6))]), AuOutcome::Out);
    let rep = s.properties_report();
    assert!(rep.passed(), "{}{}{}{}", rep.part1, rep.part2, rep.part3, rep.part4);
}

#[test]
fn corrupted_designated_place_fails_the_order_check() {
    let k = f7();
    let mut s = run(config(vec![Generator::Element(c(&k, 1))], 4));
    let r1 = s.pairs[0].r1.clone();
    // A linear place where t^3 - r1 is a unit.
    let c0 = (0..7).map(Fe::P).find(|c| k.pow(c, 3) != r1).unwrap();
    s.s_sets[0][0].place = TowerPlace::over_base(&k, &Place::linear(&k, &c0)).unwrap();
    let rep = s.check_eq_odd();
    assert!(!rep.passed());
    assert_eq!(rep.failures().lines().count(), 1);
}

#[test]
fn corrupted_witness_set_fails_the_pair_check() {
    let k = f7();
    let mut s = run(config(vec![Generator::Element(c(&k, 1))], 4));
    let r1 = s.pairs[0].r1.clone();
    // Witnessing t^3 + r1 makes -r1 bad, and r1 + (-r1) ∈ A.
    let g = k.neg(&r1);
    let base = shift_place(&k, 3, &g).unwrap();
    let place = extend_chain(&s.tower, &TowerPlace::over_base(&k, &base).unwrap(), None).unwrap();
    let new = Witness { s: s.tower.from_ratfunc(shift(&k, s.r(0), &g)), place, stage: 4 };
    s.s_sets[0].push(new);
    assert!(s.check_eq_odd().passed());
    assert!(!s.check_eq_even(&[]).passed());
    assert!(!s.check_eq_even(&[(0, r1.clone(), g)]).passed());
}

#[test]
fn cube_in_witness_set_fails_part_one() {
    let k = f7();
    let mut s = run(config(vec![Generator::Element(c(&k, 1))], 4));
    let t3 = t(&k).pow(3).unwrap();
    let place = s.s_sets[0][0].place.clone();
    s.s_sets[0].push(Witness { s: s.tower.from_ratfunc(t3), place, stage: 4 });
    assert!(!s.properties_report().part1.passed());
}

#[test]
fn runs_are_deterministic() {
    let k = f7();
    let gens = vec![Generator::Element(t(&k)), Generator::Element(c(&k, 1))];
    let a = run(config(gens.clone(), 8));
    let b = run(config(gens, 8));
    assert_eq!(a, b);
}

#[test]
fn explicit_stream_is_followed_and_can_run_out() {
    let k = f7();
    let mut cfg = config(vec![Generator::Element(c(&k, 1))], 4);
    // 0 and 4 = 1 - 4 are refused; 3 + 5 = 1 is the first usable split.
    cfg.indices[0].stream = Some(vec![Fe::P(0), Fe::P(4), Fe::P(3)]);
    let s = run(cfg.clone());
    assert_eq!((s.pairs[0].r1.clone(), s.pairs[0].r2.clone()), (Fe::P(3), Fe::P(5)));
    cfg.indices[0].stream = Some(vec![Fe::P(0)]);
    let e = ConstructionState::new(cfg).unwrap().run();
    assert!(matches!(e, Err(Error::Invalid(_))));
}
