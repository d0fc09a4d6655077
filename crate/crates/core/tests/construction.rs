//! Fixture runs of the construction, with every invariant checked at every
//! stage.

use kummer_core::arith::{ConstField, Fe};
use kummer_core::construction::{
    controls, AuOutcome, ConstructionConfig, ConstructionState, Generator, IndexConfig,
};
use kummer_core::{RatFunc, RuSpec};

fn index(q: u64, zeros: &[(u64, u64)], poles: &[(u64, u64)], a: &[u64]) -> IndexConfig {
    let conv = |v: &[(u64, u64)]| v.iter().map(|&(c, m)| (Fe::P(c), m)).collect();
    IndexConfig {
        r: RuSpec::new(q, conv(zeros), conv(poles)),
        a_set: a.iter().map(|&c| Fe::P(c)).collect(),
        stream: None,
    }
}

fn linear(k: &ConstField, c: i64) -> RatFunc {
    RatFunc::t(k).try_add(&RatFunc::from_i64(k, c)).unwrap()
}

fn fixture_f7() -> ConstructionConfig {
    let k = ConstField::prime(7).unwrap();
    ConstructionConfig {
        field: k.clone(),
        indices: vec![index(3, &[(0, 1)], &[], &[0])],
        generators: vec![
            Generator::Element(RatFunc::t(&k)),
            Generator::Element(RatFunc::from_i64(&k, 1)),
            Generator::Element(linear(&k, 2)),
        ],
        max_stages: 12,
        seed: 3,
        even_witnesses: vec![(0, Fe::P(1), Fe::P(6)), (0, Fe::P(3), Fe::P(4))],
    }
}

fn fixture_f5() -> ConstructionConfig {
    let k = ConstField::prime(5).unwrap();
    ConstructionConfig {
        field: k.clone(),
        indices: vec![index(2, &[(0, 1)], &[], &[1])],
        generators: vec![
            Generator::Element(RatFunc::t(&k)),
            Generator::Element(RatFunc::from_i64(&k, 2)),
            Generator::Radical { q: 3, radicand: linear(&k, 1) },
        ],
        max_stages: 12,
        seed: 11,
        even_witnesses: vec![(0, Fe::P(2), Fe::P(4))],
    }
}

fn fixture_two_indices() -> ConstructionConfig {
    let k = ConstField::prime(11).unwrap();
    ConstructionConfig {
        field: k.clone(),
        indices: vec![index(3, &[(0, 1)], &[], &[0]), index(5, &[(0, 2)], &[(1, 1)], &[0, 2])],
        generators: vec![
            Generator::Element(RatFunc::t(&k)),
            Generator::Element(RatFunc::from_i64(&k, 3)),
            Generator::Radical { q: 2, radicand: RatFunc::t(&k) },
        ],
        max_stages: 12,
        seed: 7,
        even_witnesses: vec![(0, Fe::P(1), Fe::P(10)), (1, Fe::P(1), Fe::P(1))],
    }
}

fn run_checked(cfg: ConstructionConfig) -> ConstructionState {
    let mut s = ConstructionState::new(cfg).unwrap();
    while !s.is_finished() {
        let prev = s.clone();
        s = s.step().unwrap();
        assert!(s.check_eq_odd().passed(), "stage {}", s.stage);
        let even = s.check_eq_even(&s.config.even_witnesses);
        assert!(even.passed(), "stage {}: {}", s.stage, even.failures());
        let p1 = s.check_part1();
        assert!(p1.passed(), "stage {}: {}", s.stage, p1.failures());
        // S grows monotonically, and old designated places sit above their
        // earlier positions.
        for (old, new) in prev.s_sets.iter().zip(&s.s_sets) {
            assert!(new.len() >= old.len());
            for (a, b) in old.iter().zip(new) {
                assert_eq!(a.s, b.s);
                assert_eq!(a.place.base(), b.place.base());
                assert_eq!(&b.place.levels()[..a.place.level()], a.place.levels());
            }
        }
    }
    s
}

/// Every corruption of `s` is flagged; returns the number per checker.
fn controls(s: &ConstructionState) -> [usize; 3] {
    let sets = [controls::eq_odd(s, 10), controls::eq_even(s, 10), controls::part1(s, 10)];
    let mut counts = [0; 3];
    for (n, set) in counts.iter_mut().zip(sets) {
        for c in set.unwrap() {
            assert!(c.flagged(), "{:?} missed: {}", c.checker, c.name);
            *n += 1;
        }
    }
    counts
}

fn final_checks(s: &ConstructionState) {
    let rep = s.properties_report();
    assert!(rep.passed(), "{}{}{}{}", rep.part1, rep.part2, rep.part3, rep.part4);
    for p in &s.pairs {
        assert_eq!(s.eval_def_au(p.u, &p.r, &[]), AuOutcome::Out);
    }
    for (u, ix) in s.config.indices.iter().enumerate() {
        for a in &ix.a_set {
            assert_ne!(s.eval_def_au(u, a, &[]), AuOutcome::Out);
        }
    }
}

#[test]
fn fixture_over_f7() {
    let s = run_checked(fixture_f7());
    assert_eq!(s.log.len(), 12);
    assert!(!s.pairs.is_empty());
    final_checks(&s);
    let n = controls(&s);
    assert_eq!(n, [10, 3, 6]);
}

#[test]
fn fixture_over_f5_with_q_2() {
    let s = run_checked(fixture_f5());
    assert!(s.tower.exponents().contains(&3));
    final_checks(&s);
    controls(&s);
}

#[test]
fn fixture_with_two_indices() {
    let s = run_checked(fixture_two_indices());
    assert!(!s.s_sets[1].is_empty() || s.log.iter().any(|r| !r.notes.is_empty()));
    final_checks(&s);
    assert_eq!(controls(&s), [10, 10, 10]);
}

#[test]
fn runs_repeat_exactly() {
    let a = ConstructionState::new(fixture_f7()).unwrap().run().unwrap();
    let b = ConstructionState::new(fixture_f7()).unwrap().run().unwrap();
    assert_eq!(a, b);
    assert_eq!(format!("{:?}", a.log), format!("{:?}", b.log));
}
