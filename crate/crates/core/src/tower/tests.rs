use alloc::vec::Vec;

use super::place::{
    all_chains, chain_e, factor_with_e_not_div_q, ramification_in_step, replay, split_place,
    unramified_by_discriminant,
};
use super::*;
use crate::arith::{Fe, Poly};
use crate::place::Place;

fn f7() -> ConstField {
    ConstField::prime(7).unwrap()
}

fn rf(field: &ConstField, num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(Poly::from_i64s(field, num), Poly::from_i64s(field, den)).unwrap()
}

fn el(x: RatFunc) -> TowerElement {
    TowerElement::from_ratfunc(x)
}

fn t_el(field: &ConstField) -> TowerElement {
    el(RatFunc::t(field))
}

#[test]
fn qth_root_degree_examples() {
    let k = f7();
    let base = Tower::base(&k);
    assert_eq!(base.qth_root_degree(3, &t_el(&k)).unwrap().0, 3);
    let t2 = el(rf(&k, &[0, 0, 1], &[1]));
    let (d, y) = base.qth_root_degree(2, &t2).unwrap();
    assert_eq!(d, 1);
    assert_eq!(y.unwrap(), t_el(&k));
    let sq = base.adjoin(2, &t_el(&k)).unwrap();
    let (d, y) = sq.qth_root_degree(2, &t_el(&k)).unwrap();
    assert_eq!(d, 1);
    assert_eq!(y.unwrap(), sq.generator(0));
}

#[test]
fn is_qth_power_examples() {
    let q = ConstField::Rational;
    let base = Tower::base(&q);
    let x = el(rf(&q, &[1, -2, 1], &[0, 0, 1]));
    let y = base.is_qth_power(&x, 2).unwrap().unwrap();
    assert_eq!(base.mul(&y, &y), x);
    let k = f7();
    let b7 = Tower::base(&k);
    assert!(b7.is_qth_power(&t_el(&k), 3).unwrap().is_none());
    let four = el(RatFunc::from_i64(&k, 4));
    assert_eq!(b7.is_qth_power(&four, 2).unwrap().unwrap(), el(RatFunc::from_i64(&k, 2)));
}

#[test]
fn adjoin_examples() {
    let k = f7();
    let t = Tower::base(&k).adjoin(3, &t_el(&k)).unwrap();
    assert_eq!(t.degree(), 3);
    let two = Tower::base(&k)
        .adjoin(2, &t_el(&k))
        .unwrap()
        .adjoin(3, &el(rf(&k, &[-1, 1], &[1])))
        .unwrap();
    assert_eq!(two.degree(), 6);
    assert_eq!(two.basis().len(), 6);
    let sq = Tower::base(&k).adjoin(2, &t_el(&k)).unwrap();
    assert!(matches!(sq.adjoin(2, &t_el(&k)), Err(Error::AlreadyPower { q: 2 })));
}

#[test]
fn inverse_of_general_element() {
    let k = f7();
    let t = Tower::base(&k)
        .adjoin(3, &t_el(&k))
        .unwrap()
        .adjoin(2, &el(rf(&k, &[1, 1], &[1])))
        .unwrap();
    let mut x = t_el(&k);
    x = x.add(&t.generator(0));
    x = x.add(&t.mul(&t.generator(0), &t.generator(1)).scale(&RatFunc::from_i64(&k, 3)));
    let y = t.inv(&x).unwrap();
    assert!(t.mul(&x, &y).is_one());
}

#[test]
fn roots_in_quadratic_steps() {
    let k = f7();
    let t = Tower::base(&k).adjoin(2, &t_el(&k)).unwrap();
    // (1 + β)^2 = 1 + t + 2β
    let y = t.one().add(&t.generator(0));
    let x = t.mul(&y, &y);
    let r = t.is_qth_power(&x, 2).unwrap().unwrap();
    assert_eq!(t.mul(&r, &r), x);
    // 1 + β is not a square: its norm 1 - t is not.
    assert!(t.is_qth_power(&y, 2).unwrap().is_none());
    // Cubes of single β-multiples over a quadratic step reduce to E_0.
    let m = t.mul(&t_el(&k), &t.generator(0));
    let c = t.pow(&m, 3);
    let r = t.is_qth_power(&c, 3).unwrap().unwrap();
    assert_eq!(t.pow(&r, 3), c);
    assert!(t.is_qth_power(&t.generator(0), 3).unwrap().is_none());
}

#[test]
fn undecided_power_is_reported() {
    // A cube of a general element of a quadratic step has no local
    // obstruction and no closed-form root: the answer must not be a guess.
    let k = f7();
    let t = Tower::base(&k).adjoin(2, &t_el(&k)).unwrap();
    let y = t.one().add(&t.generator(0));
    match t.is_qth_power(&t.pow(&y, 3), 3) {
        Ok(Some(r)) => assert_eq!(t.pow(&r, 3), t.pow(&y, 3)),
        Err(Error::Unsupported(_)) => {}
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn split_examples() {
    let k = f7();
    let t = Tower::base(&k).adjoin(2, &t_el(&k)).unwrap();
    let over = |c: u64| TowerPlace::over_base(&k, &Place::linear(&k, &Fe::P(c))).unwrap();
    let ps = split_place(&t, &over(3)).unwrap();
    assert_eq!(ps.len(), 1);
    assert_eq!((ps[0].e(), ps[0].f()), (1, 2));
    let ps = split_place(&t, &over(2)).unwrap();
    assert_eq!(ps.len(), 2);
    assert!(ps.iter().all(|p| p.e() == 1 && p.f() == 1));
    let ps = split_place(&t, &over(0)).unwrap();
    assert_eq!(ps.len(), 1);
    assert_eq!((ps[0].e(), ps[0].f()), (2, 1));
}

#[test]
fn ord_tower_examples() {
    let k = f7();
    let t = Tower::base(&k).adjoin(2, &t_el(&k)).unwrap();
    let p = &all_chains(&t, &Place::linear(&k, &Fe::P(0))).unwrap()[0];
    assert_eq!(p.ord(&t_el(&k)).unwrap(), 2);
    assert_eq!(p.ord(&t.generator(0)).unwrap(), 1);
    assert_eq!(p.ord(&el(RatFunc::from_i64(&k, 5))).unwrap(), 0);
}

#[test]
fn ramification_examples() {
    let k = f7();
    let w = t_el(&k);
    let at = |c: u64| TowerPlace::over_base(&k, &Place::linear(&k, &Fe::P(c))).unwrap();
    let inf = TowerPlace::over_base(&k, &Place::Infinite).unwrap();
    assert_eq!(ramification_in_step(&at(0), 3, &w).unwrap(), 3);
    assert_eq!(ramification_in_step(&at(1), 3, &w).unwrap(), 1);
    assert_eq!(ramification_in_step(&inf, 3, &w).unwrap(), 3);
    assert!(unramified_by_discriminant(&at(1), 3, &w).unwrap());
    let w2 = el(&RatFunc::t(&k) * &rf(&k, &[-1, 1], &[1]).pow(3).unwrap());
    assert!(!unramified_by_discriminant(&at(0), 3, &w2).unwrap());
    let w3 = el(rf(&k, &[0, 0, 0, 1], &[1]));
    assert!(unramified_by_discriminant(&at(0), 3, &w3).unwrap());
}

#[test]
fn chain_e_and_coprime_factor() {
    let k = f7();
    let t = Tower::base(&k)
        .adjoin(2, &t_el(&k))
        .unwrap()
        .adjoin(3, &t_el(&k))
        .unwrap();
    let p0 = Place::linear(&k, &Fe::P(0));
    let p = factor_with_e_not_div_q(&t, &p0, 5).unwrap();
    assert_eq!(chain_e(&p, 0, 2).unwrap(), 6);
    assert_eq!(chain_e(&p, 1, 1).unwrap(), 1);
    let sq = Tower::base(&k).adjoin(2, &t_el(&k)).unwrap();
    assert_eq!(factor_with_e_not_div_q(&sq, &p0, 3).unwrap().e(), 2);
    let cube = Tower::base(&k).adjoin(3, &t_el(&k)).unwrap();
    assert_eq!(factor_with_e_not_div_q(&cube, &p0, 2).unwrap().e(), 3);
    assert!(factor_with_e_not_div_q(&cube, &p0, 3).is_err());
}

#[test]
fn ef_sum_equals_degree() {
    let k = f7();
    let t = Tower::base(&k)
        .adjoin(2, &el(rf(&k, &[3, 1], &[1])))
        .unwrap()
        .adjoin(3, &el(rf(&k, &[0, 1], &[2, 1])))
        .unwrap();
    let mut places: Vec<Place> = (0..7).map(|c| Place::linear(&k, &Fe::P(c))).collect();
    places.push(Place::Infinite);
    places.push(Place::Finite(Poly::from_i64s(&k, &[1, 0, 1])));
    for p in places {
        let chains = all_chains(&t, &p).unwrap();
        let s: u64 = chains.iter().map(|c| c.e() * c.f()).sum();
        assert_eq!(s, 6, "at {p}");
        for c in &chains {
            assert_eq!(&replay(&t, &p, &c.child_indices()).unwrap(), c);
        }
    }
}

#[test]
fn residues_of_generators_are_roots() {
    // At an unramified place β's residue class is a root of X^q - W̄.
    let k = f7();
    let t = Tower::base(&k).adjoin(3, &el(rf(&k, &[0, 1], &[1]))).unwrap();
    for c in 1..7 {
        for p in all_chains(&t, &Place::linear(&k, &Fe::P(c))).unwrap() {
            let (o, ac) = p.generator_value(0).clone();
            assert_eq!(o, 0);
            let r = p.residue_field();
            assert_eq!(r.pow(&ac, 3), r.lift_prime(&Fe::P(c as u64)));
        }
    }
}
