//! Algebraic invariants on random inputs.

use kummer_core::arith::{factor, is_irreducible, ConstField, Fe, Poly};
use kummer_core::place::irreducibles;
use kummer_core::{divisor_of, ord_at, weak_approx, Place, RatFunc, Tower, TowerElement};
use proptest::prelude::*;

fn fields() -> Vec<ConstField> {
    vec![
        ConstField::prime(5).unwrap(),
        ConstField::prime(7).unwrap(),
        ConstField::extension(3, 2).unwrap(),
        ConstField::extension(2, 3).unwrap(),
        ConstField::Rational,
    ]
}

fn field() -> impl Strategy<Value = ConstField> {
    (0..fields().len()).prop_map(|i| fields()[i].clone())
}

/// Reads a field element from a small integer code.
fn fe(f: &ConstField, code: i64) -> Fe {
    match f.order_u64() {
        Some(n) => f.element_from_index(code.rem_euclid(n as i64) as u64),
        None => f.rational(code % 7, 1 + code.rem_euclid(3)).unwrap(),
    }
}

fn poly(f: &ConstField, codes: &[i64]) -> Poly {
    Poly::new(f.clone(), codes.iter().map(|&c| fe(f, c)).collect())
}

fn ratfunc(f: &ConstField, num: &[i64], den: &[i64]) -> Option<RatFunc> {
    let d = poly(f, den);
    if d.is_zero() {
        return None;
    }
    RatFunc::new(poly(f, num), d).ok()
}

fn codes(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..20, 1..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(f in field(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let (a, b, c) = (fe(&f, a), fe(&f, b), fe(&f, c));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
    }

    #[test]
    fn division_with_remainder(f in field(), a in codes(7), b in codes(4)) {
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn factorization_expands_back(f in field(), a in codes(6)) {
        let a = poly(&f, &a);
        prop_assume!(!a.is_zero());
        prop_assume!(f.is_finite() || a.degree().unwrap() <= 4);
        let fac = factor(&a).unwrap();
        prop_assert_eq!(fac.expand(&f), a);
        for (g, m) in &fac.factors {
            prop_assert!(*m >= 1 && g.is_monic());
            prop_assert!(is_irreducible(g).unwrap());
        }
    }

    #[test]
    fn orders_are_additive(f in field(), n1 in codes(4), d1 in codes(3), n2 in codes(4), d2 in codes(3), c in -20i64..20) {
        let (Some(x), Some(y)) = (ratfunc(&f, &n1, &d1), ratfunc(&f, &n2, &d2)) else { return Ok(()) };
        prop_assume!(!x.is_zero() && !y.is_zero());
        let xy = x.try_mul(&y).unwrap();
        for p in [Place::Infinite, Place::linear(&f, &fe(&f, c))] {
            let (a, b, ab) = (ord_at(&p, &x), ord_at(&p, &y), ord_at(&p, &xy));
            prop_assert_eq!(ab, Some(a.unwrap() + b.unwrap()));
        }
    }

    #[test]
    fn principal_divisors_have_degree_zero(f in field(), n in codes(5), d in codes(4)) {
        let Some(x) = ratfunc(&f, &n, &d) else { return Ok(()) };
        prop_assume!(!x.is_zero());
        prop_assume!(f.is_finite() || (x.num().deg_i64() <= 4 && x.den().deg_i64() <= 4));
        let div = divisor_of(&x).unwrap();
        prop_assert_eq!(div.degree(), 0);
        for (p, k) in div.terms() {
            prop_assert_eq!(ord_at(p, &x), Some(*k));
        }
    }

    #[test]
    fn weak_approximation_meets_its_constraints(
        p in prop::sample::select(vec![5u64, 7, 11]),
        picks in prop::collection::btree_set(0usize..40, 1..=4),
        ks in prop::collection::vec(-4i64..=4, 4),
        infinite in any::<bool>(),
        kinf in -4i64..=4,
    ) {
        let f = ConstField::prime(p).unwrap();
        let mut pool: Vec<Place> = (0..p).map(|c| Place::linear(&f, &Fe::P(c))).collect();
        pool.extend(irreducibles(&f, 2).unwrap().into_iter().map(Place::Finite));
        let mut cons: Vec<(Place, i64)> =
            picks.iter().zip(&ks).map(|(&i, &k)| (pool[i % pool.len()].clone(), k)).collect();
        cons.sort();
        cons.dedup_by(|a, b| a.0 == b.0);
        if infinite {
            cons.push((Place::Infinite, kinf));
        }
        let x = weak_approx(&f, &cons).unwrap();
        for (pl, k) in &cons {
            prop_assert_eq!(ord_at(pl, &x), Some(*k));
        }
    }
}

/// `F_7(t)(∛(t+1))(√t)` with elements built from small codes.
fn tower() -> Tower {
    let f = ConstField::prime(7).unwrap();
    let t = RatFunc::t(&f);
    let w1 = t.try_add(&RatFunc::one(&f)).unwrap();
    Tower::base(&f)
        .adjoin(3, &TowerElement::from_ratfunc(w1))
        .unwrap()
        .adjoin(2, &TowerElement::from_ratfunc(t))
        .unwrap()
}

fn element(tw: &Tower, cs: &[(i64, i64)]) -> TowerElement {
    let f = tw.field();
    let mut x = TowerElement::zero();
    for (b, &(n0, n1)) in tw.basis().into_iter().zip(cs) {
        let c = RatFunc::new(poly(f, &[n0, n1]), poly(f, &[1, 1])).unwrap();
        x.add_term(b, c);
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tower_arithmetic(
        a in prop::collection::vec((-6i64..7, -6i64..7), 6),
        b in prop::collection::vec((-6i64..7, -6i64..7), 6),
        c in prop::collection::vec((-6i64..7, -6i64..7), 6),
    ) {
        let tw = tower();
        let (a, b, c) = (element(&tw, &a), element(&tw, &b), element(&tw, &c));
        prop_assert_eq!(tw.mul(&a, &b), tw.mul(&b, &a));
        prop_assert_eq!(tw.mul(&tw.mul(&a, &b), &c), tw.mul(&a, &tw.mul(&b, &c)));
        prop_assert_eq!(tw.mul(&a, &b.add(&c)), tw.mul(&a, &b).add(&tw.mul(&a, &c)));
        if !a.is_zero() {
            prop_assert!(tw.mul(&a, &tw.inv(&a).unwrap()).is_one());
        }
    }
}
