use kummer_core::arith::{ConstField, Fe, Poly};
use kummer_core::theory::{build_g_prefix, check_axioms, TheoryConfig, Verdict};
use kummer_core::{RatFunc, RuSpec, Tower, TowerElement};

fn config() -> TheoryConfig {
    let k = ConstField::prime(5).unwrap();
    TheoryConfig {
        field: k.clone(),
        r: vec![RuSpec::new(3, vec![(Fe::P(0), 1)], vec![]), RuSpec::new(7, vec![(Fe::P(0), 1)], vec![])],
        p: vec![Poly::from_i64s(&k, &[-2, 0, 1]), Poly::from_i64s(&k, &[2, 0, 1])],
        z: vec![Poly::from_i64s(&k, &[-1, 1]), Poly::from_i64s(&k, &[-2, 0, 0, 1])],
        enumeration: vec![RatFunc::t(&k)],
    }
}

fn sample(k: &ConstField) -> Vec<TowerElement> {
    let t = RatFunc::t(k);
    [t.clone(), t.try_add(&RatFunc::one(k)).unwrap(), RatFunc::from_i64(k, 3)]
        .into_iter()
        .map(TowerElement::from_ratfunc)
        .collect()
}

#[test]
fn depth_two_prefix_satisfies_the_axioms() {
    let cfg = config();
    let mut previous = usize::MAX;
    for depth in 0..=2 {
        let g = build_g_prefix(&cfg, depth).unwrap();
        assert!(g.tower.exponents().iter().all(|q| cfg.qs().contains(q)));
        let rep = check_axioms(&g.tower, &cfg, &sample(&cfg.field));
        assert!(rep.item2.iter().all(|e| e.verdict == Verdict::Holds), "{rep}");
        assert!(rep.item3.iter().all(|e| e.verdict == Verdict::Holds), "{rep}");
        assert!(rep.item1_failures() <= previous);
        previous = rep.item1_failures();
        // Every x whose root was adjoined now passes item (1) for that q.
        let xs: Vec<TowerElement> = g.adjoined.iter().map(|(_, x)| x.clone()).collect();
        let own = check_axioms(&g.tower, &cfg, &xs);
        for (q, x) in &g.adjoined {
            let subject = format!("q = {q}, x = {x}");
            let e = own.item1.iter().find(|e| e.subject == subject).unwrap();
            assert_eq!(e.verdict, Verdict::Holds, "{subject}");
        }
    }
}

#[test]
fn irreducibility_verdicts_match_root_search() {
    // Over F_5 a polynomial of degree 2 or 3 is irreducible exactly when it
    // has no root; the tower degree 1 imposes no obstruction.
    let k = ConstField::prime(5).unwrap();
    let base = Tower::base(&k);
    for deg in 2..=3usize {
        for code in 0..5u64.pow(deg as u32) {
            let mut c: Vec<i64> = (0..deg).map(|i| ((code / 5u64.pow(i as u32)) % 5) as i64).collect();
            c.push(1);
            let p = Poly::from_i64s(&k, &c);
            let has_root = (0..5).any(|x| k.is_zero(&p.eval(&Fe::P(x))));
            let mut cfg = config();
            cfg.p = vec![p];
            let rep = check_axioms(&base, &cfg, &[]);
            let expect = if has_root { Verdict::Fails } else { Verdict::Holds };
            assert_eq!(rep.item2[0].verdict, expect, "{c:?}");
        }
    }
}
