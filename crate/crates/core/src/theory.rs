//! Prefixes of a field `G` satisfying the axioms `∀x ∃y y^q = R_q(x)`,
//! `P_i` irreducible, `Z_i` has a root, and a checker for those axioms on a
//! tower.
//!
//! `Q` is infinite in general; a config carries a finite sample of it, and
//! every verdict is relative to that sample.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::arith::factor::{factor, qth_root_const};
use crate::arith::field::is_prime;
use crate::arith::{ConstField, Poly};
use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::ruspec::RuSpec;
use crate::tower::{Tower, TowerElement};

/// Elements of `U` sampled for the closure condition.
const CLOSURE_SAMPLE: u64 = 1 << 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryConfig {
    /// `U`.
    pub field: ConstField,
    /// One `R_q` per sampled `q ∈ Q`, keyed by its own `q`.
    pub r: Vec<RuSpec>,
    /// Polynomials required to stay irreducible.
    pub p: Vec<Poly>,
    /// Polynomials required to have a root.
    pub z: Vec<Poly>,
    /// Elements of `U(t)` enumerated first when building a prefix.
    pub enumeration: Vec<RatFunc>,
}

impl TheoryConfig {
    /// The sampled primes, increasing.
    pub fn qs(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.r.iter().map(|r| r.q).collect();
        v.sort_unstable();
        v
    }

    /// Every violated clause, empty for a valid config.
    pub fn violations(&self) -> Vec<String> {
        let f = &self.field;
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for r in &self.r {
            let q = r.q;
            if !is_prime(q) {
                out.push(format!("q = {q} is not prime"));
            }
            if q == f.characteristic() {
                out.push(format!("q = {q} equals the characteristic of U"));
            }
            if !seen.insert(q) {
                out.push(format!("R_{q} is given twice"));
            }
            let roots = r.roots();
            if roots.iter().any(|(c, _)| !f.contains(c)) {
                out.push(format!("R_{q} has a zero or pole outside U"));
            }
            if !roots.iter().any(|(_, m)| m % q as i64 != 0) {
                out.push(format!("R_{q}: every zero and pole has multiplicity divisible by q"));
            }
            if let Err(e) = self.closure(r) {
                out.push(format!("R_{q}: {e}"));
            }
        }
        for (i, p) in self.p.iter().chain(&self.z).enumerate() {
            if p.is_constant() || p.field() != f {
                out.push(format!("polynomial {i} must be nonconstant over U"));
            }
        }
        for x in &self.enumeration {
            if x.field() != f {
                out.push(format!("enumerated element {x:?} is over another field"));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v.join("; ")))
        }
    }

    /// For sampled `x ∈ U` outside the poles, `R_q(x)` is a `q`-th power in `U`.
    fn closure(&self, r: &RuSpec) -> Result<()> {
        let f = &self.field;
        let spec = r.as_ratfunc(f)?;
        for x in f.elements(CLOSURE_SAMPLE)? {
            let Ok(v) = spec.eval(&x) else { continue };
            if qth_root_const(f, &v, r.q)?.is_none() {
                return Err(Error::Invalid(format!("R(x) = {v} has no {}-th root in U at x = {x}", r.q)));
            }
        }
        Ok(())
    }
}

/// `R(x) = Π (x - c)^{n(c)}` in the tower.
pub fn r_value(tower: &Tower, r: &RuSpec, x: &TowerElement) -> Result<TowerElement> {
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
    if den.is_zero() {
        return Err(Error::Domain(format!("R_{} is undefined at {x}", r.q)));
    }
    tower.div(&num, &den)
}

/// A finite prefix `H_0 = U(t) ⊂ ... ⊂ H_k` of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPrefix {
    pub tower: Tower,
    /// `(q, x)` for each adjoined root of `R_q(x)`, in order.
    pub adjoined: Vec<(u64, TowerElement)>,
    pub notes: Vec<String>,
}

/// Round `k` takes the `k`-th element of the list `enumeration, β_0, β_1, ...`
/// and adjoins a root of `R_q(x)` for each sampled `q` where none exists.
pub fn build_g_prefix(cfg: &TheoryConfig, depth: usize) -> Result<GPrefix> {
    cfg.validate()?;
    let mut tower = Tower::base(&cfg.field);
    let mut list: Vec<TowerElement> = cfg.enumeration.iter().cloned().map(TowerElement::from_ratfunc).collect();
    let mut adjoined = Vec::new();
    let mut notes = Vec::new();
    let mut specs: Vec<&RuSpec> = cfg.r.iter().collect();
    specs.sort_by_key(|r| r.q);
    for round in 0..depth {
        let Some(x) = list.get(round).cloned() else {
            notes.push(format!("round {round}: enumeration exhausted"));
            break;
        };
        for r in &specs {
            let w = match r_value(&tower, r, &x) {
                Ok(w) if !w.is_zero() => w,
                Ok(_) => continue,
                Err(Error::Domain(m)) => {
                    notes.push(format!("round {round}: {m}"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            match tower.is_qth_power(&w, r.q) {
                Ok(Some(_)) => {}
                Ok(None) => {
                    tower = tower.adjoin(r.q, &w)?;
                    list.push(tower.generator(tower.level() - 1));
                    adjoined.push((r.q, x.clone()));
                }
                Err(Error::Unsupported(m)) => notes.push(format!("round {round}, q = {}: {m}", r.q)),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(GPrefix { tower, adjoined, notes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Item (1) only: no root yet, a later prefix may supply it.
    Missing,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomEntry {
    pub subject: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub item1: Vec<AxiomEntry>,
    pub item2: Vec<AxiomEntry>,
    pub item3: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn count(items: &[AxiomEntry], v: Verdict) -> usize {
        items.iter().filter(|e| e.verdict == v).count()
    }

    /// Item (1) entries without a root.
    pub fn item1_failures(&self) -> usize {
        self.item1.iter().filter(|e| e.verdict != Verdict::Holds).count()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, items) in [("(1)", &self.item1), ("(2)", &self.item2), ("(3)", &self.item3)] {
            for e in items {
                writeln!(f, "{name} {:?}: {}: {}", e.verdict, e.subject, e.detail)?;
            }
        }
        Ok(())
    }
}

/// Checks the three axiom items on `tower` for the sampled elements.
pub fn check_axioms(tower: &Tower, cfg: &TheoryConfig, sample: &[TowerElement]) -> AxiomReport {
    let mut rep = AxiomReport::default();
    let n = tower.degree();
    for x in sample {
        for r in &cfg.r {
            let subject = format!("q = {}, x = {x}", r.q);
            let (verdict, detail) = match root_of_r(tower, r, x) {
                Ok(Some(y)) => (Verdict::Holds, format!("y = {y}")),
                Ok(None) => (Verdict::Missing, String::from("no root in this prefix")),
                Err(e) => (Verdict::Undetermined, format!("{e}")),
            };
            rep.item1.push(AxiomEntry { subject, verdict, detail });
        }
    }
    for p in &cfg.p {
        let subject = p.display("T");
        let (verdict, detail) = match factor(p) {
            Ok(fac) if fac.factors.len() == 1 && fac.factors[0].1 == 1 => {
                let d = p.degree().unwrap_or(0) as u64;
                if d.gcd(&n) == 1 {
                    (Verdict::Holds, format!("irreducible over U, degree {d} prime to [H:U(t)] = {n}"))
                } else {
                    (Verdict::Undetermined, format!("irreducible over U, degree {d} shares a factor with {n}"))
                }
            }
            Ok(fac) => (Verdict::Fails, format!("{} factors over U", fac.factors.len())),
            Err(e) => (Verdict::Undetermined, format!("{e}")),
        };
        rep.item2.push(AxiomEntry { subject, verdict, detail });
    }
    for z in &cfg.z {
        let subject = z.display("T");
        let (verdict, detail) = match factor(z) {
            Ok(fac) => match fac.factors.iter().find(|(g, _)| g.degree() == Some(1)) {
                Some((g, _)) => {
                    let root = cfg.field.neg(&g.monic().coeff(0));
                    (Verdict::Holds, format!("root {root}"))
                }
                // A root in the tower generates a subextension whose degree
                // over U(t) divides n.
                None if fac.factors.iter().all(|(g, _)| (g.degree().unwrap_or(0) as u64).gcd(&n) == 1) => {
                    (Verdict::Fails, String::from("no root in U, factor degrees prime to the tower degree"))
                }
                None => (Verdict::Undetermined, String::from("no root in U")),
            },
            Err(e) => (Verdict::Undetermined, format!("{e}")),
        };
        rep.item3.push(AxiomEntry { subject, verdict, detail });
    }
    rep
}

/// A `y` with `y^q = R_q(x)`, verified.
fn root_of_r(tower: &Tower, r: &RuSpec, x: &TowerElement) -> Result<Option<TowerElement>> {
    let w = r_value(tower, r, x)?;
    let Some(y) = tower.is_qth_power(&w, r.q)? else { return Ok(None) };
    if tower.pow(&y, r.q) != w {
        return Err(Error::Internal(format!("root of R_{}({x}) fails to verify", r.q)));
    }
    Ok(Some(y))
}
