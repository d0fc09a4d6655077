//! Invariant checks and finite-stage evaluation of the defining formulas.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::radicand::{cleared_base, cleared_r, ord_r_at, r_parts, shift, shift_candidates};
use super::ConstructionState;
use crate::arith::Fe;
use crate::error::{Error, Result};
use crate::tower::TowerElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub u: usize,
    pub subject: String,
    pub detail: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    fn push(&mut self, u: usize, subject: impl Into<String>, detail: impl Into<String>, ok: bool) {
        self.entries.push(CheckEntry { u, subject: subject.into(), detail: detail.into(), ok });
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn failures(&self) -> String {
        let mut s = String::new();
        for e in self.entries.iter().filter(|e| !e.ok) {
            s.push_str(&format!("  FAIL u = {}: {}: {}\n", e.u, e.subject, e.detail));
        }
        s
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let tag = if e.ok { "ok  " } else { "FAIL" };
            writeln!(f, "{tag} u = {}: {}: {}", e.u, e.subject, e.detail)?;
        }
        Ok(())
    }
}

/// Finite-stage reading of the formula defining `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FOutcome {
    Accepted,
    Rejected(TowerElement),
    Undetermined(String),
}

/// Finite-stage reading of the formula defining `A_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuOutcome {
    In,
    Out,
    Undetermined,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertiesReport {
    /// `S_u` is disjoint from `A_{u,E_i}`.
    pub part1: CheckReport,
    /// The formula for `F` on known elements.
    pub part2: CheckReport,
    /// The formula for `A_u` on `F`.
    pub part3: CheckReport,
    /// Degrees of the adjunctions.
    pub part4: CheckReport,
}

impl PropertiesReport {
    pub fn passed(&self) -> bool {
        self.part1.passed() && self.part2.passed() && self.part3.passed() && self.part4.passed()
    }
}

/// Elements of `F` enumerated for the checks over `F`.
const FIELD_LIMIT: u64 = 1 << 10;

impl ConstructionState {
    /// Each `s ∈ S_u` has `ord R_u(s) ≢ 0 mod q_u` at its designated place,
    /// which lies at the top of the tower.
    pub fn check_eq_odd(&self) -> CheckReport {
        let mut rep = CheckReport::default();
        let field = self.field();
        for (u, set) in self.s_sets.iter().enumerate() {
            let q = self.q(u) as i64;
            for w in set {
                let subject = format!("{} at {}", w.s, w.place.describe());
                if w.place.level() != self.tower.level() {
                    rep.push(u, subject, "designated place is below the top of the tower", false);
                    continue;
                }
                match ord_r_at(field, &w.place, self.r(u), &w.s) {
                    Ok(Some(o)) => rep.push(u, subject, format!("ord R(s) = {o}"), o % q != 0),
                    Ok(None) => rep.push(u, subject, "R(s) = 0", false),
                    Err(e) => rep.push(u, subject, format!("{e}"), false),
                }
            }
        }
        rep
    }

    /// The `g ∈ F*` with `ord R_u(t^q - g + a) ≢ 0` at some designated place
    /// of `S_u`. Any other `g` is good at all of them.
    pub fn bad_shifts(&self, u: usize) -> Result<Vec<Fe>> {
        let field = self.field();
        let r = self.r(u);
        let q = r.q as i64;
        let mut out: Vec<Fe> = Vec::new();
        for w in &self.s_sets[u] {
            for g in shift_candidates(field, w.place.base(), r)? {
                if field.is_zero(&g) || out.contains(&g) {
                    continue;
                }
                let z = TowerElement::from_ratfunc(r.eval(&shift(field, r, &g))?);
                if w.place.ord(&z)? % q != 0 {
                    out.push(g);
                }
            }
        }
        Ok(out)
    }

    /// Whether `ord R_u(t^q - g + a) ≡ 0` at every designated place of `S_u`.
    pub fn shift_is_good(&self, u: usize, g: &Fe) -> Result<bool> {
        let field = self.field();
        let r = self.r(u);
        let z = TowerElement::from_ratfunc(r.eval(&shift(field, r, g))?);
        for w in &self.s_sets[u] {
            if w.place.ord(&z)? % r.q as i64 != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For all `r_1, r_2 ∈ F*` with `r_1 + r_2 ∈ A_u`, one of the shifts is
    /// good at every designated place. Checked exhaustively through the
    /// finite set of bad shifts, and directly on the supplied witnesses.
    pub fn check_eq_even(&self, witnesses: &[(usize, Fe, Fe)]) -> CheckReport {
        let mut rep = CheckReport::default();
        let field = self.field();
        for u in 0..self.s_sets.len() {
            let bad = match self.bad_shifts(u) {
                Ok(b) => b,
                Err(e) => {
                    rep.push(u, "bad shifts", format!("{e}"), false);
                    continue;
                }
            };
            let ix = &self.config.indices[u];
            let mut clash = false;
            for (i, g1) in bad.iter().enumerate() {
                for g2 in &bad[i..] {
                    if ix.contains(&field.add(g1, g2)) {
                        clash = true;
                        rep.push(u, format!("pair ({g1}, {g2})"), "both shifts are bad, sum in A_u", false);
                    }
                }
            }
            if !clash {
                rep.push(u, "all pairs", format!("{} bad shifts, no two sum into A_u", bad.len()), true);
            }
        }
        for (u, r1, r2) in witnesses {
            let subject = format!("witness ({r1}, {r2})");
            match (self.shift_is_good(*u, r1), self.shift_is_good(*u, r2)) {
                (Ok(a), Ok(b)) => rep.push(*u, subject, format!("good: {a}, {b}"), a || b),
                (Err(e), _) | (_, Err(e)) => rep.push(*u, subject, format!("{e}"), false),
            }
        }
        rep
    }
}

impl ConstructionState {
    /// Is `x` a `q_u`-th power in `E_i`? `Err` carries undecidable cases.
    fn power(&self, x: &TowerElement, u: usize) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        let hints: Vec<_> = self.s_sets[u].iter().map(|w| w.place.base().clone()).collect();
        Ok(self.tower.is_qth_power_with_hints(x, self.q(u), &hints)?.is_some())
    }

    /// Whether `R_u(b)` is a `q_u`-th power in `E_i`.
    pub fn in_a(&self, u: usize, b: &TowerElement) -> Result<bool> {
        self.power(&cleared_r(&self.tower, self.r(u), b)?, u)
    }

    /// The formula for `F` at `a`, over the fragment: rejected when some `b`
    /// makes `R(a)^q + R(b)` and `R(a)^q + R(b)^{-1}` both `q_1`-th powers
    /// while `b ∉ A_{1,E_i}`.
    pub fn eval_def_f(&self, a: &TowerElement, fragment: &[TowerElement]) -> FOutcome {
        let mut open = None;
        for b in fragment {
            match self.counterexample(a, b) {
                Ok(true) => return FOutcome::Rejected(b.clone()),
                Ok(false) => {}
                Err(e) => open = Some(format!("{b}: {e}")),
            }
        }
        match open {
            Some(m) => FOutcome::Undetermined(m),
            None => FOutcome::Accepted,
        }
    }

    fn counterexample(&self, a: &TowerElement, b: &TowerElement) -> Result<bool> {
        let t = &self.tower;
        let r = self.r(0);
        let q = r.q;
        let (aa, ba) = r_parts(t, r, a);
        let (ab, bb) = r_parts(t, r, b);
        if ba.is_zero() {
            return Err(Error::Domain(format!("R_1 is undefined at {a}")));
        }
        if ab.is_zero() || bb.is_zero() {
            // R(b)^{-1} or R(b) is undefined: b is not a candidate.
            return Ok(false);
        }
        let aq = t.pow(&aa, q);
        let bq = t.pow(&ba, q);
        let plus = t.mul(&t.mul(&aq, &bb).add(&t.mul(&ab, &bq)), &t.pow(&bb, q - 1));
        if !self.power(&plus, 0)? {
            return Ok(false);
        }
        let minus = t.mul(&t.mul(&aq, &ab).add(&t.mul(&bb, &bq)), &t.pow(&ab, q - 1));
        if !self.power(&minus, 0)? {
            return Ok(false);
        }
        Ok(!self.in_a(0, b)?)
    }

    /// The formula for `A_u` at `r`, over the engine's own decompositions of
    /// `r` and the supplied ones.
    pub fn eval_def_au(&self, u: usize, r: &Fe, extra: &[(Fe, Fe)]) -> AuOutcome {
        let field = self.field();
        let mut pairs: Vec<(Fe, Fe)> = self
            .pairs
            .iter()
            .filter(|p| p.u == u && p.r == *r)
            .map(|p| (p.r1.clone(), p.r2.clone()))
            .collect();
        pairs.extend(extra.iter().filter(|(a, b)| field.add(a, b) == *r).cloned());
        pairs.retain(|(a, b)| a != b && !field.is_zero(a) && !field.is_zero(b));
        if pairs.is_empty() {
            return AuOutcome::Undetermined;
        }
        let spec = self.r(u);
        let mut all_in = true;
        for (r1, r2) in &pairs {
            let s1 = TowerElement::from_ratfunc(shift(field, spec, r1));
            let s2 = TowerElement::from_ratfunc(shift(field, spec, r2));
            if self.in_s(u, &s1) && self.in_s(u, &s2) {
                return AuOutcome::Out;
            }
            let side = |s: &TowerElement| -> bool {
                let z = s.as_ratfunc().expect("shift lies in F(t)");
                cleared_base(spec, z)
                    .and_then(|w| self.power(&TowerElement::from_ratfunc(w), u))
                    .unwrap_or(false)
            };
            if !side(&s1) && !side(&s2) {
                all_in = false;
            }
        }
        if all_in {
            AuOutcome::In
        } else {
            AuOutcome::Undetermined
        }
    }
}

impl ConstructionState {
    /// Elements the engine knows: resolved generators and all of `S_u`.
    fn known_elements(&self) -> Vec<TowerElement> {
        let mut out: Vec<TowerElement> = Vec::new();
        for g in 0..self.config.generators.len() {
            if let Ok(Some(x)) = self.resolve(g) {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        for w in self.s_sets.iter().flatten() {
            if !out.contains(&w.s) {
                out.push(w.s.clone());
            }
        }
        out
    }

    /// The finite-stage content of the four properties of the limit field.
    pub fn properties_report(&self) -> PropertiesReport {
        PropertiesReport {
            part1: self.check_part1(),
            part2: self.check_part2(),
            part3: self.check_part3(),
            part4: self.check_part4(),
        }
    }

    /// No `s ∈ S_u` has `R_u(s)` a `q_u`-th power in `E_i`.
    pub fn check_part1(&self) -> CheckReport {
        let mut rep = CheckReport::default();
        let field = self.field();
        for (u, set) in self.s_sets.iter().enumerate() {
            for w in set {
                let subject = format!("{}", w.s);
                match self.in_a(u, &w.s) {
                    Ok(inside) => rep.push(u, subject, format!("R(s) is a power: {inside}"), !inside),
                    Err(Error::Unsupported(_)) => {
                        // The designated place certifies the answer.
                        let o = ord_r_at(field, &w.place, self.r(u), &w.s);
                        let ok = matches!(o, Ok(Some(o)) if o % self.q(u) as i64 != 0);
                        rep.push(u, subject, "certified by the order at the designated place", ok);
                    }
                    Err(e) => rep.push(u, subject, format!("{e}"), false),
                }
            }
        }
        rep
    }

    /// Known elements: constants are never rejected by the formula for `F`,
    /// and a generator given a pole witness for `u = 0` is rejected.
    pub fn check_part2(&self) -> CheckReport {
        let mut rep = CheckReport::default();
        let fragment: Vec<TowerElement> = self.s_sets[0].iter().map(|w| w.s.clone()).collect();
        let witnessed: Vec<usize> = self
            .log
            .iter()
            .filter(|r| r.case == 2)
            .filter(|r| r.added.iter().any(|(u, _)| *u == 0))
            .map(|r| r.generator)
            .collect();
        for a in self.known_elements() {
            let constant = a.as_ratfunc().is_some_and(|c| c.is_constant());
            let has_b = (0..self.config.generators.len())
                .any(|g| witnessed.contains(&g) && self.resolve(g).ok().flatten().as_ref() == Some(&a));
            let out = self.eval_def_f(&a, &fragment);
            let ok = match (&out, constant, has_b) {
                (FOutcome::Rejected(_), true, _) => false,
                (FOutcome::Rejected(_), false, _) => true,
                (_, false, true) => false,
                _ => true,
            };
            rep.push(0, format!("{a}"), format!("{out:?}"), ok);
        }
        rep
    }

    /// Over `F`: members of `A_u` are never out, split elements are out.
    pub fn check_part3(&self) -> CheckReport {
        let mut rep = CheckReport::default();
        let elems = self.field().elements(FIELD_LIMIT).unwrap_or_default();
        for (u, ix) in self.config.indices.iter().enumerate() {
            for r in &elems {
                let out = self.eval_def_au(u, r, &[]);
                let split = self.pairs.iter().any(|p| p.u == u && p.r == *r);
                let ok = if ix.contains(r) { out != AuOutcome::Out } else { !split || out == AuOutcome::Out };
                if split || out != AuOutcome::Undetermined || !ok {
                    rep.push(u, format!("r = {r}"), format!("{out:?}"), ok);
                }
            }
        }
        rep
    }

    /// Every adjunction made for `u` has degree `q_u`; a stage-`4n`
    /// adjunction has degree outside `{q_u}`.
    pub fn check_part4(&self) -> CheckReport {
        let mut rep = CheckReport::default();
        let qs: Vec<u64> = (0..self.s_sets.len()).map(|u| self.q(u)).collect();
        for rec in &self.log {
            for a in &rec.adjunctions {
                let ok = match a.u {
                    Some(u) => a.q == qs[u],
                    None => !qs.contains(&a.q),
                };
                let subject = format!("stage {}: {}", rec.stage, a.reason);
                rep.push(a.u.unwrap_or(0), subject, format!("degree {}", a.q), ok);
            }
        }
        rep
    }
}
