//! The four kinds of stage.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::radicand::{
    cleared_base, cleared_r, extend_chain, ord_r_at, r_parts, shift, shift_candidates, shift_place,
};
use super::{Adjunction, ConstructionState, Generator, PairRecord, StepRecord, Witness};
use crate::error::{Error, Result};
use crate::place::{divisor_of, weak_approx, Place};
use crate::ratfunc::RatFunc;
use crate::tower::place::reachable_chains;
use crate::tower::{TowerElement, TowerPlace};

/// Chains examined per base place when looking for a pole.
const POLE_CHAINS: usize = 16;

/// Outcome of a power test that may be undecidable.
enum Power {
    Yes,
    No,
    Unknown(String),
}

impl ConstructionState {
    fn power_test(&self, x: &TowerElement, q: u64, hints: &[Place]) -> Result<Power> {
        if x.is_zero() {
            return Ok(Power::Yes);
        }
        match self.tower.is_qth_power_with_hints(x, q, hints) {
            Ok(Some(_)) => Ok(Power::Yes),
            Ok(None) => Ok(Power::No),
            Err(Error::Unsupported(m)) => Ok(Power::Unknown(m)),
            Err(e) => Err(e),
        }
    }

    fn hints(&self, u: usize) -> Vec<Place> {
        let mut out: Vec<Place> = Vec::new();
        for w in &self.s_sets[u] {
            if !out.contains(w.place.base()) {
                out.push(w.place.base().clone());
            }
        }
        out
    }

    /// Adjoins `w^{1/q}` and carries every designated place up.
    fn adjoin(&mut self, u: Option<usize>, q: u64, w: TowerElement, reason: String, rec: &mut StepRecord) -> Result<()> {
        self.tower = self.tower.adjoin(q, &w)?;
        for v in 0..self.s_sets.len() {
            let qv = self.q(v);
            for wit in self.s_sets[v].iter_mut() {
                wit.place = extend_chain(&self.tower, &wit.place, Some(qv)).map_err(|e| {
                    Error::Internal(format!(
                        "designated place of {} (u = {v}) ramifies with index {qv}: {e}",
                        wit.s
                    ))
                })?;
            }
        }
        rec.adjunctions.push(Adjunction { u, q, radicand: w, reason });
        Ok(())
    }

    /// Stage `4n`: adjoin `x_n` when its degree is prime to every `q_u`.
    pub(super) fn stage_adjoin_generator(&mut self, g: usize, rec: &mut StepRecord) -> Result<()> {
        let Generator::Radical { q, radicand } = self.config.generators[g].clone() else {
            rec.notes.push("x_n lies in F(t); nothing to adjoin".into());
            return Ok(());
        };
        if self.adjoined.iter().any(|(_, gi)| *gi == g) {
            rec.notes.push("x_n was adjoined earlier".into());
            return Ok(());
        }
        let w = TowerElement::from_ratfunc(radicand);
        match self.power_test(&w, q, &[])? {
            Power::Yes => rec.notes.push("x_n already lies in E_i".into()),
            Power::Unknown(m) => rec.notes.push(format!("degree of x_n undetermined, skipped: {m}")),
            Power::No if (0..self.s_sets.len()).any(|u| self.q(u) == q) => {
                rec.notes.push(format!("[E_i(x_n):E_i] = {q} is one of the q_u; skipped"));
            }
            Power::No => {
                let j = self.tower.level();
                self.adjoin(None, q, w, format!("x_n, degree {q}"), rec)?;
                self.adjoined.push((j, g));
            }
        }
        Ok(())
    }

    /// Stage `4n+1`: witness `x_n` in `S_u`, or make `R_u(x_n)` a `q_u`-th power.
    pub(super) fn stage_norm_witness(&mut self, g: usize, active: usize, rec: &mut StepRecord) -> Result<()> {
        let Some(x) = self.resolved(g, rec)? else { return Ok(()) };
        let field = self.field().clone();
        for u in 0..active {
            let r = self.r(u).clone();
            let q = r.q;
            if let Some(c) = x.as_ratfunc().and_then(|c| c.as_constant()) {
                if r.poles.iter().any(|(b, _)| *b == c) {
                    rec.notes.push(format!("u = {u}: R_u(x_n) is undefined"));
                    continue;
                }
            }
            let mut found = None;
            for wit in &self.s_sets[u] {
                if let Some(o) = ord_r_at(&field, &wit.place, &r, &x)? {
                    if o % q as i64 != 0 {
                        found = Some(wit.place.clone());
                        break;
                    }
                }
            }
            if let Some(place) = found {
                if !self.in_s(u, &x) {
                    rec.added.push((u, x.clone()));
                    self.s_sets[u].push(Witness { s: x.clone(), place, stage: self.stage });
                }
                continue;
            }
            let w = cleared_r(&self.tower, &r, &x)?;
            match self.power_test(&w, q, &self.hints(u))? {
                Power::Yes => rec.notes.push(format!("u = {u}: R_u(x_n) is already a q_u-th power")),
                Power::Unknown(m) => rec.notes.push(format!("u = {u}: power test undetermined, skipped: {m}")),
                Power::No => self.adjoin(Some(u), q, w, format!("R_{u}(x_n)"), rec)?,
            }
        }
        Ok(())
    }

    /// `x_n` in the current tower, logging why the stage is skipped otherwise.
    fn resolved(&self, g: usize, rec: &mut StepRecord) -> Result<Option<TowerElement>> {
        match self.resolve(g) {
            Ok(Some(x)) => Ok(Some(x)),
            Ok(None) => {
                rec.notes.push("x_n is not in E_i".into());
                Ok(None)
            }
            Err(Error::Unsupported(m)) => {
                rec.notes.push(format!("membership of x_n undetermined: {m}"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

impl ConstructionState {
    /// Stage `4n+2`: for `x_n ∉ F`, a witness `b_u` with both
    /// `R(x_n)^q + R(b_u)` and `R(x_n)^q + R(b_u)^{-1}` made `q`-th powers.
    pub(super) fn stage_pole(&mut self, g: usize, active: usize, rec: &mut StepRecord) -> Result<()> {
        let Some(x) = self.resolved(g, rec)? else { return Ok(()) };
        if x.as_ratfunc().is_some_and(|c| c.is_constant()) {
            rec.notes.push("x_n ∈ F".into());
            return Ok(());
        }
        for u in 0..active {
            let Some(pole) = self.pick_pole(&x, u)? else {
                rec.notes.push(format!("u = {u}: no pole of x_n found among the examined places"));
                continue;
            };
            let pole = self.adjoin_exceptional(u, pole, rec)?;
            let b = match self.find_b(u, &x, &pole) {
                Ok(b) => b,
                Err(Error::Unsupported(m)) => {
                    rec.notes.push(format!("u = {u}: no b found: {m}"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let mut pole = pole;
            let q = self.q(u);
            for (label, w) in self.pole_radicands(u, &x, &b)? {
                match self.power_test(&w, q, &self.hints(u))? {
                    Power::Yes => rec.notes.push(format!("u = {u}: {label} is already a q_u-th power")),
                    Power::Unknown(m) => rec.notes.push(format!("u = {u}: {label} undetermined, skipped: {m}")),
                    Power::No => {
                        self.adjoin(Some(u), q, w, label, rec)?;
                        pole = extend_chain(&self.tower, &pole, Some(q)).map_err(|e| {
                            Error::Internal(format!("the place of b ramifies with index {q}: {e}"))
                        })?;
                    }
                }
            }
            if !self.in_s(u, &b) {
                rec.added.push((u, b.clone()));
                self.s_sets[u].push(Witness { s: b, place: pole, stage: self.stage });
            }
        }
        Ok(())
    }

    /// A chain where `x` has a pole, preferring ramification prime to `q_u`
    /// and chains not already designated.
    fn pick_pole(&self, x: &TowerElement, u: usize) -> Result<Option<TowerPlace>> {
        let q = self.q(u);
        let mut bases = alloc::vec![Place::Infinite];
        let coeffs = x.terms().values().chain(self.tower.steps().flat_map(|s| s.w.terms().values()));
        for c in coeffs {
            if c.is_constant() {
                continue;
            }
            for p in divisor_of(c)?.terms().keys() {
                if !bases.contains(p) {
                    bases.push(p.clone());
                }
            }
        }
        let mut best: Option<((bool, bool), TowerPlace)> = None;
        for b in bases {
            for c in reachable_chains(&self.tower, &b, POLE_CHAINS)? {
                match c.value(x) {
                    Ok(Some((o, _))) if o < 0 => {}
                    Ok(_) | Err(Error::Ambiguous(_)) => continue,
                    Err(e) => return Err(e),
                }
                let key = (c.e() % q == 0, self.s_sets[u].iter().any(|w| w.place == c));
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, c));
                }
            }
        }
        Ok(best.map(|(_, c)| c))
    }

    /// Adjoins `R(t^q - r + a)^{1/q}` for the finitely many `r` whose shift
    /// is bad at the pole but good at every designated place; returns the
    /// pole carried to the top of the tower.
    fn adjoin_exceptional(&mut self, u: usize, pole: TowerPlace, rec: &mut StepRecord) -> Result<TowerPlace> {
        let field = self.field().clone();
        let r = self.r(u).clone();
        let q = r.q as i64;
        let mut v = Vec::new();
        for g in shift_candidates(&field, pole.base(), &r)? {
            let z = TowerElement::from_ratfunc(r.eval(&shift(&field, &r, &g))?);
            if pole.ord(&z)? % q == 0 {
                continue;
            }
            let mut good = true;
            for w in &self.s_sets[u] {
                if w.place.ord(&z)? % q != 0 {
                    good = false;
                    break;
                }
            }
            if good {
                v.push(g);
            }
        }
        let mut pole = pole;
        for g in v {
            let w = TowerElement::from_ratfunc(cleared_base(&r, &shift(&field, &r, &g))?);
            if let Power::No = self.power_test(&w, r.q, &[pole.base().clone()])? {
                self.adjoin(Some(u), r.q, w, format!("R_{u}(t^q - {g} + a)"), rec)?;
                pole = extend_chain(&self.tower, &pole, None)?;
            }
        }
        Ok(pole)
    }

    /// Cleared forms of `R(x)^q + R(b)` and `R(x)^q + R(b)^{-1}`.
    fn pole_radicands(&self, u: usize, x: &TowerElement, b: &TowerElement) -> Result<Vec<(String, TowerElement)>> {
        let t = &self.tower;
        let r = self.r(u);
        let q = r.q;
        let (ax, bx) = r_parts(t, r, x);
        let (ab, bb) = r_parts(t, r, b);
        let axq = t.pow(&ax, q);
        let bxq = t.pow(&bx, q);
        let plus = t.mul(&t.mul(&axq, &bb).add(&t.mul(&ab, &bxq)), &t.pow(&bb, q - 1));
        let minus = t.mul(&t.mul(&axq, &ab).add(&t.mul(&bb, &bxq)), &t.pow(&ab, q - 1));
        Ok(alloc::vec![
            (format!("R_{u}(x_n)^q + R_{u}(b)"), plus),
            (format!("R_{u}(x_n)^q + 1/R_{u}(b)"), minus),
        ])
    }
}

/// Admissible orders of `b` at one chain.
#[derive(Clone, Copy, Debug)]
enum Target {
    /// `lo < ord < 0`, `ord ≢ 0 mod q`.
    Pole { lo: i64 },
    /// `ord <= hi < 0`, `ord ≡ 0 mod q`.
    Deep { hi: i64 },
}

impl Target {
    fn admits(self, o: i64, q: i64) -> bool {
        match self {
            Target::Pole { lo } => lo < o && o < 0 && o % q != 0,
            Target::Deep { hi } => o <= hi && o % q == 0,
        }
    }

    fn scale(self) -> i64 {
        match self {
            Target::Pole { lo } => -lo,
            Target::Deep { hi } => -hi,
        }
    }
}

impl ConstructionState {
    /// `b = y μ` with `y ∈ F(t)` from weak approximation and `μ` a basis
    /// monomial, such that at the pole `q ord x < ord b < 0` with
    /// `ord b ≢ 0`, and at each designated place of `S_u` `ord b` is a
    /// negative multiple of `q` below `-q |ord R(x)|`. Then both radicands
    /// have order divisible by `q` at all these places.
    fn find_b(&self, u: usize, x: &TowerElement, pole: &TowerPlace) -> Result<TowerElement> {
        let field = self.field().clone();
        let r = self.r(u);
        let q = r.q as i64;
        let ox = pole.ord(x)?;
        let mut targets: Vec<(&TowerPlace, Target)> = alloc::vec![(pole, Target::Pole { lo: q * ox })];
        for w in &self.s_sets[u] {
            if w.place == *pole {
                return Err(Error::Unsupported("the pole of x_n is a designated place".into()));
            }
            let o = ord_r_at(&field, &w.place, r, x)?.unwrap_or(0);
            targets.push((&w.place, Target::Deep { hi: -(q * o.abs() + 1) }));
        }
        let reach = targets.iter().map(|(p, t)| t.scale() + q * p.e() as i64).max().unwrap_or(q) + q;
        let order: Vec<i64> = (0..=reach).flat_map(|k| [-k, k]).skip(1).collect();
        for mu in self.tower.basis() {
            let m = TowerElement::monomial(RatFunc::one(&field), mu.clone());
            let mut groups: Vec<(Place, Vec<(i64, i64, Target)>)> = Vec::new();
            for (p, t) in &targets {
                let entry = (p.e() as i64, p.ord(&m)?, *t);
                match groups.iter_mut().find(|(b, _)| b == p.base()) {
                    Some((_, v)) => v.push(entry),
                    None => groups.push((p.base().clone(), alloc::vec![entry])),
                }
            }
            let mut cons = Vec::new();
            for (b, entries) in &groups {
                let k = order
                    .iter()
                    .copied()
                    .find(|k| entries.iter().all(|(e, mo, t)| t.admits(e * k + mo, q)));
                match k {
                    Some(k) => cons.push((b.clone(), k)),
                    None => break,
                }
            }
            if cons.len() < groups.len() {
                continue;
            }
            let y = weak_approx(&field, &cons)?;
            let b = m.scale(&y);
            for (p, t) in &targets {
                let o = p.ord(&b)?;
                if !t.admits(o, q) {
                    return Err(Error::Internal(format!("b = {b} has order {o} at {}", p.describe())));
                }
            }
            return Ok(b);
        }
        Err(Error::Unsupported("no monomial gives admissible orders".into()))
    }

    /// Stage `4n+3`: for `x_n ∈ F ∖ A_u`, split `x_n = r_1 + r_2` with both
    /// shifts `t^q - r_j + a` witnessed in `S_u`.
    pub(super) fn stage_split(&mut self, g: usize, active: usize, rec: &mut StepRecord) -> Result<()> {
        let Some(x) = self.resolved(g, rec)? else { return Ok(()) };
        let Some(c) = x.as_ratfunc().and_then(|c| c.as_constant()) else {
            rec.notes.push("x_n ∉ F".into());
            return Ok(());
        };
        let field = self.field().clone();
        for u in 0..active {
            if self.config.indices[u].contains(&c) {
                rec.notes.push(format!("u = {u}: x_n ∈ A_u"));
                continue;
            }
            if self.pairs.iter().any(|p| p.u == u && p.r == c) {
                rec.notes.push(format!("u = {u}: x_n already split"));
                continue;
            }
            let q = self.q(u);
            let mut done = false;
            for r1 in self.config.stream(u)? {
                let r2 = field.sub(&c, &r1);
                if field.is_zero(&r1) || field.is_zero(&r2) || r1 == r2 {
                    continue;
                }
                let mut trial = self.clone();
                let mut added = Vec::new();
                let mut ok = true;
                for rj in [&r1, &r2] {
                    let s = TowerElement::from_ratfunc(shift(&field, self.r(u), rj));
                    if trial.in_s(u, &s) {
                        continue;
                    }
                    let base = TowerPlace::over_base(&field, &shift_place(&field, q, rj)?)?;
                    let place = match extend_chain(&trial.tower, &base, Some(q)) {
                        Ok(p) => p,
                        Err(Error::Unsupported(_)) => {
                            ok = false;
                            break;
                        }
                        Err(e) => return Err(e),
                    };
                    added.push((u, s.clone()));
                    trial.s_sets[u].push(Witness { s, place, stage: self.stage });
                }
                if !ok || !trial.check_eq_even(&[]).passed() {
                    continue;
                }
                *self = trial;
                rec.added.extend(added);
                self.pairs.push(PairRecord { u, r: c.clone(), r1, r2 });
                done = true;
                break;
            }
            if !done && self.config.indices[u].stream.is_none() {
                // Every r_1 ∈ F was tried: some pair r_1 + a - c_1, r_2 + a - c_2
                // of new bad shifts always sums into A_u.
                rec.notes.push(format!("u = {u}: no split of x_n keeps the pair condition"));
            } else if !done {
                return Err(Error::Invalid(format!(
                    "witness stream for u = {u} exhausted while splitting {c} at stage {}",
                    self.stage
                )));
            }
        }
        Ok(())
    }
}
