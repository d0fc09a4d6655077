//! Chains of places through a tower.
//!
//! A chain keeps, at its top level, the residue field `k`, the image of `t`
//! in `k`, and for the base uniformizer and every generator `β_j` a pair
//! `(ord, ac)`: the order in the top level's normalization and the residue of
//! `x / ϖ^ord` for an implicit uniformizer `ϖ`. Since `ac` is multiplicative,
//! the leading data of any element follows from these pairs whenever the
//! minimal-order monomials do not cancel.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use super::residue::{extend, Embedding};
use super::{Tower, TowerElement};
use crate::arith::factor::{factor, qth_root_const, qth_roots_finite};
use crate::arith::{ConstField, Fe, Poly};
use crate::error::{Error, Result};
use crate::place::Place;
use crate::ratfunc::RatFunc;

/// What happened to the chain at one adjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRecord {
    pub q: u64,
    /// Ramification index `e ∈ {1, q}`.
    pub e: u64,
    /// Relative degree.
    pub f: u64,
    /// Index among the sorted places above the parent.
    pub child: usize,
    /// Order and residue class of the radicand at the parent.
    pub radicand_ord: i64,
    pub radicand_ac: Fe,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerPlace {
    base: Place,
    levels: Vec<LevelRecord>,
    k: ConstField,
    theta: Fe,
    e: u64,
    pi_ac: Fe,
    gens: Vec<(i64, Fe)>,
}

impl TowerPlace {
    /// The place itself, viewed in `F(t)`.
    pub fn over_base(field: &ConstField, base: &Place) -> Result<TowerPlace> {
        if let (Place::Finite(pi), f) = (base, field) {
            if pi.field() != f {
                return Err(Error::FieldMismatch);
            }
        }
        let (k, theta) = base.residue_field(field)?;
        let pi_ac = k.one();
        Ok(TowerPlace { base: base.clone(), levels: Vec::new(), k, theta, e: 1, pi_ac, gens: Vec::new() })
    }

    pub fn base(&self) -> &Place {
        &self.base
    }

    pub fn levels(&self) -> &[LevelRecord] {
        &self.levels
    }

    /// Number of adjunctions this chain passes through.
    pub fn level(&self) -> usize {
        self.levels.len()
    }

    pub fn residue_field(&self) -> &ConstField {
        &self.k
    }

    /// Image of `t` in the residue field (zero above the infinite place).
    pub fn theta(&self) -> &Fe {
        &self.theta
    }

    /// Ramification index over the base place.
    pub fn e(&self) -> u64 {
        self.e
    }

    /// Residue degree over the base place.
    pub fn f(&self) -> u64 {
        self.levels.iter().map(|l| l.f).product()
    }

    pub fn child_indices(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.child).collect()
    }

    /// `(ord, ac)` of the generator `β_j`.
    pub fn generator_value(&self, j: usize) -> &(i64, Fe) {
        &self.gens[j]
    }

    /// Order and residue of the unit part of a base element.
    fn base_value(&self, c: &RatFunc) -> Result<(i64, Fe)> {
        let k = &self.k;
        let (o, u) = self.base.split_unit(c, k, &self.theta)?;
        let u = k.lift_prime(&u);
        let ac = k.mul(&u, &k.pow_i64(&self.pi_ac, o)?);
        Ok((o * self.e as i64, ac))
    }

    /// `(ord, ac)` of a nonzero element of the chain's level; `None` for 0.
    pub fn value(&self, x: &TowerElement) -> Result<Option<(i64, Fe)>> {
        if x.level() > self.gens.len() {
            return Err(Error::Precondition(format!(
                "element of level {} at a place of level {}",
                x.level(),
                self.gens.len()
            )));
        }
        let k = &self.k;
        let mut best: Option<(i64, Fe)> = None;
        let mut tied = 0usize;
        for (e, c) in x.terms() {
            let (mut o, mut ac) = self.base_value(c)?;
            for (j, m) in e.iter().enumerate() {
                if *m > 0 {
                    let (go, gac) = &self.gens[j];
                    o += go * *m as i64;
                    ac = k.mul(&ac, &k.pow(gac, *m as u64));
                }
            }
            match &mut best {
                None => {
                    best = Some((o, ac));
                    tied = 1;
                }
                Some((bo, bac)) => {
                    if o < *bo {
                        *bo = o;
                        *bac = ac;
                        tied = 1;
                    } else if o == *bo {
                        *bac = k.add(bac, &ac);
                        tied += 1;
                    }
                }
            }
        }
        match best {
            Some((o, ac)) if k.is_zero(&ac) => Err(Error::Ambiguous(format!(
                "{tied} leading terms of order {o} cancel at {}",
                self.describe()
            ))),
            other => Ok(other),
        }
    }

    /// `ord` of a nonzero element in this level's normalization.
    pub fn ord(&self, x: &TowerElement) -> Result<i64> {
        match self.value(x)? {
            Some((o, _)) => Ok(o),
            None => Err(Error::Precondition("order of zero".into())),
        }
    }

    pub fn describe(&self) -> alloc::string::String {
        format!("{} / {:?}", self.base, self.child_indices())
    }

    fn embed(&self, emb: &Embedding, theta: Fe) -> TowerPlace {
        TowerPlace {
            base: self.base.clone(),
            levels: self.levels.clone(),
            k: emb.target.clone(),
            theta,
            e: self.e,
            pi_ac: emb.apply(&self.pi_ac),
            gens: self.gens.iter().map(|(o, a)| (*o, emb.apply(a))).collect(),
        }
    }
}

impl fmt::Display for TowerPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// The places above `p` in the next step, and whether the list is complete
/// (over the rationals only degree-one places are produced).
pub(crate) fn split_partial(tower: &Tower, p: &TowerPlace) -> Result<(Vec<TowerPlace>, bool)> {
    let j = p.level();
    if j >= tower.level() {
        return Err(Error::Precondition("place is already at the top of the tower".into()));
    }
    let step = tower.step(j);
    let q = step.q;
    let (v, a) = p
        .value(&step.w)?
        .ok_or_else(|| Error::Internal("zero radicand".into()))?;
    let k = &p.k;
    let qi = q as i64;
    if v.mod_floor(&qi) != 0 {
        let eg = v.extended_gcd(&qi);
        let (x, y) = (eg.x, eg.y);
        let big_a = k.pow_i64(&a, -x)?;
        let mut child = p.clone();
        child.e *= q;
        child.pi_ac = k.mul(&child.pi_ac, &k.pow_i64(&big_a, p.e as i64)?);
        for g in child.gens.iter_mut() {
            g.1 = k.mul(&g.1, &k.pow_i64(&big_a, g.0)?);
            g.0 *= qi;
        }
        child.gens.push((v, k.pow_i64(&a, y)?));
        child.levels.push(LevelRecord { q, e: q, f: 1, child: 0, radicand_ord: v, radicand_ac: a });
        return Ok((vec![child], true));
    }
    let w = v / qi;
    let record = |child: usize, f: u64| LevelRecord {
        q,
        e: 1,
        f,
        child,
        radicand_ord: v,
        radicand_ac: a.clone(),
    };
    if matches!(k, ConstField::Rational) {
        let mut roots = Vec::new();
        if let Some(r) = qth_root_const(k, &a, q)? {
            if q == 2 {
                roots.push(k.neg(&r));
            }
            roots.push(r);
        }
        crate::arith::factor::sort_canonical(k, &mut roots);
        let complete = roots.len() as u64 == q;
        let children = roots
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                let mut c = p.clone();
                c.gens.push((w, r));
                c.levels.push(record(i, 1));
                c
            })
            .collect();
        return Ok((children, complete));
    }
    let factors = kummer_factors(k, &a, q)?;
    let mut children = Vec::with_capacity(factors.len());
    for (i, g) in factors.iter().enumerate() {
        let (emb, y) = extend(k, g)?;
        let theta = emb.apply(&p.theta);
        let mut c = p.embed(&emb, theta);
        c.gens.push((w, y));
        c.levels.push(record(i, g.degree().unwrap_or(1) as u64));
        children.push(c);
    }
    Ok((children, true))
}

/// Monic irreducible factors of `X^q - a` over a finite field, sorted, read
/// off from the `q`-th roots of `a`: none means irreducible, `q` of them
/// means linear factors, and a single root leaves a cofactor of degree
/// `q - 1` to factor.
fn kummer_factors(k: &ConstField, a: &Fe, q: u64) -> Result<Vec<Poly>> {
    let roots = qth_roots_finite(k, a, q)?;
    let mut out = match roots.len() {
        0 => {
            let mut c = vec![k.zero(); q as usize + 1];
            c[0] = k.neg(a);
            c[q as usize] = k.one();
            vec![Poly::new(k.clone(), c)]
        }
        1 => {
            let r = &roots[0];
            let co: Vec<Fe> = (0..q).map(|i| k.pow(r, q - 1 - i)).collect();
            let mut v = vec![Poly::linear(k, r)];
            v.extend(factor(&Poly::new(k.clone(), co))?.factors.into_iter().map(|(g, _)| g));
            v
        }
        _ => roots.iter().map(|r| Poly::linear(k, r)).collect(),
    };
    out.sort();
    Ok(out)
}

/// All places above `p` in the next step, sorted by relative degree and then
/// by the residue factor.
pub fn split_place(tower: &Tower, p: &TowerPlace) -> Result<Vec<TowerPlace>> {
    let (children, complete) = split_partial(tower, p)?;
    if !complete {
        return Err(Error::Unsupported(format!(
            "places of non-trivial residue degree above {} over Q",
            p.describe()
        )));
    }
    Ok(children)
}

/// Rebuilds a chain from its base place and child indices.
pub fn replay(tower: &Tower, base: &Place, children: &[usize]) -> Result<TowerPlace> {
    let mut p = TowerPlace::over_base(tower.field(), base)?;
    for &i in children {
        let (cs, _) = split_partial(tower, &p)?;
        p = cs
            .into_iter()
            .nth(i)
            .ok_or_else(|| Error::Invalid(format!("no place with index {i} above the chain")))?;
    }
    Ok(p)
}

/// Every chain above `base` through the whole tower.
pub fn all_chains(tower: &Tower, base: &Place) -> Result<Vec<TowerPlace>> {
    let mut layer = vec![TowerPlace::over_base(tower.field(), base)?];
    for _ in 0..tower.level() {
        let mut next = Vec::new();
        for p in &layer {
            next.extend(split_place(tower, p)?);
        }
        layer = next;
    }
    Ok(layer)
}

/// Chains above `base` that the partial splitting reaches; used where any
/// single chain suffices.
pub(crate) fn reachable_chains(tower: &Tower, base: &Place, limit: usize) -> Result<Vec<TowerPlace>> {
    let mut layer = vec![TowerPlace::over_base(tower.field(), base)?];
    for _ in 0..tower.level() {
        let mut next = Vec::new();
        for p in &layer {
            next.extend(split_partial(tower, p)?.0);
            if next.len() >= limit {
                break;
            }
        }
        next.truncate(limit);
        layer = next;
    }
    Ok(layer)
}

/// `q` if the radicand's order at `p` is prime to `q`, else 1.
pub fn ramification_in_step(p: &TowerPlace, q: u64, w: &TowerElement) -> Result<u64> {
    let o = p.ord(w)?;
    Ok(if o.mod_floor(&(q as i64)) != 0 { q } else { 1 })
}

/// Whether the discriminant `q^q W^{q-1}` of `X^q - W V^q` is a unit at
/// `p`, for `V` chosen to bring the radicand's order into `[0, q)`.
pub fn unramified_by_discriminant(p: &TowerPlace, q: u64, w: &TowerElement) -> Result<bool> {
    let o = p.ord(w)?;
    let normalized = o.mod_floor(&(q as i64));
    Ok((q as i64 - 1) * normalized == 0)
}

/// Product of the ramification indices over `from..to`.
pub fn chain_e(p: &TowerPlace, from: usize, to: usize) -> Result<u64> {
    if from > to || to > p.levels.len() {
        return Err(Error::Precondition(format!("level range {from}..{to} is invalid")));
    }
    Ok(p.levels[from..to].iter().map(|l| l.e).product())
}

/// A chain above `base` whose ramification index is prime to `q`.
pub fn factor_with_e_not_div_q(tower: &Tower, base: &Place, q: u64) -> Result<TowerPlace> {
    if tower.degree() % q == 0 {
        return Err(Error::Precondition(format!(
            "q = {q} divides the tower degree {}",
            tower.degree()
        )));
    }
    let start = TowerPlace::over_base(tower.field(), base)?;
    dfs_e(tower, start, q)?
        .ok_or_else(|| Error::Unsupported(format!("no reachable chain above {base} with e prime to {q}")))
}

fn dfs_e(tower: &Tower, p: TowerPlace, q: u64) -> Result<Option<TowerPlace>> {
    if p.e % q == 0 {
        return Ok(None);
    }
    if p.level() == tower.level() {
        return Ok(Some(p));
    }
    for c in split_partial(tower, &p)?.0 {
        if let Some(found) = dfs_e(tower, c, q)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}
