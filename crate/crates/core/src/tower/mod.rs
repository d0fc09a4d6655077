//! Towers of Kummer extensions `F(t) = E_0 ⊂ E_1 ⊂ ...` with
//! `E_{j+1} = E_j(β_j)`, `β_j^{q_j} = W_j`.
//!
//! Elements are kept in the monomial basis `∏ β_j^{e_j}`, `0 <= e_j < q_j`,
//! with coefficients in `F(t)`.

mod element;
pub mod place;
mod power;
mod residue;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

pub use element::TowerElement;
pub use place::{LevelRecord, TowerPlace};
pub use power::base_qth_root;

use crate::arith::field::is_prime;
use crate::arith::ConstField;
use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;

/// One adjunction `β^q = w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KummerStep {
    pub q: u64,
    pub w: TowerElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tower {
    field: ConstField,
    steps: Vec<Arc<KummerStep>>,
}

impl Tower {
    /// The rational function field `F(t)`.
    pub fn base(field: &ConstField) -> Tower {
        Tower { field: field.clone(), steps: Vec::new() }
    }

    pub fn field(&self) -> &ConstField {
        &self.field
    }

    pub fn steps(&self) -> impl Iterator<Item = &KummerStep> {
        self.steps.iter().map(|s| s.as_ref())
    }

    pub fn step(&self, j: usize) -> &KummerStep {
        &self.steps[j]
    }

    /// Number of adjunctions.
    pub fn level(&self) -> usize {
        self.steps.len()
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.steps.iter().map(|s| s.q).collect()
    }

    /// `[E_n : F(t)]`.
    pub fn degree(&self) -> u64 {
        self.steps.iter().map(|s| s.q).product()
    }

    /// The sub-tower `E_level`.
    pub fn truncate(&self, level: usize) -> Tower {
        Tower { field: self.field.clone(), steps: self.steps[..level].to_vec() }
    }

    /// All exponent vectors of the monomial basis, trailing zeros trimmed.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = vec![Vec::new()];
        for (j, s) in self.steps.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * s.q as usize);
            for e in &out {
                for k in 0..s.q as u32 {
                    let mut v = e.clone();
                    if k > 0 {
                        v.resize(j, 0);
                        v.push(k);
                    }
                    next.push(v);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Whether `x` is written in this tower's reduced basis.
    pub fn contains(&self, x: &TowerElement) -> bool {
        x.terms().iter().all(|(e, c)| {
            c.field() == &self.field
                && e.len() <= self.steps.len()
                && e.iter().zip(&self.steps).all(|(k, s)| (*k as u64) < s.q)
        })
    }

    /// The generator `β_j`.
    pub fn generator(&self, j: usize) -> TowerElement {
        let mut e = vec![0; j + 1];
        e[j] = 1;
        TowerElement::monomial(RatFunc::one(&self.field), e)
    }

    pub fn from_ratfunc(&self, x: RatFunc) -> TowerElement {
        TowerElement::from_ratfunc(x)
    }

    pub fn one(&self) -> TowerElement {
        TowerElement::from_ratfunc(RatFunc::one(&self.field))
    }

    pub fn zero(&self) -> TowerElement {
        TowerElement::zero()
    }

    /// Adds `coef * ∏ β^exps` to `acc`, reducing `β_j^{q_j} -> W_j`
    /// from the highest index down.
    fn add_monomial(&self, acc: &mut TowerElement, coef: RatFunc, mut exps: Vec<u32>) {
        if coef.is_zero() {
            return;
        }
        let over = (0..exps.len()).rev().find(|&j| exps[j] as u64 >= self.steps[j].q);
        match over {
            None => acc.add_term(exps, coef),
            Some(j) => {
                exps[j] -= self.steps[j].q as u32;
                for (ew, cw) in self.steps[j].w.terms() {
                    let mut e2 = exps.clone();
                    for (i, k) in ew.iter().enumerate() {
                        e2[i] += k;
                    }
                    self.add_monomial(acc, &coef * cw, e2);
                }
            }
        }
    }

    pub fn mul(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        let mut acc = TowerElement::zero();
        for (ea, ca) in a.terms() {
            for (eb, cb) in b.terms() {
                let n = ea.len().max(eb.len());
                let mut e = vec![0u32; n];
                for (i, k) in ea.iter().enumerate() {
                    e[i] += k;
                }
                for (i, k) in eb.iter().enumerate() {
                    e[i] += k;
                }
                self.add_monomial(&mut acc, ca * cb, e);
            }
        }
        acc
    }

    pub fn pow(&self, x: &TowerElement, mut e: u64) -> TowerElement {
        let mut base = x.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        r
    }

    /// Multiplicative inverse, by extended Euclid in `E_j[X] / (X^q - W_j)`
    /// from the top generator down.
    pub fn inv(&self, x: &TowerElement) -> Result<TowerElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let y = self.inv_rec(x)?;
        if !self.mul(x, &y).is_one() {
            return Err(Error::Internal("tower inversion check failed".into()));
        }
        Ok(y)
    }

    fn inv_rec(&self, x: &TowerElement) -> Result<TowerElement> {
        if let Some(c) = x.as_ratfunc() {
            return Ok(TowerElement::from_ratfunc(c.inv()?));
        }
        if let Some((_, e)) = x.as_monomial() {
            // x * ∏ β_j^{q_j - e_j} lies in a lower level.
            let comp: Vec<u32> = e
                .iter()
                .enumerate()
                .map(|(j, k)| if *k > 0 { self.steps[j].q as u32 - k } else { 0 })
                .collect();
            let m = TowerElement::monomial(RatFunc::one(&self.field), comp);
            let prod = self.mul(x, &m);
            return Ok(self.mul(&m, &self.inv_rec(&prod)?));
        }
        let j = x.level() - 1;
        let q = self.steps[j].q as usize;
        let mut modulus: Vec<TowerElement> = vec![TowerElement::zero(); q + 1];
        modulus[0] = self.steps[j].w.neg();
        modulus[q] = self.one();
        let mut r1 = x.split_at(j, q);
        trim_poly(&mut r1);
        let mut r0 = modulus;
        let (mut s0, mut s1): (Vec<TowerElement>, Vec<TowerElement>) = (vec![], vec![self.one()]);
        while r1.len() > 1 {
            let (quo, rem) = self.poly_divrem(&r0, &r1)?;
            let s2 = poly_sub(&s0, &self.poly_mul(&quo, &s1));
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, s2);
        }
        if r1.is_empty() {
            return Err(Error::Internal(format!(
                "radicand of step {j} is reducible: inversion hit a zero divisor"
            )));
        }
        let c = self.inv_rec(&r1[0])?;
        let beta = self.generator(j);
        let mut y = TowerElement::zero();
        let mut bk = self.one();
        for sk in &s1 {
            y = y.add(&self.mul(&self.mul(sk, &c), &bk));
            bk = self.mul(&bk, &beta);
        }
        Ok(y)
    }

    fn poly_mul(&self, a: &[TowerElement], b: &[TowerElement]) -> Vec<TowerElement> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![TowerElement::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (k, y) in b.iter().enumerate() {
                out[i + k] = out[i + k].add(&self.mul(x, y));
            }
        }
        trim_poly(&mut out);
        out
    }

    fn poly_divrem(
        &self,
        a: &[TowerElement],
        d: &[TowerElement],
    ) -> Result<(Vec<TowerElement>, Vec<TowerElement>)> {
        let lc_inv = self.inv_rec(d.last().expect("nonzero divisor"))?;
        let mut r = a.to_vec();
        trim_poly(&mut r);
        if r.len() < d.len() {
            return Ok((Vec::new(), r));
        }
        let mut quo = vec![TowerElement::zero(); r.len() - d.len() + 1];
        while r.len() >= d.len() {
            let shift = r.len() - d.len();
            let c = self.mul(r.last().unwrap(), &lc_inv);
            for (i, di) in d.iter().enumerate() {
                r[shift + i] = r[shift + i].sub(&self.mul(&c, di));
            }
            quo[shift] = c;
            r.pop();
            trim_poly(&mut r);
        }
        Ok((quo, r))
    }

    pub fn div(&self, a: &TowerElement, b: &TowerElement) -> Result<TowerElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `[E(y) : E]` for `y^q = w`: 1 when `w` is already a `q`-th power.
    pub fn qth_root_degree(&self, q: u64, w: &TowerElement) -> Result<(u64, Option<TowerElement>)> {
        self.check_radicand(q, w)?;
        match self.is_qth_power(w, q)? {
            Some(y) => Ok((1, Some(y))),
            None => Ok((q, None)),
        }
    }

    fn check_radicand(&self, q: u64, w: &TowerElement) -> Result<()> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if q == self.field.characteristic() {
            return Err(Error::Inseparable { q });
        }
        if w.is_zero() {
            return Err(Error::Precondition("radicand is zero".into()));
        }
        if !self.contains(w) {
            return Err(Error::Precondition("radicand is not an element of the tower".into()));
        }
        Ok(())
    }

    /// Rebuilds a tower from stored steps. Each radicand is checked to be a
    /// nonzero element of the tower below it; whether it is a `q`-th power
    /// there is not re-examined.
    pub fn from_steps(field: &ConstField, steps: Vec<KummerStep>) -> Result<Tower> {
        let mut t = Tower::base(field);
        for s in steps {
            t.check_radicand(s.q, &s.w)?;
            t.steps.push(Arc::new(s));
        }
        Ok(t)
    }

    /// `E(β)` with `β^q = w`; `w` must not be a `q`-th power.
    pub fn adjoin(&self, q: u64, w: &TowerElement) -> Result<Tower> {
        self.check_radicand(q, w)?;
        if self.is_qth_power(w, q)?.is_some() {
            return Err(Error::AlreadyPower { q });
        }
        let mut steps = self.steps.clone();
        steps.push(Arc::new(KummerStep { q, w: w.clone() }));
        let t = Tower { field: self.field.clone(), steps };
        if t.basis().len() as u64 != t.degree() {
            return Err(Error::Internal("monomial basis size differs from the degree".into()));
        }
        Ok(t)
    }
}

fn trim_poly(p: &mut Vec<TowerElement>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_sub(a: &[TowerElement], b: &[TowerElement]) -> Vec<TowerElement> {
    let n = a.len().max(b.len());
    let mut out: Vec<TowerElement> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x.sub(&y)
        })
        .collect();
    trim_poly(&mut out);
    out
}

#[cfg(test)]
mod tests;
