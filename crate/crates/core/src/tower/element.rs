//! Sparse tower elements: exponent vector -> `F(t)` coefficient.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ratfunc::RatFunc;

/// `sum c_e ∏ β_j^{e_j}`. Keys carry no trailing zeros and coefficients are
/// never zero, so the representation is canonical for a fixed tower.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TowerElement {
    terms: BTreeMap<Vec<u32>, RatFunc>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl TowerElement {
    pub fn zero() -> Self {
        TowerElement { terms: BTreeMap::new() }
    }

    pub fn from_ratfunc(c: RatFunc) -> Self {
        TowerElement::monomial(c, Vec::new())
    }

    pub fn monomial(c: RatFunc, exps: Vec<u32>) -> Self {
        let mut x = TowerElement::zero();
        x.add_term(exps, c);
        x
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, RatFunc> {
        &self.terms
    }

    /// Adds `c * β^exps` in place.
    pub fn add_term(&mut self, exps: Vec<u32>, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let e = trim(exps);
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_ratfunc().is_some_and(|c| c.is_one())
    }

    /// The coefficient, when no generator occurs.
    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match self.terms.len() {
            1 => self.terms.get(&Vec::new()),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&RatFunc, &Vec<u32>)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, e))
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// One more than the highest generator index occurring; 0 for `F(t)`.
    pub fn level(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    /// Coefficients of `β_j^0, ..., β_j^{q-1}`, each free of `β_j` and above.
    /// Requires `level() <= j + 1`.
    pub fn split_at(&self, j: usize, q: usize) -> Vec<TowerElement> {
        let mut out = vec![TowerElement::zero(); q];
        for (e, c) in &self.terms {
            let k = e.get(j).copied().unwrap_or(0) as usize;
            let mut low = e.clone();
            low.truncate(j);
            out[k].add_term(low, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TowerElement { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn add(&self, o: &TowerElement) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &TowerElement) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut r = TowerElement::zero();
        for (e, x) in &self.terms {
            r.add_term(e.clone(), x * c);
        }
        r
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in &self.terms {
            let mut s = alloc::format!("({c})");
            for (j, k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => s.push_str(&alloc::format!("*b{j}")),
                    _ => s.push_str(&alloc::format!("*b{j}^{k}")),
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}
