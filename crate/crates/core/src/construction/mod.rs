//! The staged construction of a tower `E_0 = F(t) ⊂ E_1 ⊂ ...` together with
//! the witness sets `S_{i,u}`.
//!
//! Stage `i = 4n + c` treats the generator `x_n` in one of four ways. Every
//! accepted stage leaves the two invariants in force: each `s ∈ S_u` has a
//! designated place where `ord R_u(s) ≢ 0 mod q_u`, and no two shifts
//! `r_1, r_2` with `r_1 + r_2 ∈ A_u` are both witnessed as bad.

mod checks;
pub mod controls;
mod radicand;
mod steps;
#[cfg(test)]
mod tests;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub use checks::{
    AuOutcome, CheckEntry, CheckReport, FOutcome, PropertiesReport,
};

use crate::arith::field::is_prime;
use crate::arith::{ConstField, Fe};
use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::ruspec::RuSpec;
use crate::tower::{Tower, TowerElement, TowerPlace};

/// An entry of the enumeration `x_0, x_1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// An element of `F(t)`.
    Element(RatFunc),
    /// A root of `X^q - radicand`.
    Radical { q: u64, radicand: RatFunc },
}

/// Data attached to one index `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexConfig {
    pub r: RuSpec,
    /// The finite set `A_u ⊂ F`.
    pub a_set: Vec<Fe>,
    /// Candidates for `r_1` in the order they are tried; `None` means all of
    /// `F` in an order fixed by the seed.
    pub stream: Option<Vec<Fe>>,
}

impl IndexConfig {
    pub fn q(&self) -> u64 {
        self.r.q
    }

    pub fn contains(&self, c: &Fe) -> bool {
        self.a_set.contains(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionConfig {
    pub field: ConstField,
    pub indices: Vec<IndexConfig>,
    /// Cycled to simulate an enumeration in which every element recurs.
    pub generators: Vec<Generator>,
    pub max_stages: usize,
    pub seed: u64,
    /// Extra `(u, r_1, r_2)` checked against the pair condition.
    pub even_witnesses: Vec<(usize, Fe, Fe)>,
}

impl ConstructionConfig {
    pub fn validate(&self) -> Result<()> {
        let f = &self.field;
        if !matches!(f, ConstField::Prime(_)) {
            return Err(Error::Unsupported(format!(
                "the construction runs over prime fields only, not {f}"
            )));
        }
        if self.indices.is_empty() {
            return Err(Error::Invalid("at least one index u is required".into()));
        }
        let mut qs = BTreeSet::new();
        for (u, ix) in self.indices.iter().enumerate() {
            ix.r.validate(f).map_err(|e| Error::Invalid(format!("R_{u}: {e}")))?;
            if !qs.insert(ix.q()) {
                return Err(Error::Invalid(format!("q_{u} = {} repeats an earlier q", ix.q())));
            }
            for c in ix.a_set.iter().chain(ix.stream.iter().flatten()) {
                if !f.contains(c) {
                    return Err(Error::Invalid(format!("A_{u}: {c} is not in {f}")));
                }
            }
        }
        if self.generators.is_empty() {
            return Err(Error::Invalid("the generator list is empty".into()));
        }
        for (n, g) in self.generators.iter().enumerate() {
            let (x, q) = match g {
                Generator::Element(x) => (x, None),
                Generator::Radical { q, radicand } => (radicand, Some(*q)),
            };
            if x.field() != f {
                return Err(Error::Invalid(format!("generator {n} is over another field")));
            }
            if let Some(q) = q {
                if !is_prime(q) || q == f.characteristic() {
                    return Err(Error::Invalid(format!("generator {n}: degree {q} is not a prime ≠ char")));
                }
                if x.is_zero() {
                    return Err(Error::Invalid(format!("generator {n}: zero radicand")));
                }
            }
        }
        for (u, r1, r2) in &self.even_witnesses {
            let ix = self
                .indices
                .get(*u)
                .ok_or_else(|| Error::Invalid(format!("witness names unknown index {u}")))?;
            if f.is_zero(r1) || f.is_zero(r2) || !ix.contains(&f.add(r1, r2)) {
                return Err(Error::Invalid(format!(
                    "witness ({r1}, {r2}) for u = {u} needs r1 r2 ≠ 0 and r1 + r2 ∈ A_u"
                )));
            }
        }
        Ok(())
    }

    /// The candidates for `r_1` at index `u`.
    pub fn stream(&self, u: usize) -> Result<Vec<Fe>> {
        if let Some(s) = &self.indices[u].stream {
            return Ok(s.clone());
        }
        let mut all = self.field.elements(1 << 16)?;
        // Fisher-Yates with a stream derived from the seed and u.
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ ((u as u64 + 1) << 32));
        for i in (1..all.len()).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            all.swap(i, j);
        }
        Ok(all)
    }
}

/// A member of `S_u` with its designated place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub s: TowerElement,
    pub place: TowerPlace,
    /// Stage at which `s` entered `S_u`.
    pub stage: usize,
}

/// A decomposition `r = r_1 + r_2` recorded at a `4n+3` stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRecord {
    pub u: usize,
    pub r: Fe,
    pub r1: Fe,
    pub r2: Fe,
}

/// One adjunction performed by a stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjunction {
    /// The index whose requirement caused it; `None` for stage `4n`.
    pub u: Option<usize>,
    pub q: u64,
    pub radicand: TowerElement,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub stage: usize,
    pub case: usize,
    pub generator: usize,
    pub adjunctions: Vec<Adjunction>,
    /// `(u, s)` added to `S_u`.
    pub added: Vec<(usize, TowerElement)>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionState {
    pub config: ConstructionConfig,
    /// Number of stages performed.
    pub stage: usize,
    pub tower: Tower,
    pub s_sets: Vec<Vec<Witness>>,
    pub pairs: Vec<PairRecord>,
    /// Generators adjoined at a `4n` stage, with the generator index of `β_j`.
    pub adjoined: Vec<(usize, usize)>,
    pub log: Vec<StepRecord>,
}

impl ConstructionState {
    pub fn new(config: ConstructionConfig) -> Result<Self> {
        config.validate()?;
        let m = config.indices.len();
        let tower = Tower::base(&config.field);
        Ok(ConstructionState {
            config,
            stage: 0,
            tower,
            s_sets: (0..m).map(|_| Vec::new()).collect(),
            pairs: Vec::new(),
            adjoined: Vec::new(),
            log: Vec::new(),
        })
    }

    pub fn field(&self) -> &ConstField {
        &self.config.field
    }

    pub fn is_finished(&self) -> bool {
        self.stage >= self.config.max_stages
    }

    /// `q_u`.
    pub fn q(&self, u: usize) -> u64 {
        self.config.indices[u].q()
    }

    pub fn r(&self, u: usize) -> &RuSpec {
        &self.config.indices[u].r
    }

    /// Whether `s` has been placed in `S_u`.
    pub fn in_s(&self, u: usize, s: &TowerElement) -> bool {
        self.s_sets[u].iter().any(|w| &w.s == s)
    }

    /// The next state. Fails without side effects; an invariant failure is
    /// reported as [`Error::Internal`] carrying the failed checks.
    pub fn step(&self) -> Result<ConstructionState> {
        if self.is_finished() {
            return Err(Error::Precondition(format!(
                "stage bound {} reached",
                self.config.max_stages
            )));
        }
        let mut next = self.clone();
        let i = self.stage;
        let (n, case) = (i / 4, i % 4);
        let g = n % self.config.generators.len();
        let mut rec = StepRecord {
            stage: i,
            case,
            generator: g,
            adjunctions: Vec::new(),
            added: Vec::new(),
            notes: Vec::new(),
        };
        let active = (n + 1).min(self.config.indices.len());
        match case {
            0 => next.stage_adjoin_generator(g, &mut rec)?,
            1 => next.stage_norm_witness(g, active, &mut rec)?,
            2 => next.stage_pole(g, active, &mut rec)?,
            _ => next.stage_split(g, active, &mut rec)?,
        }
        next.stage += 1;
        next.log.push(rec);
        let odd = next.check_eq_odd();
        let even = next.check_eq_even(&next.config.even_witnesses);
        if !odd.passed() || !even.passed() {
            return Err(Error::Internal(format!(
                "invariant failure after stage {i}:\n{}{}",
                odd.failures(),
                even.failures()
            )));
        }
        Ok(next)
    }

    /// Steps until the stage bound.
    pub fn run(mut self) -> Result<ConstructionState> {
        while !self.is_finished() {
            self = self.step()?;
        }
        Ok(self)
    }

    /// `x_n` as an element of the current tower, if it lies there.
    pub fn resolve(&self, g: usize) -> Result<Option<TowerElement>> {
        match &self.config.generators[g] {
            Generator::Element(x) => Ok(Some(TowerElement::from_ratfunc(x.clone()))),
            Generator::Radical { q, radicand } => {
                if let Some((j, _)) = self.adjoined.iter().find(|(_, gi)| *gi == g) {
                    return Ok(Some(self.tower.generator(*j)));
                }
                self.tower.is_qth_power(&TowerElement::from_ratfunc(radicand.clone()), *q)
            }
        }
    }
}
