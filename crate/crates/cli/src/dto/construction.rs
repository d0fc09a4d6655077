use kummer_core::construction::{
    Adjunction, ConstructionConfig, ConstructionState, Generator, IndexConfig, PairRecord, StepRecord, Witness,
};
use kummer_core::arith::ConstField;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::*;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct IndexDto {
    pub r: RuSpecDto,
    /// `A_u`.
    pub a_set: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stream: Option<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub enum GeneratorDto {
    Element(RatFuncDto),
    Radical { q: u64, radicand: RatFuncDto },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ConstructionConfigDto {
    pub field: FieldDto,
    pub indices: Vec<IndexDto>,
    pub generators: Vec<GeneratorDto>,
    pub max_stages: usize,
    /// Stop once the tower has more levels than this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_levels: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    /// `(u, r1, r2)` checked against the pair condition at every stage.
    #[serde(default)]
    pub witnesses: Vec<(usize, Value, Value)>,
}

impl ConstructionConfigDto {
    pub fn from_config(c: &ConstructionConfig, max_levels: Option<usize>) -> Self {
        let f = &c.field;
        let indices = c
            .indices
            .iter()
            .map(|ix| IndexDto {
                r: RuSpecDto::from_spec(f, &ix.r),
                a_set: ix.a_set.iter().map(|a| fe_to(f, a)).collect(),
                stream: ix.stream.as_ref().map(|s| s.iter().map(|a| fe_to(f, a)).collect()),
            })
            .collect();
        let generators = c
            .generators
            .iter()
            .map(|g| match g {
                Generator::Element(x) => GeneratorDto::Element(RatFuncDto::from_ratfunc(x)),
                Generator::Radical { q, radicand } => {
                    GeneratorDto::Radical { q: *q, radicand: RatFuncDto::from_ratfunc(radicand) }
                }
            })
            .collect();
        ConstructionConfigDto {
            field: FieldDto::from_field(f),
            indices,
            generators,
            max_stages: c.max_stages,
            max_levels,
            seed: c.seed,
            witnesses: c.even_witnesses.iter().map(|(u, a, b)| (*u, fe_to(f, a), fe_to(f, b))).collect(),
        }
    }

    /// The core config; its semantic conditions are checked separately.
    pub fn to_config(&self) -> SResult<ConstructionConfig> {
        let f = self.field.to_field()?;
        let mut indices = Vec::new();
        for ix in &self.indices {
            indices.push(IndexConfig {
                r: ix.r.to_spec(&f)?,
                a_set: fes_from(&f, &ix.a_set)?,
                stream: ix.stream.as_ref().map(|s| fes_from(&f, s)).transpose()?,
            });
        }
        let mut generators = Vec::new();
        for g in &self.generators {
            generators.push(match g {
                GeneratorDto::Element(x) => Generator::Element(x.to_ratfunc(&f)?),
                GeneratorDto::Radical { q, radicand } => {
                    Generator::Radical { q: *q, radicand: radicand.to_ratfunc(&f)? }
                }
            });
        }
        let mut even_witnesses = Vec::new();
        for (u, a, b) in &self.witnesses {
            even_witnesses.push((*u, fe_from(&f, a)?, fe_from(&f, b)?));
        }
        Ok(ConstructionConfig {
            field: f,
            indices,
            generators,
            max_stages: self.max_stages,
            seed: self.seed,
            even_witnesses,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct WitnessDto {
    pub s: TowerElementDto,
    pub place: TowerPlaceDto,
    pub stage: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PairDto {
    pub u: usize,
    pub r: Value,
    pub r1: Value,
    pub r2: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AdjunctionDto {
    pub u: Option<usize>,
    pub q: u64,
    pub radicand: TowerElementDto,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct StepRecordDto {
    pub stage: usize,
    pub case: usize,
    pub generator: usize,
    pub adjunctions: Vec<AdjunctionDto>,
    pub added: Vec<(usize, TowerElementDto)>,
    pub notes: Vec<String>,
}

impl StepRecordDto {
    pub fn from_record(r: &StepRecord) -> Self {
        StepRecordDto {
            stage: r.stage,
            case: r.case,
            generator: r.generator,
            adjunctions: r
                .adjunctions
                .iter()
                .map(|a| AdjunctionDto {
                    u: a.u,
                    q: a.q,
                    radicand: TowerElementDto::from_element(&a.radicand),
                    reason: a.reason.clone(),
                })
                .collect(),
            added: r.added.iter().map(|(u, s)| (*u, TowerElementDto::from_element(s))).collect(),
            notes: r.notes.clone(),
        }
    }

    pub fn to_record(&self, f: &ConstField) -> SResult<StepRecord> {
        let mut adjunctions = Vec::new();
        for a in &self.adjunctions {
            adjunctions.push(Adjunction { u: a.u, q: a.q, radicand: a.radicand.to_element(f)?, reason: a.reason.clone() });
        }
        let mut added = Vec::new();
        for (u, s) in &self.added {
            added.push((*u, s.to_element(f)?));
        }
        Ok(StepRecord {
            stage: self.stage,
            case: self.case,
            generator: self.generator,
            adjunctions,
            added,
            notes: self.notes.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct StateDto {
    pub config: ConstructionConfigDto,
    pub stage: usize,
    pub tower: TowerDto,
    pub s_sets: Vec<Vec<WitnessDto>>,
    pub pairs: Vec<PairDto>,
    pub adjoined: Vec<(usize, usize)>,
    pub log: Vec<StepRecordDto>,
}

impl StateDto {
    pub fn from_state(s: &ConstructionState, max_levels: Option<usize>) -> Self {
        let f = s.field();
        StateDto {
            config: ConstructionConfigDto::from_config(&s.config, max_levels),
            stage: s.stage,
            tower: TowerDto::from_tower(&s.tower),
            s_sets: s
                .s_sets
                .iter()
                .map(|set| {
                    set.iter()
                        .map(|w| WitnessDto {
                            s: TowerElementDto::from_element(&w.s),
                            place: TowerPlaceDto::from_place(&w.place),
                            stage: w.stage,
                        })
                        .collect()
                })
                .collect(),
            pairs: s
                .pairs
                .iter()
                .map(|p| PairDto { u: p.u, r: fe_to(f, &p.r), r1: fe_to(f, &p.r1), r2: fe_to(f, &p.r2) })
                .collect(),
            adjoined: s.adjoined.clone(),
            log: s.log.iter().map(StepRecordDto::from_record).collect(),
        }
    }

    /// Rebuilds the state, replaying every designated place in the tower.
    pub fn to_state(&self) -> SResult<ConstructionState> {
        let config = self.config.to_config()?;
        let f = config.field.clone();
        let tower = self.tower.to_tower()?;
        if tower.field() != &f {
            return bad("the tower and the config are over different fields");
        }
        if self.s_sets.len() != config.indices.len() {
            return bad("one witness set per index is required");
        }
        let mut s_sets = Vec::new();
        for set in &self.s_sets {
            let mut ws = Vec::new();
            for w in set {
                ws.push(Witness { s: w.s.to_element(&f)?, place: w.place.to_place(&tower)?, stage: w.stage });
            }
            s_sets.push(ws);
        }
        let mut pairs = Vec::new();
        for p in &self.pairs {
            if p.u >= config.indices.len() {
                return bad(format!("pair names unknown index {}", p.u));
            }
            pairs.push(PairRecord { u: p.u, r: fe_from(&f, &p.r)?, r1: fe_from(&f, &p.r1)?, r2: fe_from(&f, &p.r2)? });
        }
        let mut log = Vec::new();
        for r in &self.log {
            log.push(r.to_record(&f)?);
        }
        Ok(ConstructionState { config, stage: self.stage, tower, s_sets, pairs, adjoined: self.adjoined.clone(), log })
    }
}
