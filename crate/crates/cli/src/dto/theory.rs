use kummer_core::theory::{AxiomEntry, AxiomReport, TheoryConfig};
use kummer_core::TowerElement;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::*;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TheoryConfigDto {
    pub field: FieldDto,
    /// One `R_q` per sampled prime.
    pub r: Vec<RuSpecDto>,
    #[serde(default)]
    pub p: Vec<Vec<Value>>,
    #[serde(default)]
    pub z: Vec<Vec<Value>>,
    pub enumeration: Vec<RatFuncDto>,
    /// Rounds used by `theory` when no depth is given on the command line.
    #[serde(default)]
    pub depth: usize,
    /// Elements of `U(t)` checked against the first axiom item.
    #[serde(default)]
    pub sample: Vec<RatFuncDto>,
}

impl TheoryConfigDto {
    pub fn to_config(&self) -> SResult<TheoryConfig> {
        let f = self.field.to_field()?;
        Ok(TheoryConfig {
            r: self.r.iter().map(|r| r.to_spec(&f)).collect::<SResult<_>>()?,
            p: self.p.iter().map(|p| poly_from(&f, p)).collect::<SResult<_>>()?,
            z: self.z.iter().map(|p| poly_from(&f, p)).collect::<SResult<_>>()?,
            enumeration: self.enumeration.iter().map(|x| x.to_ratfunc(&f)).collect::<SResult<_>>()?,
            field: f,
        })
    }

    pub fn sample(&self) -> SResult<Vec<TowerElement>> {
        let f = self.field.to_field()?;
        self.sample.iter().map(|x| Ok(TowerElement::from_ratfunc(x.to_ratfunc(&f)?))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomEntryDto {
    pub subject: String,
    pub verdict: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AxiomReportDto {
    pub depth: usize,
    pub exponents: Vec<u64>,
    pub item1: Vec<AxiomEntryDto>,
    pub item2: Vec<AxiomEntryDto>,
    pub item3: Vec<AxiomEntryDto>,
}

impl AxiomReportDto {
    pub fn from_report(depth: usize, exponents: Vec<u64>, r: &AxiomReport) -> Self {
        let conv = |v: &[AxiomEntry]| {
            v.iter()
                .map(|e| AxiomEntryDto {
                    subject: e.subject.clone(),
                    verdict: format!("{:?}", e.verdict),
                    detail: e.detail.clone(),
                })
                .collect()
        };
        AxiomReportDto { depth, exponents, item1: conv(&r.item1), item2: conv(&r.item2), item3: conv(&r.item3) }
    }
}
