//! JSON forms of the core types.
//!
//! Field elements are plain JSON: an integer over `F_p`, an integer or a
//! `"num/den"` string over `Q`, a coefficient array over `F_{p^d}`. A
//! polynomial is its coefficient array, constant term first. Element values
//! always need the field from the enclosing document to be read back.

mod construction;
mod theory;

pub use construction::*;
pub use theory::*;

use std::fmt;

use kummer_core::arith::{ConstField, Fe, Poly};
use kummer_core::ratfunc::RatFunc;
use kummer_core::tower::place::replay;
use kummer_core::tower::KummerStep;
use kummer_core::{Divisor, Place, RuSpec, Tower, TowerElement, TowerPlace};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// A document that parsed as JSON but does not describe a valid object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError(pub String);

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SchemaError {}

impl From<kummer_core::Error> for SchemaError {
    fn from(e: kummer_core::Error) -> Self {
        SchemaError(e.to_string())
    }
}

pub type SResult<T> = Result<T, SchemaError>;

fn bad<T>(msg: impl Into<String>) -> SResult<T> {
    Err(SchemaError(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDto {
    Extension { p: u64, modulus: Vec<u64> },
    Prime { p: u64 },
    Rational { rational: bool },
}

impl FieldDto {
    pub fn from_field(f: &ConstField) -> Self {
        match f {
            ConstField::Prime(p) => FieldDto::Prime { p: *p },
            ConstField::Ext(e) => FieldDto::Extension { p: f.characteristic(), modulus: e.modulus().to_vec() },
            ConstField::Rational => FieldDto::Rational { rational: true },
        }
    }

    pub fn to_field(&self) -> SResult<ConstField> {
        Ok(match self {
            FieldDto::Prime { p } => ConstField::prime(*p)?,
            FieldDto::Extension { p, modulus } => ConstField::with_modulus(*p, modulus.clone())?,
            FieldDto::Rational { rational: true } => ConstField::Rational,
            FieldDto::Rational { rational: false } => return bad("\"rational\" must be true"),
        })
    }
}

pub fn fe_to(f: &ConstField, a: &Fe) -> Value {
    match a {
        Fe::P(v) => Value::from(*v),
        Fe::E(_) => Value::from(f.coords(a)),
        Fe::Q(r) => match (r.is_integer(), r.numer().to_i64()) {
            (true, Some(n)) => Value::from(n),
            _ => Value::from(format!("{}/{}", r.numer(), r.denom())),
        },
    }
}

pub fn fe_from(f: &ConstField, v: &Value) -> SResult<Fe> {
    match (f, v) {
        (ConstField::Prime(_), Value::Number(n)) => match n.as_i64() {
            Some(i) => Ok(f.from_i64(i)),
            None => bad(format!("{n} is not an integer")),
        },
        (ConstField::Ext(_), Value::Array(cs)) => {
            let coords: Option<Vec<u64>> = cs.iter().map(|c| c.as_u64()).collect();
            match coords {
                Some(c) => Ok(f.from_coords(&c)?),
                None => bad(format!("{v} is not a coefficient array")),
            }
        }
        (ConstField::Rational, Value::Number(n)) => match n.as_i64() {
            Some(i) => Ok(f.from_i64(i)),
            None => bad(format!("{n} is not an integer")),
        },
        (ConstField::Rational, Value::String(s)) => {
            let (a, b) = s.split_once('/').unwrap_or((s, "1"));
            match (a.trim().parse::<i64>(), b.trim().parse::<i64>()) {
                (Ok(a), Ok(b)) => Ok(f.rational(a, b)?),
                _ => bad(format!("\"{s}\" is not a fraction")),
            }
        }
        _ => bad(format!("{v} is not an element of {f}")),
    }
}

pub fn fes_from(f: &ConstField, v: &[Value]) -> SResult<Vec<Fe>> {
    v.iter().map(|x| fe_from(f, x)).collect()
}

pub fn poly_to(p: &Poly) -> Vec<Value> {
    p.coeffs().iter().map(|c| fe_to(p.field(), c)).collect()
}

pub fn poly_from(f: &ConstField, v: &[Value]) -> SResult<Poly> {
    Ok(Poly::new(f.clone(), fes_from(f, v)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatFuncDto {
    pub num: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Vec<Value>>,
}

impl RatFuncDto {
    pub fn from_ratfunc(x: &RatFunc) -> Self {
        let den = (!x.den().is_one()).then(|| poly_to(x.den()));
        RatFuncDto { num: poly_to(x.num()), den }
    }

    pub fn to_ratfunc(&self, f: &ConstField) -> SResult<RatFunc> {
        let num = poly_from(f, &self.num)?;
        match &self.den {
            None => Ok(RatFunc::from_poly(num)),
            Some(d) => Ok(RatFunc::new(num, poly_from(f, d)?)?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinite: Option<bool>,
}

impl PlaceDto {
    pub fn from_place(p: &Place) -> Self {
        match p {
            Place::Finite(pi) => PlaceDto { pi: Some(poly_to(pi)), infinite: None },
            Place::Infinite => PlaceDto { pi: None, infinite: Some(true) },
        }
    }

    pub fn to_place(&self, f: &ConstField) -> SResult<Place> {
        match (&self.pi, self.infinite) {
            (Some(pi), None | Some(false)) => Ok(Place::finite(poly_from(f, pi)?)?),
            (None, Some(true)) => Ok(Place::Infinite),
            _ => bad("a place needs exactly one of \"pi\" and \"infinite\": true"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorDto {
    pub terms: Vec<(PlaceDto, i64)>,
}

impl DivisorDto {
    pub fn from_divisor(d: &Divisor) -> Self {
        DivisorDto { terms: d.terms().iter().map(|(p, k)| (PlaceDto::from_place(p), *k)).collect() }
    }

    pub fn to_divisor(&self, f: &ConstField) -> SResult<Divisor> {
        let terms: SResult<Vec<(Place, i64)>> =
            self.terms.iter().map(|(p, k)| Ok((p.to_place(f)?, *k))).collect();
        Ok(Divisor::from_terms(terms?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuSpecDto {
    pub q: u64,
    pub zeros: Vec<(Value, u64)>,
    #[serde(default)]
    pub poles: Vec<(Value, u64)>,
    /// The first zero; written for readers, checked when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Value>,
}

impl RuSpecDto {
    pub fn from_spec(f: &ConstField, r: &RuSpec) -> Self {
        let conv = |v: &[(Fe, u64)]| v.iter().map(|(c, m)| (fe_to(f, c), *m)).collect();
        RuSpecDto {
            q: r.q,
            zeros: conv(&r.zeros),
            poles: conv(&r.poles),
            a: r.zeros.first().map(|(c, _)| fe_to(f, c)),
        }
    }

    /// Parses without checking the conditions on `R`.
    pub fn to_spec(&self, f: &ConstField) -> SResult<RuSpec> {
        let conv = |v: &[(Value, u64)]| -> SResult<Vec<(Fe, u64)>> {
            v.iter().map(|(c, m)| Ok((fe_from(f, c)?, *m))).collect()
        };
        let r = RuSpec::new(self.q, conv(&self.zeros)?, conv(&self.poles)?);
        if let Some(a) = &self.a {
            if r.zeros.first().map(|z| &z.0) != Some(&fe_from(f, a)?) {
                return bad("\"a\" must equal the first zero");
            }
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDto {
    pub exps: Vec<u32>,
    pub c: RatFuncDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerElementDto {
    pub terms: Vec<TermDto>,
}

impl TowerElementDto {
    pub fn from_element(x: &TowerElement) -> Self {
        let terms = x
            .terms()
            .iter()
            .map(|(e, c)| TermDto { exps: e.clone(), c: RatFuncDto::from_ratfunc(c) })
            .collect();
        TowerElementDto { terms }
    }

    pub fn to_element(&self, f: &ConstField) -> SResult<TowerElement> {
        let mut x = TowerElement::zero();
        for t in &self.terms {
            x.add_term(t.exps.clone(), t.c.to_ratfunc(f)?);
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDto {
    pub q: u64,
    pub w: TowerElementDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDto {
    pub field: FieldDto,
    pub steps: Vec<StepDto>,
}

impl TowerDto {
    pub fn from_tower(t: &Tower) -> Self {
        TowerDto {
            field: FieldDto::from_field(t.field()),
            steps: t.steps().map(|s| StepDto { q: s.q, w: TowerElementDto::from_element(&s.w) }).collect(),
        }
    }

    pub fn to_tower(&self) -> SResult<Tower> {
        let f = self.field.to_field()?;
        let steps: SResult<Vec<KummerStep>> =
            self.steps.iter().map(|s| Ok(KummerStep { q: s.q, w: s.w.to_element(&f)? })).collect();
        Ok(Tower::from_steps(&f, steps?)?)
    }
}

/// A chain: its base place and the index of the chosen place at each level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerPlaceDto {
    pub base: PlaceDto,
    pub children: Vec<usize>,
}

impl TowerPlaceDto {
    pub fn from_place(p: &TowerPlace) -> Self {
        TowerPlaceDto { base: PlaceDto::from_place(p.base()), children: p.child_indices() }
    }

    pub fn to_place(&self, t: &Tower) -> SResult<TowerPlace> {
        let base = self.base.to_place(t.field())?;
        Ok(replay(t, &base, &self.children)?)
    }
}
