//! The subcommands, returning an exit code and the text for standard output
//! so they can be driven in-process.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use kummer_core::construction::{AuOutcome, CheckReport, ConstructionState, FOutcome};
use kummer_core::theory::{build_g_prefix, check_axioms, Verdict};
use kummer_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dto::{
    fe_from, ConstructionConfigDto, SchemaError, StateDto, StepRecordDto, TheoryConfigDto, AxiomReportDto,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SEMANTIC: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

impl Outcome {
    fn new(code: i32, text: impl Into<String>) -> Self {
        Outcome { code, text: text.into() }
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> Outcome {
    Outcome::new(EXIT_IO, format!("error: {}: {e}\n", path.display()))
}

fn read_json(path: &Path) -> Result<Value, Outcome> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| io_error(path, format!("malformed JSON: {e}")))
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, v: Value) -> Result<T, Outcome> {
    serde_json::from_value(v).map_err(|e| io_error(path, format!("schema: {e}")))
}

fn schema(path: &Path) -> impl Fn(SchemaError) -> Outcome + '_ {
    move |e| io_error(path, format!("schema: {e}"))
}

fn write_json<T: Serialize>(path: &Path, v: &T) -> Result<(), Outcome> {
    let mut text = serde_json::to_string_pretty(v).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|e| io_error(path, e))
}

pub enum ConfigKind {
    Construction(ConstructionConfigDto),
    Theory(TheoryConfigDto),
}

/// Reads a construction config (it has `indices`) or a theory config.
pub fn load_config(path: &Path) -> Result<ConfigKind, Outcome> {
    let v = read_json(path)?;
    if v.get("indices").is_some() {
        Ok(ConfigKind::Construction(parse(path, v)?))
    } else if v.get("r").is_some() {
        Ok(ConfigKind::Theory(parse(path, v)?))
    } else {
        Err(io_error(path, "schema: neither a construction config (\"indices\") nor a theory config (\"r\")"))
    }
}

pub fn validate(path: &Path) -> Outcome {
    let kind = match load_config(path) {
        Ok(k) => k,
        Err(o) => return o,
    };
    let violations = match kind {
        ConfigKind::Construction(dto) => match dto.to_config() {
            Ok(c) => match c.validate() {
                Ok(()) => Vec::new(),
                Err(e) => vec![clause(&e)],
            },
            Err(e) => return schema(path)(e),
        },
        ConfigKind::Theory(dto) => match dto.to_config() {
            Ok(c) => c.violations(),
            Err(e) => return schema(path)(e),
        },
    };
    if violations.is_empty() {
        return Outcome::new(EXIT_OK, format!("{}: valid\n", path.display()));
    }
    let mut text = String::new();
    for v in violations {
        let _ = writeln!(text, "violated: {v}");
    }
    Outcome::new(EXIT_SEMANTIC, text)
}

fn clause(e: &Error) -> String {
    match e {
        Error::Invalid(m) | Error::Unsupported(m) => m.clone(),
        other => other.to_string(),
    }
}

pub struct RunArgs {
    pub config: PathBuf,
    pub steps: Option<usize>,
    pub seed: Option<u64>,
    pub out: PathBuf,
    pub resume: Option<PathBuf>,
}

#[derive(Serialize)]
struct Forensic<'a> {
    stage: usize,
    error: String,
    state: &'a StateDto,
}

/// Steps the construction, writing `state.json` and `log.json` to the output
/// directory, or `forensic.json` when a step breaks an invariant.
pub fn run(args: &RunArgs) -> Outcome {
    let dto = match load_config(&args.config) {
        Ok(ConfigKind::Construction(d)) => d,
        Ok(ConfigKind::Theory(_)) => {
            return io_error(&args.config, "schema: `run` needs a construction config");
        }
        Err(o) => return o,
    };
    let mut config = match dto.to_config() {
        Ok(c) => c,
        Err(e) => return schema(&args.config)(e),
    };
    if let Some(s) = args.seed {
        config.seed = s;
    }
    let mut state = match &args.resume {
        Some(p) => {
            let v = match read_json(p) {
                Ok(v) => v,
                Err(o) => return o,
            };
            let sd: StateDto = match parse(p, v) {
                Ok(s) => s,
                Err(o) => return o,
            };
            match sd.to_state() {
                Ok(mut s) => {
                    s.config.seed = config.seed;
                    s
                }
                Err(e) => return schema(p)(e),
            }
        }
        None => match ConstructionState::new(config) {
            Ok(s) => s,
            Err(e) => return Outcome::new(EXIT_SEMANTIC, format!("violated: {}\n", clause(&e))),
        },
    };
    let target = match args.steps {
        Some(n) => state.stage + n,
        None => state.config.max_stages,
    };
    state.config.max_stages = state.config.max_stages.max(target);
    if let Err(e) = fs::create_dir_all(&args.out) {
        return io_error(&args.out, e);
    }
    let mut text = String::new();
    while state.stage < target {
        if dto.max_levels.is_some_and(|m| state.tower.level() > m) {
            let _ = writeln!(text, "stopped: tower has {} levels", state.tower.level());
            break;
        }
        match state.step() {
            Ok(next) => {
                state = next;
                let rec = state.log.last().expect("a step was logged");
                let _ = writeln!(
                    text,
                    "stage {} case {} x_{}: {} adjunction(s), {} witness(es), level {}{}",
                    rec.stage,
                    rec.case,
                    rec.generator,
                    rec.adjunctions.len(),
                    rec.added.len(),
                    state.tower.level(),
                    rec.notes.iter().map(|n| format!("; {n}")).collect::<String>()
                );
            }
            Err(e) => {
                let dump = args.out.join("forensic.json");
                let sd = StateDto::from_state(&state, dto.max_levels);
                let f = Forensic { stage: state.stage, error: e.to_string(), state: &sd };
                if let Err(o) = write_json(&dump, &f) {
                    return o;
                }
                let code = if matches!(e, Error::Internal(_)) { EXIT_INVARIANT } else { EXIT_SEMANTIC };
                let _ = writeln!(text, "stage {} failed: {e}\nforensic dump: {}", state.stage, dump.display());
                return Outcome::new(code, text);
            }
        }
    }
    let sd = StateDto::from_state(&state, dto.max_levels);
    let log: Vec<StepRecordDto> = sd.log.clone();
    if let Err(o) = write_json(&args.out.join("state.json"), &sd) {
        return o;
    }
    if let Err(o) = write_json(&args.out.join("log.json"), &log) {
        return o;
    }
    let _ = writeln!(text, "{} stage(s) done; state written to {}", state.stage, args.out.join("state.json").display());
    Outcome::new(EXIT_OK, text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    EqOdd,
    EqEven,
    DefF,
    DefAu,
    Properties,
}

impl Formula {
    pub const ALL: [Formula; 5] = [Formula::EqOdd, Formula::EqEven, Formula::DefF, Formula::DefAu, Formula::Properties];

    pub fn parse(s: &str) -> Option<Formula> {
        Some(match s {
            "eq-odd" => Formula::EqOdd,
            "eq-even" => Formula::EqEven,
            "def-f" => Formula::DefF,
            "def-au" => Formula::DefAu,
            "properties" => Formula::Properties,
            _ => return None,
        })
    }
}

/// `{"pairs": [[u, r1, r2], ...]}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessFile {
    pairs: Vec<(usize, Value, Value)>,
}

fn section(text: &mut String, title: &str, rep: &CheckReport) -> bool {
    let _ = writeln!(text, "{title}: {} ({} check(s))", if rep.passed() { "pass" } else { "FAIL" }, rep.len());
    let _ = write!(text, "{}", rep.failures());
    rep.passed()
}

pub fn check(state_path: &Path, formulas: &[Formula], witnesses: Option<&Path>) -> Outcome {
    let formulas: Vec<Formula> = if formulas.is_empty() {
        Formula::ALL.iter().copied().filter(|f| *f != Formula::DefAu || witnesses.is_some()).collect()
    } else {
        formulas.to_vec()
    };
    if formulas.contains(&Formula::DefAu) && witnesses.is_none() {
        return Outcome::new(EXIT_IO, "usage: def-au needs --witnesses FILE\n");
    }
    let v = match read_json(state_path) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let sd: StateDto = match parse(state_path, v) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let state = match sd.to_state() {
        Ok(s) => s,
        Err(e) => return schema(state_path)(e),
    };
    let f = state.field().clone();
    let mut pairs = Vec::new();
    if let Some(wp) = witnesses {
        let wf: WitnessFile = match read_json(wp).and_then(|v| parse(wp, v)) {
            Ok(w) => w,
            Err(o) => return o,
        };
        for (u, a, b) in &wf.pairs {
            if *u >= state.s_sets.len() {
                return io_error(wp, format!("schema: unknown index {u}"));
            }
            match (fe_from(&f, a), fe_from(&f, b)) {
                (Ok(a), Ok(b)) => pairs.push((*u, a, b)),
                (Err(e), _) | (_, Err(e)) => return schema(wp)(e),
            }
        }
    }
    let mut text = String::new();
    let mut ok = true;
    for formula in formulas {
        match formula {
            Formula::EqOdd => ok &= section(&mut text, "eq-odd", &state.check_eq_odd()),
            Formula::EqEven => {
                let mut all = state.config.even_witnesses.clone();
                all.extend(pairs.iter().filter(|(u, a, b)| state.config.indices[*u].contains(&f.add(a, b))).cloned());
                ok &= section(&mut text, "eq-even", &state.check_eq_even(&all));
            }
            Formula::DefF => {
                let fragment: Vec<_> = state.s_sets[0].iter().map(|w| w.s.clone()).collect();
                for g in 0..state.config.generators.len() {
                    let Ok(Some(x)) = state.resolve(g) else { continue };
                    let out = state.eval_def_f(&x, &fragment);
                    let shown = match &out {
                        FOutcome::Accepted => "accepted".to_string(),
                        FOutcome::Rejected(b) => format!("rejected, b = {b}"),
                        FOutcome::Undetermined(m) => format!("undetermined: {m}"),
                    };
                    let _ = writeln!(text, "def-f x_{g} = {x}: {shown}");
                }
            }
            Formula::DefAu => {
                for (u, a, b) in &pairs {
                    let r = f.add(a, b);
                    let out = state.eval_def_au(*u, &r, &[(a.clone(), b.clone())]);
                    let inside = state.config.indices[*u].contains(&r);
                    let consistent = !(inside && out == AuOutcome::Out);
                    ok &= consistent;
                    let _ = writeln!(
                        text,
                        "def-au u = {u}, r = {r} = {a} + {b}: {out:?}{}",
                        if consistent { "" } else { " (r ∈ A_u: inconsistent)" }
                    );
                }
            }
            Formula::Properties => {
                let rep = state.properties_report();
                ok &= section(&mut text, "part 1", &rep.part1);
                ok &= section(&mut text, "part 2", &rep.part2);
                ok &= section(&mut text, "part 3", &rep.part3);
                ok &= section(&mut text, "part 4", &rep.part4);
            }
        }
    }
    Outcome::new(if ok { EXIT_OK } else { EXIT_INVARIANT }, text)
}

/// Builds a prefix of the given depth and checks the axioms on the sample
/// together with the enumerated elements.
pub fn theory(path: &Path, depth: Option<usize>, out: Option<&Path>) -> Outcome {
    let dto = match load_config(path) {
        Ok(ConfigKind::Theory(d)) => d,
        Ok(ConfigKind::Construction(_)) => return io_error(path, "schema: `theory` needs a theory config"),
        Err(o) => return o,
    };
    let (cfg, mut sample) = match dto.to_config().and_then(|c| Ok((c, dto.sample()?))) {
        Ok(x) => x,
        Err(e) => return schema(path)(e),
    };
    let depth = depth.unwrap_or(dto.depth);
    let g = match build_g_prefix(&cfg, depth) {
        Ok(g) => g,
        Err(Error::Invalid(m)) => return Outcome::new(EXIT_SEMANTIC, format!("violated: {m}\n")),
        Err(e) => return Outcome::new(EXIT_INVARIANT, format!("error: {e}\n")),
    };
    for x in &cfg.enumeration {
        let x = kummer_core::TowerElement::from_ratfunc(x.clone());
        if !sample.contains(&x) {
            sample.push(x);
        }
    }
    let rep = check_axioms(&g.tower, &cfg, &sample);
    let mut text = format!("depth {depth}: exponents {:?}\n{rep}", g.tower.exponents());
    for n in &g.notes {
        let _ = writeln!(text, "note: {n}");
    }
    if let Some(p) = out {
        let dto = AxiomReportDto::from_report(depth, g.tower.exponents(), &rep);
        if let Err(o) = write_json(p, &dto) {
            return o;
        }
    }
    let fails = rep.item1.iter().chain(&rep.item2).chain(&rep.item3).any(|e| e.verdict == Verdict::Fails);
    Outcome::new(if fails { EXIT_SEMANTIC } else { EXIT_OK }, text)
}
