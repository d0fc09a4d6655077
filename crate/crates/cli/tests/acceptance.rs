//! One line per acceptance criterion; exits non-zero if any fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use kummer_cli::commands::{self, ConfigKind, RunArgs, EXIT_OK};
use kummer_cli::oracle::{run_suite, SuiteReport};
use kummer_core::construction::{controls, AuOutcome, ConstructionState};
use kummer_core::theory::{build_g_prefix, check_axioms, Verdict};
use kummer_core::TowerElement;

type Verdict2 = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

const CONSTRUCTION: [&str; 3] = ["f7.json", "f5.json", "f11_two.json"];

fn suite(name: &str, seed: u64, trials: usize, budget: Option<Duration>) -> Verdict2 {
    let start = Instant::now();
    let rep: SuiteReport = run_suite(name, seed, trials).expect("known suite");
    let took = start.elapsed();
    let line = format!("{} trials, {} failures, {:.1} s", rep.trials, rep.failures, took.as_secs_f64());
    if !rep.passed() || rep.trials < trials {
        return Err(format!("{line}\n{rep}"));
    }
    match budget {
        Some(b) if took > b => Err(format!("{line}, over {} s", b.as_secs())),
        _ => Ok(line),
    }
}

fn load(name: &str) -> kummer_core::construction::ConstructionConfig {
    match commands::load_config(&fixture(name)) {
        Ok(ConfigKind::Construction(d)) => d.to_config().expect("fixture config"),
        _ => panic!("{name} is not a construction config"),
    }
}

/// Runs a fixture with the per-stage checks; the final state on success.
fn checked_run(name: &str) -> Result<ConstructionState, String> {
    let cfg = load(name);
    let witnesses = cfg.even_witnesses.clone();
    let mut s = ConstructionState::new(cfg).map_err(|e| e.to_string())?;
    while !s.is_finished() {
        s = s.step().map_err(|e| format!("{name} stage {}: {e}", s.stage))?;
        let odd = s.check_eq_odd();
        let even = s.check_eq_even(&witnesses);
        let p1 = s.check_part1();
        for (what, rep) in [("eq-odd", odd), ("eq-even", even), ("part 1", p1)] {
            if !rep.passed() {
                return Err(format!("{name} stage {}: {what}: {}", s.stage, rep.failures()));
            }
        }
    }
    Ok(s)
}

fn run_log(name: &str, dir: &Path) -> Result<Vec<u8>, String> {
    let out = commands::run(&RunArgs { config: fixture(name), steps: None, seed: None, out: dir.into(), resume: None });
    if out.code != EXIT_OK {
        return Err(out.text);
    }
    fs::read(dir.join("log.json")).map_err(|e| e.to_string())
}

fn criterion7(states: &mut Vec<ConstructionState>) -> Verdict2 {
    let mut lines = Vec::new();
    for name in CONSTRUCTION {
        let start = Instant::now();
        let s = checked_run(name)?;
        let took = start.elapsed();
        if s.stage < 12 {
            return Err(format!("{name}: only {} stages", s.stage));
        }
        if took > Duration::from_secs(120) {
            return Err(format!("{name}: {:.1} s", took.as_secs_f64()));
        }
        let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
        let (a, b) = (run_log(name, &tmp.path().join("a"))?, run_log(name, &tmp.path().join("b"))?);
        if a != b {
            return Err(format!("{name}: logs differ between runs"));
        }
        lines.push(format!("{name} {} stages {:.1} s", s.stage, took.as_secs_f64()));
        states.push(s);
    }
    Ok(lines.join(", "))
}

fn criterion8(states: &[ConstructionState]) -> Verdict2 {
    let (mut outs, mut members) = (0, 0);
    for s in states {
        for p in &s.pairs {
            if s.config.indices[p.u].contains(&p.r) {
                continue;
            }
            if s.eval_def_au(p.u, &p.r, &[]) != AuOutcome::Out {
                return Err(format!("r = {} (u = {}) is not out", p.r, p.u));
            }
            outs += 1;
        }
        for (u, ix) in s.config.indices.iter().enumerate() {
            for a in &ix.a_set {
                if s.eval_def_au(u, a, &[]) == AuOutcome::Out {
                    return Err(format!("{a} ∈ A_{u} is out"));
                }
                members += 1;
            }
        }
    }
    if outs == 0 {
        return Err("no processed r outside A_u".into());
    }
    Ok(format!("{outs} processed r out, {members} members of A_u never out"))
}

fn criterion9(states: &[ConstructionState]) -> Verdict2 {
    let builders: [(&str, fn(&ConstructionState, usize) -> kummer_core::Result<Vec<controls::Corruption>>); 3] =
        [("eq-odd", controls::eq_odd), ("eq-even", controls::eq_even), ("part 1", controls::part1)];
    let mut lines = Vec::new();
    for (what, build) in builders {
        let mut all = Vec::new();
        for s in states {
            all.extend(build(s, 10).map_err(|e| e.to_string())?);
        }
        all.truncate(10);
        if all.len() < 10 {
            return Err(format!("{what}: only {} scenarios", all.len()));
        }
        let flagged = all.iter().filter(|c| c.flagged()).count();
        if flagged < 10 {
            let missed: Vec<&str> = all.iter().filter(|c| !c.flagged()).map(|c| c.name.as_str()).collect();
            return Err(format!("{what}: {flagged}/10 flagged; missed {missed:?}"));
        }
        lines.push(format!("{what} 10/10"));
    }
    Ok(lines.join(", "))
}

fn criterion10() -> Verdict2 {
    let dto = match commands::load_config(&fixture("theory_f5.json")) {
        Ok(ConfigKind::Theory(d)) => d,
        _ => return Err("theory fixture unreadable".into()),
    };
    let cfg = dto.to_config().map_err(|e| e.to_string())?;
    let sample = dto.sample().map_err(|e| e.to_string())?;
    let mut previous = usize::MAX;
    let mut counts = Vec::new();
    for depth in 0..=2 {
        let g = build_g_prefix(&cfg, depth).map_err(|e| e.to_string())?;
        let rep = check_axioms(&g.tower, &cfg, &sample);
        if rep.item2.iter().chain(&rep.item3).any(|e| e.verdict != Verdict::Holds) {
            return Err(format!("depth {depth}:\n{rep}"));
        }
        let xs: Vec<TowerElement> = g.adjoined.iter().map(|(_, x)| x.clone()).collect();
        let own = check_axioms(&g.tower, &cfg, &xs);
        for (q, x) in &g.adjoined {
            let subject = format!("q = {q}, x = {x}");
            if !own.item1.iter().any(|e| e.subject == subject && e.verdict == Verdict::Holds) {
                return Err(format!("depth {depth}: {subject} lacks its root"));
            }
        }
        let n = rep.item1_failures();
        if n > previous {
            return Err(format!("item (1) failures rose to {n} at depth {depth}"));
        }
        previous = n;
        counts.push(n);
    }
    Ok(format!("item (1) failures by depth {counts:?}"))
}

fn main() {
    let mut results: Vec<(usize, Verdict2)> = Vec::new();
    results.push((1, suite("le_order", 1, 10_000, Some(Duration::from_secs(30)))));
    results.push((2, suite("le_notq", 2, 10_000, None)));
    results.push((3, suite("ramification", 3, 1_000, None)));
    results.push((4, suite("ef_sum", 4, 24, Some(Duration::from_secs(60)))));
    results.push((5, suite("compositum", 5, 1_000, None)));
    results.push((6, suite("canfind", 6, 100, None)));
    let mut states = Vec::new();
    results.push((7, criterion7(&mut states)));
    results.push((8, criterion8(&states)));
    results.push((9, criterion9(&states)));
    results.push((10, criterion10()));
    let mut failed = Vec::new();
    for (n, r) in &results {
        match r {
            Ok(m) => println!("criterion {n}: PASS ({m})"),
            Err(m) => {
                println!("criterion {n}: FAIL ({m})");
                failed.push(*n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
