use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kummer_cli::dto::{ConstructionConfigDto, StateDto};
use kummer_core::construction::ConstructionState;
use serde_json::{json, Value};
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn kummer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let p = dir.path().join(name);
    fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_owned()
}

fn f7_json() -> Value {
    serde_json::from_str(&fs::read_to_string(fixture("f7.json")).unwrap()).unwrap()
}

#[test]
fn validate_reports_exit_codes() {
    for f in ["f7.json", "f5.json", "f11_two.json", "theory_f5.json"] {
        let o = kummer(&["validate", fixture(f).to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{f}: {}", stderr(&o));
    }
    let dir = TempDir::new().unwrap();
    let mut v = f7_json();
    v["indices"][0]["r"]["q"] = json!(7);
    let o = kummer(&["validate", &write(&dir, "q7.json", &v)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("violated:") && stderr(&o).contains("characteristic"), "{}", stderr(&o));

    let mut v = f7_json();
    v["extra"] = json!(1);
    assert_eq!(code(&kummer(&["validate", &write(&dir, "extra.json", &v)])), 2);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&kummer(&["validate", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&kummer(&["validate", "/nonexistent/x.json"])), 2);
}

#[test]
fn run_writes_state_and_log_and_resumes() {
    let dir = TempDir::new().unwrap();
    let cfg = fixture("f7.json");
    let cfg = cfg.to_str().unwrap();
    let out = |n: &str| dir.path().join(n).to_str().unwrap().to_owned();

    let o = kummer(&["run", cfg, "--steps", "8", "--out", &out("full")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let state: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("full/state.json")).unwrap()).unwrap();
    assert_eq!(state["stage"], json!(8));
    let log: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("full/log.json")).unwrap()).unwrap();
    assert_eq!(log.as_array().unwrap().len(), 8);

    let o = kummer(&["run", cfg, "--steps", "0", "--out", &out("zero")]);
    assert_eq!(code(&o), 0);
    let state: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("zero/state.json")).unwrap()).unwrap();
    assert_eq!(state["stage"], json!(0));

    // Four stages, then four more from the saved state, match eight at once.
    assert_eq!(code(&kummer(&["run", cfg, "--steps", "4", "--out", &out("half")])), 0);
    let half = out("half") + "/state.json";
    let o = kummer(&["run", cfg, "--steps", "4", "--resume", &half, "--out", &out("rest")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(
        fs::read(dir.path().join("full/state.json")).unwrap(),
        fs::read(dir.path().join("rest/state.json")).unwrap()
    );

    let mut broken: Value = serde_json::from_str(&fs::read_to_string(&half).unwrap()).unwrap();
    broken["tower"] = json!("oops");
    let b = write(&dir, "broken.json", &broken);
    assert_eq!(code(&kummer(&["run", cfg, "--resume", &b, "--out", &out("x")])), 2);
}

#[test]
fn check_formulas_on_saved_states() {
    let dir = TempDir::new().unwrap();
    let cfg = fixture("f7.json");
    let all = "eq-odd,eq-even,def-f,def-au,properties";
    let pairs = fixture("pairs_f7.json");
    let pairs = pairs.to_str().unwrap();
    for steps in ["0", "12"] {
        let o = dir.path().join(steps);
        assert_eq!(code(&kummer(&["run", cfg.to_str().unwrap(), "--steps", steps, "--out", o.to_str().unwrap()])), 0);
        let state = o.join("state.json");
        let c = kummer(&["check", state.to_str().unwrap(), "--formulas", all, "--witnesses", pairs]);
        assert_eq!(code(&c), 0, "stage {steps}: {}", stderr(&c));
    }
    let state = dir.path().join("12/state.json");
    let state = state.to_str().unwrap();
    assert_eq!(code(&kummer(&["check", state, "--formulas", "def-au"])), 2);
    assert_eq!(code(&kummer(&["check", state, "--formulas", "nonsense"])), 2);
}

#[test]
fn check_flags_a_corrupted_state() {
    let dir = TempDir::new().unwrap();
    let o = dir.path().join("run");
    assert_eq!(code(&kummer(&["run", fixture("f7.json").to_str().unwrap(), "--out", o.to_str().unwrap()])), 0);
    let mut state: Value = serde_json::from_str(&fs::read_to_string(o.join("state.json")).unwrap()).unwrap();
    // t^3 in S_1: R(t^3) = t^3 is a cube.
    let member = state["sSets"][0][0].clone();
    let mut cube = member.clone();
    cube["s"] = json!({"terms": [{"exps": [], "c": {"num": [0, 0, 0, 1]}}]});
    state["sSets"][0].as_array_mut().unwrap().push(cube);
    let p = write(&dir, "corrupt.json", &state);
    let c = kummer(&["check", &p, "--formulas", "properties"]);
    assert_eq!(code(&c), 3, "{}", String::from_utf8_lossy(&c.stdout));
}

#[test]
fn oracle_and_theory_commands() {
    let o = kummer(&["oracle", "--suite", "le_order", "--trials", "50", "--seed", "9"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("50 trial(s), 0 failure(s)"));
    assert_eq!(code(&kummer(&["oracle", "--suite", "nope"])), 2);

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = kummer(&["theory", fixture("theory_f5.json").to_str().unwrap(), "--depth", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rep: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(rep["depth"], json!(1));
    assert_eq!(rep["exponents"], json!([3, 7]));
}

#[test]
fn state_survives_a_json_round_trip() {
    let dto: ConstructionConfigDto = serde_json::from_value(f7_json()).unwrap();
    let mut cfg = dto.to_config().unwrap();
    cfg.max_stages = 8;
    let s = ConstructionState::new(cfg).unwrap().run().unwrap();
    let text = serde_json::to_string(&StateDto::from_state(&s, None)).unwrap();
    let back: StateDto = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_state().unwrap(), s);
    let again = ConstructionConfigDto::from_config(&s.config, None);
    assert_eq!(again.to_config().unwrap(), s.config);
}
