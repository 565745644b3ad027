use std::process::{Command, Output};

use serde_json::Value;

fn strata(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_strata"));
    cmd.args(args).env_remove("STRATA_VERIFY_DEPTH");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str], env: &[(&str, &str)]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = strata(&all, env);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn verdicts(v: &Value) -> Vec<String> {
    ["s", "ns", "s0", "s_t", "ns_t", "s0_t"]
        .iter()
        .map(|k| v["results"]["verdicts"][k].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "Jp(7)"], &[]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(
        verdicts(&v),
        ["Infinite", "Infinite", "Zero", "Infinite", "Infinite", "Infinite"]
    );
    let v = json(&["classify", "C(2,1)^aleph0"], &[]);
    assert!(verdicts(&v).iter().all(|x| x == "Infinite"));
    let v = json(&["classify", "T[3:2,5:1]"], &[]);
    assert!(verdicts(&v).iter().all(|x| x == "Zero"));
    let trace = v["results"]["trace"].as_array().unwrap();
    assert!(trace
        .iter()
        .all(|t| t["rule"].is_string() && t["anchor"].is_string()));
}

#[test]
fn classify_text_trace() {
    let o = strata(&["classify", "Z + Prufer(3)"], &[]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.contains("verdicts:   ∞  0  ∞  | ∞   0    ∞"),
        "{}",
        text
    );
    assert!(text
        .lines()
        .any(|l| l.starts_with("  [R-prop] ") && l.ends_with("⇒ ns = 0")));
    assert!(text.contains("(witness prufer-null-3)"));
}

#[test]
fn json_round_trips() {
    let o = strata(&["classify", "Z + Bp(3) + Pierce(5)", "--json"], &[]);
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, text);
    assert_eq!(serde_json::from_str::<Value>(&again).unwrap(), v);
}

#[test]
fn parse_errors_report_positions() {
    let o = strata(&["classify", "Z + C(4,1)"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("position 6"), "{}", err);
    assert!(err.contains("not prime"));
}

#[test]
fn tables_have_no_diffs() {
    let o = strata(&["tables"], &[]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("diffs: none"));
    let v = json(&["tables", "--prime", "5"], &[]);
    assert_eq!(v["results"]["diffs"].as_array().unwrap().len(), 0);
    assert_eq!(v["results"]["plain"].as_array().unwrap().len(), 8);
    assert_eq!(
        v["results"]["hereditary"][0]["got"]
            .as_array()
            .unwrap()
            .len(),
        6
    );
    assert_eq!(
        strata(&["tables", "--prime", "4"], &[]).status.code(),
        Some(2)
    );
}

#[test]
fn depth_precedence() {
    let depth = |args: &[&str], env: &[(&str, &str)]| {
        let mut all = vec!["witness", "verify", "prufer-null-2"];
        all.extend_from_slice(args);
        json(&all, env)["results"]["depth"].as_u64().unwrap()
    };
    assert_eq!(depth(&[], &[]), 100);
    assert_eq!(depth(&[], &[("STRATA_VERIFY_DEPTH", "7")]), 7);
    assert_eq!(depth(&["--depth", "9"], &[("STRATA_VERIFY_DEPTH", "7")]), 9);
}

#[test]
fn witness_commands() {
    let o = strata(
        &["witness", "verify", "prufer-null-2", "--depth", "100"],
        &[],
    );
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("prufer-null-2: pass at depth 100"));
    let v = json(&["witness", "list"], &[]);
    assert!(v["results"].as_array().unwrap().len() >= 10);
    assert_eq!(
        strata(&["witness", "verify", "nope"], &[]).status.code(),
        Some(2)
    );
}

#[test]
fn endo_examples() {
    let v = json(&["endo", "Z^2", "1,1;0,1", "--witness-depth", "30"], &[]);
    assert_eq!(v["results"]["ns"], "Infinite");
    assert_eq!(v["results"]["witness"]["verification"]["passed"], true);
    assert_eq!(v["results"]["witness"]["members"][1], "(-1, 1)");
    let v = json(&["endo", "Z^2", "0,-1;1,0"], &[]);
    assert_eq!(v["results"]["s"], "Zero");
    assert_eq!(v["results"]["order_on_core"], "4");
    let o = strata(&["endo", "[4] + Z", "0,0;1,0"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 0"));
}

#[test]
fn oracle_confirms_small_groups() {
    let v = json(&["oracle", "--max-order", "16"], &[]);
    assert_eq!(v["results"]["mismatches"].as_array().unwrap().len(), 0);
    assert_eq!(v["results"]["groups_visited"], 25);
}

#[test]
fn deterministic_output() {
    for args in [
        &["classify", "Q + C(2,1)^3 + Endorigid(aleph0,pw0)", "--json"][..],
        &["tables", "--json"][..],
        &["oracle", "--max-order", "8", "--json"][..],
    ] {
        assert_eq!(stdout(&strata(args, &[])), stdout(&strata(args, &[])));
    }
}
