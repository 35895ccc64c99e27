use std::path::PathBuf;
use std::process::{Command, Output};

fn qrg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrg")).args(args).output().expect("run qrg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qrg-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn export_starts_with_the_order() {
    let o = qrg(&["group", "--type", "psl2:7", "--export"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("168"));
    assert_eq!(lines.count(), 168);
}

#[test]
fn exported_table_reloads() {
    let path = scratch("dihedral5.txt");
    let o = qrg(&["group", "--type", "dihedral:5", "--export", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let desc = format!("table:{}", path.display());
    let o = qrg(&["group", "--type", &desc]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 10);
    assert_eq!(v["conjugacy_classes"], 4);
}

#[test]
fn singleton_triple_count() {
    let o = qrg(&["triples", "--group", "cyclic:5", "--A", "1", "--B", "2", "--C", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 1);
}

#[test]
fn bounds_suite_reports_every_trial() {
    let o = qrg(&["verify", "--suite", "bounds", "--group", "psl2:7", "--trials", "50", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let reports: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 50);
    assert!(reports.iter().all(|r| r["pass"] == true && r.get("runtime_ms").is_none()));
}

#[test]
fn output_is_reproducible() {
    for args in [
        vec!["verify", "--suite", "spectral", "--group", "psl2:5", "--trials", "3", "--seed", "11"],
        vec!["verify", "--suite", "solver", "--group", "sym:4", "--trials", "4", "--seed", "3"],
        vec!["sweep", "--group", "alt:5", "--trials", "2", "--seed", "5"],
        vec!["chartab", "--group", "sym:4", "--format", "csv"],
    ] {
        let a = qrg(&args);
        let b = qrg(&args);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seeds_change_random_output() {
    let a = qrg(&["spectrum", "--group", "psl2:5", "--density", "0.4", "--seed", "1"]);
    let b = qrg(&["spectrum", "--group", "psl2:5", "--density", "0.4", "--seed", "2"]);
    assert!(a.status.success() && b.status.success());
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn input_errors_exit_with_one_and_a_code() {
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["group", "--type", "psl2:9"], "E_DESCRIPTOR"),
        (vec!["spectrum", "--group", "psl2:13", "--density", "0.5", "--cap-spectral", "100"], "E_CAP"),
        (vec!["triples", "--group", "cyclic:5", "--A", "9", "--B", "1", "--C", "1"], "E_RANGE"),
        (vec!["productfree", "--mode", "exact", "--group", "cyclic:40"], "E_CAP"),
        (vec!["productfree", "--mode", "coset", "--group", "cyclic:5", "--generators", "1"], "E_ARGUMENT"),
        (vec!["frobnicate"], "E_USAGE"),
        (vec!["verify", "--suite", "nonsense"], "E_USAGE"),
    ];
    for (args, code) in cases {
        let o = qrg(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with(&format!("error[{code}]: ")), "{args:?}: {err}");
    }
}

#[test]
fn malformed_json_is_an_input_error() {
    let path = scratch("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let o = qrg(&["solve", "--system", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[E_JSON]"));
}

#[test]
fn overstated_k_is_reported_as_a_violation() {
    let o = qrg(&["spectrum", "--group", "psl2:7", "--density", "0.5", "--k", "5000"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["gap"]["pass"], false);
}

#[test]
fn solve_system_file() {
    let path = scratch("system.json");
    std::fs::write(
        &path,
        r#"{"group":"cyclic:5","m":2,"pattern":"forward-products","sets":{"1":[1],"2":[2],"1,2":[3]}}"#,
    )
    .unwrap();
    let o = qrg(&["solve", "--system", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"]["witness"], serde_json::json!([1, 2]));
    assert_eq!(v["outcome"]["status"], "solved");
}

#[test]
fn custom_word_system_file() {
    let path = scratch("custom.json");
    std::fs::write(
        &path,
        r#"{"group":"sym:3","m":3,"pattern":"custom-words","constraints":[
            {"word":["x1","x2"],"elements":[1,2,3]},
            {"word":["x3","x1"],"elements":[1,2,3,4]},
            {"word":["x2","x3^-1"],"elements":[0,1,2]},
            {"word":["x2","x3^-1","x1^-1"],"elements":[1,2,3,4,5]}]}"#,
    )
    .unwrap();
    let o = qrg(&["solve", "--system", path.to_str().unwrap(), "--seed", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["outcome"]["witness"].is_array());
}

#[test]
fn productfree_modes() {
    let o = qrg(&["productfree", "--mode", "erdos", "--integers", "1,2,3,4,5,6,7,8,9"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["size"].as_u64().unwrap() >= 3);
    assert_eq!(v["verified"], true);

    let o = qrg(&["productfree", "--mode", "exact", "--group", "cyclic:8"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 4);
    assert_eq!(v["optimal"], true);

    let o = qrg(&["productfree", "--mode", "coset", "--group", "cyclic:6", "--generators", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["elements"], serde_json::json!([1, 3, 5]));

    let o = qrg(&["productfree", "--mode", "rep", "--group", "alt:5"]);
    assert!(o.status.success());
}

#[test]
fn quadruples_of_a_character() {
    let path = scratch("character.json");
    // the sign character of ℤ/4: 1, −1, 1, −1
    std::fs::write(&path, r#"{"group":"cyclic:4","re":[1,-1,1,-1],"im":[0,0,0,0]}"#).unwrap();
    let o = qrg(&["quadruples", "--group", "cyclic:4", "--function", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["constant"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn sweep_emits_csv() {
    let o = qrg(&["sweep", "--group", "psl2:5", "--densities", "0.25,0.75", "--trials", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "group,subset_size,lambda2,bound,pass");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.starts_with("psl2:5,") && l.ends_with(",true")));
}

#[test]
fn every_subcommand_has_help() {
    for sub in [
        "group", "spectrum", "chartab", "triples", "quadruples", "verify", "solve", "productfree", "sweep",
    ] {
        let o = qrg(&[sub, "--help"]);
        assert!(o.status.success(), "{sub}");
        let text = stdout(&o);
        assert!(text.contains("--seed") && text.contains("--format"), "{sub}");
    }
}
