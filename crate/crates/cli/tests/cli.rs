use std::process::{Command, Output};

fn stc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stc"))
        .args(args)
        .env_remove("STC_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = stc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn enumerate_counts_and_perms() {
    assert_eq!(stdout(&["enumerate", "--n", "6", "--emit", "count"]).trim(), "61");
    assert_eq!(stdout(&["enumerate", "--n", "4", "--emit", "count"]).trim(), "5");
    assert_eq!(stdout(&["enumerate", "--n", "2", "--emit", "perms"]).trim(), "2 1");
    let perms = stdout(&["enumerate", "--n", "5", "--emit", "perms"]);
    assert_eq!(perms.lines().count(), 16);
}

#[test]
fn enumerate_trees_are_json_lines() {
    let out = stdout(&["enumerate", "--n", "4", "--emit", "trees"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    for l in lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["n"], 4);
        assert_eq!(v["parent"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn matrix_csv_m4() {
    let out = stdout(&["matrix", "--two-n", "4", "--method", "brute", "--format", "csv"]);
    assert_eq!(out, "m,1,2,3,sum\n2,0,0,1,1\n3,1,2,0,3\n4,0,1,0,1\nsum,1,3,1,5\n");
}

#[test]
fn matrix_two_is_a_single_one() {
    let out = stdout(&["matrix", "--two-n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["entries"], serde_json::json!([[1]]));
    assert_eq!(v["total"], 1);
}

#[test]
fn matrix_recurrence_leaves_interior_blank() {
    let out = stdout(&["matrix", "--two-n", "8", "--method", "recurrence", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let nulls = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap())
        .filter(|c| c.is_null())
        .count();
    assert_eq!(nulls, 10);
    assert_eq!(v["method"], "recurrence");
    assert_eq!(v["total"], 1385);
    assert_eq!(v["entries"][0], serde_json::json!([0, 0, 5, 15, 21, 15, 5]));

    let text = stdout(&["matrix", "--two-n", "8", "--method", "recurrence"]);
    assert!(text.contains("E8=1385"));
}

#[test]
fn matrix_hybrid_matches_brute() {
    let h = stdout(&["matrix", "--two-n", "8", "--method", "hybrid", "--format", "csv"]);
    let b = stdout(&["matrix", "--two-n", "8", "--method", "brute", "--format", "csv"]);
    assert_eq!(h, b);
}

#[test]
fn entringer_rows() {
    assert_eq!(stdout(&["entringer", "--n-max", "2"]).trim(), "1");
    let out = stdout(&["entringer", "--n-max", "8"]);
    assert_eq!(out.lines().last().unwrap(), "272 272 256 224 178 122 61");
    let seven = stdout(&["entringer", "--n-max", "7"]);
    assert_eq!(seven, "1\n1 1\n2 2 1\n5 5 4 2\n16 16 14 10 5\n61 61 56 46 32 16\n");
    assert_eq!(stdout(&["entringer", "--n-max", "7", "--method", "brute"]), seven);
}

#[test]
fn series_queries() {
    assert_eq!(stdout(&["series", "--target", "sec", "--order", "10", "--query", "10"]).trim(), "50521");
    assert_eq!(stdout(&["series", "--target", "omega", "--order", "4", "--query", "0,0,0"]).trim(), "1");
    assert_eq!(stdout(&["series", "--target", "omega1", "--order", "2", "--query", "1,1"]).trim(), "3");
    let dump = stdout(&["series", "--target", "sec", "--order", "4"]);
    assert!(dump.starts_with("# vars 1 order 4\n"));
}

#[test]
fn verify_default_and_selected() {
    let out = stdout(&["verify"]);
    assert!(out.trim_end().ends_with("overall: PASS"));
    let out = stdout(&["verify", "--two-n-max", "10", "--checks", "tables"]);
    assert!(out.contains("PASS tables"));
    let out = stdout(&["verify", "--two-n-max", "10", "--checks", "gf3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["overall"], "pass");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["matrix", "--two-n", "5"][..],
        &["series", "--target", "sec", "--order", "4", "--query", "6"],
        &["series", "--target", "omega", "--order", "4", "--query", "1,1"],
        &["verify", "--two-n-max", "7"],
        &["verify", "--checks", "r9"],
        &["enumerate", "--n", "0"],
        &["enumerate", "--n", "3", "--emit", "nothing"],
        &["frobnicate"],
    ] {
        assert_eq!(stc(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn threads_flag_and_env() {
    assert_eq!(stdout(&["--threads", "1", "enumerate", "--n", "8"]).trim(), "1385");
    let out = Command::new(env!("CARGO_BIN_EXE_stc"))
        .args(["enumerate", "--n", "8"])
        .env("STC_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1385");
    let bad = Command::new(env!("CARGO_BIN_EXE_stc"))
        .args(["enumerate", "--n", "4"])
        .env("STC_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
