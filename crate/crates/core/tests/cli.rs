use std::io::Write;
use std::process::{Command, Output, Stdio};

fn hecke(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hecke-ext"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn preset_json(name: &str) -> serde_json::Value {
    serde_json::from_str(&stdout(&hecke(&["presets", "show", name, "--json"], None))).unwrap()
}

#[test]
fn validate_round_trip_and_rejections() {
    let json = stdout(&hecke(&["presets", "show", "sl2", "--json"], None));
    assert_eq!(code(&hecke(&["validate", "-"], Some(&json))), 0);

    let mut doc = preset_json("sl2:5");
    doc["zk_orders"] = serde_json::json!([5]);
    let out = hecke(&["validate", "-"], Some(&doc.to_string()));
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not coprime to p"), "{}", stdout(&out));

    let mut doc = preset_json("sl2:5");
    doc["coxeter"] = serde_json::json!([[1, 0], [3, 1]]);
    assert_eq!(code(&hecke(&["validate", "-"], Some(&doc.to_string()))), 1);

    assert_eq!(code(&hecke(&["validate", "-"], Some("{\"name\": \"x\""))), 2);
    assert_eq!(code(&hecke(&["validate", "/nonexistent/datum.json"], None)), 2);
}

#[test]
fn datum_file_and_empty_table() {
    let dir = std::env::temp_dir().join(format!("hecke-ext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("point.json");
    // one reflection, trivial torus: only the trivial and sign characters
    std::fs::write(
        &path,
        r#"{"name": "point", "p": 2, "reflections": ["s"], "coxeter": [[1]], "zk_orders": [],
            "actions": {"s": []}, "subgroups": {"s": []}}"#,
    )
    .unwrap();
    let path = path.to_str().unwrap();
    assert_eq!(code(&hecke(&["validate", path], None)), 0);
    let out = hecke(&["--datum", path, "table", "--supersingular-only"], None);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1, "only the column line: {text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ext_examples() {
    let out = hecke(&["--preset", "sl2:5", "ext", "1/4;", "3/4;", "--oracle"], None);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("dim\t2\n") && stdout(&out).contains("MATCH"));

    let out = hecke(&["--preset", "sl2:5", "ext", "0;s0", "0;s0", "--oracle"], None);
    assert!(stdout(&out).contains("dim\t0\n") && stdout(&out).contains("verdict\tMATCH"));

    let out = hecke(&["--preset", "u21:2", "ext", "1/3,0;s2", "1/3,0;", "--oracle"], None);
    assert!(stdout(&out).contains("dim\t1\n") && stdout(&out).contains("verdict\tMATCH"));

    let out = hecke(&["--preset", "sl2:5", "ext", "0;s0", "0;s1", "--explain"], None);
    assert!(stdout(&out).contains("# provenance\ta_s0\ta_s1"));

    assert_eq!(code(&hecke(&["--preset", "sl2:5", "ext", "1/4;s0", "3/4;"], None)), 1);
    assert_eq!(code(&hecke(&["--preset", "sl2:5", "ext", "1/4", "3/4;"], None)), 2);
}

#[test]
fn strict_mismatch_exit_code() {
    // trivial-type against sign-type on the infinite dihedral group
    let out = hecke(&["--preset", "sl2:5", "ext", "0;", "0;s0,s1", "--oracle", "--strict"], None);
    assert_eq!(code(&out), 4);
    assert!(stdout(&out).contains("verdict\tMISMATCH"));
    assert_eq!(code(&hecke(&["--preset", "sl2:5", "table", "--oracle", "--strict"], None)), 4);
    assert_eq!(code(&hecke(&["--preset", "sl2:5", "table", "--supersingular-only", "--oracle", "--strict"], None)), 0);
}

#[test]
fn unverified_orders_warn_and_strict_uses_oracle() {
    let dir = std::env::temp_dir().join(format!("hecke-ext-b2-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m4.json");
    std::fs::write(
        &path,
        r#"{"name": "m4", "p": 3, "reflections": ["a", "b"], "coxeter": [[1, 4], [4, 1]], "zk_orders": [2],
            "actions": {"a": [[1]], "b": [[1]]}, "subgroups": {"a": [[1]], "b": [[0]]}}"#,
    )
    .unwrap();
    let path = path.to_str().unwrap();
    let out = hecke(&["--datum", path, "ext", "0;a", "0;b", "--strict"], None);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("UNVERIFIED"));
    assert!(stdout(&out).contains("oracle\t"));
    let out = hecke(&["--datum", path, "table", "--strict"], None);
    assert!(stdout(&out).contains("engine=oracle"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn table_examples() {
    let out = hecke(&["--preset", "sl2:5", "table", "--supersingular-only", "--oracle"], None);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# hecke-ext table v1"));
    assert_eq!(lines.next().unwrap(), hecke_ext::cli::TSV_COLUMNS);
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    let mut dims: Vec<&str> = rows.iter().map(|r| r[2]).collect();
    dims.sort();
    assert_eq!(dims, vec!["1", "1", "2", "2", "2"]);
    assert!(rows.iter().any(|r| r[0] == "1/2;" && r[1] == "1/2;" && r[2] == "2"));
    assert!(rows.iter().all(|r| r[8] == "-"));

    let text = stdout(&hecke(&["--preset", "sln:3:2", "table"], None));
    assert!(text.lines().any(|l| l.starts_with("0,0;s1\t0,0;s2,s3\t1\t")));

    let dot = stdout(&hecke(&["--preset", "sl2:5", "table", "--supersingular-only", "--format", "dot"], None));
    assert!(dot.starts_with("digraph ext_quiver {"));

    assert_eq!(code(&hecke(&["--preset", "sl2:5", "--max-characters", "4", "table"], None)), 3);
}

#[test]
fn blocks_examples() {
    let text = stdout(&hecke(&["--preset", "sl2:5", "blocks"], None));
    assert_eq!(text.lines().filter(|l| l.starts_with("block ")).count(), 3);

    let text = stdout(&hecke(&["--preset", "u11:3", "blocks", "--compare-l-packets"], None));
    assert!(text.contains("verdict\tEQUAL\n"));

    let text = stdout(&hecke(&["--preset", "sln:3:2", "blocks", "--compare-l-packets"], None));
    assert!(text.contains("verdict\tNOT EQUAL\n"));
    let witness = text.lines().find(|l| l.starts_with("witness\tblock")).unwrap();
    assert!(witness.contains("0,0;s1 ") && witness.contains("0,0;s2,s3"));
}

#[test]
fn presets_listing() {
    let out = hecke(&["presets", "list"], None);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 4);
    for name in ["sl2:7", "sln:4:3", "u11:4", "u21:3"] {
        let json = stdout(&hecke(&["presets", "show", name, "--json"], None));
        assert_eq!(code(&hecke(&["validate", "-"], Some(&json))), 0, "{name}");
    }
    assert_eq!(code(&hecke(&["presets", "show", "gl9"], None)), 2);
}
