use std::path::Path;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn boolstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boolstab"))
        .args(args)
        .env_remove("BOOLSTAB_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = boolstab(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    boolstab(args).status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn assert_valid(schema_file: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(schema_file);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{schema_file}: {msgs:?}\n{doc:#}");
}

#[test]
fn spectrum_levels() {
    assert_eq!(stdout(&["spectrum", "maj:3", "--levels"]), "0\t0\n1\t3/4\n2\t0\n3\t1/4\n");
    assert_eq!(stdout(&["spectrum", "ltf:0;1", "--levels"]), "0\t0\n1\t1\n");
    assert_eq!(
        stdout(&["spectrum", "g:9", "--levels", "--cumulative", "1", "--float"]),
        "0.6591796875\n"
    );
    assert_eq!(stdout(&["spectrum", "g:9", "--cumulative", "1"]), "675/1024\n");
    assert_eq!(
        stdout(&["spectrum", "maj:3", "--levels", "--format", "csv"]),
        "level,weight\n0,0\n1,3/4\n2,0\n3,1/4\n"
    );
}

#[test]
fn spectrum_coefficients() {
    assert_eq!(
        stdout(&["spectrum", "maj:3"]),
        "{1}\t1/2\n{2}\t1/2\n{3}\t1/2\n{1,2,3}\t-1/2\n"
    );
    let csv = stdout(&["spectrum", "maj:3", "--format", "csv", "--float"]);
    assert_eq!(csv.lines().count(), 9);
    assert!(csv.contains("\n1 2 3,-0.5\n"));
}

#[test]
fn spectrum_json_validates() {
    for args in [
        &["spectrum", "maj:5", "--format", "json"][..],
        &["spectrum", "maj:5", "--format", "json", "--float"],
        &["spectrum", "g:7", "--levels", "--format", "json"],
        &["spectrum", "g:7", "--cumulative", "1", "--format", "json", "--float"],
    ] {
        assert_valid("spectrum.schema.json", &json(args));
    }
    let doc = json(&["spectrum", "g:9", "--cumulative", "1", "--format", "json"]);
    assert_eq!(doc["cumulative"]["value"], "675/1024");
    assert_eq!(doc["levels"].as_array().unwrap().len(), 10);
}

#[test]
fn stab_values() {
    assert_eq!(stdout(&["stab", "maj:3", "--rho", "0.5"]), "0.40625\n");
    assert_eq!(stdout(&["stab", "maj:1", "--rho", "0.3"]), "0.3\n");
    assert_eq!(stdout(&["stab", "maj:3", "--rho", "1/3"]), "7/27\n");
    assert_eq!(stdout(&["stab", "maj:3", "--rho", "0.5", "--float"]), "0.40625\n");
    let grid = stdout(&["stab", "g:5", "--grid", "4"]);
    let rows: Vec<&str> = grid.lines().skip(1).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0], "0.0,0.0,0");
    assert_eq!(rows[4], "1.0,1.0,1");
}

#[test]
fn compare_reports() {
    let g5 = json(&["compare", "g:5"]);
    assert_valid("compare.schema.json", &g5);
    assert_eq!(g5["weight_gap"][1], "-1/64");
    assert!(g5["delta_constructive"].as_f64().unwrap() > 0.0);
    assert_eq!(g5["delta_constructive_exact"], "1/256");

    let maj = json(&["compare", "maj:7", "--grid", "10"]);
    assert_valid("compare.schema.json", &maj);
    assert!(maj["weight_gap"].as_array().unwrap().iter().all(|a| a == "0"));
    assert!(maj["delta_constructive"].is_null());
    assert_eq!(maj["dominated_on_unit_interval"], true);

    let h5 = json(&["compare", "h:5"]);
    assert_valid("compare.schema.json", &h5);
    assert_eq!(h5["weight_gap"][1], g5["weight_gap"][1]);
}

#[test]
fn search_three() {
    let text = stdout(&["search3"]);
    assert!(text.contains("distinct stability polynomials: 6\n"));
    assert_eq!(text.matches("dominates Maj_3: yes").count(), 6);
    let doc = json(&["search3", "--json"]);
    assert_valid("search3.schema.json", &doc);
    assert_eq!(doc["polynomials"].as_array().unwrap().len(), 6);
}

#[test]
fn counterexample_summary() {
    assert_eq!(
        stdout(&["counterexample", "--n-max", "201"]),
        "true for all odd 5..201; false at 3\n"
    );
    assert_eq!(
        stdout(&["counterexample", "--n", "5"]),
        "n=5: true (W1[g_5] = 11/16 < W1[Maj_5] = 45/64)\n"
    );
    assert!(stdout(&["counterexample", "--n", "3"]).starts_with("n=3: false"));
}

#[test]
fn asymptotics_csv() {
    let csv = stdout(&["asymptotics", "--n-max", "21", "--csv"]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,W1_g_exact,W1_g_float,W1_maj_float,ratio,gap_to_2_over_pi,A_lower,A_upper,B_lower,B_upper"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0][..2], ["5", "11/2^4"]);
    assert!(rows.iter().all(|r| r.len() == 10));
    assert!(rows[1][6].parse::<f64>().is_ok());
    let text = stdout(&["asymptotics", "--n-max", "21"]);
    assert!(text.ends_with("strictly decreasing on odd 3..21: true\n"));
}

#[test]
fn monte_carlo_within_four_standard_errors() {
    let text = stdout(&["mc", "g:5", "--rho", "0.5", "--samples", "100000", "--seed", "7"]);
    let z: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("z: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(z < 4.0, "{text}");
    assert!(text.contains("exact: 0.376953125\n"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["mc", "maj:3", "--rho", "0.9", "--samples", "50000", "--seed", "3"][..],
        &["compare", "g:7", "--grid", "50"],
        &["asymptotics", "--n-max", "51", "--csv"],
        &["spectrum", "f:9:4", "--format", "json"],
        &["search3"],
    ] {
        assert_eq!(boolstab(args).stdout, boolstab(args).stdout, "{args:?}");
    }
}

#[test]
fn truth_table_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g5.tt");
    let table = stdout(&["table", "g:5"]);
    std::fs::write(&path, &table).unwrap();
    let spec = format!("tt:{}", path.display());
    assert_eq!(
        stdout(&["spectrum", &spec, "--levels"]),
        stdout(&["spectrum", "g:5", "--levels"])
    );
    assert_eq!(stdout(&["table", "maj:3"]), "n=3\n17\n");

    let bad = dir.path().join("bad.tt");
    std::fs::write(&bad, "n=3\nzz\n").unwrap();
    assert_eq!(exit_code(&["spectrum", &format!("tt:{}", bad.display())]), 2);
    let missing = dir.path().join("missing.tt");
    assert_eq!(exit_code(&["spectrum", &format!("tt:{}", missing.display())]), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["search3"]), 0);
    assert_eq!(exit_code(&["spectrum", "maj:x"]), 2);
    assert_eq!(exit_code(&["spectrum", "ltf:1,2"]), 2);
    assert_eq!(exit_code(&["frobnicate"]), 2);
    assert_eq!(exit_code(&["stab", "maj:3"]), 2);
    assert_eq!(exit_code(&["stab", "maj:3", "--rho", "1.5"]), 2);
    assert_eq!(exit_code(&["compare", "maj:3", "--grid", "1"]), 2);
    assert_eq!(exit_code(&["compare", "ltf:0;1,1"]), 2);
    assert_eq!(exit_code(&["counterexample", "--n", "4"]), 2);
    assert_eq!(exit_code(&["spectrum", "maj:25", "--levels"]), 3);
    assert_eq!(exit_code(&["spectrum", "g:31", "--quiet"]), 3);
}

#[test]
fn parse_errors_name_the_column() {
    let out = boolstab(&["spectrum", "f:9:w"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("at column 5"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn quiet_silences_progress() {
    let out = boolstab(&["--quiet", "spectrum", "maj:25"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(!err.contains("building"), "{err}");
    assert!(err.contains("cap"));
    let loud = String::from_utf8(boolstab(&["spectrum", "maj:25"]).stderr).unwrap();
    assert!(loud.contains("building"));
}
