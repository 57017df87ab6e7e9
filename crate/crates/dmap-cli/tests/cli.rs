//! End-to-end tests of the `dmap` binary: golden outputs for the worked
//! examples, error codes, sharding, and the work-limit environment override.

use std::collections::BTreeMap;
use std::process::{Command, Output};

use serde_json::Value;

fn dmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmap"))
        .args(args)
        .env_remove("DMAP_WORK_LIMIT")
        .output()
        .expect("binary runs")
}

fn dmap_with_env(args: &[&str], limit: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmap"))
        .args(args)
        .env("DMAP_WORK_LIMIT", limit)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

fn stdout_lines(output: &Output) -> Vec<String> {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .map(str::to_owned)
        .collect()
}

#[test]
fn degree_of_the_worked_quadruple() {
    let out = stdout_json(&dmap(&["degree", "--d", "3", "--cycle", "1/5,2/5,3/5,4/5"]));
    assert_eq!(out["degree"], 2);
    assert_eq!(out["crossings"], serde_json::json!([1, 3]));
}

#[test]
fn orbit_of_five_sixths() {
    let out = stdout_json(&dmap(&["orbit", "--d", "2", "--point", "5/6"]));
    assert_eq!(out["preperiod_len"], 1);
    assert_eq!(out["period_len"], 2);
    assert_eq!(out["points"], serde_json::json!(["1/3", "2/3", "5/6"]));
    assert_eq!(out["degree_basis"], "crossing-number");
}

#[test]
fn enumerate_three_cycles_of_the_doubling_map() {
    let lines = stdout_lines(&dmap(&["enumerate", "--d", "2", "--n", "3"]));
    assert_eq!(lines.len(), 2);
    let words: Vec<Value> = lines
        .iter()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["word"].clone())
        .collect();
    assert_eq!(words, vec!["001", "011"]);
}

#[test]
fn enumerate_with_degree_filter() {
    let lines = stdout_lines(&dmap(&[
        "enumerate", "--d", "2", "--n", "4", "--degree", "2",
    ]));
    assert_eq!(lines.len(), 1);
    let record: Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(record["word"], "0011");
    assert_eq!(record["sigma"], serde_json::json!([2, 4, 1, 3]));
}

#[test]
fn enumerate_precycles_of_size_three() {
    let lines = stdout_lines(&dmap(&["enumerate", "--d", "2", "--n", "3", "--precycles"]));
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().any(|l| {
        let v: Value = serde_json::from_str(l).unwrap();
        v["points"] == serde_json::json!(["1/3", "2/3", "5/6"])
    }));
}

#[test]
fn portrait_of_the_base_four_example() {
    let out = stdout_json(&dmap(&["portrait", "--d", "4", "--cycle", "2/85,8/85,32/85,43/85"]));
    assert_eq!(out["portrait"], serde_json::json!([2, 3, 4, 4]));
    assert_eq!(out["dig"], 3);
}

#[test]
fn partition_of_the_five_point_example() {
    let out = stdout_json(&dmap(&[
        "partition", "--d", "3", "--cycle", "1/22,3/22,5/22,9/22,15/22",
    ]));
    assert_eq!(out["blocks"], serde_json::json!([[3], [1, 2, 4, 5]]));
    assert_eq!(out["i1"], 3);
    assert_eq!(out["crossings"], serde_json::json!([3, 4]));
}

#[test]
fn construct_the_ternary_pair_cycle() {
    let out = stdout_json(&dmap(&[
        "construct", "--d", "3", "--digits", "0,1", "--prefix", "0", "--pad", "2",
    ]));
    assert_eq!(out["c"], "109/728");
    assert_eq!(out["cycle"]["n"], 6);
    assert_eq!(out["cycle"]["degree"], 2);
}

#[test]
fn reconstruct_round_trips_the_worked_key() {
    let out = stdout_json(&dmap(&[
        "reconstruct", "--d", "3", "--m", "2", "--n", "5",
        "--blocks", "3;1,2,4,5", "--i1", "3", "--portrait", "3,4,5",
    ]));
    assert_eq!(out["word"], "00102");

    let out = stdout_json(&dmap(&[
        "reconstruct", "--d", "3", "--m", "2", "--n", "5",
        "--blocks", "3;1,2,4,5", "--i1", "3", "--portrait", "1,4,5",
    ]));
    assert_eq!(out, Value::Null);
}

#[test]
fn census_table_matches_module_counts() {
    let lines = stdout_lines(&dmap(&["census", "--d", "2", "--n-max", "4"]));
    assert_eq!(lines[0], "schema_version,d,n,m,count,bound,ratio");
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], "1", "schema version");
        assert_eq!(fields[1], "2");
        counts.insert(
            (fields[2].parse().unwrap(), fields[3].parse().unwrap()),
            fields[4].parse().unwrap(),
        );
    }
    let expected: BTreeMap<(usize, usize), u64> =
        [((1, 0), 1), ((2, 1), 1), ((3, 1), 2), ((4, 1), 2), ((4, 2), 1)]
            .into_iter()
            .collect();
    assert_eq!(counts, expected);
}

#[test]
fn sharded_census_totals_match_single_shard() {
    let full = stdout_lines(&dmap(&["census", "--d", "3", "--n-max", "7"]));
    let jobs = stdout_lines(&dmap(&["census", "--d", "3", "--n-max", "7", "--jobs", "3"]));
    assert_eq!(full, jobs);

    // Explicit shards merge to the same counts.
    let mut merged: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for spec in ["0/2", "1/2"] {
        let lines = stdout_lines(&dmap(&["census", "--d", "3", "--n-max", "7", "--shard", spec]));
        for line in &lines[1..] {
            let fields: Vec<&str> = line.split(',').collect();
            *merged
                .entry((fields[2].parse().unwrap(), fields[3].parse().unwrap()))
                .or_insert(0) += fields[4].parse::<u64>().unwrap();
        }
    }
    let mut full_counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for line in &full[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        full_counts.insert(
            (fields[2].parse().unwrap(), fields[3].parse().unwrap()),
            fields[4].parse().unwrap(),
        );
    }
    assert_eq!(merged, full_counts);
}

#[test]
fn precycle_census_runs() {
    let lines = stdout_lines(&dmap(&["census", "--d", "2", "--n-max", "2", "--precycles"]));
    // Sizes 1 and 2: the fixed point, the cycle {1/3,2/3}, and {0,1/2}.
    let rows: Vec<&str> = lines[1..].iter().map(String::as_str).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().any(|r| r.starts_with("1,2,2,0,1,")));
}

#[test]
fn dimension_cantor_fit_is_exact() {
    let lines = stdout_lines(&dmap(&["dimension", "--mode", "cantor", "--d", "3", "--m", "2", "--depth", "10"]));
    assert_eq!(lines.len(), 12); // header + 10 scales + fit
    let fit: Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    let beta = fit["beta"].as_f64().unwrap();
    assert!((beta - 2f64.ln() / 3f64.ln()).abs() < 1e-9);
    assert!(fit["max_residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn dimension_cycles_fit_smoke() {
    let lines = stdout_lines(&dmap(&[
        "dimension", "--mode", "cycles", "--d", "2", "--m", "1",
        "--n-max", "3", "--depth", "3", "--filter", "none",
    ]));
    // Counts 2, 4, 6 at scales 1..3 over the eight degree-1 points
    // (the fixed point 0 has degree 0 and stays out, leaving box 0 empty).
    assert!(lines[1].starts_with("1,1,2,"));
    assert!(lines[2].starts_with("1,2,4,"));
    assert!(lines[3].starts_with("1,3,6,"));
    let fit: Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    let beta = fit["beta"].as_f64().unwrap();
    assert!((beta - 0.7925).abs() < 1e-3, "beta {beta}");
}

#[test]
fn non_cycle_input_is_a_domain_error_naming_the_point() {
    let out = dmap(&["degree", "--d", "2", "--cycle", "1/3,1/5"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("1/5"), "stderr: {stderr}");
    assert!(stderr.contains("escapes"));

    // The same set is not a forward orbit either.
    let out = dmap(&["degree", "--d", "2", "--cycle", "1/3,1/5", "--precycle"]);
    assert_eq!(out.status.code(), Some(1));

    // A genuine precycle passes with the flag and is refused without it.
    let out = dmap(&["degree", "--d", "2", "--cycle", "1/3,2/3,5/6", "--precycle"]);
    let parsed = stdout_json(&out);
    assert_eq!(parsed["degree"], 1);
    let out = dmap(&["degree", "--d", "2", "--cycle", "1/3,2/3,5/6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let out = dmap(&["degree", "--cycle", "1/3,2/3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dmap(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn work_limit_flag_and_environment() {
    let out = dmap(&["enumerate", "--d", "2", "--n", "40"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("work limit"));

    let out = dmap_with_env(&["enumerate", "--d", "2", "--n", "3"], "4");
    assert_eq!(out.status.code(), Some(1));

    // An explicit flag wins over the environment.
    let out = dmap_with_env(&["enumerate", "--d", "2", "--n", "3", "--work-limit", "1024"], "4");
    assert!(out.status.success());
}
