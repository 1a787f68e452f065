mod common;

use std::fs;

use serde_json::Value;

use common::{boundary_edges, is_regular_odd_cutset, oddcut, parse_jsonl, parse_set, stdout};

fn json_line(out: &str) -> Value {
    serde_json::from_str(out.trim()).expect("one JSON document")
}

#[test]
fn counts_print_the_value_first_and_a_reason_when_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let o = oddcut(dir.path(), "c.csv", &["count", "--d", "2", "--n", "12"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("1"));
    let o = oddcut(dir.path(), "c.csv", &["count", "--d", "2", "--n", "13"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("0"));
    assert!(text.contains("reason: n mod 2d ≠ 0"), "{text}");
}

#[test]
fn second_count_reads_the_cache_without_searching() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--json", "count", "--d", "2", "--n", "16"];
    let first = json_line(&stdout(&oddcut(dir.path(), "c.csv", &args)));
    assert_eq!(first["count"], 4);
    assert_eq!(first["cached"], false);
    assert_eq!(first["searches_performed"], 1);
    let second = json_line(&stdout(&oddcut(dir.path(), "c.csv", &args)));
    assert_eq!(second["count"], 4);
    assert_eq!(second["cached"], true);
    assert_eq!(second["searches_performed"], 0);
    let cache = fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert_eq!(cache.lines().filter(|l| l.starts_with("2,16,")).count(), 1);
}

#[test]
fn cache_location_follows_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = std::process::Command::new(env!("CARGO_BIN_EXE_oddcut"))
        .current_dir(dir.path())
        .env("ODDCUT_CACHE", "from-env.csv")
        .args(["count", "--d", "2", "--n", "12"])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("from-env.csv").exists());
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| oddcut(dir.path(), "c.csv", args).status.code();
    assert_eq!(
        code(&["count", "--d", "2", "--n", "12", "--bogus"]),
        Some(2)
    );
    assert_eq!(
        code(&["sample", "--d", "2", "--n", "16", "--mcmc"]),
        Some(2)
    );
    assert_eq!(
        code(&["sample", "--d", "2", "--n", "16", "--seed", "1"]),
        Some(2)
    );
    assert_eq!(code(&["count", "--d", "1", "--n", "12"]), Some(2));
    assert_eq!(code(&["count", "--d", "2", "--n", "60"]), Some(2));
    assert_eq!(
        code(&["--jobs", "0", "count", "--d", "2", "--n", "12"]),
        Some(2)
    );
}

#[test]
fn failed_assertions_exit_with_one_and_a_json_witness() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("bad.json"),
        r#"{"d":2,"members":[[0,0],[1,0]]}"#,
    )
    .unwrap();
    let o = oddcut(
        dir.path(),
        "c.csv",
        &["construct", "peak", "--in", "bad.json"],
    );
    assert_eq!(o.status.code(), Some(1));
    let v = json_line(&stdout(&o));
    assert_eq!(v["status"], "fail");
    assert!(v["check"].is_string());
    assert!(!v["witness"].is_null());
}

#[test]
fn construct_chain_preserves_cutsets() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let fam = stdout(&oddcut(p, "c.csv", &["enumerate", "--d", "2", "--n", "16"]));
    fs::write(p.join("s.json"), fam.lines().next().unwrap()).unwrap();
    let o = oddcut(
        p,
        "c.csv",
        &["--json", "construct", "peak", "--in", "s.json"],
    );
    assert!(o.status.success());
    fs::write(p.join("p.json"), stdout(&o)).unwrap();
    let v = json_line(&stdout(&o));
    assert_eq!(v["boundary"], 20);
    let (_, peaked) = parse_set(&v["set"]);
    assert_eq!(boundary_edges(&peaked), 20);
    assert!(is_regular_odd_cutset(&peaked, 2));
    let o = oddcut(
        p,
        "c.csv",
        &[
            "--json",
            "construct",
            "extend",
            "--in",
            "p.json",
            "--r",
            "2",
            "--s",
            "1",
        ],
    );
    let v = json_line(&stdout(&o));
    // 2d(r(2d-3) + s(2d-2)) = 4(2 + 2) more boundary edges.
    assert_eq!(v["boundary"], 36);
    let (_, extended) = parse_set(&v["set"]);
    assert_eq!(boundary_edges(&extended), 36);
    assert!(is_regular_odd_cutset(&extended, 2));
    let o = oddcut(
        p,
        "c.csv",
        &[
            "--json",
            "construct",
            "compose",
            "--in",
            "s.json",
            "--with",
            "p.json",
            "--k",
            "48",
        ],
    );
    let v = json_line(&stdout(&o));
    assert_eq!(v["boundary"], 16 + 20 + 48);
    let (_, composed) = parse_set(&v["set"]);
    assert!(is_regular_odd_cutset(&composed, 2));
}

#[test]
fn json_outputs_are_single_documents() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let run = |args: &[&str]| {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let o = oddcut(p, "c.csv", &full);
        assert!(
            o.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        json_line(&stdout(&o))
    };
    assert_eq!(run(&["count", "--d", "2", "--n", "20"])["count"], 26);
    let v = run(&["verify", "--d", "2", "--max-n", "16"]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["families"][1]["sets"], 4);
    let v = run(&["construct", "slab", "--d", "2", "--m", "4"]);
    assert_eq!(v["count"], "4");
    assert_eq!(v["boundary"], 20);
    let v = run(&["approximate", "--d", "2", "--n", "16", "--t", "1"]);
    assert_eq!(v["sets"].as_array().unwrap().len(), 4);
    let v = run(&["bounds", "--d", "2", "--n-grid", "12:20:4"]);
    assert_eq!(v["bracket"][0]["lower_exponent"], "51/16");
    assert_eq!(v["bracket"][2]["occ"], 26);
    let v = run(&[
        "sample", "--d", "2", "--n", "16", "--exact", "--count", "3", "--seed", "5",
    ]);
    assert_eq!(v["samples"].as_array().unwrap().len(), 3);
    fs::write(
        p.join("sets.jsonl"),
        stdout(&oddcut(p, "c.csv", &["enumerate", "--d", "2", "--n", "16"])),
    )
    .unwrap();
    let v = run(&["render", "--in", "sets.jsonl", "--out", "pics"]);
    assert_eq!(v["files"].as_array().unwrap().len(), 4);
    assert!(p.join("pics/set-00003.svg").exists());
}

#[test]
fn mcmc_samples_are_cutsets_of_the_requested_size() {
    let dir = tempfile::tempdir().unwrap();
    let o = oddcut(
        dir.path(),
        "c.csv",
        &[
            "sample", "--d", "2", "--n", "40", "--mcmc", "--count", "5", "--chains", "2", "--seed",
            "9",
        ],
    );
    assert!(o.status.success());
    let sets = parse_jsonl(&stdout(&o));
    assert_eq!(sets.len(), 5);
    for (d, s) in &sets {
        assert_eq!(boundary_edges(s), 40);
        assert!(is_regular_odd_cutset(s, *d));
        assert!(s.contains(&vec![0, 0]));
    }
}

#[test]
fn approximate_trace_dumps_one_line_per_set() {
    let dir = tempfile::tempdir().unwrap();
    let o = oddcut(
        dir.path(),
        "c.csv",
        &[
            "approximate",
            "--d",
            "2",
            "--n",
            "16",
            "--t",
            "1",
            "--trace",
        ],
    );
    assert!(o.status.success());
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    for (i, l) in lines.iter().enumerate() {
        assert_eq!(l["index"], i);
        for key in ["separator", "separating_set", "small", "first", "second"] {
            assert!(!l["trace"][key].is_null(), "missing {key}");
        }
    }
}
