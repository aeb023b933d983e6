use std::path::PathBuf;
use std::process::{Command, Output};

fn problem(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../problems");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ladpref"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ladpref-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn validate_accepts_the_examples() {
    for f in [
        "three_alternatives.json",
        "consistent.json",
        "ratio_scale.json",
        "land_development.json",
    ] {
        let o = run(&["validate", &problem(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stderr(&o));
    }
}

#[test]
fn validate_locates_broken_reciprocity() {
    let text = std::fs::read_to_string(problem("three_alternatives.json")).unwrap();
    let broken = text.replacen("[0.2, 0.3, 0.3, 0.4]", "[0.21, 0.3, 0.3, 0.4]", 1);
    assert_ne!(text, broken);
    let o = run(&["validate", &scratch("broken.json", &broken)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("entry (2, 1) is not the negation of entry (1, 2)"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn validate_rejects_asymmetric_neutral() {
    let text = std::fs::read_to_string(problem("three_alternatives.json")).unwrap();
    let broken = text.replacen(
        "\"neutral\": [0.4, 0.5, 0.5, 0.6]",
        "\"neutral\": [0.3, 0.5, 0.5, 0.6]",
        1,
    );
    let o = run(&["validate", &scratch("neutral.json", &broken)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("neutral"), "{}", stderr(&o));
}

#[test]
fn parse_failures_exit_with_one() {
    let cases = [
        ("truncated.json", "{\"kind\": \"additive\", "),
        ("kind.json", "{\"kind\": \"other\", \"neutral\": [0.5,0.5,0.5,0.5]}"),
        (
            "number.json",
            "{\"kind\":\"additive\",\"neutral\":[0.5,0.5,0.5,0.5],\"matrix\":[[[\"half\",0.5,0.5,0.5]]]}",
        ),
        ("short.json", "{\"kind\":\"additive\",\"neutral\":[0.5,0.5,0.5],\"matrix\":[]}"),
    ];
    for (name, text) in cases {
        let o = run(&["validate", &scratch(name, text)]);
        assert_eq!(o.status.code(), Some(1), "{name}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error:"));
    }
    let o = run(&["validate", "/nonexistent/problem.json"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "--tol",
        "-1",
        "consistency",
        &problem("three_alternatives.json"),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn validation_failures_exit_with_two() {
    let cases = [
        ("empty.json", "{\"kind\":\"additive\",\"neutral\":[0.5,0.5,0.5,0.5],\"matrix\":[]}"),
        (
            "order.json",
            "{\"kind\":\"additive\",\"neutral\":[0.5,0.5,0.5,0.5],\"matrix\":[[[0.6,0.5,0.5,0.5]]]}",
        ),
        (
            "ragged.json",
            "{\"kind\":\"additive\",\"neutral\":[0.5,0.5,0.5,0.5],\"matrix\":[[[0.5,0.5,0.5,0.5],[0.5,0.5,0.5,0.5]]]}",
        ),
        (
            "noscale.json",
            "{\"kind\":\"multiplicative\",\"neutral\":[1,1,1,1],\"matrix\":[[[1,1,1,1]]]}",
        ),
    ];
    for (name, text) in cases {
        let o = run(&["validate", &scratch(name, text)]);
        assert_eq!(o.status.code(), Some(2), "{name}: {}", stderr(&o));
    }
    let o = run(&[
        "--mag-weights",
        "0.2,0.2",
        "utility",
        &problem("three_alternatives.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn consistency_verdicts() {
    let o = run(&["consistency", &problem("three_alternatives.json")]);
    let out = stdout(&o);
    assert!(out.starts_with("inconsistent"), "{out}");
    assert!(out.contains("worst triple: (1, 2, 3)"), "{out}");
    assert!(stdout(&run(&["consistency", &problem("consistent.json")])).starts_with("consistent"));
    assert!(
        stdout(&run(&["consistency", &problem("ratio_scale.json")])).starts_with("inconsistent")
    );

    let o = run(&["--json", "consistency", &problem("three_alternatives.json")]);
    let v = json(&o);
    assert_eq!(v["consistent"], false);
    assert!((v["max_violation"].as_f64().unwrap() - 0.1).abs() < 1e-9);
    assert_eq!(v["worst_triple"], serde_json::json!([1, 2, 3]));

    let o = run(&[
        "--tol",
        "0.5",
        "consistency",
        &problem("three_alternatives.json"),
    ]);
    assert!(stdout(&o).starts_with("consistent"));
}

#[test]
fn utility_on_the_examples() {
    let o = run(&[
        "utility",
        &problem("three_alternatives.json"),
        "--model",
        "punit",
    ]);
    let out = stdout(&o);
    assert!(out.contains("objective: 0.2000"), "{out}");
    assert!(out.contains("ranking: A1 > A2 > A3"), "{out}");
    assert!(!out.contains("-0.0000"));

    let o = run(&["utility", &problem("ratio_scale.json"), "--model", "p"]);
    assert!(stdout(&o).contains("objective: 0.2000"));

    let o = run(&[
        "utility",
        &problem("ratio_scale.json"),
        "--model",
        "psigma",
        "--sigma",
        "0.8,0.9,1.1,1.2",
    ]);
    assert!(stdout(&o).contains("objective: 0.6000"), "{}", stdout(&o));

    let o = run(&["--json", "utility", &problem("three_alternatives.json")]);
    let v = json(&o);
    assert_eq!(v["model"], "punit");
    assert_eq!(v["ranking"], "A1 > A2 > A3");
    assert!((v["objective"].as_f64().unwrap() - 0.2).abs() < 1e-9);
    assert_eq!(v["utilities"].as_array().unwrap().len(), 3);
}

#[test]
fn unordered_total_is_infeasible() {
    let o = run(&[
        "utility",
        &problem("ratio_scale.json"),
        "--model",
        "psigma",
        "--sigma",
        "0.9,0.8,1.1,1.2",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = run(&[
        "utility",
        &problem("three_alternatives.json"),
        "--model",
        "psigma",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn weights_use_the_file_total() {
    let o = run(&["weights", &problem("ratio_scale.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("objective: 0.6000"));
}

#[test]
fn land_development_pipeline() {
    let o = run(&["ahp", &problem("land_development.json"), "--compare"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("ranking: A1 > A2 > A4 > A3"), "{out}");
    for d in [
        "LAD  deviation 0.9823",
        "AMM  deviation 2.3955",
        "GMM  deviation 2.6843",
    ] {
        assert!(out.contains(d), "{d} missing from\n{out}");
    }

    let v = json(&run(&["--json", "ahp", &problem("land_development.json")]));
    assert_eq!(v["ranking"], "A1 > A2 > A4 > A3");
    assert_eq!(v["local_weights"].as_array().unwrap().len(), 3);
    assert!(v.get("comparison").is_none());
}

#[test]
fn single_criterion_matches_weights() {
    let ahp = json(&run(&["--json", "ahp", &problem("economic_only.json")]));
    let direct = json(&run(&["--json", "weights", &problem("economic.json")]));
    assert_eq!(ahp["global_weights"], direct["utilities"]);
    assert_eq!(ahp["ranking"], direct["ranking"]);
}

#[test]
fn conversion_round_trips() {
    let out = scratch("mult.json", "");
    let o = run(&[
        "convert",
        &problem("three_alternatives.json"),
        "--to",
        "multiplicative",
        "--scale",
        "9",
        "--out",
        &out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let back = json(&run(&["convert", &out, "--to", "additive"]));
    let orig: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(problem("three_alternatives.json")).unwrap())
            .unwrap();
    let flat = |v: &serde_json::Value| -> Vec<f64> {
        v["matrix"]
            .as_array()
            .unwrap()
            .iter()
            .flat_map(|r| r.as_array().unwrap().iter())
            .flat_map(|q| q.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()))
            .collect()
    };
    let (a, b) = (flat(&orig), flat(&back));
    assert_eq!(a.len(), b.len());
    assert!(a.iter().zip(&b).all(|(p, q)| (p - q).abs() <= 1e-9));

    let mult = json(&run(&[
        "convert",
        &problem("three_alternatives.json"),
        "--to",
        "multiplicative",
        "--scale",
        "9",
    ]));
    let y12 = mult["matrix"][0][1][0].as_f64().unwrap();
    assert!((y12 - 9f64.powf(0.2)).abs() < 1e-12);
}

#[test]
fn crisp_relation_maps_to_ratio_values() {
    let v = json(&run(&[
        "convert",
        &problem("crisp.json"),
        "--to",
        "multiplicative",
        "--scale",
        "9",
    ]));
    for k in 0..4 {
        assert!((v["matrix"][0][1][k].as_f64().unwrap() - 3.0).abs() < 1e-12);
        assert!((v["matrix"][1][0][k].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }
    let o = run(&["convert", &problem("crisp.json"), "--to", "additive"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["convert", &problem("crisp.json"), "--to", "multiplicative"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["ahp", "--compare"],
        vec!["--json", "ahp"],
        vec!["utility", "--model", "p0"],
    ] {
        let file = if args.contains(&"ahp") {
            problem("land_development.json")
        } else {
            problem("three_alternatives.json")
        };
        let mut full = args.clone();
        full.insert(if args[0] == "--json" { 2 } else { 1 }, &file);
        assert_eq!(stdout(&run(&full)), stdout(&run(&full)));
    }
}
