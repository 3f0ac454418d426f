//! End-to-end tests of the binary: the exit-code contract, the H³ fixture
//! values, JSON round-trip stability, and grid ordering.

use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ruelle-bands"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn usage_errors_exit_2() {
    // Unknown family, malformed λ, malformed grid, unknown subcommand: all
    // rejected before any computation runs.
    let cases: &[&[&str]] = &[
        &["describe-group", "--family", "sp", "--n", "2"],
        &["describe-group", "--family", "so"],
        &[
            "correspond", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", "circ:1",
            "--lambda", "1/x",
        ],
        &[
            "correspond", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", "circ:1",
            "--lambda-grid", "0:1",
        ],
        &[
            "correspond", "--family", "so", "--n", "2", "--sigma", "nope:1", "--tau", "circ:1",
            "--lambda", "0",
        ],
        &["no-such-command"],
    ];
    for args in cases {
        assert_eq!(exit_code(&run(args)), 2, "{args:?}");
    }
}

#[test]
fn domain_errors_exit_3() {
    let cases: &[&[&str]] = &[
        // n = 0 is never a valid rank.
        &["describe-group", "--family", "so", "--n", "0"],
        // σ₁|М does not contain the character s = 3.
        &[
            "correspond", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", "circ:3",
            "--lambda", "0",
        ],
        // Weight data exists only along the SO chain.
        &["branch", "--family", "su", "--n", "2", "--sigma", "sh:1"],
        // circ:s is an SO(2) literal; M = SO(3) here.
        &[
            "correspond", "--family", "so", "--n", "3", "--sigma", "sh:1", "--tau", "circ:1",
            "--lambda", "0",
        ],
        // The curvature −1 reference convention is SO-only.
        &[
            "correspond", "--family", "su", "--n", "2", "--sigma", "sh:1", "--tau", "triv",
            "--lambda", "0", "--normalization", "curvature_minus_one",
        ],
        // Grid semantics: zero step, inverted range, too many points.
        &[
            "correspond", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", "circ:1",
            "--lambda-grid", "0:1:0",
        ],
        &[
            "correspond", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", "circ:1",
            "--lambda-grid", "1:0:1/2",
        ],
        &[
            "correspond", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", "circ:1",
            "--lambda-grid", "0:200000:1",
        ],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(exit_code(&out), 3, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?} should explain itself on stderr");
    }
}

#[test]
fn h3_fixture_values() {
    // H³ = SO(3,1)/SO(3), σ = σ₁: the Weyl-invariant branch τ₀ gives
    // μ(0) = 1/2, the characters s = ±1 give μ(0) = 1/4.
    let doc = run_json(&[
        "correspond", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", "circ:0",
        "--lambda", "0",
    ]);
    let report = &doc["reports"][0];
    assert_eq!(report["mu"]["re"]["exact"]["a"], "1/2");
    assert_eq!(report["assumption1"], true);
    assert_eq!(report["assumption2"], true);

    for tau in ["circ:1", "circ:-1"] {
        let doc = run_json(&[
            "correspond", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", tau,
            "--lambda", "0",
        ]);
        let report = &doc["reports"][0];
        assert_eq!(report["mu"]["re"]["exact"]["a"], "1/4", "tau = {tau}");
        assert_eq!(report["assumption2"], false, "tau = {tau}");
        assert_eq!(report["jordan"]["max_size"], 1, "tau = {tau}");
    }

    // At the branch point λ = −‖ρ‖ = −1/2 the invariant branch carries an
    // exact size-2 Jordan block.
    let doc = run_json(&[
        "jordan", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", "circ:0",
        "--lambda", "-1/2",
    ]);
    assert_eq!(doc["jordan"]["max_size"], 2);
    assert_eq!(doc["jordan"]["exact"], true);
}

#[test]
fn curvature_normalization_scales_exactly() {
    // μ = 1/4 and λ = 0 in the Killing convention become μ = 1, λ = 0 in the
    // curvature −1 convention (factor 2n = 4 on μ, √(2n) = 2 on λ).
    let doc = run_json(&[
        "correspond", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", "circ:1",
        "--lambda", "0", "--normalization", "curvature_minus_one",
    ]);
    assert_eq!(doc["normalization"], "curvature_minus_one");
    let report = &doc["reports"][0];
    assert_eq!(report["mu"]["re"]["exact"]["a"], "1");
    assert_eq!(report["lambda"]["re"]["exact"]["a"], "0");

    // −λ(λ+n) + m at λ = −1, m = 1, n = 2: 1·1 + 1 = 2.
    let doc = run_json(&[
        "correspond", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", "circ:1",
        "--lambda", "-1/2", "--normalization", "curvature_minus_one",
    ]);
    let report = &doc["reports"][0];
    assert_eq!(report["lambda"]["re"]["exact"]["a"], "-1");
    assert_eq!(report["mu"]["re"]["exact"]["a"], "2");
}

#[test]
fn describe_group_table_values() {
    let doc = run_json(&["describe-group", "--family", "so", "--n", "2", "--bands", "3"]);
    assert_eq!(doc["m_alpha"], 2);
    assert_eq!(doc["m_2alpha"], 0);
    assert_eq!(doc["norm_alpha0_sq"], "1/4");
    let lines: Vec<&str> =
        doc["lines"].as_array().unwrap().iter().map(|l| l["a"].as_str().unwrap()).collect();
    assert_eq!(lines, ["-1/2", "-1", "-3/2", "-2"]);

    let doc = run_json(&["describe-group", "--family", "su", "--n", "1"]);
    assert_eq!(doc["m_alpha"], 2);
    assert_eq!(doc["m_2alpha"], 1);
    assert_eq!(doc["norm_alpha0_sq"], "1/12");
}

#[test]
fn lambda_in_alpha0_units_hits_irrational_endpoints() {
    // For n = 1, ‖ρ‖ = (1/2)‖α₀‖ = (1/4)√2 is irrational; the unit flag
    // reaches it exactly from a rational input.
    let doc = run_json(&[
        "jordan", "--family", "so", "--n", "1", "--sigma", "sh:0", "--tau", "triv",
        "--lambda", "-1/2", "--lambda-unit", "alpha0-units",
    ]);
    assert_eq!(doc["lambda"]["re"]["exact"]["b"], "-1/4");
    assert_eq!(doc["lambda"]["re"]["exact"]["d"], 2);
    assert_eq!(doc["jordan"]["max_size"], 2);
}

#[test]
fn grid_is_expanded_in_order() {
    let doc = run_json(&[
        "correspond", "--family", "so", "--n", "2", "--sigma", "sh:1", "--tau", "circ:0",
        "--lambda-grid", "-1:1:1/2",
    ]);
    let res: Vec<String> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["lambda"]["re"]["exact"]["a"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(res, ["-1", "-1/2", "0", "1/2", "1"]);
}

#[test]
fn json_output_round_trips_byte_identically() {
    let cases: &[&[&str]] = &[
        &["describe-group", "--family", "so", "--n", "1"],
        &["bands", "--family", "su", "--n", "3", "--k-max", "5"],
        &[
            "correspond", "--family", "so", "--n", "3", "--sigma", "sh:2", "--tau", "sh:1",
            "--lambda", "-1/2+2i", "--lambda", "3/7",
        ],
        &["check-assumptions", "--family", "so", "--n", "2", "--sigma", "sh:2"],
        &["selftest"],
    ];
    for args in cases {
        let out = run(args);
        assert!(out.status.success(), "{args:?}");
        let text = String::from_utf8(out.stdout).expect("utf-8");
        let value: Value = serde_json::from_str(&text).expect("valid JSON");
        let reserialized = serde_json::to_string_pretty(&value).unwrap();
        assert_eq!(text.trim_end(), reserialized, "{args:?}");
    }
}

#[test]
fn selftest_passes_and_fault_injection_fails() {
    let out = run(&["selftest"]);
    assert_eq!(exit_code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["failed"], 0);
    assert!(doc["passed"].as_u64().unwrap() > 30);

    let out = run(&["selftest", "--inject-fault"]);
    assert_eq!(exit_code(&out), 4);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["failed"].as_u64().unwrap() > 0);
    let has_witness = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["status"] == "fail" && c["witness"].is_string());
    assert!(has_witness, "failures must carry witnesses");
}

#[test]
fn profile_env_variable_is_honored() {
    let out = bin()
        .args(["selftest"])
        .env("RUELLE_BANDS_PROFILE", "full")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["profile"], "full");

    // The flag wins over the environment.
    let out = bin()
        .args(["selftest", "--profile", "fast"])
        .env("RUELLE_BANDS_PROFILE", "full")
        .output()
        .expect("binary runs");
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["profile"], "fast");

    let out = bin()
        .args(["selftest"])
        .env("RUELLE_BANDS_PROFILE", "bogus")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 3);
}
