use std::path::Path;

use assert_cmd::Command;
use predicates::prelude::*;

fn workspace_root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR")).parent().unwrap().parent().unwrap()
}

fn cmd() -> Command {
    let mut c = Command::cargo_bin("semix").unwrap();
    c.current_dir(workspace_root());
    c
}

#[test]
fn run_symmetric_square_table() {
    cmd()
        .args(["run", "scenarios/symmetric-square-g3.toml"])
        .assert()
        .success()
        .stdout(
            "\
scenario symmetric-square-g3 (pinned)
group scenarios/../fixtures/groups/g_2_1.group  order 2

datum 1: |G0| = 1  tau' = g1  type [3;-]
  hyperbolic: (1, 1), (1, 1), (1, 1)
  g(C) = 3  q = 3  chi = 1  K^2 = 6  branch locus: (3,-8)
  analysis over base cover of order 1 ([3;-]):
    1 orbit divisors (0 non-branch, 1 branch)
    rep                   n   D^2   K.D  p_a  kind
    1                     1    -8    12    3  branch
    minimal: no (-1)-curves
    K^2 = 6, contraction bound 0: minimal model K^2 = 6

expected: ok
",
        );
}

#[test]
fn run_isogenous_q2_lifts_and_passes() {
    cmd()
        .args(["run", "scenarios/isogenous-q2.toml"])
        .assert()
        .success()
        .stdout(
            "\
scenario isogenous-q2 (pinned)
group scenarios/../fixtures/groups/g_4_1.group  order 4

datum 1: |G0| = 2  tau' = g1  type [2;-]
  hyperbolic: (g2, 1), (1, 1)
  g(C) = 3  q = 2  chi = 1  K^2 = 8  branch locus: -
  lift: 1 verified lift of type [0;2^6]
  analysis over lifted cover of order 4 ([0;2^6]):
    2 orbit divisors (2 non-branch, 0 branch)
    rep                   n   D^2   K.D  p_a  kind
    1                     2    -2     4    2  -
    t                     2    -2     4    2  -
    minimal: no (-1)-curves
    K^2 = 8, contraction bound 0: minimal model K^2 = 8

expected: ok
",
        );
}

#[test]
fn json_output_round_trips() {
    let out = cmd()
        .args(["run", "--json", "scenarios/case2-48-38.toml"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(out).unwrap();
    let report = semix_core::Report::from_json(&text).unwrap();
    assert_eq!(report.scenario, "case2-48-38");
    assert_eq!(report.schema_version, semix_core::REPORT_SCHEMA_VERSION);
    assert!(report.expected_ok);
    // emit(parse(bytes)) == bytes
    assert_eq!(report.to_json(), text);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let once = cmd()
        .args(["run", "scenarios/case1a.toml"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let twice = cmd()
        .args(["run", "scenarios/case1a.toml"])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    assert_eq!(once, twice);
}

#[test]
fn stage_subcommands_print_their_slice() {
    cmd()
        .args(["invariants", "scenarios/case1a.toml"])
        .assert()
        .success()
        .stdout(predicate::str::contains(
            "g(C) = 33  q = 0  chi = 1  K^2 = 2",
        ));
    cmd()
        .args(["exceptional", "scenarios/case1a.toml"])
        .assert()
        .success()
        .stdout(predicate::str::contains("(pairwise disjoint)"))
        .stdout(predicate::str::contains("K^2_min = 4"));
    cmd()
        .args(["lift", "scenarios/case2-48-38.toml"])
        .assert()
        .success()
        .stdout(predicate::str::contains("lifted cover: order 48, type [0;2^5]"));
    cmd()
        .args(["validate", "scenarios/case2-48-38.toml"])
        .assert()
        .success()
        .stdout(predicate::str::contains("data: 1 valid of 1 examined"));
    cmd()
        .args(["divisors", "scenarios/symmetric-square-g3.toml"])
        .assert()
        .success()
        .stdout(predicate::str::contains("1 orbit divisors"));
}

#[test]
fn failing_expected_block_exits_one() {
    let dir = std::env::temp_dir().join(format!("semix-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let scenario = dir.join("bad.toml");
    std::fs::write(
        &scenario,
        format!(
            r#"
name = "bad"
group_file = "{}/fixtures/groups/g_2_1.group"
mode = "pinned"

[datum]
g0_generators = ["1"]
signature = "[3;-]"
tau_prime = "g1"
hyperbolic = [["1", "1"], ["1", "1"], ["1", "1"]]
branch = []

[expected]
k2 = 1
"#,
            workspace_root().display()
        ),
    )
    .unwrap();
    cmd()
        .arg("run")
        .arg(&scenario)
        .assert()
        .code(1)
        .stdout(predicate::str::contains("expected: FAILED"))
        .stdout(predicate::str::contains("k2: expected 1, computed 6"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn missing_scenario_exits_two() {
    cmd()
        .args(["run", "scenarios/does-not-exist.toml"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("error:"));
}

#[test]
fn tight_limit_reports_truncation() {
    // a valid datum already sits within the first three enumerated vectors,
    // so the run passes — but the cap must still be reported
    cmd()
        .args(["run", "--limit", "3", "scenarios/case2-48-38-search-gv.toml"])
        .assert()
        .success()
        .stdout(predicate::str::contains(
            "search: 3 candidates examined, 1 distinct data (truncated at limit)",
        ));
}

#[test]
fn suite_runs_every_bundled_scenario() {
    cmd()
        .args(["suite", "--threads", "2"])
        .assert()
        .success()
        .stdout(predicate::str::contains("suite: 26 scenarios, 26 passed, 0 failed"));
}
