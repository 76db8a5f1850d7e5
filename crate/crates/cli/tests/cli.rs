use std::path::PathBuf;
use std::process::{Command, Output};

fn btft(args: &[&str], env: &[(&str, &str)]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_btft")).args(args).env_clear().envs(env.iter().copied()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("btft-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn enumerate_lists_and_counts() {
    let o = btft(&["enumerate", "2", "2"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.ends_with("count=3\n"));
    assert_eq!(stdout(&btft(&["enumerate", "1", "1"], &[])), "1;1;0;(I1-O1)\ncount=1\n");
    assert_eq!(stdout(&btft(&["enumerate", "0", "6"], &[])).lines().count(), 16);
    let odd = btft(&["enumerate", "1", "2"], &[]);
    assert_eq!(odd.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&odd.stderr).contains("odd"));
}

#[test]
fn matrices_under_the_example() {
    let counit = stdout(&btft(&["matrix", "2;0;0;(I1-I2)"], &[]));
    assert_eq!(counit.lines().nth(1), Some("0 1 1 -1"));
    let lambda = stdout(&btft(&["matrix", "0;0;1;"], &[]));
    assert_eq!(lambda.lines().nth(1), Some("2"));
    let id = stdout(&btft(&["matrix", "1;1;0;(I1-O1)"], &[]));
    assert_eq!(id.lines().skip(1).collect::<Vec<_>>(), ["1 0", "0 1"]);
    assert_eq!(btft(&["matrix", "2;2;0;(I1-O1)"], &[]).status.code(), Some(2));
    assert_eq!(btft(&["matrix", "0;14;0;(O1-O2)(O3-O4)(O5-O6)(O7-O8)(O9-O10)(O11-O12)(O13-O14)"], &[]).status.code(), Some(2));
}

#[test]
fn duality_files_and_environment() {
    let file = temp_file("d3.txt", "# a diagonal form\n3\n1 0 0\n0 1/2 0\n0 0 -1\n");
    let path = file.to_str().unwrap();
    let lambda = stdout(&btft(&["matrix", "0;0;1;", "--duality", path], &[]));
    assert_eq!(lambda.lines().nth(1), Some("3"));
    let counit = stdout(&btft(&["matrix", "2;0;0;(I1-I2)"], &[("BTFT_DUALITY", path)]));
    assert_eq!(counit.lines().nth(1), Some("1 0 0 0 2 0 0 0 -1"));
    assert_eq!(btft(&["verify", "relations", "--duality", path], &[]).status.code(), Some(0));
    let singular = temp_file("singular.txt", "2\n1 1\n1 1\n");
    let o = btft(&["verify", "relations", "--duality", singular.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));
    let asym = temp_file("asym.txt", "2\n1 2\n0 1\n");
    assert_eq!(btft(&["enumerate", "0", "2", "--duality", asym.to_str().unwrap()], &[]).status.code(), Some(2));
    assert_eq!(btft(&["exotic-demo", "--trunc", "7"], &[]).status.code(), Some(2));
    assert_eq!(btft(&["exotic-demo"], &[("BTFT_TRUNC", "5")]).status.code(), Some(2));
}

#[test]
fn verification_failure_exits_one() {
    // Saturation depth 20 needs N >= 44; at N = 16 every sample reports the precondition.
    let o = btft(&["verify", "rationality", "--trunc", "16", "--trials", "3"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("result: FAIL"));
}

#[test]
fn state_sum_of_a_scenario() {
    let file = temp_file("cyl.txt", "in fS 2\nout g 2\nfS g 2;2;0;(I1-O1)(I2-O2)\nfS g 2;2;1;(I1-O1)(I2-O2)\n");
    let o = btft(&["state-sum", file.to_str().unwrap(), "--trunc", "8"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2 2 2;2;0;(I1-O1)(I2-O2) 8:0,1"), "{}", stdout(&o));
    let json = btft(&["state-sum", file.to_str().unwrap(), "--format", "structured", "--trunc", "8"], &[]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["entries"][0]["value"]["slots"]["2,2"]["2;2;0;(I1-O1)(I2-O2)"], serde_json::json!([0, 1]));
    let bad = temp_file("bad-scenario.txt", "in fS 2\nout g 2\nfS g 2;0;0;(I1-I2)\n");
    assert_eq!(btft(&["state-sum", bad.to_str().unwrap()], &[]).status.code(), Some(2));
}

#[test]
fn exotic_demo_reports_distinct() {
    let o = btft(&["exotic-demo"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1_{V⊗V}    {0,3}"));
    assert!(text.ends_with("verdict: distinct\n"));
}
