use std::process::{Command, Output};

fn isoform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoform")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn solve_one_by_fast_path() {
    let out = isoform(&["solve", "--pfister", "1", "--c", "1", "--ring", "fp:5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "solved");
    let w: Vec<u64> = serde_json::from_value(v["witness"].clone()).unwrap();
    // Q = x² − y² over F_5.
    assert_eq!((w[0] * w[0] + 4 * w[1] * w[1]) % 5, 1);
}

#[test]
fn solve_full_pipeline_over_local_ring() {
    let out = isoform(&["solve", "--pfister", "2,-1", "--c", "3", "--ring", "zpk:5,3", "--no-fast-paths", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let w: Vec<u64> = serde_json::from_value(v["witness"].clone()).unwrap();
    // diag(1, −2, 1, −2) per the expansion ⟨1,−2⟩ ⊗ ⟨1,1⟩.
    let diag = [1i64, -2, 1, -2];
    let m = 125i64;
    let val = w.iter().zip(diag).map(|(&x, d)| d * (x as i64) * (x as i64)).sum::<i64>().rem_euclid(m);
    assert_eq!(val, 3);
}

#[test]
fn census_of_two_flags() {
    let out = isoform(&["census", "--family", "x", "--n", "3", "--j", "2", "--primes", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,n,j,q,count,predicted_dim,fitted_degree");
    assert_eq!(lines[1].split(',').nth(4), Some("52"));
}

#[test]
fn census_output_is_deterministic() {
    let args = ["census", "--family", "y-iso", "--dim2n", "6", "--j", "3", "--primes", "3,5,7"];
    let first = isoform(&args).stdout;
    for _ in 0..2 {
        assert_eq!(isoform(&args).stdout, first);
    }
    let serial = Command::new(env!("CARGO_BIN_EXE_isoform"))
        .args(args)
        .env("ISOFORM_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(serial.stdout, first);
    let text = String::from_utf8(first).unwrap();
    assert!(text.contains("y-iso,6,3,3,80,3,3"));
}

#[test]
fn malformed_ring_is_a_usage_error() {
    let out = isoform(&["solve", "--pfister", "1", "--c", "1", "--ring", "fq:5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = isoform(&["census", "--family", "w", "--n", "3", "--j", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn witt_decompose_emits_index_and_basis() {
    let out = isoform(&["witt-decompose", "--form", r#"{"ring":{"kind":"zpk","p":3,"k":2},"gram":[[0,1,0],[1,0,0],[0,0,1]]}"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["index"], 1);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 1);
}

#[test]
fn construct_w_certifies_its_output() {
    let input = r#"{"form":{"ring":{"kind":"zpk","p":3,"k":2},"gram":[[0,1,0,0],[1,0,0,0],[0,0,0,1],[0,0,1,0]]},"n_basis":[[1,1,0,0],[0,0,1,0],[0,0,0,1]],"seed":3}"#;
    let out = isoform(&["construct-w", "--input", input]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["certificates"]["totally_isotropic"], true);
    assert_eq!(v["certificates"]["summand"], true);
    assert_eq!(v["certificates"]["generator"], true);
}

#[test]
fn check_group_reports_no_violations() {
    let out = isoform(&["check-group", "--pfister", "1", "--ring", "fp:5", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn selftest_injected_failure_exits_five() {
    let out = isoform(&["selftest", "--budget", "quick", "--only", "8", "--inject-failure"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("FAIL"));
}

#[test]
fn selftest_quick_passes() {
    let out = isoform(&["selftest", "--budget", "quick"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}
