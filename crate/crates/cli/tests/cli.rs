use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_collider")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes_separate_false_from_invalid() {
    assert_eq!(run(&["complex", "threshold", "--K", "4:123"]).status.code(), Some(0));
    assert_eq!(run(&["complex", "threshold", "--K", "5:12/34"]).status.code(), Some(1));
    assert_eq!(run(&["complex", "threshold", "--K", "12/34"]).status.code(), Some(2));
    assert_eq!(run(&["complex", "count", "--n", "9"]).status.code(), Some(2));
    let bad = run(&["graph", "tails", "--input", r#"{"vertices": ["#]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 1 column"));
}

#[test]
fn json_output_reads_back_as_input() {
    let k = stdout(&run(&["--format", "json", "complex", "check", "--K", "5:123/45"]));
    assert_eq!(stdout(&run(&["complex", "check", "--input", &k])).lines().next(), Some("complex 5:45/123"));

    let t = stdout(&run(&["--format", "json", "trop", "lambda", "--chain", "12/34,1/2/34"]));
    let from_chain = stdout(&run(&["qk", "limit", "--chain", "12/34,1/2/34", "--Q", "1234,12/34", "--K", "12"]));
    let from_json = stdout(&run(&["qk", "limit", "--input", &t, "--Q", "1234,12/34", "--K", "12"]));
    assert_eq!(from_chain, from_json);

    let sub = stdout(&run(&["--format", "json", "trop", "subdivide", "--chain", "12/34,1/2/34", "--rho", "e1"]));
    assert!(run(&["trop", "lambda", "--input", &sub]).status.success());
}

#[test]
fn json_is_identical_across_job_counts() {
    let args = ["--format", "json", "complex", "enumerate", "--n", "4", "--upto-iso"];
    let one = run(&[&["--jobs", "1"][..], &args[..]].concat());
    let three = run(&[&["--jobs", "3"][..], &args[..]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, three.stdout);
}

#[test]
fn example_limits() {
    let out = stdout(&run(&["repro", "example"]));
    assert!(out.contains("elliptic 2-fold (tacnode), branches 12 | 34"));
    assert!(out.contains("elliptic 3-fold, branches 1 | 2 | 34"));
    let open = stdout(&run(&["--tail-locus", "open", "qk", "limit", "--chain", "12/34,1/2/34", "--Q", "1234,12/34", "--K", "12"]));
    assert!(open.contains("{12}: would collide (open tail locus)"));
}
