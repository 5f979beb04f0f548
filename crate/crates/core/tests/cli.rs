use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_outbranch"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("outbranch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const DIAMOND: &str = "4 4\n0 1\n0 2\n1 3\n2 3\nroot 0\n";

#[test]
fn generate_then_solve() {
    let g = run(
        &[
            "generate", "--rows", "3", "--cols", "3", "--p2", "1", "--seed", "4", "--root", "0",
        ],
        None,
    );
    assert!(g.status.success());
    let inst = stdout(&g);
    assert!(inst.starts_with("9 24\n"));
    for cmd in ["solve-lob", "solve-iob"] {
        let o = run(&[cmd, "--k", "3"], Some(&inst));
        assert!(o.status.success(), "{cmd}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["answer"], true, "{cmd}");
        assert_eq!(v["root"], 0);
    }
}

#[test]
fn csv_output_has_header_and_row() {
    let p = temp_file("diamond.txt", DIAMOND);
    let o = run(
        &[
            "solve-kpath",
            "--input",
            p.to_str().unwrap(),
            "--k",
            "2",
            "--b",
            "1",
            "--format",
            "csv",
            "--deterministic",
        ],
        None,
    );
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "problem,k,answer,root,value,elapsed_ms\nkpath,2,true,,2,0.0\n"
    );
}

#[test]
fn deterministic_runs_repeat_exactly() {
    let inst = stdout(&run(
        &[
            "generate",
            "--family",
            "random-sparse",
            "--n",
            "12",
            "--m",
            "18",
            "--seed",
            "3",
        ],
        None,
    ));
    for args in [
        vec!["solve-iob", "--k", "4", "--deterministic"],
        vec!["solve-lob", "--k", "4", "--deterministic"],
    ] {
        let a = run(&args, Some(&inst));
        let b = run(&args, Some(&inst));
        assert_eq!(a.stdout, b.stdout);
    }
    let a = run(&["bench", "--deterministic"], None);
    let b = run(&["bench", "--deterministic"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn errors_are_machine_readable() {
    let bad = run(&["solve-lob", "--k", "1"], Some("2 1\n0 0\n"));
    assert_eq!(bad.status.code(), Some(2));
    let line: serde_json::Value = serde_json::from_slice(&bad.stderr).unwrap();
    assert_eq!(line["error"], "parse");

    let path: String = (0..11).map(|i| format!("{i} {}\n", i + 1)).collect();
    let inst = format!("12 11\n{path}");
    let budget = run(
        &["solve-kpath", "--k", "3", "--b", "4", "--budget", "10"],
        Some(&inst),
    );
    assert_eq!(budget.status.code(), Some(2));
    let line: serde_json::Value = serde_json::from_slice(&budget.stderr).unwrap();
    assert_eq!(line["error"], "budget");

    let iob = run(
        &["solve-iob", "--k", "2", "--root", "0", "--budget", "1"],
        Some(&inst),
    );
    assert_eq!(iob.status.code(), Some(2));
}

#[test]
fn verify_and_analyze() {
    for problem in ["lob", "iob", "kpath"] {
        let o = run(
            &["verify", "--k", "2", "--problem", problem, "--b", "2"],
            Some(DIAMOND),
        );
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["agree"], true, "{problem}");
    }
    let o = run(&["analyze", "--k", "1"], Some(DIAMOND));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["alpha"], 0);
    assert_eq!(v["beta"], 3);
}

#[test]
fn structure_report_goes_to_stderr() {
    let o = run(&["solve-lob", "--k", "2", "--report", "csv"], Some(DIAMOND));
    assert!(o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("root,status,alpha,beta"));
}

#[test]
fn empty_suite_is_header_only() {
    let p = temp_file("empty.json", "[]");
    let o = run(&["bench", "--suite", p.to_str().unwrap()], None);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
}
