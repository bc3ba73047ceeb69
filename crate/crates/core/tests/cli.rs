use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singlink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("singlink-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn trefoil_closure() {
    let o = run(&["eval", "--n", "2", "--braid", "s1 s1 s1", "--strands", "2", "--closure"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-q^-3 + q + q^3 + q^5\n");
}

#[test]
fn singular_closure() {
    let o = run(&["eval", "--n", "2", "--braid", "t1", "--strands", "2", "--closure"]);
    assert_eq!(stdout(&o), "q^-3 + 2*q^-1 + 2*q + q^3\n");
}

#[test]
fn normalized_closure() {
    let o = run(&[
        "eval",
        "--n",
        "3",
        "--braid",
        "s1 S2",
        "--strands",
        "3",
        "--closure",
        "--normalize",
    ]);
    assert_eq!(stdout(&o), "writhe: 0\nq^-2 + 1 + q^2\n");
}

#[test]
fn singular_matrix_text() {
    let o = run(&["matrices", "--n", "2", "--which", "Q"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "[[q^-1 + q, 0, 0, 0],\n [0, q, 1, 0],\n [0, 1, q^-1, 0],\n [0, 0, 0, q^-1 + q]]\n"
    );
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "--n", "3", "--suite", "all", "--strands", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("PASS")));
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn diagram_file() {
    let w = singlink::diagram::parse_braid_word("s1 s1", 2).unwrap();
    let hopf = singlink::diagram::close_braid(&w).to_json();
    let p = temp_file("hopf.json", &hopf);
    let o = run(&["eval", "--n", "2", "--diagram", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    let braid = run(&["eval", "--n", "2", "--braid", "s1 s1", "--strands", "2", "--closure"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), stdout(&braid));
}

#[test]
fn invalid_diagram_is_reported() {
    let p = temp_file("bad.json", r#"{"top":["down"],"slices":[["cross_pos"]]}"#);
    let o = run(&["eval", "--n", "2", "--diagram", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["eval", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["matrices", "--n", "2", "--which", "X"]).status.code(), Some(2));
    assert_eq!(
        run(&["eval", "--n", "2", "--braid", "s9", "--strands", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["rep", "--n", "3", "--braid", "s1 t2 S1", "--strands", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
