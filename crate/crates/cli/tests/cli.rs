use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn zomega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zomega"))
        .args(args)
        .env_remove("ZOMEGA_SUITE")
        .env_remove("ZOMEGA_OUT")
        .output()
        .expect("spawn zomega")
}

fn verify(dir: &Path) -> Output {
    zomega(&["verify", dir.to_str().unwrap()])
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn coding_run_verifies_and_rejects_edits() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("certs");
    let run = zomega(&["run-suite", "--suite", "coding", "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));

    let ok = verify(&out);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("rejected=0"));

    let file = out.join("coding.cert");
    let original = fs::read(&file).unwrap();
    for pos in [0, original.len() / 3, original.len() - 2] {
        let mut bad = original.clone();
        bad[pos] ^= 1;
        fs::write(&file, &bad).unwrap();
        assert_eq!(verify(&out).status.code(), Some(2), "byte {pos}");
    }
    fs::write(&file, &original).unwrap();
    assert_eq!(verify(&out).status.code(), Some(0));
}

#[test]
fn reruns_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = ["a", "b"].iter().map(|n| dir.path().join(n)).collect();
    for p in &paths {
        let run = zomega(&["run-suite", "--suite", "coding", "--seed", "3", "--out", p.to_str().unwrap()]);
        assert_eq!(run.status.code(), Some(0));
    }
    let read = |p: &Path| fs::read(p.join("coding.cert")).unwrap();
    assert_eq!(read(&paths[0]), read(&paths[1]));
}

#[test]
fn empty_directory_has_nothing_to_reject() {
    let dir = tempfile::tempdir().unwrap();
    let o = verify(dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("files=0"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn bad_input_is_an_error() {
    assert_eq!(zomega(&["run-suite", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(zomega(&["run-suite", "--suite", "coding", "--budget", "rhm"]).status.code(), Some(1));
    assert_eq!(zomega(&["gen-bs", "--max-len", "x"]).status.code(), Some(1));
    assert_eq!(zomega(&["--help"]).status.code(), Some(0));
}

#[test]
fn small_commands_emit_sealed_records() {
    let gen = zomega(&["gen-bs", "--max-len", "1", "--max-entry", "1"]);
    assert_eq!(gen.status.code(), Some(0));
    assert_eq!(stdout(&gen).lines().count(), 3);

    let tree = zomega(&["k0-tree", "--depth", "2"]);
    assert!(stdout(&tree).lines().any(|l| l.starts_with("2\t")));

    let adv = zomega(&["adversary", "--K", "{0>0,1>0}", "--depth", "2"]);
    assert_eq!(adv.status.code(), Some(0), "{}", String::from_utf8_lossy(&adv.stderr));
    let text = stdout(&adv);
    assert!(!text.is_empty() && text.lines().all(|l| l.starts_with("exclusion\t") && l.contains("sha256=")));

    let rhm = zomega(&["rhm-cofinal", "--g", ";5", "--budget", "64"]);
    assert_eq!(rhm.status.code(), Some(0), "{}", String::from_utf8_lossy(&rhm.stderr));
    assert!(stdout(&rhm).starts_with("case"));

    let none = zomega(&["rhm-cofinal", "--g", ";5", "--budget", "0"]);
    assert_eq!(none.status.code(), Some(3));
}

/// The full acceptance run takes about a minute in release builds.
#[test]
#[ignore]
fn acceptance_prints_nine_passing_lines() {
    let o = Command::new(env!("CARGO_BIN_EXE_acceptance")).output().unwrap();
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("criterion ")).collect();
    assert_eq!(lines.len(), 9, "{text}");
    assert!(lines.iter().all(|l| l.contains(": PASS ")), "{text}");
    assert_eq!(o.status.code(), Some(0));
}
