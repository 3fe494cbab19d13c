use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klein-cert")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("klein-cert-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn list_contains_required_ids() {
    let out = run(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let ids: Vec<&str> = text.lines().filter_map(|l| l.split_whitespace().next()).collect();
    assert!(ids.contains(&"chern.bmy.p12"));
    assert!(ids.contains(&"congruence.order.p4"));
    let mut sorted = ids.clone();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
}

#[test]
fn filtered_verify_prints_one_row() {
    let out = run(&["verify", "--only", "bmy", "--p", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("chern.bmy.p8"));
    assert!(text.contains("297/448"));
    assert!(text.contains("1 checks: 1 pass"));
}

#[test]
fn unknown_prefix_is_an_error() {
    let out = run(&["verify", "--only", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("nonsense") && err.contains("congruence"));
}

#[test]
fn json_ledger_is_reproducible() {
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    for path in [&a, &b] {
        let out = run(&["verify", "--only", "ample,orbifold", "--json", path.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let text = String::from_utf8(ja).unwrap();
    assert!(text.contains("\"erratum-documented\"") && text.contains("\"paper_ref\""));
}

#[test]
fn enumerate_reads_presentation_files() {
    let path = scratch("i33.txt");
    std::fs::write(&path, "# I_3(3)\ngens a b\na^3\nb^3\nbr(3, a, b)\n").unwrap();
    let out = run(&["enumerate", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order 24") && text.contains("audit ok"));
}

#[test]
fn unwritable_json_path_is_reported() {
    let out = run(&["verify", "--only", "orbifold.models", "--json", "/nonexistent-dir/x.json"]);
    assert_eq!(out.status.code(), Some(2));
}
