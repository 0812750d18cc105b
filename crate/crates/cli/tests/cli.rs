use std::fs;
use std::process::{Command, Output};

fn posetprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetprod"))
        .args(args)
        .env_remove("POSET_PRODUCE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_chain() {
    let out = posetprod(&["gen", "--family", "chain", "--n", "5"]);
    assert!(out.status.success());
    let p = posetprod::Poset::parse(&stdout(&out)).unwrap();
    assert_eq!(p, posetprod::Poset::chain(5));
}

#[test]
fn gen_to_file_from_spec() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.poset");
    let out = posetprod(&["gen", "--family", "random:12:0.3:7", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let p = posetprod::Poset::parse(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(p, posetprod::families::random(12, 0.3, 7).unwrap());
}

#[test]
fn entropy_of_single_relation_example() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(&dir, "bc.poset", "n 3\n1 2\n");
    let out = posetprod(&["entropy", "--poset", &file]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("exact 0.6667"), "{text}");
    assert!(text.contains("greedy 0.9183"), "{text}");
}

#[test]
fn produce_with_seed_and_hidden_file() {
    let dir = tempfile::tempdir().unwrap();
    let v = write(&dir, "v.poset", "n 3\n0 1\n0 2\n");
    let out = posetprod(&["produce", "--poset", &v, "--seed", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verified true"));
    assert!(text.contains("comparisons"));

    for hidden in ["0 1 2", "2 1 0", "1 2 0"] {
        let h = write(&dir, "h.txt", hidden);
        let out = posetprod(&["produce", "--poset", &v, "--hidden", &h, "--pivot", "mom", "--format", "json"]);
        assert!(out.status.success());
        let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        let pi: Vec<usize> = serde_json::from_value(json["pi"].clone()).unwrap();
        let ranks: Vec<usize> = hidden.split(' ').map(|t| t.parse().unwrap()).collect();
        assert_eq!(ranks[pi[0]], 0, "minimum goes to the bottom element");
    }
}

#[test]
fn produce_seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(&dir, "c.poset", "n 6\n0 1\n1 2\n2 3\n3 4\n4 5\n");
    let run = |env: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_posetprod"))
            .args(["produce", "--poset", &chain])
            .env("POSET_PRODUCE_SEED", env)
            .output()
            .unwrap();
        assert!(out.status.success());
        stdout(&out)
    };
    let explicit = posetprod(&["produce", "--poset", &chain, "--seed", "42"]);
    assert_eq!(run("42"), stdout(&explicit));
}

#[test]
fn extend_formats() {
    let dir = tempfile::tempdir().unwrap();
    let n = write(&dir, "n.poset", "n 4\n0 2\n0 3\n1 3\n");
    let out = posetprod(&["extend", "--poset", &n]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("layer 0: [0, 1]"));
    let out = posetprod(&["extend", "--poset", &n, "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["layers"], serde_json::json!([[0, 1], [2, 3]]));
    assert_eq!(json["weak_entropy"], serde_json::json!(1.0));
}

#[test]
fn bench_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = posetprod(&[
        "bench", "--family", "chain:8", "antichain:100", "heap:2", "--trials", "3", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows: Vec<posetprod::BenchRow> = csv::Reader::from_path(&path)
        .unwrap()
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().filter(|r| r.family == "antichain:100").all(|r| r.comparisons == 0));
    assert!(rows.iter().filter(|r| r.family == "heap:2").all(|r| r.comparisons >= 2));

    let out = posetprod(&["bench", "--family", "selection:9:3", "--trials", "2", "--format", "json", "--pivot", "mom"]);
    let report: posetprod::BenchReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.rows.len(), 2);
}

#[test]
fn selfcheck_passes() {
    let out = posetprod(&["selfcheck", "--max-n", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("selfcheck ok"));
}

#[test]
fn bad_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cyclic = write(&dir, "cyc.poset", "n 2\n0 1\n1 0\n");
    let garbage = write(&dir, "bad.poset", "n x\n");
    let short = write(&dir, "short.txt", "0 1");
    let v = write(&dir, "v.poset", "n 3\n0 1\n0 2\n");
    for args in [
        vec!["entropy", "--poset", &cyclic],
        vec!["extend", "--poset", &garbage],
        vec!["produce", "--poset", "/nonexistent/file"],
        vec!["produce", "--poset", &v, "--hidden", &short],
        vec!["gen", "--family", "selection", "--n", "3", "--k", "9"],
        vec!["bench", "--family", "tree:3"],
        vec!["no-such-command"],
    ] {
        let out = posetprod(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
}
