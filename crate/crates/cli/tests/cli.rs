use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanout-forge"))
        .args(args)
        .env_remove("FANOUT_FORGE_DENSE_CAP")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn heavy_hex_plan_reports_depth_seventeen() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    let out = run(&[
        "ghz",
        "--topology",
        "heavy-hex-156",
        "--root",
        "auto",
        "--out",
        path(&plan),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&plan).unwrap()).unwrap();
    assert_eq!(doc["depth"], 17);
    assert_eq!(doc["growth_table"].as_array().unwrap().last().unwrap(), 156);
    assert!(String::from_utf8_lossy(&out.stderr).contains("GHZ depth 17"));
}

#[test]
fn full_sixteen_fanout_passes_dense_check() {
    let out = run(&[
        "fanout",
        "--topology",
        "full",
        "--n",
        "16",
        "--verify",
        "dense",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["depth"], 7);
    assert_eq!(doc["verdict"]["pass"], true);
    assert_eq!(doc["verdict"]["mode"], "dense");
}

#[test]
fn measure_sim_decodes_identically() {
    let out = run(&[
        "measure-sim",
        "--n",
        "6",
        "--alpha",
        "000101",
        "--s",
        "1",
        "--beta",
        "201102",
        "--shots",
        "50",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let shots = doc["shots"].as_array().unwrap();
    assert_eq!(shots.len(), 50);
    assert!(shots
        .iter()
        .all(|s| s["eigenvalues"] == shots[0]["eigenvalues"]));
    assert!(shots.iter().all(|s| s["alpha"] == "000101"));
    assert_eq!(doc["identification"]["status"], "identified");
    assert_eq!(doc["identification"]["alpha"], "000101");
}

#[test]
fn identical_configurations_give_identical_bytes() {
    let args = [
        "measure-sim",
        "--n",
        "4",
        "--alpha",
        "1010",
        "--beta",
        "0120",
        "--shots",
        "5",
        "--seed",
        "3",
        "--topology",
        "line",
        "--root",
        "2",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let ghz = [
        "ghz",
        "--topology",
        "grid",
        "--dims",
        "4x4",
        "--format",
        "qasm",
    ];
    assert_eq!(run(&ghz).stdout, run(&ghz).stdout);
}

#[test]
fn missing_seed_is_logged() {
    let out = run(&["measure-sim", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let logged = String::from_utf8_lossy(&out.stderr);
    let seed: u64 = logged
        .lines()
        .find_map(|l| l.strip_prefix("seed: "))
        .expect("seed line")
        .parse()
        .unwrap();
    assert_eq!(json(&out)["seed"], seed);
}

#[test]
fn emitted_circuits_verify_when_fed_back() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &[&str]); 6] = [
        (
            "a.json",
            &["ghz", "--topology", "heavy-hex-156", "--root", "89"],
        ),
        (
            "b.qasm",
            &[
                "ghz",
                "--topology",
                "line",
                "--n",
                "7",
                "--root",
                "3",
                "--format",
                "qasm",
            ],
        ),
        (
            "c.json",
            &[
                "fanout",
                "--topology",
                "grid",
                "--dims",
                "3x4",
                "--root",
                "5",
            ],
        ),
        (
            "d.qasm",
            &["fanout", "--topology", "heavy-hex-156", "--format", "qasm"],
        ),
        (
            "e.json",
            &[
                "fanout",
                "--topology",
                "full",
                "--n",
                "9",
                "--verify",
                "none",
            ],
        ),
        (
            "f.qasm",
            &["ghz", "--topology", "full", "--n", "5", "--format", "qasm"],
        ),
    ];
    for (name, args) in cases {
        let file = dir.path().join(name);
        let mut full_args = args.to_vec();
        full_args.extend(["--out", path(&file)]);
        assert_eq!(run(&full_args).status.code(), Some(0), "{name}");
        let out = run(&["verify", "--circuit", path(&file)]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(json(&out)["pass"], true);
    }
}

#[test]
fn failed_verification_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ghz.json");
    run(&[
        "ghz",
        "--topology",
        "line",
        "--n",
        "4",
        "--root",
        "0",
        "--out",
        path(&file),
    ]);
    let out = run(&[
        "verify",
        "--circuit",
        path(&file),
        "--role",
        "fanout",
        "--root",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);

    let qasm = dir.path().join("cx.qasm");
    fs::write(&qasm, "OPENQASM 2.0;\nqreg q[3];\ncx q[0],q[1];\n").unwrap();
    let out = run(&[
        "verify",
        "--circuit",
        path(&qasm),
        "--root",
        "0",
        "--mode",
        "dense",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        json(&out)["verdicts"][0]["failures"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qasm");
    fs::write(&bad, "OPENQASM 2.0;\nqreg q[2];\nccx q[0],q[1];\n").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["ghz"],
        vec!["ghz", "--topology", "full"],
        vec!["ghz", "--topology", "line", "--n", "4", "--root", "9"],
        vec!["context", "--n", "3"],
        vec!["context", "--n", "4", "--beta", "0130"],
        vec!["verify", "--circuit", path(&bad), "--root", "0"],
        vec!["verify", "--circuit", "/nonexistent/file.json"],
        vec!["measure-sim", "--n", "4", "--alpha", "01"],
        vec!["bogus"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(
            String::from_utf8_lossy(&out.stderr).starts_with("error:"),
            "{args:?}"
        );
    }
    let out = run(&["verify", "--circuit", path(&bad), "--root", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn dense_cap_environment_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_fanout-forge"))
        .args([
            "fanout",
            "--topology",
            "full",
            "--n",
            "12",
            "--verify",
            "dense",
        ])
        .env("FANOUT_FORGE_DENSE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn edge_list_topology_and_depth_table() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("ring.txt");
    fs::write(&edges, "# ring\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n").unwrap();
    let out = run(&["depth-table", "--edges", path(&edges), "--root", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "layer,size\n1,2\n2,4\n3,6\n"
    );

    let broken = dir.path().join("broken.txt");
    fs::write(&broken, "0 1\n0 0\n").unwrap();
    let out = run(&["ghz", "--edges", path(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let split = dir.path().join("split.txt");
    fs::write(&split, "n=4\n0 1\n2 3\n").unwrap();
    let out = run(&["ghz", "--edges", path(&split), "--root", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn context_listing() {
    let out = run(&["context", "--n", "4", "--s", "1", "--beta", "0120"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["observables"].as_array().unwrap().len(), 9);
    let text = run(&["context", "--n", "2", "--format", "text"]);
    assert_eq!(String::from_utf8(text.stdout).unwrap(), "ZZ\nYY\nXX\n");
}

#[test]
fn decoding_external_shots() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    fs::write(&good, "00\n00\n").unwrap();
    let out = run(&[
        "measure-sim",
        "--n",
        "2",
        "--shots-file",
        path(&good),
        "--root",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["shots"][0]["eigenvalues"]["YY"], -1);
    assert_eq!(doc["identification"]["alpha"], "00");

    let mixed = dir.path().join("mixed.json");
    fs::write(&mixed, "[\"00\", \"10\"]").unwrap();
    let out = run(&[
        "measure-sim",
        "--n",
        "2",
        "--shots-file",
        path(&mixed),
        "--root",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["identification"]["status"], "inconsistent");
}
