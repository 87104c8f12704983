use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cayley_core::algebra::{axiom_check, parse_table};
use cayley_core::Graph;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn cayley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley"))
        .args(args)
        .env_remove("CAYLEY_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_even_as_json() {
    let o = cayley(&["classify", path(&fixture("even.tsv")), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdicts"]["groupCayley"], "yes");
    assert_eq!(v["classes"]["groupCayley"]["verdict"], "yes");
    assert_eq!(v["predicates"]["symmetric"], true);
    assert_eq!(v["predicates"]["loopComplete"], true);
    assert_eq!(v["overall"], "yes");
}

#[test]
fn classify_output_is_byte_stable() {
    let g = cayley(&["generate", "--table", path(&fixture("lq5.tbl"))]);
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.tsv");
    std::fs::write(&graph, stdout(&g)).unwrap();
    let a = cayley(&["classify", path(&graph), "--format", "json"]);
    let b = cayley(&["classify", path(&graph), "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let t1 = cayley(&["classify", path(&graph)]);
    let t2 = cayley(&["classify", path(&graph)]);
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn generate_left_quasigroup_table() {
    let o = cayley(&["generate", "--table", path(&fixture("lq5.tbl"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "a\ta\ta\na\tb\tb\na\tc\tc\nb\ta\tb\nb\tb\ta\nb\tc\tc\nc\ta\tc\nc\tb\tb\nc\tc\ta\n"
    );
}

#[test]
fn generate_with_subset_and_labels() {
    let o = cayley(&[
        "generate",
        "--table",
        path(&fixture("z4.tbl")),
        "--subset",
        "1",
        "--labels",
        "1=s",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0\ts\t1\n1\ts\t2\n2\ts\t3\n3\ts\t0\n");
    let bad = cayley(&[
        "generate",
        "--table",
        path(&fixture("z4.tbl")),
        "--labels",
        "1=s,2=s",
    ]);
    assert_eq!(code(&bad), 3);
    let unknown = cayley(&[
        "generate",
        "--table",
        path(&fixture("z4.tbl")),
        "--subset",
        "9",
    ]);
    assert_eq!(code(&unknown), 3);
}

#[test]
fn classify_path_is_negative() {
    let o = cayley(&["classify", path(&fixture("path3.tsv"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("overall\tno"));
}

#[test]
fn generate_classify_verify_loop() {
    let dir = tempfile::tempdir().unwrap();
    for (table, subset) in [
        ("z4.tbl", None),
        ("z4.tbl", Some("1")),
        ("z4.tbl", Some("2")),
        ("quasigroup.tbl", None),
        ("lq5.tbl", None),
    ] {
        let mut args = vec!["generate", "--table"];
        let t = fixture(table);
        args.push(path(&t));
        if let Some(s) = subset {
            args.extend(["--subset", s]);
        }
        let g = cayley(&args);
        assert_eq!(code(&g), 0);
        let graph = dir
            .path()
            .join(format!("{table}-{}.tsv", subset.unwrap_or("all")));
        std::fs::write(&graph, stdout(&g)).unwrap();
        let certs = dir
            .path()
            .join(format!("certs-{table}-{}", subset.unwrap_or("all")));
        let c = cayley(&[
            "classify",
            path(&graph),
            "--format",
            "json",
            "--cert-dir",
            path(&certs),
        ]);
        assert_eq!(code(&c), 0, "{table} {subset:?}");
        let v: Value = serde_json::from_str(&stdout(&c)).unwrap();
        let mut verified = 0;
        for (class, outcome) in v["classes"].as_object().unwrap() {
            if outcome["verdict"] == "yes" {
                let cert = outcome["certificatePath"].as_str().unwrap();
                let r = cayley(&["verify", "--cert", cert, path(&graph)]);
                assert_eq!(code(&r), 0, "{table} {subset:?} {class}");
                verified += 1;
            } else {
                assert!(outcome["certificatePath"].is_null());
            }
        }
        assert!(verified > 0);
    }
}

#[test]
fn verify_rejects_foreign_and_corrupt_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    let even = fixture("even.tsv");
    assert_eq!(
        code(&cayley(&[
            "classify",
            path(&even),
            "--cert-dir",
            path(&certs)
        ])),
        0
    );
    let cert = certs.join("groupCayley.json");
    let g = cayley(&["generate", "--table", path(&fixture("z4.tbl"))]);
    let z4 = dir.path().join("z4.tsv");
    std::fs::write(&z4, stdout(&g)).unwrap();
    assert_eq!(
        code(&cayley(&["verify", "--cert", path(&cert), path(&z4)])),
        3
    );

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let rows = v["operation"]["table"]["rows"].as_array_mut().unwrap();
    rows.swap(0, 1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(
        code(&cayley(&["verify", "--cert", path(&bad), path(&even)])),
        1
    );

    std::fs::write(&bad, "{").unwrap();
    assert_eq!(
        code(&cayley(&["verify", "--cert", path(&bad), path(&even)])),
        3
    );
}

#[test]
fn synthesize_operations() {
    let o = cayley(&[
        "synthesize",
        "--kind",
        "path",
        "--at",
        "0",
        path(&fixture("even.tsv")),
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let table = parse_table(&text).unwrap();
    assert!(axiom_check(&table).group);
    assert!(text.contains("# 1\ta\n"));

    let json = cayley(&[
        "synthesize",
        "--kind",
        "chain",
        "--format",
        "json",
        path(&fixture("even.tsv")),
    ]);
    assert_eq!(code(&json), 0);
    let v: Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["kind"], "chain");
    assert_eq!(v["report"]["group"], true);

    let neg = cayley(&["synthesize", "--kind", "chain", path(&fixture("path3.tsv"))]);
    assert_eq!(code(&neg), 1);
    assert!(String::from_utf8_lossy(&neg.stderr).contains("precondition"));
    let unknown = cayley(&[
        "synthesize",
        "--kind",
        "edge",
        "--at",
        "nope",
        path(&fixture("even.tsv")),
    ]);
    assert_eq!(code(&unknown), 3);
}

#[test]
fn completions_contain_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let g = cayley(&[
        "generate",
        "--table",
        path(&fixture("quasigroup.tbl")),
        "--subset",
        "b",
    ]);
    let partial = dir.path().join("partial.tsv");
    std::fs::write(&partial, stdout(&g)).unwrap();
    let input = Graph::parse(&stdout(&g)).unwrap();
    let o = cayley(&["complete", "--mode", "quasigroup", path(&partial)]);
    assert_eq!(code(&o), 0);
    let completed = Graph::parse(&stdout(&o)).unwrap();
    assert_eq!(completed.label_restriction(&["b"]).unwrap(), input);

    // The left-quasigroup completion labels by vertices: label b becomes c,
    // the target of a -b->.
    let o = cayley(&[
        "complete",
        "--mode",
        "left-quasigroup",
        "--at",
        "a",
        path(&partial),
    ]);
    assert_eq!(code(&o), 0);
    let completed = Graph::parse(&stdout(&o)).unwrap();
    let renamed: Vec<(String, String, String)> = completed
        .label_restriction(&["c"])
        .unwrap()
        .triple_set()
        .into_iter()
        .map(|(s, _, t)| (s, "b".to_string(), t))
        .collect();
    assert_eq!(Graph::from_edges(renamed).unwrap(), input);
    let neg = cayley(&[
        "complete",
        "--mode",
        "quasigroup",
        path(&fixture("path3.tsv")),
    ]);
    assert_eq!(code(&neg), 1);
}

#[test]
fn ball_and_dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let o = cayley(&[
        "ball",
        "--rules",
        path(&fixture("suffix.rws")),
        "--start",
        "0",
        "--radius",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let boundary: Vec<&str> = text
        .lines()
        .filter_map(|l| l.strip_prefix("# boundary\t"))
        .collect();
    assert_eq!(boundary, ["1", "a0", "b0"]);
    let g = Graph::parse(&text).unwrap();
    assert_eq!(g.to_tsv(), "0\ta\ta0\n0\tb\tb0\n0\tc\t1\n1\tc\t0\n");

    let ball = dir.path().join("ball.tsv");
    std::fs::write(&ball, &text).unwrap();
    let dot = stdout(&cayley(&["export-dot", path(&ball)]));
    assert!(dot.starts_with("digraph G {"));
    assert!(dot.contains("\"a0\" [shape=box];"));
    assert!(dot.contains("\"0\";"));
    assert!(dot.contains("\"0\" -> \"1\" [label=\"c\"];"));

    let zero = stdout(&cayley(&[
        "ball",
        "--rules",
        path(&fixture("suffix.rws")),
        "--start",
        "0",
        "--radius",
        "0",
    ]));
    std::fs::write(&ball, &zero).unwrap();
    let dot = stdout(&cayley(&["export-dot", path(&ball)]));
    assert_eq!(dot, "digraph G {\n  \"0\" [shape=box];\n}\n");

    let report = stdout(&cayley(&[
        "ball",
        "--rules",
        path(&fixture("suffix.rws")),
        "--start",
        "0",
        "--radius",
        "2",
        "--report",
    ]));
    assert!(report.contains("# advisory"));
    Graph::parse(&report).unwrap();

    let capped = cayley(&[
        "--ball-cap",
        "3",
        "ball",
        "--rules",
        path(&fixture("suffix.rws")),
        "--start",
        "0",
        "--radius",
        "3",
    ]);
    assert_eq!(code(&capped), 3);
}

#[test]
fn input_errors_exit_three() {
    assert_eq!(code(&cayley(&["classify", "/nonexistent/graph.tsv"])), 3);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tsv");
    std::fs::write(&bad, "a\tb\n").unwrap();
    let o = cayley(&["classify", path(&bad)]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(code(&cayley(&["frobnicate"])), 3);
    assert_eq!(
        code(&cayley(&[
            "--iso-budget",
            "0",
            "classify",
            path(&fixture("even.tsv"))
        ])),
        3
    );
    assert_eq!(code(&cayley(&["--help"])), 0);
}

#[test]
fn budget_env_var_applies() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("two.tsv");
    std::fs::write(&g, "p\ta\tq\nr\tb\ts\n").unwrap();
    assert_eq!(code(&cayley(&["classify", path(&g)])), 1);
    let run = |budget: &str| {
        Command::new(env!("CARGO_BIN_EXE_cayley"))
            .args(["classify", path(&g)])
            .env("CAYLEY_BUDGET", budget)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("1")), 2);
    assert_eq!(code(&run("0")), 3);
    assert_eq!(code(&run("1000000")), 1);
}

#[test]
fn random_tables_are_reproducible_and_well_formed() {
    for kind in ["magma", "left-quasigroup", "quasigroup"] {
        let a = cayley(&[
            "random-table",
            "--size",
            "5",
            "--kind",
            kind,
            "--seed",
            "11",
        ]);
        let b = cayley(&[
            "random-table",
            "--size",
            "5",
            "--kind",
            kind,
            "--seed",
            "11",
        ]);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
        let m = parse_table(&stdout(&a)).unwrap();
        assert_eq!(m.len(), 5);
        let r = axiom_check(&m);
        match kind {
            "left-quasigroup" => assert!(r.left_quasigroup),
            "quasigroup" => assert!(r.quasigroup),
            _ => {}
        }
    }
    assert_eq!(code(&cayley(&["random-table", "--size", "0"])), 3);
}

#[test]
fn properties_command() {
    let o = cayley(&[
        "properties",
        "--format",
        "json",
        path(&fixture("path3.tsv")),
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sourceComplete"], false);
    assert_eq!(v["vertexCount"], 3);
    let t = stdout(&cayley(&["properties", path(&fixture("even.tsv"))]));
    assert!(t.contains("\nregular\tyes\n"));
    assert!(t.contains("\ncomplete\tyes\n"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.tsv");
    let o = cayley(&[
        "generate",
        "--table",
        path(&fixture("z4.tbl")),
        "-o",
        path(&out),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(
        Graph::parse(&std::fs::read_to_string(&out).unwrap())
            .unwrap()
            .edge_count(),
        16
    );
}
