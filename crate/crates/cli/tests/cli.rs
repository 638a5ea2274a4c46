use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use roughmat::binrel::{is_binary_dependence, relation_from_matrix};
use roughmat::io::{parse_matrix, parse_partition, write_matrix};
use roughmat::matroid::{bases_via_ones, circuits_via_nullspace, VectorMatroid};
use roughmat::{FieldSpec, SetFamily};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn roughmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roughmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = roughmat(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

fn plain_family(f: &SetFamily) -> String {
    f.iter()
        .map(|s| {
            if s.is_empty() {
                "{}\n".to_string()
            } else {
                format!("{s}\n")
            }
        })
        .collect()
}

#[test]
fn approx_golden() {
    let p = path("two_blocks.partition");
    let upper = stdout_ok(&["approx", &p, "--which", "upper", "--set", "x1,x2,x3"]);
    assert_eq!(upper, "x1 x2 x3 x4 x5\n");
    let lower = stdout_ok(&["approx", &p, "--which", "lower", "--set", "x1,x2,x3"]);
    assert_eq!(lower, "x1 x3\n");
    let empty = stdout_ok(&["approx", &p, "--which", "lower", "--set", "{}"]);
    assert_eq!(empty, "");
    let structured = stdout_ok(&[
        "approx",
        &p,
        "--which",
        "lower",
        "--set",
        "x1 x3",
        "--format",
        "structured",
    ]);
    assert_eq!(
        structured,
        "{\"command\":\"approx\",\"which\":\"lower\",\"set\":[\"x1\",\"x3\"]}\n"
    );
}

#[test]
fn compute_golden() {
    let circuits = stdout_ok(&[
        "compute",
        &path("triangle.matrix"),
        "circuits",
        "--field",
        "gf2",
    ]);
    assert!(circuits.lines().any(|l| l == "x4 x5 x6"), "{circuits}");
    let over_q = stdout_ok(&["compute", &path("triangle.matrix"), "circuits"]);
    assert!(!over_q.lines().any(|l| l == "x4 x5 x6"), "{over_q}");

    let encoded = stdout_ok(&["compute", &path("two_blocks.partition"), "encode"]);
    assert_eq!(
        encoded,
        "field gf2\nlabels x1 x2 x3 x4 x5\n1 0 1 0 0\n0 1 0 1 1\n"
    );

    let verdict = stdout_ok(&["compute", &path("zero_column.matrix"), "is-bdm"]);
    assert_eq!(verdict, "non-member\nzero-column x2\n");
    let member = stdout_ok(&[
        "compute",
        &path("two_blocks.partition"),
        "is-bdm",
        "--format",
        "structured",
    ]);
    assert_eq!(
        member,
        "{\"command\":\"is-bdm\",\"field\":\"gf2\",\"member\":true,\"witness\":null}\n"
    );

    let relation = stdout_ok(&["compute", &path("sign_flip.matrix"), "relation"]);
    assert_eq!(
        relation,
        "x1 x1\nx1 x2\nx2 x1\nx2 x2\nx2 x3\nx3 x2\nx3 x3\n"
    );

    let bases = stdout_ok(&["compute", &path("two_blocks.partition"), "ones-min"]);
    assert_eq!(bases, "x1 x2\nx1 x4\nx1 x5\nx2 x3\nx3 x4\nx3 x5\n");

    let indep = stdout_ok(&[
        "compute",
        &path("two_blocks.partition"),
        "indep-check",
        "--set",
        "x1,x4",
    ]);
    assert_eq!(indep, "independent\n");
    let dep = stdout_ok(&[
        "compute",
        &path("two_blocks.partition"),
        "indep-check",
        "--set",
        "x2,x4",
    ]);
    assert_eq!(dep, "dependent\n");
}

#[test]
fn structured_mirrors_plain() {
    let file = path("triangle.matrix");
    let plain = stdout_ok(&["compute", &file, "nullspace-min", "--field", "gf2"]);
    let structured = stdout_ok(&[
        "compute",
        &file,
        "nullspace-min",
        "--field",
        "gf2",
        "--format",
        "structured",
    ]);
    let value: serde_json::Value = serde_json::from_str(&structured).unwrap();
    assert_eq!(value["command"], "nullspace-min");
    assert_eq!(value["field"], "gf2");
    let lines: Vec<String> = value["sets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            let labels: Vec<&str> = s
                .as_array()
                .unwrap()
                .iter()
                .map(|l| l.as_str().unwrap())
                .collect();
            format!("{}\n", labels.join(" "))
        })
        .collect();
    assert_eq!(lines.concat(), plain);
}

#[test]
fn dispatch_matches_library() {
    let tri = parse_matrix(&fs::read_to_string(data("triangle.matrix")).unwrap()).unwrap();
    let tri_gf2 = tri.reinterpret(FieldSpec::Binary).unwrap();
    let tri_path = path("triangle.matrix");
    assert_eq!(
        stdout_ok(&["compute", &tri_path, "circuits"]),
        plain_family(&VectorMatroid::new(tri.clone()).circuits().unwrap())
    );
    assert_eq!(
        stdout_ok(&["compute", &tri_path, "bases"]),
        plain_family(&VectorMatroid::new(tri.clone()).bases().unwrap())
    );
    assert_eq!(
        stdout_ok(&["compute", &tri_path, "nullspace-min", "--field", "gf2"]),
        plain_family(&circuits_via_nullspace(&tri_gf2).unwrap())
    );
    assert_eq!(
        stdout_ok(&["compute", &tri_path, "relation"]),
        relation_from_matrix(&tri).to_string()
    );
    assert_eq!(
        stdout_ok(&["compute", &tri_path, "is-bdm", "--field", "gf2"]),
        match is_binary_dependence(&tri_gf2).unwrap().witness() {
            None => "member\n".to_string(),
            Some(roughmat::binrel::BdmWitness::DependentSet(s)) =>
                format!("non-member\ndependent-set {s}\n"),
            Some(roughmat::binrel::BdmWitness::ZeroColumn(c)) => {
                format!("non-member\nzero-column {}\n", tri_gf2.labels().label(*c))
            }
        }
    );

    let p = parse_partition(&fs::read_to_string(data("two_blocks.partition")).unwrap()).unwrap();
    let p_path = path("two_blocks.partition");
    let b3 = p.encode_matrix(FieldSpec::Prime(3));
    assert_eq!(
        stdout_ok(&["compute", &p_path, "encode", "--field", "gf3"]),
        write_matrix(&b3)
    );
    assert_eq!(
        stdout_ok(&["compute", &p_path, "circuits", "--field", "gf3"]),
        plain_family(&VectorMatroid::new(b3).circuits().unwrap())
    );
    assert_eq!(
        stdout_ok(&["compute", &p_path, "ones-min"]),
        plain_family(&bases_via_ones(&p.encode_matrix(FieldSpec::Binary)).unwrap())
    );
}

#[test]
fn outputs_are_deterministic() {
    let args = ["verify", "props", "--samples", "50", "--seed", "7"];
    let first = stdout_ok(&args);
    assert_eq!(first, stdout_ok(&args));
    assert!(first.starts_with("props PASS"), "{first}");
    assert!(first.contains("seed=7"), "{first}");
    let file = path("triangle.matrix");
    let c = [
        "compute",
        file.as_str(),
        "circuits",
        "--format",
        "structured",
    ];
    assert_eq!(stdout_ok(&c), stdout_ok(&c));
}

#[test]
fn verify_reports() {
    let t4 = stdout_ok(&["verify", "t4"]);
    assert_eq!(t4, "t4 PASS: max_n=5 instances=3034 failures=0 seed=-\n");
    let t1 = stdout_ok(&["verify", "t1", "--max-n", "4", "--format", "structured"]);
    let value: serde_json::Value = serde_json::from_str(&t1).unwrap();
    assert_eq!(value[0]["theorem"], "t1");
    assert_eq!(value[0]["passed"], true);
    assert_eq!(value[0]["instances"], 3 * (1 + 2 + 5 + 15));
    let t2 = stdout_ok(&[
        "verify",
        "t2",
        "--samples",
        "200",
        "--seed",
        "42",
        "--max-n",
        "8",
    ]);
    assert!(t2.starts_with("t2 PASS"), "{t2}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.matrix");
    fs::write(&bad, "field gf4\n1 0\n").unwrap();
    let bad = bad.to_string_lossy().into_owned();

    let out = roughmat(&["compute", &bad, "circuits"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let out = roughmat(&["verify", "t1", "--max-n", "13"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("12"));

    let out = roughmat(&["verify", "t9"]);
    assert_eq!(out.status.code(), Some(2));

    let out = roughmat(&["compute", &path("triangle.matrix"), "encode"]);
    assert_eq!(out.status.code(), Some(2));

    let out = roughmat(&["compute", &path("triangle.matrix"), "ones-min"]);
    assert_eq!(out.status.code(), Some(2));

    let out = roughmat(&[
        "approx",
        &path("two_blocks.partition"),
        "--which",
        "upper",
        "--set",
        "x9",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = roughmat(&["compute", &path("two_blocks.partition"), "indep-check"]);
    assert_eq!(out.status.code(), Some(2));

    let out = roughmat(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
