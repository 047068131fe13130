use std::process::{Command, Output};

use trimat_geom::cli::document::Document;

fn trimat_geom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimat-geom"))
        .args(args)
        .env_remove("TRIMAT_GEOM_MAX_Q")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(
        trimat_geom(&["counts", "--n", "2", "--q", "3"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        trimat_geom(&["verify", "--n", "2", "--q", "2"])
            .status
            .code(),
        Some(0)
    );
    for bad in [
        &["counts", "--n", "2", "--q", "6"][..],
        &["counts", "--n", "5", "--q", "2"],
        &["verify", "--n", "4", "--q", "2"],
        &["planes", "--n", "2", "--q", "2", "--kind", "2affine"],
        &["planes", "--n", "2", "--q", "3", "--set", "k:7"],
        &["planes", "--n", "3", "--q", "2", "--subset", "(9,9,9,9)"],
        &["counts", "--n", "2", "--q", "2", "--format", "dot"],
        &["frobnicate", "--n", "2", "--q", "2"],
    ] {
        let o = trimat_geom(bad);
        assert_eq!(o.status.code(), Some(2), "{bad:?}");
        assert!(!o.stderr.is_empty(), "{bad:?}");
    }
}

#[test]
fn q_ceiling_comes_from_the_environment() {
    assert_eq!(
        trimat_geom(&["counts", "--n", "2", "--q", "17"])
            .status
            .code(),
        Some(2)
    );
    let raised = Command::new(env!("CARGO_BIN_EXE_trimat-geom"))
        .args(["counts", "--n", "2", "--q", "17"])
        .env("TRIMAT_GEOM_MAX_Q", "32")
        .output()
        .unwrap();
    assert_eq!(raised.status.code(), Some(0));
    assert!(stdout(&raised).contains("5508"), "17 * 18^2 points");
    let lowered = Command::new(env!("CARGO_BIN_EXE_trimat-geom"))
        .args(["counts", "--n", "2", "--q", "3"])
        .env("TRIMAT_GEOM_MAX_Q", "2")
        .output()
        .unwrap();
    assert_eq!(lowered.status.code(), Some(2));
}

#[test]
fn json_round_trips() {
    for args in [
        &["export", "--n", "2", "--q", "2"][..],
        &["export", "--n", "3", "--q", "2", "--kind", "2affine"],
        &["export", "--n", "3", "--q", "2", "--kind", "points"],
        &[
            "planes", "--n", "3", "--q", "2", "--set", "k:1", "--format", "json",
        ],
    ] {
        let o = trimat_geom(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        let doc = Document::from_json(&text).unwrap();
        assert_eq!(doc.to_json().unwrap(), text);
        for s in &doc.structures {
            assert!(s.axioms_hold(), "{}", s.id);
            let i = s.incidence();
            assert_eq!(i.points, s.points);
            for l in &s.lines {
                assert!(l
                    .point_ids
                    .iter()
                    .all(|p| i.points.binary_search(p).is_ok()));
            }
        }
    }
}

#[test]
fn unsupported_schema_version_is_rejected() {
    let text = stdout(&trimat_geom(&[
        "export", "--n", "2", "--q", "2", "--kind", "points",
    ]));
    let bumped = text.replacen("\"schema_version\": 1", "\"schema_version\": 99", 1);
    assert!(Document::from_json(&bumped).is_err());
}

#[test]
fn outputs_do_not_depend_on_workers() {
    for format in ["json", "csv", "dot", "text"] {
        let runs: Vec<Vec<u8>> = ["1", "2", "5"]
            .iter()
            .map(|w| {
                trimat_geom(&[
                    "planes",
                    "--n",
                    "3",
                    "--q",
                    "2",
                    "--format",
                    format,
                    "--workers",
                    w,
                ])
                .stdout
            })
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]), "{format}");
    }
    let a = trimat_geom(&[
        "verify",
        "--n",
        "3",
        "--q",
        "2",
        "--format",
        "json",
        "--workers",
        "1",
    ]);
    let b = trimat_geom(&[
        "verify",
        "--n",
        "3",
        "--q",
        "2",
        "--format",
        "json",
        "--workers",
        "3",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.dot");
    let o = trimat_geom(&[
        "export",
        "--n",
        "2",
        "--q",
        "2",
        "--format",
        "dot",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph trimat_geom {"));
    assert!(dot.contains("label=\"(6,0)\""));
}

#[test]
fn csv_parses() {
    let o = trimat_geom(&["counts", "--n", "3", "--q", "2", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    let points = rows.iter().find(|r| &r[0] == "points").unwrap();
    assert_eq!((&points[1], &points[2], &points[3]), ("216", "216", "true"));
}
