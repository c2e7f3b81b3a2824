use std::path::Path;
use std::process::{Command, Output};

use nquandle::export::import_json;
use nquandle::families::{family_presentation, shipped_diagram, Family, FamilyParams};

fn nquandle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nquandle"))
        .args(args)
        .env_remove("QF_MAX_VERTICES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stat<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

#[test]
fn theta_stats() {
    let o = nquandle(&[
        "enumerate",
        "--family",
        "theta3",
        "--labels",
        "3,3,2",
        "--format",
        "stats",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(stat(&s, "final_size"), Some("14"));
    assert_eq!(stat(&s, "components"), Some("3"));
}

#[test]
fn gkmn_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = nquandle(&[
        "enumerate",
        "--family",
        "Gkmn",
        "--k",
        "4",
        "--m",
        "3",
        "--n",
        "3",
        "--format",
        "json",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let j: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(j["size"], 192);
    let sizes: Vec<u64> = j["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [36, 36, 24, 24, 36, 36]);

    let g = import_json(&text).unwrap();
    let p = family_presentation(&FamilyParams::gkmn(4, 3, 3).unwrap())
        .unwrap()
        .expand_relations();
    let direct = nquandle::enumerate(&p, Default::default())
        .into_graph()
        .unwrap();
    for i in 0..6 {
        let b = nquandle::word::Gen(i);
        assert_eq!(
            g.canonical_code(g.basepoint(b)),
            direct.canonical_code(direct.basepoint(b))
        );
    }
}

#[test]
fn knotted_k4_exits_2() {
    let o = nquandle(&[
        "enumerate",
        "--family",
        "K4knot",
        "--labels",
        "3,3,2,2,2,2",
        "--max-vertices",
        "100000",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stat(&stdout(&o), "outcome")
        .unwrap()
        .starts_with("limit_exceeded"));
}

#[test]
fn env_sets_default_limit() {
    let o = Command::new(env!("CARGO_BIN_EXE_nquandle"))
        .args(["enumerate", "--family", "theta3", "--labels", "3,3,2"])
        .env("QF_MAX_VERTICES", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_nquandle"))
        .args([
            "enumerate",
            "--family",
            "theta3",
            "--labels",
            "3,3,2",
            "--max-vertices",
            "1000",
        ])
        .env("QF_MAX_VERTICES", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_1() {
    for args in [
        &["enumerate", "--family", "K5"][..],
        &["enumerate", "--family", "theta3", "--labels", "2,2"],
        &["enumerate"],
        &[
            "enumerate",
            "--family",
            "Gkmn",
            "--k",
            "0",
            "--m",
            "1",
            "--n",
            "1",
        ],
        &["enumerate", "--input", "/nonexistent/file"],
        &["frobnicate"],
    ] {
        let o = nquandle(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn theta_dot_has_6_nodes_18_edges() {
    let o = nquandle(&["export", "--family", "theta3", "--labels", "2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let nodes = s
        .lines()
        .filter(|l| l.trim_end().ends_with(';') && !l.contains("->") && !l.contains('['))
        .count();
    assert_eq!(nodes, 6);
    assert_eq!(s.matches("->").count(), 18);
    let again = nquandle(&["export", "--family", "theta3", "--labels", "2,2,2"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn output_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["dot", "json", "table", "stats"] {
        let run = |name: &str| {
            let p = dir.path().join(name);
            let o = nquandle(&[
                "export",
                "--family",
                "H1",
                "--labels",
                "3,2,2",
                "--format",
                format,
                "--color",
                "-o",
                p.to_str().unwrap(),
            ]);
            assert_eq!(o.status.code(), Some(0));
            std::fs::read(p).unwrap()
        };
        assert_eq!(run("a"), run("b"), "{format}");
    }
}

#[test]
fn verify_reports_clean() {
    let o = nquandle(&["verify", "--family", "DH", "--labels", "2,2,2,3,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(stat(&s, "final_size"), Some("102"));
    assert_eq!(stat(&s, "verified"), Some("true"));
}

#[test]
fn regress_manifest_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.toml");
    std::fs::write(
        &good,
        "[[row]]\nfamily = \"theta3\"\nlabels = [3, 2, 2]\nsize = 8\n",
    )
    .unwrap();
    let o = nquandle(&["regress", "--input", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));

    let bad = dir.path().join("bad.toml");
    std::fs::write(
        &bad,
        "[[row]]\nfamily = \"theta3\"\nlabels = [3, 2, 2]\nsize = 9\n",
    )
    .unwrap();
    let o = nquandle(&["regress", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("FAIL"));

    let broken = dir.path().join("broken.toml");
    std::fs::write(&broken, "[[row]]\nfamily = \"theta3\"\nsise = 9\n").unwrap();
    assert_eq!(
        nquandle(&["regress", "--input", broken.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn oracle_check_single_case() {
    let o = nquandle(&["oracle-check", "--k", "2", "--m", "3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS k=2 m=3 n=2 size=68"));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn input_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = shipped_diagram(Family::Theta3).unwrap();
    let diagram = write(dir.path(), "theta.diagram", &d.to_text());
    let o = nquandle(&["enumerate", "--input", &diagram, "--labels", "4,3,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stat(&stdout(&o), "final_size"), Some("26"));

    let p = family_presentation(&FamilyParams::gkm(3, 2).unwrap()).unwrap();
    let pres = write(dir.path(), "g32.pres", &p.to_text());
    let o = nquandle(&["enumerate", "--input", &pres]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stat(&stdout(&o), "final_size"), Some("18"));

    let garbage = write(
        dir.path(),
        "bad.pres",
        "gens: a b\nedges: a:1\nnonsense here\n",
    );
    let o = nquandle(&["enumerate", "--input", &garbage]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_exit_tracks_report() {
    // Exit 0 exactly when the report is clean, 3 otherwise.
    let o = nquandle(&["verify", "--family", "Gkm", "--k", "-2", "--m", "3"]);
    let s = stdout(&o);
    let clean = stat(&s, "verified") == Some("true");
    assert_eq!(o.status.code(), Some(if clean { 0 } else { 3 }));
}
