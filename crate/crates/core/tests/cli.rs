use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pyramid_evidence::fixtures::synthetic_facade;
use pyramid_evidence::io::{write_pgm, PgmEncoding, REPORT_HEADER};

fn pyrev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pyrev"))
        .args(args)
        .output()
        .unwrap()
}

fn asset(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("assets")
        .join(name)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn facade_pgm(dir: &Path) -> PathBuf {
    let path = dir.join("facade.pgm");
    write_pgm(&synthetic_facade().image, PgmEncoding::Binary, &path).unwrap();
    path
}

#[test]
fn shutter_prints_belief() {
    let o = pyrev(&["shutter"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Bel(shutter) = 0.443\nBel(THETA) = 0.557\n");
}

#[test]
fn table1_report() {
    let o = pyrev(&["table1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with(REPORT_HEADER));
    assert_eq!(text.lines().count(), 14);
    let w16 = text.lines().find(|l| l.starts_with("W1-6\t")).unwrap();
    assert!(w16.ends_with("\t0.449\t0.600\t0.600\t0.492\t0.000\t0.492"));
}

#[test]
fn table1_with_explicit_knowledge_matches_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.tsv");
    let o = pyrev(&[
        "table1",
        "--knowledge",
        &asset("window.ks"),
        "--knowledge",
        &asset("sibling.ks"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        stdout(&pyrev(&["table1"]))
    );
}

#[test]
fn verify_vacuous_evidence_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("vacuous.mass");
    std::fs::write(&m, "frame long low next-to\nfocal THETA 1\n").unwrap();
    let o = pyrev(&[
        "verify",
        m.to_str().unwrap(),
        "--knowledge",
        &asset("shutter.ks"),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("Bel(shutter) = 0.000"));
}

#[test]
fn verify_shutter_evidence() {
    let o = pyrev(&[
        "verify",
        &asset("shutter_evidence.mass"),
        "--knowledge",
        &asset("shutter.ks"),
    ]);
    assert!(stdout(&o).starts_with("Bel(shutter) = 0.443"));
}

#[test]
fn combine_reports_conflict() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.mass");
    let b = dir.path().join("b.mass");
    std::fs::write(&a, "frame window\nfocal window 0.5\nfocal THETA 0.5\n").unwrap();
    std::fs::write(&b, "frame window\nfocal !window 0.5\nfocal THETA 0.5\n").unwrap();
    let o = pyrev(&["combine", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("# conflict 0.250000"));
    let m = pyramid_evidence::evidence::MassFunction::parse(&text).unwrap();
    assert!((m.total() - 1.0).abs() < 1e-12);
}

#[test]
fn combine_total_conflict_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.mass");
    let b = dir.path().join("b.mass");
    std::fs::write(&a, "frame window\nfocal window 1\n").unwrap();
    std::fs::write(&b, "frame window\nfocal !window 1\n").unwrap();
    let o = pyrev(&["combine", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("conflict"));
}

#[test]
fn pipeline_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let img = facade_pgm(dir.path());
    let mut reports = Vec::new();
    let mut overlays = Vec::new();
    for workers in ["1", "2", "8"] {
        let report = dir.path().join(format!("r{workers}.tsv"));
        let overlay = dir.path().join(format!("o{workers}.ppm"));
        let o = pyrev(&[
            "pipeline",
            img.to_str().unwrap(),
            "--config",
            &asset("pipeline.toml"),
            "--out",
            report.to_str().unwrap(),
            "--overlay",
            overlay.to_str().unwrap(),
            "--workers",
            workers,
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        reports.push(std::fs::read(&report).unwrap());
        overlays.push(std::fs::read(&overlay).unwrap());
    }
    assert!(reports.windows(2).all(|w| w[0] == w[1]));
    assert!(overlays.windows(2).all(|w| w[0] == w[1]));
    let text = String::from_utf8(reports.remove(0)).unwrap();
    let top: Vec<&str> = text.lines().skip(1).take(12).collect();
    assert!(top.iter().all(|l| l.ends_with("\t0.492")), "{text}");
}

#[test]
fn pipeline_threshold_override() {
    let dir = tempfile::tempdir().unwrap();
    let img = facade_pgm(dir.path());
    let o = pyrev(&["pipeline", img.to_str().unwrap(), "--threshold", "4000.5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), format!("{REPORT_HEADER}\n"));
    let o = pyrev(&["pipeline", img.to_str().unwrap(), "--threshold", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_2_with_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad_pgm = dir.path().join("bad.pgm");
    std::fs::write(&bad_pgm, "P5 4 4 65535\n").unwrap();
    let bad_cfg = dir.path().join("bad.toml");
    std::fs::write(&bad_cfg, "edge_treshold = 3\n").unwrap();
    let img = facade_pgm(dir.path());
    let cases: Vec<Vec<String>> = vec![
        vec!["pipeline".into(), bad_pgm.display().to_string()],
        vec![
            "pipeline".into(),
            dir.path().join("none.pgm").display().to_string(),
        ],
        vec![
            "pipeline".into(),
            img.display().to_string(),
            "--config".into(),
            bad_cfg.display().to_string(),
        ],
        vec![
            "pipeline".into(),
            img.display().to_string(),
            "--knowledge".into(),
            asset("window.ks"),
        ],
        vec![
            "pipeline".into(),
            img.display().to_string(),
            "--workers".into(),
            "0".into(),
        ],
        vec![
            "verify".into(),
            asset("shutter.ks"),
            "--knowledge".into(),
            asset("shutter.ks"),
        ],
        vec![
            "verify".into(),
            asset("shutter_evidence.mass"),
            "--knowledge".into(),
            asset("window.ks"),
        ],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = pyrev(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn non_square_image_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("wide.pgm");
    write_pgm(
        &pyramid_evidence::pyramid::GrayImage::filled(64, 32, 0),
        PgmEncoding::Ascii,
        &p,
    )
    .unwrap();
    let o = pyrev(&["pipeline", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
