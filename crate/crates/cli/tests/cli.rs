use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn ntiers(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntiers"))
        .args(args.iter().map(|a| a.as_ref()))
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn transformed(dir: &Path, extra: &[&str]) -> PathBuf {
    let out = dir.join("out.xml");
    let mut args: Vec<&dyn AsRef<std::ffi::OsStr>> = vec![&"transform", &"-o"];
    let lab = fixture("laboratory.xml");
    args.push(&out);
    args.push(&lab);
    for e in extra {
        args.push(e);
    }
    let o = ntiers(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    out
}

#[test]
fn transform_laboratory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.xml");
    let trace = dir.path().join("trace.jsonl");
    let o = ntiers(&[
        &"transform",
        &fixture("laboratory.xml"),
        &"-o",
        &out,
        &"--trace",
        &trace,
    ]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("classes: 4\n"));
    assert!(s.contains("pages: 12\n"));
    assert!(s.contains("actions: 24\n"));
    assert!(s.contains("forms: 8\n"));
    assert!(stderr(&o).is_empty());
    assert_eq!(std::fs::read_to_string(&trace).unwrap().lines().count(), 68);
    let xml = std::fs::read_to_string(&out).unwrap();
    assert!(xml.contains(r#"name="crudlaboratoire""#));
}

#[test]
fn transform_failures() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.xml");
    let o = ntiers(&[&"transform", &dir.path().join("missing.xml"), &"-o", &out]);
    assert_eq!(code(&o), 2);
    let o = ntiers(&[&"transform", &fixture("duplicate-class.xml"), &"-o", &out]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    let line = err.lines().find(|l| l.contains("duplicate-classifier-name")).unwrap();
    assert_eq!(line.split('\t').count(), 4, "{line}");
    assert!(line.starts_with("error\t"));
    assert!(!out.exists());
    let o = ntiers(&[&"transform", &fixture("golden-fig9.xml"), &"-o", &out]);
    assert_eq!(code(&o), 2);
}

#[test]
fn transform_output_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let x = std::fs::read(transformed(a.path(), &[])).unwrap();
    let y = std::fs::read(transformed(b.path(), &[])).unwrap();
    assert_eq!(x, y);
}

#[test]
fn validate_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let out = transformed(dir.path(), &[]);
    assert_eq!(
        code(&ntiers(&[&"validate", &fixture("laboratory.xml"), &"--kind", &"pim"])),
        0
    );
    assert_eq!(code(&ntiers(&[&"validate", &out, &"--kind", &"psm"])), 0);
    assert_eq!(
        code(&ntiers(&[&"validate", &fixture("laboratory.xml"), &"--kind", &"psm"])),
        2
    );
    assert_eq!(
        code(&ntiers(&[
            &"validate",
            &fixture("duplicate-class.xml"),
            &"--kind",
            &"pim"
        ])),
        1
    );
    assert_eq!(code(&ntiers(&[&"validate", &out, &"--kind", &"bogus"])), 2);
}

#[test]
fn validate_reports_asymmetric_psm() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("golden-fig9.xml")).unwrap().replacen(
        r#"dto="//@bPack/@dto.1""#,
        r#"dto="//@bPack/@dto.2""#,
        1,
    );
    let broken = dir.path().join("broken.xml");
    std::fs::write(&broken, text).unwrap();
    let o = ntiers(&[&"validate", &broken, &"--kind", &"psm"]);
    assert_eq!(code(&o), 1);
    assert!(!stderr(&o).is_empty());
}

#[test]
fn inspect_lists_names() {
    let dir = tempfile::tempdir().unwrap();
    let out = transformed(dir.path(), &[]);
    let first = ntiers(&[&"inspect", &out]);
    assert_eq!(code(&first), 0);
    let s = stdout(&first);
    assert!(s.contains("action: 24\n"));
    assert!(s.contains("  RemoveSampleAction\n"));
    let second = ntiers(&[&"inspect", &out]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn inspect_empty_model() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.xml");
    assert_eq!(code(&ntiers(&[&"transform", &fixture("empty.xml"), &"-o", &out])), 0);
    let s = stdout(&ntiers(&[&"inspect", &out]));
    let counts: Vec<&str> = s.lines().filter(|l| !l.starts_with("name")).collect();
    assert_eq!(counts.len(), 9);
    assert!(counts.iter().all(|l| l.ends_with(": 0")));
    assert_eq!(code(&ntiers(&[&"inspect", &fixture("laboratory.xml")])), 2);
}

#[test]
fn diff_against_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = transformed(dir.path(), &["--fig9-compat"]);
    let golden = fixture("golden-fig9.xml");
    assert_eq!(code(&ntiers(&[&"diff", &out, &out])), 0);
    let o = ntiers(&[&"diff", &out, &golden, &"--order-insensitive"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = ntiers(&[&"diff", &out, &golden]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("differences: "));
    assert_eq!(code(&ntiers(&[&"diff", &fixture("laboratory.xml"), &out])), 2);
    assert_eq!(
        code(&ntiers(&[
            &"diff",
            &fixture("laboratory.xml"),
            &fixture("laboratory.xml")
        ])),
        0
    );
}

#[test]
fn diff_detects_rename() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("golden-fig9.xml"))
        .unwrap()
        .replace("RemovePatientAction", "DeletePatientAction");
    let other = dir.path().join("other.xml");
    std::fs::write(&other, text).unwrap();
    let o = ntiers(&[&"diff", &fixture("golden-fig9.xml"), &other, &"--order-insensitive"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("DeletePatientAction"));
}

#[test]
fn pipeline_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = transformed(dir.path(), &[]);
    assert_eq!(code(&ntiers(&[&"validate", &out, &"--kind", &"psm"])), 0);
    let again = dir.path().join("again.xml");
    let text = std::fs::read_to_string(&out).unwrap();
    std::fs::write(&again, &text).unwrap();
    assert_eq!(code(&ntiers(&[&"diff", &out, &again])), 0);
}

#[test]
fn scaffold_laboratory() {
    let dir = tempfile::tempdir().unwrap();
    let out = transformed(dir.path(), &[]);
    let tree = dir.path().join("tree");
    let manifest = dir.path().join("manifest.jsonl");
    let o = ntiers(&[&"scaffold", &out, &tree, &"--manifest", &manifest]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("files: 37\n"));
    assert_eq!(std::fs::read_to_string(&manifest).unwrap().lines().count(), 37);
    assert!(tree.join("view/CreatePatientPage.jsp").is_file());
}

#[test]
fn scaffold_with_templates() {
    let dir = tempfile::tempdir().unwrap();
    let out = transformed(dir.path(), &[]);
    let templates = dir.path().join("templates");
    std::fs::create_dir(&templates).unwrap();
    std::fs::write(templates.join("jsp.tmpl"), "<h1>{name}</h1>\n").unwrap();
    let tree = dir.path().join("tree");
    assert_eq!(
        code(&ntiers(&[&"scaffold", &out, &tree, &"--templates", &templates])),
        0
    );
    let page = std::fs::read_to_string(tree.join("view/UpdateSamplePage.jsp")).unwrap();
    assert_eq!(page, "<h1>UpdateSamplePage.jsp</h1>\n");

    std::fs::write(templates.join("jsp.tmpl"), "{unknown}\n").unwrap();
    let fresh = dir.path().join("fresh");
    assert_eq!(
        code(&ntiers(&[&"scaffold", &out, &fresh, &"--templates", &templates])),
        2
    );
    let missing = dir.path().join("nope");
    assert_eq!(code(&ntiers(&[&"scaffold", &out, &fresh, &"--templates", &missing])), 2);
}

#[test]
fn scaffold_failures() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("e.xml");
    assert_eq!(code(&ntiers(&[&"transform", &fixture("empty.xml"), &"-o", &empty])), 0);
    let o = ntiers(&[&"scaffold", &empty, &dir.path().join("tree")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("files: 1\n"));

    // a regular file where the output directory should be
    let blocker = dir.path().join("blocker");
    std::fs::write(&blocker, "").unwrap();
    assert_eq!(code(&ntiers(&[&"scaffold", &empty, &blocker])), 2);

    let text = std::fs::read_to_string(fixture("golden-fig9.xml")).unwrap().replacen(
        r#"dto="//@bPack/@dto.1""#,
        r#"dto="//@bPack/@dto.2""#,
        1,
    );
    let broken = dir.path().join("broken.xml");
    std::fs::write(&broken, text).unwrap();
    assert_eq!(code(&ntiers(&[&"scaffold", &broken, &dir.path().join("t2")])), 1);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&ntiers(&[])), 2);
    assert_eq!(code(&ntiers(&[&"frobnicate"])), 2);
    assert_eq!(code(&ntiers(&[&"transform", &fixture("laboratory.xml")])), 2);
}
