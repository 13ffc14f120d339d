mod common;

use common::{fixture, read_fixture, snapshot};
use ntiers_core::io::{read_pim, sniff_kind, DocumentKind};
use ntiers_core::scaffold::{ScaffoldError, TemplateKind, CONFIG_FILE};
use ntiers_core::validate::Code;
use ntiers_core::{
    diff_psm, emit_scaffold, parse_pim, parse_psm, serialize_psm, transform, Dialect, ModelIoError, OrderMode,
    TemplateSet, TraceLog,
};

#[test]
fn laboratory_document_kinds() {
    assert_eq!(sniff_kind(&read_fixture("laboratory.xml")).unwrap(), DocumentKind::Pim);
    assert_eq!(sniff_kind(&read_fixture("golden-fig9.xml")).unwrap(), DocumentKind::Psm);
}

#[test]
fn duplicate_class_fixture_fails_validation() {
    let text = read_fixture("duplicate-class.xml");
    assert!(read_pim(&text).is_ok());
    let err = parse_pim(&text).unwrap_err();
    let report = err.report().expect("validation report");
    assert!(report.codes().contains(&Code::DuplicateClassifierName));
    assert_eq!(err.code(), "validation-failed");
}

#[test]
fn empty_fixture_gives_empty_root() {
    let pim = parse_pim(&read_fixture("empty.xml")).unwrap();
    let t = transform(&pim).unwrap();
    assert_eq!(t.psm.name, "crudp");
    assert!(t.trace.is_empty());
    let text = serialize_psm(&t.psm, Dialect::Full).unwrap();
    assert!(text.contains("<actionmapping>"));
    assert_eq!(parse_psm(&text).unwrap(), t.psm);
}

#[test]
fn psm_is_not_a_pim() {
    let err = parse_pim(&read_fixture("golden-fig9.xml")).unwrap_err();
    assert_eq!(err.code(), "schema-violation");
    let err = parse_psm(&read_fixture("laboratory.xml")).unwrap_err();
    assert_eq!(err.code(), "schema-violation");
}

#[test]
fn golden_differs_only_in_order() {
    let pim = parse_pim(&read_fixture("laboratory.xml")).unwrap();
    let ours = transform(&pim).unwrap().psm;
    let compat = parse_psm(&serialize_psm(&ours, Dialect::Fig9Compat).unwrap()).unwrap();
    let golden = parse_psm(&read_fixture("golden-fig9.xml")).unwrap();
    assert!(diff_psm(&compat, &golden, OrderMode::Insensitive).is_empty());
    assert!(!diff_psm(&compat, &golden, OrderMode::Sensitive).is_empty());
    // the full dialect also carries attributes and methods, which the golden lacks
    assert!(!diff_psm(&ours, &golden, OrderMode::Insensitive).is_empty());
}

#[test]
fn golden_with_a_broken_reference_is_rejected() {
    let text = read_fixture("golden-fig9.xml").replace("//@dPack/@pojo.3", "//@dPack/@pojo.9");
    match parse_psm(&text).unwrap_err() {
        ModelIoError::UnresolvedPath { path, line, .. } => {
            assert_eq!(path, "//@dPack/@pojo.9");
            assert!(line > 1);
        }
        other => panic!("unexpected {other}"),
    }
    let text = read_fixture("golden-fig9.xml").replace("//@dPack/@pojo.3", "//@dPack/@dao.3");
    assert_eq!(parse_psm(&text).unwrap_err().code(), "unresolved-path");
}

#[test]
fn malformed_input() {
    let err = parse_pim("<UmlMM:UmlPackage name=\"p\">").unwrap_err();
    assert_eq!(err.code(), "xml-malformed");
    let err = parse_psm("not xml at all <").unwrap_err();
    assert!(matches!(err.code(), "xml-malformed" | "schema-violation"));
}

#[test]
fn trace_jsonl_shape() {
    let pim = parse_pim(&read_fixture("laboratory.xml")).unwrap();
    let t = transform(&pim).unwrap();
    let text = t.trace.to_jsonl();
    let first = text.lines().next().unwrap();
    assert_eq!(
        first,
        r#"{"rule":"pojo","source":"//@class.0","target":"//@dPack/@pojo.0"}"#
    );
    assert_eq!(text.lines().count(), 68);
    assert_eq!(TraceLog::from_jsonl(&text).unwrap(), t.trace);
}

#[test]
fn scaffold_layout_and_templates() {
    let pim = parse_pim(&read_fixture("laboratory.xml")).unwrap();
    let psm = transform(&pim).unwrap().psm;
    let dir = tempfile::tempdir().unwrap();
    let manifest = emit_scaffold(&psm, &TemplateSet::default(), dir.path()).unwrap();
    let tree = snapshot(dir.path());
    assert!(tree.contains_key("dao/Patient.pojo.txt"));
    assert!(tree.contains_key("dao/IPatientDao.dao.txt"));
    assert!(tree.contains_key("business/SampleServiceImpl.serviceimpl.txt"));
    assert!(tree.contains_key("view/DisplaySamplePage.jsp"));
    assert!(tree.contains_key(CONFIG_FILE));
    let config = String::from_utf8(tree[CONFIG_FILE].clone()).unwrap();
    assert!(config.contains("RemoveSampleAction"));
    let total: u64 = manifest.entries.iter().map(|e| e.bytes).sum();
    assert_eq!(total, tree.values().map(|v| v.len() as u64).sum::<u64>());

    let mut custom = TemplateSet::default();
    custom.set(TemplateKind::Jsp, "{{page}} {name}\n");
    let other = tempfile::tempdir().unwrap();
    emit_scaffold(&psm, &custom, other.path()).unwrap();
    let page = std::fs::read_to_string(other.path().join("view/CreatePatientPage.jsp")).unwrap();
    assert_eq!(page, "{page} CreatePatientPage.jsp\n");
}

#[test]
fn scaffold_rejects_bad_templates_without_writing() {
    let pim = parse_pim(&read_fixture("laboratory.xml")).unwrap();
    let psm = transform(&pim).unwrap().psm;
    let mut bad = TemplateSet::default();
    bad.set(TemplateKind::Dao, "{name} {forms}\n");
    let dir = tempfile::tempdir().unwrap();
    let err = emit_scaffold(&psm, &bad, dir.path()).unwrap_err();
    assert!(matches!(
        err,
        ScaffoldError::Template {
            kind: TemplateKind::Dao,
            ..
        }
    ));
    assert!(snapshot(dir.path()).is_empty());
}

#[test]
fn scaffold_into_a_file_path_fails_with_io_error() {
    let pim = parse_pim(&read_fixture("empty.xml")).unwrap();
    let psm = transform(&pim).unwrap().psm;
    let file = tempfile::NamedTempFile::new().unwrap();
    let err = emit_scaffold(&psm, &TemplateSet::default(), file.path()).unwrap_err();
    assert!(matches!(err, ScaffoldError::Io { .. }));
}

#[test]
fn fixtures_exist() {
    for name in ["laboratory.xml", "golden-fig9.xml", "duplicate-class.xml", "empty.xml"] {
        assert!(fixture(name).is_file(), "{name}");
    }
}
