//! Stub-file emission from a PSM.
//!
//! Every templated element becomes one text file under `dao/`, `business/`
//! or `view/`, and the controller layer becomes a single
//! `controller.config.txt` listing every action and form. Templates are
//! plain text with `{placeholder}` substitution; `{{` and `}}` escape
//! literal braces.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::fragment::FragmentPath;
use crate::metamodel::psm::{paths, AttributeDecl, CrudProjectPackage, MethodDecl};
use crate::validate::{validate_psm, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemplateKind {
    Pojo,
    Dao,
    DaoImpl,
    Dto,
    Service,
    ServiceImpl,
    Jsp,
    Config,
}

impl TemplateKind {
    pub const ALL: [TemplateKind; 8] = [
        TemplateKind::Pojo,
        TemplateKind::Dao,
        TemplateKind::DaoImpl,
        TemplateKind::Dto,
        TemplateKind::Service,
        TemplateKind::ServiceImpl,
        TemplateKind::Jsp,
        TemplateKind::Config,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TemplateKind::Pojo => "pojo",
            TemplateKind::Dao => "dao",
            TemplateKind::DaoImpl => "daoimpl",
            TemplateKind::Dto => "dto",
            TemplateKind::Service => "service",
            TemplateKind::ServiceImpl => "serviceimpl",
            TemplateKind::Jsp => "jsp",
            TemplateKind::Config => "config",
        }
    }

    /// Placeholders a template of this kind may use.
    pub fn placeholders(self) -> &'static [&'static str] {
        match self {
            TemplateKind::Pojo | TemplateKind::Dto => &["name", "package", "attributes"],
            TemplateKind::Dao | TemplateKind::Service => &["name", "package", "methods"],
            TemplateKind::DaoImpl | TemplateKind::ServiceImpl => &["name", "package", "interface", "methods"],
            TemplateKind::Jsp => &["name", "package"],
            TemplateKind::Config => &["name", "package", "actions", "forms"],
        }
    }

    fn default_template(self) -> &'static str {
        match self {
            TemplateKind::Pojo => "pojo {name}\npackage {package}\n\nattributes:\n{attributes}\n",
            TemplateKind::Dto => "dto {name}\npackage {package}\n\nattributes:\n{attributes}\n",
            TemplateKind::Dao => "dao interface {name}\npackage {package}\n\nmethods:\n{methods}\n",
            TemplateKind::Service => "service interface {name}\npackage {package}\n\nmethods:\n{methods}\n",
            TemplateKind::DaoImpl => {
                "dao implementation {name}\npackage {package}\nimplements {interface}\n\nmethods:\n{methods}\n"
            }
            TemplateKind::ServiceImpl => {
                "service implementation {name}\npackage {package}\nimplements {interface}\n\nmethods:\n{methods}\n"
            }
            TemplateKind::Jsp => "<%-- page {name} --%>\n<%-- package {package} --%>\n",
            TemplateKind::Config => {
                "controller configuration {name}\npackage {package}\n\nactions:\n{actions}\n\nforms:\n{forms}\n"
            }
        }
    }

    fn directory(self) -> Option<&'static str> {
        match self {
            TemplateKind::Pojo | TemplateKind::Dao | TemplateKind::DaoImpl => Some("dao"),
            TemplateKind::Dto | TemplateKind::Service | TemplateKind::ServiceImpl => Some("business"),
            TemplateKind::Jsp => Some("view"),
            TemplateKind::Config => None,
        }
    }

    fn file_name(self, element: &str) -> String {
        match self {
            TemplateKind::Jsp => element.to_string(),
            TemplateKind::Config => CONFIG_FILE.to_string(),
            other => format!("{element}.{}.txt", other.as_str()),
        }
    }
}

impl fmt::Display for TemplateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub const CONFIG_FILE: &str = "controller.config.txt";
pub const SCAFFOLD_DIRS: [&str; 3] = ["dao", "business", "view"];

#[derive(Debug, Error)]
pub enum ScaffoldError {
    #[error("invalid-model: {} diagnostic(s)", .0.diagnostics.len())]
    InvalidModel(ValidationReport),
    #[error("template-error: {kind} template: {reason}")]
    Template { kind: TemplateKind, reason: String },
    #[error("template-error: element name {0:?} cannot be used as a file name")]
    UnsafeName(String),
    #[error("io-failure: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> ScaffoldError + '_ {
    move |source| ScaffoldError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateSet {
    templates: [String; 8],
}

impl Default for TemplateSet {
    fn default() -> Self {
        TemplateSet {
            templates: TemplateKind::ALL.map(|k| k.default_template().to_string()),
        }
    }
}

impl TemplateSet {
    pub fn get(&self, kind: TemplateKind) -> &str {
        &self.templates[kind as usize]
    }

    pub fn set(&mut self, kind: TemplateKind, template: impl Into<String>) {
        self.templates[kind as usize] = template.into();
    }

    /// Defaults overridden by any `<kind>.tmpl` file found in `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self, ScaffoldError> {
        let mut set = TemplateSet::default();
        if !dir.is_dir() {
            return Err(ScaffoldError::Io {
                path: dir.to_path_buf(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, "template directory not found"),
            });
        }
        for kind in TemplateKind::ALL {
            let path = dir.join(format!("{}.tmpl", kind.as_str()));
            if path.is_file() {
                set.set(kind, fs::read_to_string(&path).map_err(io_error(&path))?);
            }
        }
        Ok(set)
    }

    /// Checks every template against the placeholders of its kind.
    pub fn check(&self) -> Result<(), ScaffoldError> {
        for kind in TemplateKind::ALL {
            render(kind, self.get(kind), &|p| {
                kind.placeholders().contains(&p).then(String::new)
            })?;
        }
        Ok(())
    }
}

fn render(kind: TemplateKind, template: &str, value: &dyn Fn(&str) -> Option<String>) -> Result<String, ScaffoldError> {
    let err = |reason: String| ScaffoldError::Template { kind, reason };
    let mut out = String::with_capacity(template.len());
    let mut rest = template;
    while let Some(pos) = rest.find(['{', '}']) {
        out.push_str(&rest[..pos]);
        let tail = &rest[pos..];
        if let Some(after) = tail.strip_prefix("{{") {
            out.push('{');
            rest = after;
        } else if let Some(after) = tail.strip_prefix("}}") {
            out.push('}');
            rest = after;
        } else if tail.starts_with('}') {
            return Err(err("unmatched '}'".to_string()));
        } else {
            let end = tail
                .find('}')
                .ok_or_else(|| err("unterminated placeholder".to_string()))?;
            let name = &tail[1..end];
            let v = value(name).ok_or_else(|| err(format!("unresolvable placeholder {{{name}}}")))?;
            out.push_str(&v);
            rest = &tail[end + 1..];
        }
    }
    out.push_str(rest);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    /// Relative to the output directory, `/`-separated.
    pub path: String,
    pub source: FragmentPath,
    pub bytes: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScaffoldManifest {
    pub entries: Vec<ManifestEntry>,
}

impl ScaffoldManifest {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One JSON object per line: path, source, bytes.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("manifest entries always serialize"));
            out.push('\n');
        }
        out
    }
}

fn list_or_none(lines: Vec<String>) -> String {
    if lines.is_empty() {
        "  (none)".to_string()
    } else {
        lines.join("\n")
    }
}

fn attribute_lines(attributes: &[AttributeDecl]) -> String {
    list_or_none(
        attributes
            .iter()
            .map(|a| format!("  {}: {}", a.name, a.type_name))
            .collect(),
    )
}

fn method_lines(methods: &[MethodDecl]) -> String {
    list_or_none(
        methods
            .iter()
            .map(|m| {
                let params: Vec<_> = m
                    .parameters
                    .iter()
                    .map(|p| format!("{} {}: {}", p.direction, p.name, p.type_name))
                    .collect();
                format!("  {}({})", m.name, params.join(", "))
            })
            .collect(),
    )
}

fn safe_file_name(name: &str) -> Result<(), ScaffoldError> {
    let bad = name.is_empty() || name == "." || name == ".." || name.contains(['/', '\\', '\0']);
    if bad {
        Err(ScaffoldError::UnsafeName(name.to_string()))
    } else {
        Ok(())
    }
}

struct Planned {
    kind: TemplateKind,
    path: String,
    source: FragmentPath,
    content: String,
}

fn plan(psm: &CrudProjectPackage, templates: &TemplateSet) -> Result<Vec<Planned>, ScaffoldError> {
    let mut planned = Vec::new();
    let mut add = |kind: TemplateKind,
                   name: &str,
                   package: &str,
                   source: FragmentPath,
                   extra: &dyn Fn(&str) -> Option<String>|
     -> Result<(), ScaffoldError> {
        safe_file_name(name)?;
        let content = render(kind, templates.get(kind), &|p| {
            if !kind.placeholders().contains(&p) {
                return None;
            }
            match p {
                "name" => Some(name.to_string()),
                "package" => Some(package.to_string()),
                other => extra(other),
            }
        })?;
        let file = kind.file_name(name);
        let path = match kind.directory() {
            Some(dir) => format!("{dir}/{file}"),
            None => file,
        };
        planned.push(Planned {
            kind,
            path,
            source,
            content,
        });
        Ok(())
    };

    let dp = &psm.dao_package;
    let bp = &psm.business_package;
    for (i, p) in dp.pojos.iter().enumerate() {
        add(TemplateKind::Pojo, &p.name, &dp.name, paths::pojo(i), &|_| {
            Some(attribute_lines(&p.attributes))
        })?;
    }
    for (i, d) in dp.daos.iter().enumerate() {
        add(TemplateKind::Dao, &d.name, &dp.name, paths::dao(i), &|_| {
            Some(method_lines(&d.methods))
        })?;
    }
    for (i, d) in dp.daoimpls.iter().enumerate() {
        let ifaces: Vec<_> = d.interfaces.iter().map(|r| &dp.daos[r.index()]).collect();
        add(
            TemplateKind::DaoImpl,
            &d.name,
            &dp.name,
            paths::daoimpl(i),
            &|p| match p {
                "interface" => Some(ifaces.iter().map(|d| d.name.as_str()).collect::<Vec<_>>().join(", ")),
                _ => Some(method_lines(
                    &ifaces.iter().flat_map(|d| d.methods.clone()).collect::<Vec<_>>(),
                )),
            },
        )?;
    }
    for (i, d) in bp.dtos.iter().enumerate() {
        add(TemplateKind::Dto, &d.name, &bp.name, paths::dto(i), &|_| {
            Some(attribute_lines(&d.attributes))
        })?;
    }
    for (i, s) in bp.services.iter().enumerate() {
        add(TemplateKind::Service, &s.name, &bp.name, paths::service(i), &|_| {
            Some(method_lines(&s.methods))
        })?;
    }
    for (i, s) in bp.serviceimpls.iter().enumerate() {
        let ifaces: Vec<_> = s.interfaces.iter().map(|r| &bp.services[r.index()]).collect();
        add(
            TemplateKind::ServiceImpl,
            &s.name,
            &bp.name,
            paths::serviceimpl(i),
            &|p| match p {
                "interface" => Some(ifaces.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(", ")),
                _ => Some(method_lines(
                    &ifaces.iter().flat_map(|s| s.methods.clone()).collect::<Vec<_>>(),
                )),
            },
        )?;
    }
    let vp = &psm.ui_package.view_package;
    for (i, page) in vp.pages.iter().enumerate() {
        add(TemplateKind::Jsp, &page.name, &vp.name, paths::page(i), &|_| None)?;
    }

    let pages = &vp.pages;
    let am = psm.action_mapping();
    let actions = list_or_none(
        am.actions
            .iter()
            .map(|a| {
                let forward = a.forward.map_or("-", |f| pages[f.target.index()].name.as_str());
                let form = a.form.map_or("-", |f| am.forms[f.index()].name.as_str());
                format!("  {} forward={forward} form={form}", a.name)
            })
            .collect(),
    );
    let forms = list_or_none(
        am.forms
            .iter()
            .map(|f| {
                format!(
                    "  {} input={} attribute={}",
                    f.name,
                    pages[f.input.index()].name,
                    am.actions[f.attribute.index()].name
                )
            })
            .collect(),
    );
    add(
        TemplateKind::Config,
        &psm.name,
        &psm.ui_package.controller_package.name,
        paths::action_mapping(),
        &|p| match p {
            "actions" => Some(actions.clone()),
            _ => Some(forms.clone()),
        },
    )?;
    Ok(planned)
}

/// Renders every file in memory first, so template and model errors leave
/// `out_dir` untouched, then writes the tree.
pub fn emit_scaffold(
    psm: &CrudProjectPackage,
    templates: &TemplateSet,
    out_dir: &Path,
) -> Result<ScaffoldManifest, ScaffoldError> {
    let report = validate_psm(psm);
    if !report.is_valid() {
        return Err(ScaffoldError::InvalidModel(report));
    }
    templates.check()?;
    let planned = plan(psm, templates)?;

    for dir in SCAFFOLD_DIRS {
        let path = out_dir.join(dir);
        fs::create_dir_all(&path).map_err(io_error(&path))?;
    }
    let mut manifest = ScaffoldManifest::default();
    for p in planned {
        let path = out_dir.join(&p.path);
        fs::write(&path, p.content.as_bytes()).map_err(io_error(&path))?;
        debug_assert!(p.kind.directory().is_none() || p.path.contains('/'));
        manifest.entries.push(ManifestEntry {
            path: p.path,
            source: p.source,
            bytes: p.content.len() as u64,
        });
    }
    Ok(manifest)
}
