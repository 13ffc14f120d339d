//! Well-formedness checks for both meta-models.
//!
//! Violations are returned as data. A report with no diagnostics means the
//! model is valid.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::fragment::FragmentPath;
use crate::metamodel::pim::{self, UmlPackage};
use crate::metamodel::psm::{paths, AttributeDecl, CrudProjectPackage, Ref};
use crate::naming;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Code {
    InvalidIdentifier,
    InvalidClassName,
    EmptyName,
    DuplicateClassifierName,
    DuplicateAttributeName,
    DuplicateOperationName,
    DuplicateParameterName,
    UnresolvedTypeRef,
    GeneratedNameCollision,
    DuplicateName,
    UnresolvedReference,
    AsymmetricLink,
    DtoPojoMismatch,
    NamingConvention,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::InvalidIdentifier => "invalid-identifier",
            Code::InvalidClassName => "invalid-class-name",
            Code::EmptyName => "empty-name",
            Code::DuplicateClassifierName => "duplicate-classifier-name",
            Code::DuplicateAttributeName => "duplicate-attribute-name",
            Code::DuplicateOperationName => "duplicate-operation-name",
            Code::DuplicateParameterName => "duplicate-parameter-name",
            Code::UnresolvedTypeRef => "unresolved-type-ref",
            Code::GeneratedNameCollision => "generated-name-collision",
            Code::DuplicateName => "duplicate-name",
            Code::UnresolvedReference => "unresolved-reference",
            Code::AsymmetricLink => "asymmetric-link",
            Code::DtoPojoMismatch => "dto-pojo-mismatch",
            Code::NamingConvention => "naming-convention",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub path: FragmentPath,
    pub code: Code,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    /// Tab-separated: severity, path, code, message.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}", self.severity, self.path, self.code, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.diagnostics.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(|d| d.severity == Severity::Error)
    }

    pub fn codes(&self) -> Vec<Code> {
        self.diagnostics.iter().map(|d| d.code).collect()
    }

    fn error(&mut self, path: FragmentPath, code: Code, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            severity: Severity::Error,
            path,
            code,
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.diagnostics {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

pub fn validate_pim(model: &UmlPackage) -> ValidationReport {
    let mut report = ValidationReport::default();
    let root = FragmentPath::root();

    if !naming::is_identifier(&model.name) {
        report.error(
            root.clone(),
            Code::InvalidIdentifier,
            format!("package name {:?} is not an identifier", model.name),
        );
    }

    let mut classifiers = HashSet::new();
    // first occurrence of each class name; duplicates are reported once and
    // excluded from the generated-name check
    let mut distinct_classes = Vec::new();
    for (ci, class) in model.classes.iter().enumerate() {
        let path = root.item(pim::CLASS, ci);
        if !classifiers.insert(class.name.as_str()) {
            report.error(
                path.clone(),
                Code::DuplicateClassifierName,
                format!("classifier {:?} is declared more than once", class.name),
            );
        } else {
            distinct_classes.push(ci);
        }
        if !naming::is_identifier(&class.name) {
            report.error(
                path.clone(),
                Code::InvalidIdentifier,
                format!("class name {:?} is not an identifier", class.name),
            );
        } else if !naming::is_class_name(&class.name) {
            report.error(
                path.clone(),
                Code::InvalidClassName,
                format!("class name {:?} must start with an uppercase letter", class.name),
            );
        }
    }
    for (di, dt) in model.datatypes.iter().enumerate() {
        let path = root.item(pim::DATATYPE, di);
        if dt.name.is_empty() {
            report.error(path.clone(), Code::EmptyName, "datatype name is empty");
        }
        if !classifiers.insert(dt.name.as_str()) {
            report.error(
                path,
                Code::DuplicateClassifierName,
                format!("classifier {:?} is declared more than once", dt.name),
            );
        }
    }

    for (ci, class) in model.classes.iter().enumerate() {
        let cpath = root.item(pim::CLASS, ci);
        let mut seen = HashSet::new();
        for (ai, attr) in class.attributes.iter().enumerate() {
            let path = cpath.item(pim::ATTRIBUTE, ai);
            check_identifier(&mut report, &path, "attribute", &attr.name);
            if !seen.insert(attr.name.as_str()) {
                report.error(
                    path.clone(),
                    Code::DuplicateAttributeName,
                    format!("attribute {:?} is declared more than once in {}", attr.name, class.name),
                );
            }
            if !model.has_classifier(&attr.type_name) {
                report.error(
                    path,
                    Code::UnresolvedTypeRef,
                    format!("type {:?} of attribute {:?} is not declared", attr.type_name, attr.name),
                );
            }
        }
        let mut seen = HashSet::new();
        for (oi, op) in class.operations.iter().enumerate() {
            let opath = cpath.item(pim::OPERATION, oi);
            check_identifier(&mut report, &opath, "operation", &op.name);
            if !seen.insert(op.name.as_str()) {
                report.error(
                    opath.clone(),
                    Code::DuplicateOperationName,
                    format!("operation {:?} is declared more than once in {}", op.name, class.name),
                );
            }
            let mut params = HashSet::new();
            for (pi, param) in op.parameters.iter().enumerate() {
                let path = opath.item(pim::PARAMETER, pi);
                check_identifier(&mut report, &path, "parameter", &param.name);
                if !params.insert(param.name.as_str()) {
                    report.error(
                        path.clone(),
                        Code::DuplicateParameterName,
                        format!("parameter {:?} is declared more than once in {}", param.name, op.name),
                    );
                }
                if !model.has_classifier(&param.type_name) {
                    report.error(
                        path,
                        Code::UnresolvedTypeRef,
                        format!(
                            "type {:?} of parameter {:?} is not declared",
                            param.type_name, param.name
                        ),
                    );
                }
            }
        }
    }

    check_generated_names(model, &distinct_classes, &mut report);
    report
}

fn check_identifier(report: &mut ValidationReport, path: &FragmentPath, what: &str, name: &str) {
    if !naming::is_identifier(name) {
        report.error(
            path.clone(),
            Code::InvalidIdentifier,
            format!("{what} name {name:?} is not an identifier"),
        );
    }
}

/// Pages, actions and forms concatenate operation and class names, so two
/// distinct sources can produce the same target name.
fn check_generated_names(model: &UmlPackage, classes: &[usize], report: &mut ValidationReport) {
    let mut pages: HashMap<String, (usize, usize)> = HashMap::new();
    let mut actions: HashMap<String, (usize, usize)> = HashMap::new();
    let mut forms: HashMap<String, (usize, usize)> = HashMap::new();
    for &ci in classes {
        let class = &model.classes[ci];
        let mut ops_seen = HashSet::new();
        for (oi, op) in class.operations.iter().enumerate() {
            if !ops_seen.insert(op.name.as_str()) {
                continue;
            }
            let (p, a, f) = naming::ui_names(&op.name, &class.name);
            let mut clash = None;
            for (names, table) in [(p, &mut pages), (a, &mut actions), (f, &mut forms)] {
                for name in names {
                    if let Some(&(c0, o0)) = table.get(&name) {
                        clash.get_or_insert((name, c0, o0));
                    } else {
                        table.insert(name, (ci, oi));
                    }
                }
            }
            if let Some((name, c0, o0)) = clash {
                let other = &model.classes[c0];
                report.error(
                    UmlPackage::operation_path(ci, oi),
                    Code::GeneratedNameCollision,
                    format!(
                        "{}.{} generates {:?}, already generated by {}.{}",
                        class.name, op.name, name, other.name, other.operations[o0].name
                    ),
                );
            }
        }
    }
}

pub fn validate_psm(model: &CrudProjectPackage) -> ValidationReport {
    let mut report = ValidationReport::default();
    let dp = &model.dao_package;
    let bp = &model.business_package;
    let pages = model.pages();
    let am = model.action_mapping();

    unique_names(&mut report, dp.daos.iter().map(|e| e.name.as_str()), paths::dao);
    unique_names(&mut report, dp.pojos.iter().map(|e| e.name.as_str()), paths::pojo);
    unique_names(&mut report, dp.daoimpls.iter().map(|e| e.name.as_str()), paths::daoimpl);
    unique_names(&mut report, bp.services.iter().map(|e| e.name.as_str()), paths::service);
    unique_names(
        &mut report,
        bp.serviceimpls.iter().map(|e| e.name.as_str()),
        paths::serviceimpl,
    );
    unique_names(&mut report, bp.dtos.iter().map(|e| e.name.as_str()), paths::dto);
    unique_names(&mut report, pages.iter().map(|e| e.name.as_str()), paths::page);
    unique_names(&mut report, am.actions.iter().map(|e| e.name.as_str()), paths::action);
    unique_names(&mut report, am.forms.iter().map(|e| e.name.as_str()), paths::form);

    // data access layer
    for (i, dao) in dp.daos.iter().enumerate() {
        if !(dao.name.len() > 4 && dao.name.starts_with('I') && dao.name.ends_with("Dao")) {
            naming_error(&mut report, paths::dao(i), &dao.name, "I<Class>Dao");
        }
        if let Some(imp) = dao.implemented_by {
            match dp.daoimpls.get(imp.index()) {
                None => dangling(&mut report, paths::dao(i), "implementedBy", paths::daoimpl(imp.index())),
                Some(d) if !d.interfaces.contains(&Ref::new(i)) => asymmetric(
                    &mut report,
                    paths::dao(i),
                    format!("{} is implementedBy {} which does not list it", dao.name, d.name),
                ),
                Some(_) => {}
            }
        }
    }
    for (i, imp) in dp.daoimpls.iter().enumerate() {
        let base = imp.name.strip_suffix("DaoImpl").filter(|b| !b.is_empty());
        if base.is_none() {
            naming_error(&mut report, paths::daoimpl(i), &imp.name, "<Class>DaoImpl");
        }
        for r in &imp.interfaces {
            match dp.daos.get(r.index()) {
                None => dangling(&mut report, paths::daoimpl(i), "interfaces", paths::dao(r.index())),
                Some(dao) => {
                    if dao.implemented_by != Some(Ref::new(i)) {
                        asymmetric(
                            &mut report,
                            paths::daoimpl(i),
                            format!("{} lists {} whose implementedBy differs", imp.name, dao.name),
                        );
                    }
                    if let Some(base) = base {
                        if dao.name != naming::idao_name(base) {
                            naming_error(
                                &mut report,
                                paths::daoimpl(i),
                                &imp.name,
                                "an implementation of I<Class>Dao",
                            );
                        }
                    }
                }
            }
        }
    }
    for (i, pojo) in dp.pojos.iter().enumerate() {
        if let Some(d) = pojo.dto {
            match bp.dtos.get(d.index()) {
                None => dangling(&mut report, paths::pojo(i), "dto", paths::dto(d.index())),
                Some(dto) if dto.pojo != Some(Ref::new(i)) => asymmetric(
                    &mut report,
                    paths::pojo(i),
                    format!("{} links dto {} which does not link back", pojo.name, dto.name),
                ),
                Some(_) => {}
            }
        }
    }

    // business layer
    for (i, service) in bp.services.iter().enumerate() {
        if !(service.name.len() > 8 && service.name.starts_with('I') && service.name.ends_with("Service")) {
            naming_error(&mut report, paths::service(i), &service.name, "I<Class>Service");
        }
        if let Some(imp) = service.implemented_by {
            match bp.serviceimpls.get(imp.index()) {
                None => dangling(
                    &mut report,
                    paths::service(i),
                    "implementedBy",
                    paths::serviceimpl(imp.index()),
                ),
                Some(s) if !s.interfaces.contains(&Ref::new(i)) => asymmetric(
                    &mut report,
                    paths::service(i),
                    format!("{} is implementedBy {} which does not list it", service.name, s.name),
                ),
                Some(_) => {}
            }
        }
    }
    for (i, imp) in bp.serviceimpls.iter().enumerate() {
        let base = imp.name.strip_suffix("ServiceImpl").filter(|b| !b.is_empty());
        if base.is_none() {
            naming_error(&mut report, paths::serviceimpl(i), &imp.name, "<Class>ServiceImpl");
        }
        for r in &imp.interfaces {
            match bp.services.get(r.index()) {
                None => dangling(
                    &mut report,
                    paths::serviceimpl(i),
                    "interfaces",
                    paths::service(r.index()),
                ),
                Some(service) => {
                    if service.implemented_by != Some(Ref::new(i)) {
                        asymmetric(
                            &mut report,
                            paths::serviceimpl(i),
                            format!("{} lists {} whose implementedBy differs", imp.name, service.name),
                        );
                    }
                    if let Some(base) = base {
                        if service.name != naming::iservice_name(base) {
                            naming_error(
                                &mut report,
                                paths::serviceimpl(i),
                                &imp.name,
                                "an implementation of I<Class>Service",
                            );
                        }
                    }
                }
            }
        }
    }
    for (i, dto) in bp.dtos.iter().enumerate() {
        let Some(p) = dto.pojo else { continue };
        match dp.pojos.get(p.index()) {
            None => dangling(&mut report, paths::dto(i), "pojos", paths::pojo(p.index())),
            Some(pojo) => {
                if pojo.dto != Some(Ref::new(i)) {
                    asymmetric(
                        &mut report,
                        paths::dto(i),
                        format!("{} links pojo {} which does not link back", dto.name, pojo.name),
                    );
                }
                if dto.name != naming::dto_name(&pojo.name) {
                    naming_error(&mut report, paths::dto(i), &dto.name, "<Pojo>DTO");
                }
                if !same_attributes(&dto.attributes, &pojo.attributes) {
                    report.error(
                        paths::dto(i),
                        Code::DtoPojoMismatch,
                        format!("attributes of {} differ from those of {}", dto.name, pojo.name),
                    );
                }
            }
        }
    }

    // presentation layer
    for (i, page) in pages.iter().enumerate() {
        if !(page.name.len() > "Page.jsp".len() && page.name.ends_with("Page.jsp")) {
            naming_error(&mut report, paths::page(i), &page.name, "<Op><Class>Page.jsp");
        }
    }
    for (i, action) in am.actions.iter().enumerate() {
        if !(action.name.len() > "Action".len() && action.name.ends_with("Action")) {
            naming_error(&mut report, paths::action(i), &action.name, "<Op><Class>Action");
        }
        if let Some(fwd) = action.forward {
            if fwd.target.index() >= pages.len() {
                dangling(
                    &mut report,
                    paths::action(i),
                    "forward",
                    paths::page(fwd.target.index()),
                );
            }
        }
        if let Some(f) = action.form {
            match am.forms.get(f.index()) {
                None => dangling(&mut report, paths::action(i), "form", paths::form(f.index())),
                Some(form) if form.attribute != Ref::new(i) => asymmetric(
                    &mut report,
                    paths::action(i),
                    format!("{} uses form {} whose attribute differs", action.name, form.name),
                ),
                Some(_) => {}
            }
        }
    }
    for (i, form) in am.forms.iter().enumerate() {
        if form.input.index() >= pages.len() {
            dangling(&mut report, paths::form(i), "input", paths::page(form.input.index()));
        }
        match am.actions.get(form.attribute.index()) {
            None => dangling(
                &mut report,
                paths::form(i),
                "attribute",
                paths::action(form.attribute.index()),
            ),
            Some(action) if action.form != Some(Ref::new(i)) => asymmetric(
                &mut report,
                paths::form(i),
                format!("{} names action {} which does not use it", form.name, action.name),
            ),
            Some(_) => {}
        }
    }

    report
}

fn same_attributes(a: &[AttributeDecl], b: &[AttributeDecl]) -> bool {
    a == b
}

fn unique_names<'a>(
    report: &mut ValidationReport,
    names: impl Iterator<Item = &'a str>,
    path: fn(usize) -> FragmentPath,
) {
    let mut seen = HashSet::new();
    for (i, name) in names.enumerate() {
        if !seen.insert(name) {
            report.error(
                path(i),
                Code::DuplicateName,
                format!("name {name:?} is used more than once"),
            );
        }
    }
}

fn naming_error(report: &mut ValidationReport, path: FragmentPath, name: &str, expected: &str) {
    report.error(
        path,
        Code::NamingConvention,
        format!("{name:?} does not follow the pattern {expected}"),
    );
}

fn asymmetric(report: &mut ValidationReport, path: FragmentPath, message: String) {
    report.error(path, Code::AsymmetricLink, message);
}

fn dangling(report: &mut ValidationReport, path: FragmentPath, feature: &str, target: FragmentPath) {
    report.error(
        path,
        Code::UnresolvedReference,
        format!("{feature} points at {target}, which does not exist"),
    );
}
