//! PIM to N-tiers PSM transformation.
//!
//! [`transform`] runs the main algorithm: the data access loop (pojo, idao,
//! daoimpl per class), one dto per pojo, the service loop (iservice,
//! serviceimpl per class), then the view and controller rules. Rule order
//! matters because the implementation rules look up interfaces created
//! earlier in the same package.

mod rules;
mod trace;

use thiserror::Error;

use crate::metamodel::pim::UmlPackage;
use crate::metamodel::psm::{paths, CrudProjectPackage, Ref, UiPackage};
use crate::validate::{validate_pim, ValidationReport};

pub use rules::{
    rule_controller, rule_daoimpl, rule_dto, rule_idao, rule_iservice, rule_pojo, rule_serviceimpl, rule_view,
};
pub use trace::{Rule, TraceLink, TraceLog};

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("invalid-input: source model has {} diagnostic(s)", .0.diagnostics.len())]
    InvalidInput(ValidationReport),
    #[error("missing-interface: no {expected} for class {class}")]
    MissingInterface { class: String, expected: String },
    #[error("inconsistent-view: view package has no page {page}")]
    InconsistentView { page: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformation {
    pub psm: CrudProjectPackage,
    pub trace: TraceLog,
}

pub fn root_name(package: &str) -> String {
    format!("crud{package}")
}

pub fn transform(pim: &UmlPackage) -> Result<Transformation, TransformError> {
    let report = validate_pim(pim);
    if !report.is_valid() {
        return Err(TransformError::InvalidInput(report));
    }

    let mut crud = CrudProjectPackage::new(root_name(&pim.name));
    let mut trace = TraceLog::default();

    for (ci, class) in pim.classes.iter().enumerate() {
        let source = UmlPackage::class_path(ci);
        let dp = &mut crud.dao_package;
        let r = dp.add_pojo(rule_pojo(class));
        trace.record(Rule::Pojo, source.clone(), paths::pojo(r.index()));
        let r = dp.add_dao(rule_idao(class));
        trace.record(Rule::Idao, source.clone(), paths::dao(r.index()));
        let imp = rule_daoimpl(class, dp)?;
        let r = dp.add_daoimpl(imp);
        trace.record(Rule::Daoimpl, source, paths::daoimpl(r.index()));
    }

    // one dto per pojo; pojo i came from class i
    for pi in 0..crud.dao_package.pojos.len() {
        let dto = rule_dto(&crud.dao_package.pojos[pi], Ref::new(pi));
        let r = crud.link_dto(dto);
        trace.record(Rule::Dto, UmlPackage::class_path(pi), paths::dto(r.index()));
    }

    for (ci, class) in pim.classes.iter().enumerate() {
        let source = UmlPackage::class_path(ci);
        let bp = &mut crud.business_package;
        let r = bp.add_service(rule_iservice(class));
        trace.record(Rule::Iservice, source.clone(), paths::service(r.index()));
        let imp = rule_serviceimpl(class, bp)?;
        let r = bp.add_serviceimpl(imp);
        trace.record(Rule::Serviceimpl, source, paths::serviceimpl(r.index()));
    }

    let (view, page_origins) = rules::view_with_origins(&pim.classes);
    for (i, &(ci, oi)) in page_origins.iter().enumerate() {
        trace.record(Rule::View, UmlPackage::operation_path(ci, oi), paths::page(i));
    }
    let (controller, origins) = rules::controller_with_origins(&pim.classes, &view)?;
    for (i, &(ci, oi)) in origins.actions.iter().enumerate() {
        trace.record(Rule::Controller, UmlPackage::operation_path(ci, oi), paths::action(i));
    }
    for (i, &(ci, oi)) in origins.forms.iter().enumerate() {
        trace.record(Rule::Controller, UmlPackage::operation_path(ci, oi), paths::form(i));
    }
    crud.ui_package = UiPackage {
        view_package: view,
        controller_package: controller,
        ..UiPackage::new()
    };

    Ok(Transformation { psm: crud, trace })
}
