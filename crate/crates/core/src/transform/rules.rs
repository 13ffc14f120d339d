//! The eight transformation rules.
//!
//! Rule one builds the data access layer from each class, rule two the
//! business layer, rule three the view and controller packages. Each rule
//! only creates elements; linking them into packages (and setting the
//! bidirectional back-references) is done by the caller.

use crate::metamodel::pim::{UmlClass, UmlOperation};
use crate::metamodel::psm::*;
use crate::naming::{self, OperationKind};

use super::TransformError;

fn declarations(operations: &[UmlOperation]) -> Vec<MethodDecl> {
    operations
        .iter()
        .map(|op| MethodDecl {
            name: op.name.clone(),
            parameters: op
                .parameters
                .iter()
                .map(|p| ParameterDecl {
                    name: p.name.clone(),
                    type_name: p.type_name.clone(),
                    direction: p.direction,
                })
                .collect(),
        })
        .collect()
}

pub fn rule_pojo(class: &UmlClass) -> Pojo {
    Pojo {
        name: naming::pojo_name(&class.name),
        attributes: class
            .attributes
            .iter()
            .map(|a| AttributeDecl {
                name: a.name.clone(),
                type_name: a.type_name.clone(),
            })
            .collect(),
        dto: None,
    }
}

pub fn rule_idao(class: &UmlClass) -> IDao {
    IDao {
        name: naming::idao_name(&class.name),
        methods: declarations(&class.operations),
        implemented_by: None,
    }
}

/// Looks up `I<Class>Dao` among the interfaces already in `dao_package`.
pub fn rule_daoimpl(class: &UmlClass, dao_package: &DaoPackage) -> Result<DaoImpl, TransformError> {
    let expected = naming::idao_name(&class.name);
    let interfaces: Vec<_> = dao_package
        .daos
        .iter()
        .enumerate()
        .filter(|(_, d)| d.name == expected)
        .map(|(i, _)| Ref::new(i))
        .collect();
    if interfaces.is_empty() {
        return Err(TransformError::MissingInterface {
            class: class.name.clone(),
            expected,
        });
    }
    Ok(DaoImpl {
        name: naming::daoimpl_name(&class.name),
        interfaces,
    })
}

/// The dto takes a by-value copy of the pojo's attributes and points back
/// at `pojo_ref`.
pub fn rule_dto(pojo: &Pojo, pojo_ref: Ref<Pojo>) -> Dto {
    Dto {
        name: naming::dto_name(&pojo.name),
        attributes: pojo.attributes.clone(),
        pojo: Some(pojo_ref),
    }
}

pub fn rule_iservice(class: &UmlClass) -> IService {
    IService {
        name: naming::iservice_name(&class.name),
        methods: declarations(&class.operations),
        implemented_by: None,
    }
}

pub fn rule_serviceimpl(class: &UmlClass, business_package: &BusinessPackage) -> Result<ServiceImpl, TransformError> {
    let expected = naming::iservice_name(&class.name);
    let interfaces: Vec<_> = business_package
        .services
        .iter()
        .enumerate()
        .filter(|(_, s)| s.name == expected)
        .map(|(i, _)| Ref::new(i))
        .collect();
    if interfaces.is_empty() {
        return Err(TransformError::MissingInterface {
            class: class.name.clone(),
            expected,
        });
    }
    Ok(ServiceImpl {
        name: naming::serviceimpl_name(&class.name),
        interfaces,
    })
}

/// (class index, operation index) that produced a generated UI element.
pub(crate) type Origin = (usize, usize);

pub(crate) fn view_with_origins(classes: &[UmlClass]) -> (ViewPackage, Vec<Origin>) {
    let mut vp = ViewPackage::new();
    let mut origins = Vec::new();
    for (ci, class) in classes.iter().enumerate() {
        for (oi, op) in class.operations.iter().enumerate() {
            if OperationKind::of(&op.name).has_page() {
                vp.pages.push(JspPage {
                    name: naming::page_name(&op.name, &class.name),
                });
                origins.push((ci, oi));
            }
        }
    }
    (vp, origins)
}

/// One page per operation other than `remove`, in (class, operation) order.
pub fn rule_view(classes: &[UmlClass]) -> ViewPackage {
    view_with_origins(classes).0
}

pub(crate) struct ControllerOrigins {
    pub actions: Vec<Origin>,
    pub forms: Vec<Origin>,
}

pub(crate) fn controller_with_origins(
    classes: &[UmlClass],
    view: &ViewPackage,
) -> Result<(ControllerPackage, ControllerOrigins), TransformError> {
    let mut cp = ControllerPackage::new();
    let am = &mut cp.action_mapping;
    let mut origins = ControllerOrigins {
        actions: Vec::new(),
        forms: Vec::new(),
    };
    let page = |name: String| {
        view.find_page(&name)
            .ok_or(TransformError::InconsistentView { page: name })
    };

    for (ci, class) in classes.iter().enumerate() {
        let display = view.find_page(&naming::display_page_name(&class.name));
        for (oi, op) in class.operations.iter().enumerate() {
            let kind = OperationKind::of(&op.name);
            let own = if kind.has_page() {
                Some(page(naming::page_name(&op.name, &class.name))?)
            } else {
                None
            };
            let forward = display.or(own).map(|target| ActionForward { target });

            am.add_action(Action {
                name: naming::action_name(&op.name, &class.name),
                forward,
                form: None,
            });
            origins.actions.push((ci, oi));

            if kind.has_form() {
                let end = am.add_action(Action {
                    name: naming::end_action_name(&op.name, &class.name),
                    forward,
                    form: None,
                });
                origins.actions.push((ci, oi));
                let input = own.expect("create and update always have a page");
                am.add_form(ActionForm {
                    name: naming::form_name(&op.name, &class.name),
                    input,
                    attribute: end,
                });
                origins.forms.push((ci, oi));
            }
        }
    }
    Ok((cp, origins))
}

/// Builds the action mapping: create and update get an action, an
/// `...EndAction` and a form whose input is the operation's page; remove
/// gets a single action; any other operation gets a single action. Every
/// action forwards to the class's display page when there is one, else to
/// the operation's own page.
pub fn rule_controller(classes: &[UmlClass], view: &ViewPackage) -> Result<ControllerPackage, TransformError> {
    controller_with_origins(classes, view).map(|(cp, _)| cp)
}
