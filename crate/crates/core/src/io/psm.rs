use super::xml::{parse_document, XmlElement, XmlWriter};
use super::ModelIoError;
use crate::fragment::FragmentPath;
use crate::metamodel::psm::*;
use crate::metamodel::Direction;
use crate::validate::validate_psm;

pub const PSM_ROOT: &str = "NtiersMM:CrudProjectPackage";
pub const XMI_NAMESPACE: &str = "http://www.omg.org/XMI";
pub const NTIERS_NAMESPACE: &str = "http://NtiersMM.ecore";

/// Output shape of [`serialize_psm`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Dialect {
    /// Attributes and method declarations are emitted as nested elements.
    #[default]
    Full,
    /// Name-and-reference elements only, the shape of the published sample
    /// output. Used for golden comparison.
    Fig9Compat,
}

/// Writes a valid model as an XMI-style document. Output is a pure function
/// of the model and dialect.
pub fn serialize_psm(model: &CrudProjectPackage, dialect: Dialect) -> Result<String, ModelIoError> {
    let report = validate_psm(model);
    if !report.is_valid() {
        return Err(ModelIoError::InvalidModel(report));
    }
    let full = dialect == Dialect::Full;
    let mut w = XmlWriter::new();
    w.open(
        PSM_ROOT,
        &[
            ("xmlns:xmi", XMI_NAMESPACE),
            ("xmlns:NtiersMM", NTIERS_NAMESPACE),
            ("name", &model.name),
        ],
    );

    let ui = &model.ui_package;
    w.open(U_PACK, &[("name", &ui.name)]);
    w.open(V_PACK, &[("name", &ui.view_package.name)]);
    for page in &ui.view_package.pages {
        w.empty(JSP, &[("name", &page.name)]);
    }
    w.close(V_PACK);
    w.open(C_PACK, &[("name", &ui.controller_package.name)]);
    w.open(ACTION_MAPPING, &[]);
    let am = &ui.controller_package.action_mapping;
    for action in &am.actions {
        let form = action.form.map(|f| paths::form(f.index()).to_string());
        let forward = action.forward.map(|f| paths::page(f.target.index()).to_string());
        let mut attrs = vec![("name", action.name.as_str())];
        if let Some(f) = &form {
            attrs.push(("form", f));
        }
        if let Some(f) = &forward {
            attrs.push(("forward", f));
        }
        w.empty(ACTION, &attrs);
    }
    for form in &am.forms {
        let attribute = paths::action(form.attribute.index()).to_string();
        let input = paths::page(form.input.index()).to_string();
        w.empty(
            FORM,
            &[("name", &form.name), ("attribute", &attribute), ("input", &input)],
        );
    }
    w.close(ACTION_MAPPING);
    w.close(C_PACK);
    w.close(U_PACK);

    let bp = &model.business_package;
    w.open(B_PACK, &[("name", &bp.name)]);
    for s in &bp.services {
        let imp = s.implemented_by.map(|r| paths::serviceimpl(r.index()).to_string());
        write_methods(
            &mut w,
            SERVICES,
            &s.name,
            "implementedBy",
            imp.as_deref(),
            &s.methods,
            full,
        );
    }
    for s in &bp.serviceimpls {
        let ifaces = join_paths(s.interfaces.iter().map(|r| paths::service(r.index())));
        write_leaf(&mut w, SERVICEIMPL, &s.name, "interfaces", ifaces.as_deref());
    }
    for d in &bp.dtos {
        let pojo = d.pojo.map(|r| paths::pojo(r.index()).to_string());
        write_attributes(&mut w, DTO, &d.name, "pojos", pojo.as_deref(), &d.attributes, full);
    }
    w.close(B_PACK);

    let dp = &model.dao_package;
    w.open(D_PACK, &[("name", &dp.name)]);
    for d in &dp.daos {
        let imp = d.implemented_by.map(|r| paths::daoimpl(r.index()).to_string());
        write_methods(&mut w, DAO, &d.name, "implementedBy", imp.as_deref(), &d.methods, full);
    }
    for p in &dp.pojos {
        let dto = p.dto.map(|r| paths::dto(r.index()).to_string());
        write_attributes(&mut w, POJO, &p.name, "dto", dto.as_deref(), &p.attributes, full);
    }
    for d in &dp.daoimpls {
        let ifaces = join_paths(d.interfaces.iter().map(|r| paths::dao(r.index())));
        write_leaf(&mut w, DAOIMPL, &d.name, "interfaces", ifaces.as_deref());
    }
    w.close(D_PACK);

    w.close(PSM_ROOT);
    Ok(w.finish())
}

fn join_paths(paths: impl Iterator<Item = FragmentPath>) -> Option<String> {
    let joined = paths.map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
    (!joined.is_empty()).then_some(joined)
}

fn head<'a>(name: &'a str, key: &'static str, reference: Option<&'a str>) -> Vec<(&'a str, &'a str)> {
    let mut attrs = vec![("name", name)];
    if let Some(r) = reference {
        attrs.push((key, r));
    }
    attrs
}

fn write_leaf(w: &mut XmlWriter, tag: &str, name: &str, key: &'static str, reference: Option<&str>) {
    w.empty(tag, &head(name, key, reference));
}

fn write_attributes(
    w: &mut XmlWriter,
    tag: &str,
    name: &str,
    key: &'static str,
    reference: Option<&str>,
    attributes: &[AttributeDecl],
    full: bool,
) {
    let attrs = head(name, key, reference);
    if !full || attributes.is_empty() {
        w.empty(tag, &attrs);
        return;
    }
    w.open(tag, &attrs);
    for a in attributes {
        w.empty(ATTRIBUTE, &[("name", &a.name), ("type", &a.type_name)]);
    }
    w.close(tag);
}

fn write_methods(
    w: &mut XmlWriter,
    tag: &str,
    name: &str,
    key: &'static str,
    reference: Option<&str>,
    methods: &[MethodDecl],
    full: bool,
) {
    let attrs = head(name, key, reference);
    if !full || methods.is_empty() {
        w.empty(tag, &attrs);
        return;
    }
    w.open(tag, &attrs);
    for m in methods {
        if m.parameters.is_empty() {
            w.empty(METHOD, &[("name", &m.name)]);
            continue;
        }
        w.open(METHOD, &[("name", &m.name)]);
        for p in &m.parameters {
            w.empty(
                PARAMETER,
                &[
                    ("name", &p.name),
                    ("type", &p.type_name),
                    ("direction", p.direction.as_str()),
                ],
            );
        }
        w.close(METHOD);
    }
    w.close(tag);
}

/// A reference attribute read from the document, resolved once the whole
/// containment tree exists.
#[derive(Debug)]
enum Slot {
    DaoImplementedBy(usize),
    DaoImplInterfaces(usize),
    PojoDto(usize),
    DtoPojo(usize),
    ServiceImplementedBy(usize),
    ServiceImplInterfaces(usize),
    ActionForward(usize),
    ActionForm(usize),
    FormInput(usize),
    FormAttribute(usize),
}

impl Slot {
    fn target_kind(&self) -> &'static str {
        match self {
            Slot::DaoImplementedBy(_) => "DaoImpl",
            Slot::DaoImplInterfaces(_) => "IDao",
            Slot::PojoDto(_) => "Dto",
            Slot::DtoPojo(_) => "Pojo",
            Slot::ServiceImplementedBy(_) => "ServiceImpl",
            Slot::ServiceImplInterfaces(_) => "IService",
            Slot::ActionForward(_) | Slot::FormInput(_) => "JspPage",
            Slot::ActionForm(_) => "ActionForm",
            Slot::FormAttribute(_) => "Action",
        }
    }

    fn many(&self) -> bool {
        matches!(self, Slot::DaoImplInterfaces(_) | Slot::ServiceImplInterfaces(_))
    }
}

struct Pending {
    slot: Slot,
    raw: String,
    line: usize,
}

#[derive(Default)]
struct Reader {
    pending: Vec<Pending>,
}

impl Reader {
    fn defer(&mut self, el: &XmlElement, key: &str, slot: impl FnOnce() -> Slot) {
        if let Some(raw) = el.attr(key) {
            self.pending.push(Pending {
                slot: slot(),
                raw: raw.to_string(),
                line: el.line,
            });
        }
    }
}

fn no_children(el: &XmlElement) -> Result<(), ModelIoError> {
    match el.children.first() {
        Some(c) => Err(el.unknown_child(c)),
        None => Ok(()),
    }
}

fn exactly_one<'a>(parent: &'a XmlElement, tag: &str) -> Result<&'a XmlElement, ModelIoError> {
    let mut found = parent.children.iter().filter(|c| c.name == tag);
    match (found.next(), found.next()) {
        (Some(el), None) => Ok(el),
        (None, _) => Err(parent.violation(&format!("missing <{tag}>"))),
        (Some(_), Some(dup)) => Err(dup.violation(&format!("more than one <{tag}>"))),
    }
}

/// Reads an XMI-style document, resolving every fragment-path reference.
/// Dangling references are rejected; semantic checks are left to
/// [`validate_psm`].
pub fn parse_psm(text: &str) -> Result<CrudProjectPackage, ModelIoError> {
    let root = parse_document(text)?;
    if root.name != PSM_ROOT {
        return Err(root.violation(&format!("expected root element <{PSM_ROOT}>")));
    }
    root.check_shape(&["name"], &[])?;
    for child in &root.children {
        if ![U_PACK, B_PACK, D_PACK].contains(&child.name.as_str()) {
            return Err(root.unknown_child(child));
        }
    }
    let mut model = CrudProjectPackage::new(root.required("name")?);
    let mut reader = Reader::default();

    let ui = exactly_one(&root, U_PACK)?;
    read_ui(ui, &mut model.ui_package, &mut reader)?;
    let bp = exactly_one(&root, B_PACK)?;
    read_business(bp, &mut model.business_package, &mut reader)?;
    let dp = exactly_one(&root, D_PACK)?;
    read_dao(dp, &mut model.dao_package, &mut reader)?;

    for p in reader.pending {
        let targets = p
            .raw
            .split_whitespace()
            .map(|raw| resolve_index(&model, raw, p.slot.target_kind(), p.line))
            .collect::<Result<Vec<_>, _>>()?;
        if !p.slot.many() && targets.len() != 1 {
            return Err(ModelIoError::SchemaViolation(format!(
                "line {}: reference {:?} must name exactly one {}",
                p.line,
                p.raw,
                p.slot.target_kind()
            )));
        }
        let first = targets.first().copied().unwrap_or(0);
        match p.slot {
            Slot::DaoImplementedBy(i) => model.dao_package.daos[i].implemented_by = Some(Ref::new(first)),
            Slot::DaoImplInterfaces(i) => {
                model.dao_package.daoimpls[i].interfaces = targets.into_iter().map(Ref::new).collect()
            }
            Slot::PojoDto(i) => model.dao_package.pojos[i].dto = Some(Ref::new(first)),
            Slot::DtoPojo(i) => model.business_package.dtos[i].pojo = Some(Ref::new(first)),
            Slot::ServiceImplementedBy(i) => model.business_package.services[i].implemented_by = Some(Ref::new(first)),
            Slot::ServiceImplInterfaces(i) => {
                model.business_package.serviceimpls[i].interfaces = targets.into_iter().map(Ref::new).collect()
            }
            Slot::ActionForward(i) => {
                model.ui_package.controller_package.action_mapping.actions[i].forward = Some(ActionForward {
                    target: Ref::new(first),
                })
            }
            Slot::ActionForm(i) => {
                model.ui_package.controller_package.action_mapping.actions[i].form = Some(Ref::new(first))
            }
            Slot::FormInput(i) => model.ui_package.controller_package.action_mapping.forms[i].input = Ref::new(first),
            Slot::FormAttribute(i) => {
                model.ui_package.controller_package.action_mapping.forms[i].attribute = Ref::new(first)
            }
        }
    }
    Ok(model)
}

fn resolve_index(
    model: &CrudProjectPackage,
    raw: &str,
    expected: &'static str,
    line: usize,
) -> Result<usize, ModelIoError> {
    let unresolved = || ModelIoError::UnresolvedPath {
        path: raw.to_string(),
        expected,
        line,
    };
    let path: FragmentPath = raw.parse().map_err(|_| unresolved())?;
    let element = model.resolve(&path).map_err(|_| unresolved())?;
    if element.kind() != expected {
        return Err(unresolved());
    }
    path.last().and_then(|s| s.index).ok_or_else(unresolved)
}

fn read_ui(el: &XmlElement, ui: &mut UiPackage, reader: &mut Reader) -> Result<(), ModelIoError> {
    el.check_shape(&["name"], &[])?;
    ui.name = el.required("name")?.to_string();
    for child in &el.children {
        if child.name != V_PACK && child.name != C_PACK {
            return Err(el.unknown_child(child));
        }
    }
    let vp = exactly_one(el, V_PACK)?;
    vp.check_shape(&["name"], &[])?;
    ui.view_package.name = vp.required("name")?.to_string();
    for child in &vp.children {
        if child.name != JSP {
            return Err(vp.unknown_child(child));
        }
        child.check_shape(&["name"], &[])?;
        no_children(child)?;
        ui.view_package.pages.push(JspPage {
            name: child.required("name")?.to_string(),
        });
    }

    let cp = exactly_one(el, C_PACK)?;
    cp.check_shape(&["name"], &[])?;
    ui.controller_package.name = cp.required("name")?.to_string();
    for child in &cp.children {
        if child.name != ACTION_MAPPING {
            return Err(cp.unknown_child(child));
        }
    }
    // an absent action mapping reads as an empty one
    if cp.children.is_empty() {
        return Ok(());
    }
    let am_el = exactly_one(cp, ACTION_MAPPING)?;
    am_el.check_shape(&[], &[])?;
    let am = &mut ui.controller_package.action_mapping;
    for child in &am_el.children {
        match child.name.as_str() {
            ACTION => {
                child.check_shape(&["name"], &["form", "forward"])?;
                no_children(child)?;
                let i = am.actions.len();
                reader.defer(child, "forward", || Slot::ActionForward(i));
                reader.defer(child, "form", || Slot::ActionForm(i));
                am.actions.push(Action {
                    name: child.required("name")?.to_string(),
                    forward: None,
                    form: None,
                });
            }
            FORM => {
                child.check_shape(&["name", "attribute", "input"], &[])?;
                no_children(child)?;
                let i = am.forms.len();
                reader.defer(child, "input", || Slot::FormInput(i));
                reader.defer(child, "attribute", || Slot::FormAttribute(i));
                am.forms.push(ActionForm {
                    name: child.required("name")?.to_string(),
                    input: Ref::new(0),
                    attribute: Ref::new(0),
                });
            }
            _ => return Err(am_el.unknown_child(child)),
        }
    }
    Ok(())
}

fn read_business(el: &XmlElement, bp: &mut BusinessPackage, reader: &mut Reader) -> Result<(), ModelIoError> {
    el.check_shape(&["name"], &[])?;
    bp.name = el.required("name")?.to_string();
    for child in &el.children {
        match child.name.as_str() {
            SERVICES => {
                child.check_shape(&["name"], &["implementedBy"])?;
                let i = bp.services.len();
                reader.defer(child, "implementedBy", || Slot::ServiceImplementedBy(i));
                bp.services.push(IService {
                    name: child.required("name")?.to_string(),
                    methods: read_methods(child)?,
                    implemented_by: None,
                });
            }
            SERVICEIMPL => {
                child.check_shape(&["name"], &["interfaces"])?;
                no_children(child)?;
                let i = bp.serviceimpls.len();
                reader.defer(child, "interfaces", || Slot::ServiceImplInterfaces(i));
                bp.serviceimpls.push(ServiceImpl {
                    name: child.required("name")?.to_string(),
                    interfaces: Vec::new(),
                });
            }
            DTO => {
                child.check_shape(&["name"], &["pojos"])?;
                let i = bp.dtos.len();
                reader.defer(child, "pojos", || Slot::DtoPojo(i));
                bp.dtos.push(Dto {
                    name: child.required("name")?.to_string(),
                    attributes: read_attributes(child)?,
                    pojo: None,
                });
            }
            _ => return Err(el.unknown_child(child)),
        }
    }
    Ok(())
}

fn read_dao(el: &XmlElement, dp: &mut DaoPackage, reader: &mut Reader) -> Result<(), ModelIoError> {
    el.check_shape(&["name"], &[])?;
    dp.name = el.required("name")?.to_string();
    for child in &el.children {
        match child.name.as_str() {
            DAO => {
                child.check_shape(&["name"], &["implementedBy"])?;
                let i = dp.daos.len();
                reader.defer(child, "implementedBy", || Slot::DaoImplementedBy(i));
                dp.daos.push(IDao {
                    name: child.required("name")?.to_string(),
                    methods: read_methods(child)?,
                    implemented_by: None,
                });
            }
            POJO => {
                child.check_shape(&["name"], &["dto"])?;
                let i = dp.pojos.len();
                reader.defer(child, "dto", || Slot::PojoDto(i));
                dp.pojos.push(Pojo {
                    name: child.required("name")?.to_string(),
                    attributes: read_attributes(child)?,
                    dto: None,
                });
            }
            DAOIMPL => {
                child.check_shape(&["name"], &["interfaces"])?;
                no_children(child)?;
                let i = dp.daoimpls.len();
                reader.defer(child, "interfaces", || Slot::DaoImplInterfaces(i));
                dp.daoimpls.push(DaoImpl {
                    name: child.required("name")?.to_string(),
                    interfaces: Vec::new(),
                });
            }
            _ => return Err(el.unknown_child(child)),
        }
    }
    Ok(())
}

fn read_attributes(el: &XmlElement) -> Result<Vec<AttributeDecl>, ModelIoError> {
    el.children
        .iter()
        .map(|child| {
            if child.name != ATTRIBUTE {
                return Err(el.unknown_child(child));
            }
            child.check_shape(&["name", "type"], &[])?;
            no_children(child)?;
            Ok(AttributeDecl {
                name: child.required("name")?.to_string(),
                type_name: child.required("type")?.to_string(),
            })
        })
        .collect()
}

fn read_methods(el: &XmlElement) -> Result<Vec<MethodDecl>, ModelIoError> {
    el.children
        .iter()
        .map(|child| {
            if child.name != METHOD {
                return Err(el.unknown_child(child));
            }
            child.check_shape(&["name"], &[])?;
            let parameters = child
                .children
                .iter()
                .map(|p| {
                    if p.name != PARAMETER {
                        return Err(child.unknown_child(p));
                    }
                    p.check_shape(&["name", "type"], &["direction"])?;
                    no_children(p)?;
                    let direction = match p.attr("direction") {
                        Some(d) => d.parse::<Direction>().map_err(|e| p.violation(&e))?,
                        None => Direction::In,
                    };
                    Ok(ParameterDecl {
                        name: p.required("name")?.to_string(),
                        type_name: p.required("type")?.to_string(),
                        direction,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MethodDecl {
                name: child.required("name")?.to_string(),
                parameters,
            })
        })
        .collect()
}
