//! N-tiers platform-specific model: data access, business and presentation
//! packages under one `CrudProjectPackage` root.
//!
//! Cross-references are typed positions ([`Ref`]) into the owning feature
//! list, which is exactly what a fragment path encodes. Bidirectional pairs
//! (`implementedBy`/`interfaces`, `dto`/`pojo`, `form`/`attribute`) are kept
//! symmetric by the `add_*`/`link_*` helpers; `validate_psm` checks it.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use crate::fragment::{self, FragmentPath, ModelElement, ResolveError, Segment};
use crate::metamodel::Direction;

pub const U_PACK: &str = "uPack";
pub const V_PACK: &str = "vPack";
pub const C_PACK: &str = "cPack";
pub const B_PACK: &str = "bPack";
pub const D_PACK: &str = "dPack";
pub const SERVICES: &str = "services";
pub const SERVICEIMPL: &str = "serviceimpl";
pub const DTO: &str = "dto";
pub const DAO: &str = "dao";
pub const POJO: &str = "pojo";
pub const DAOIMPL: &str = "daoimpl";
pub const JSP: &str = "jsp";
pub const ACTION_MAPPING: &str = "actionmapping";
pub const ACTION: &str = "action";
pub const FORM: &str = "form";
pub const ATTRIBUTE: &str = "attribute";
pub const METHOD: &str = "method";
pub const PARAMETER: &str = "parameter";

pub const PRESENTATION_PACKAGE: &str = "presentationPackage";
pub const VIEW_PACKAGE: &str = "viewPackage";
pub const CONTROLLER_PACKAGE: &str = "controllerPackage";
pub const BUSINESS_PACKAGE: &str = "businessPackage";
pub const DAO_PACKAGE: &str = "daoPackage";

/// Position of an element inside its containing feature list.
pub struct Ref<T> {
    index: usize,
    _target: PhantomData<fn() -> T>,
}

impl<T> Ref<T> {
    pub const fn new(index: usize) -> Self {
        Ref {
            index,
            _target: PhantomData,
        }
    }

    pub const fn index(self) -> usize {
        self.index
    }
}

impl<T> Clone for Ref<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Ref<T> {}

impl<T> PartialEq for Ref<T> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl<T> Eq for Ref<T> {}

impl<T> Hash for Ref<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.index.hash(state)
    }
}

impl<T> fmt::Debug for Ref<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ref({})", self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrudProjectPackage {
    pub name: String,
    pub dao_package: DaoPackage,
    pub business_package: BusinessPackage,
    pub ui_package: UiPackage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DaoPackage {
    pub name: String,
    pub daos: Vec<IDao>,
    pub pojos: Vec<Pojo>,
    pub daoimpls: Vec<DaoImpl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeDecl {
    pub name: String,
    pub type_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterDecl {
    pub name: String,
    pub type_name: String,
    pub direction: Direction,
}

/// Method signature copied from a source operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodDecl {
    pub name: String,
    pub parameters: Vec<ParameterDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pojo {
    pub name: String,
    pub attributes: Vec<AttributeDecl>,
    pub dto: Option<Ref<Dto>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IDao {
    pub name: String,
    pub methods: Vec<MethodDecl>,
    pub implemented_by: Option<Ref<DaoImpl>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DaoImpl {
    pub name: String,
    pub interfaces: Vec<Ref<IDao>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BusinessPackage {
    pub name: String,
    pub services: Vec<IService>,
    pub serviceimpls: Vec<ServiceImpl>,
    pub dtos: Vec<Dto>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IService {
    pub name: String,
    pub methods: Vec<MethodDecl>,
    pub implemented_by: Option<Ref<ServiceImpl>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceImpl {
    pub name: String,
    pub interfaces: Vec<Ref<IService>>,
}

/// Business object mirroring a pojo. Holds its own copy of the attributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dto {
    pub name: String,
    pub attributes: Vec<AttributeDecl>,
    pub pojo: Option<Ref<Pojo>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UiPackage {
    pub name: String,
    pub view_package: ViewPackage,
    pub controller_package: ControllerPackage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewPackage {
    pub name: String,
    pub pages: Vec<JspPage>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JspPage {
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControllerPackage {
    pub name: String,
    pub action_mapping: ActionMapping,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ActionMapping {
    pub actions: Vec<Action>,
    pub forms: Vec<ActionForm>,
}

/// A controller action (the delegating action proxy of the target
/// framework).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    pub name: String,
    pub forward: Option<ActionForward>,
    pub form: Option<Ref<ActionForm>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActionForward {
    pub target: Ref<JspPage>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionForm {
    pub name: String,
    pub input: Ref<JspPage>,
    pub attribute: Ref<Action>,
}

impl CrudProjectPackage {
    /// A root with all sub-packages present and empty.
    pub fn new(name: impl Into<String>) -> Self {
        CrudProjectPackage {
            name: name.into(),
            dao_package: DaoPackage::new(),
            business_package: BusinessPackage::new(),
            ui_package: UiPackage::new(),
        }
    }

    pub fn pages(&self) -> &[JspPage] {
        &self.ui_package.view_package.pages
    }

    pub fn action_mapping(&self) -> &ActionMapping {
        &self.ui_package.controller_package.action_mapping
    }

    pub fn resolve(&self, path: &FragmentPath) -> Result<PsmElement<'_>, ResolveError> {
        fragment::resolve_from(PsmElement::Root(self), path)
    }

    pub fn fragment_path_of(&self, element: PsmElement<'_>) -> Result<FragmentPath, ResolveError> {
        fragment::path_from(PsmElement::Root(self), element)
    }

    /// Every element with its path, in containment (serialization) order.
    pub fn elements(&self) -> Vec<(FragmentPath, PsmElement<'_>)> {
        fragment::walk(PsmElement::Root(self))
    }

    /// Links a dto into the business package and sets the pojo's back-link.
    pub fn link_dto(&mut self, dto: Dto) -> Ref<Dto> {
        let r = Ref::new(self.business_package.dtos.len());
        if let Some(pojo) = dto.pojo {
            if let Some(p) = self.dao_package.pojos.get_mut(pojo.index()) {
                p.dto = Some(r);
            }
        }
        self.business_package.dtos.push(dto);
        r
    }
}

impl Default for DaoPackage {
    fn default() -> Self {
        Self::new()
    }
}

impl DaoPackage {
    pub fn new() -> Self {
        DaoPackage {
            name: DAO_PACKAGE.to_string(),
            daos: Vec::new(),
            pojos: Vec::new(),
            daoimpls: Vec::new(),
        }
    }

    pub fn add_pojo(&mut self, pojo: Pojo) -> Ref<Pojo> {
        self.pojos.push(pojo);
        Ref::new(self.pojos.len() - 1)
    }

    pub fn add_dao(&mut self, dao: IDao) -> Ref<IDao> {
        self.daos.push(dao);
        Ref::new(self.daos.len() - 1)
    }

    /// Adds an implementation and points each of its interfaces back at it.
    pub fn add_daoimpl(&mut self, imp: DaoImpl) -> Ref<DaoImpl> {
        let r = Ref::new(self.daoimpls.len());
        for i in &imp.interfaces {
            if let Some(dao) = self.daos.get_mut(i.index()) {
                dao.implemented_by = Some(r);
            }
        }
        self.daoimpls.push(imp);
        r
    }

    pub fn find_dao(&self, name: &str) -> Option<Ref<IDao>> {
        self.daos.iter().position(|d| d.name == name).map(Ref::new)
    }
}

impl Default for BusinessPackage {
    fn default() -> Self {
        Self::new()
    }
}

impl BusinessPackage {
    pub fn new() -> Self {
        BusinessPackage {
            name: BUSINESS_PACKAGE.to_string(),
            services: Vec::new(),
            serviceimpls: Vec::new(),
            dtos: Vec::new(),
        }
    }

    pub fn add_service(&mut self, service: IService) -> Ref<IService> {
        self.services.push(service);
        Ref::new(self.services.len() - 1)
    }

    pub fn add_serviceimpl(&mut self, imp: ServiceImpl) -> Ref<ServiceImpl> {
        let r = Ref::new(self.serviceimpls.len());
        for i in &imp.interfaces {
            if let Some(s) = self.services.get_mut(i.index()) {
                s.implemented_by = Some(r);
            }
        }
        self.serviceimpls.push(imp);
        r
    }

    pub fn find_service(&self, name: &str) -> Option<Ref<IService>> {
        self.services.iter().position(|s| s.name == name).map(Ref::new)
    }
}

impl Default for UiPackage {
    fn default() -> Self {
        Self::new()
    }
}

impl UiPackage {
    pub fn new() -> Self {
        UiPackage {
            name: PRESENTATION_PACKAGE.to_string(),
            view_package: ViewPackage::new(),
            controller_package: ControllerPackage::new(),
        }
    }
}

impl Default for ViewPackage {
    fn default() -> Self {
        Self::new()
    }
}

impl ViewPackage {
    pub fn new() -> Self {
        ViewPackage {
            name: VIEW_PACKAGE.to_string(),
            pages: Vec::new(),
        }
    }

    pub fn find_page(&self, name: &str) -> Option<Ref<JspPage>> {
        self.pages.iter().position(|p| p.name == name).map(Ref::new)
    }
}

impl Default for ControllerPackage {
    fn default() -> Self {
        Self::new()
    }
}

impl ControllerPackage {
    pub fn new() -> Self {
        ControllerPackage {
            name: CONTROLLER_PACKAGE.to_string(),
            action_mapping: ActionMapping::default(),
        }
    }
}

impl ActionMapping {
    pub fn add_action(&mut self, action: Action) -> Ref<Action> {
        self.actions.push(action);
        Ref::new(self.actions.len() - 1)
    }

    /// Adds a form and sets the `form` back-link on the action it serves.
    pub fn add_form(&mut self, form: ActionForm) -> Ref<ActionForm> {
        let r = Ref::new(self.forms.len());
        if let Some(a) = self.actions.get_mut(form.attribute.index()) {
            a.form = Some(r);
        }
        self.forms.push(form);
        r
    }
}

pub mod paths {
    //! Path constructors for the fixed layout of the target model.

    use super::*;

    pub fn dao_package() -> FragmentPath {
        FragmentPath::root().child(D_PACK)
    }

    pub fn business_package() -> FragmentPath {
        FragmentPath::root().child(B_PACK)
    }

    pub fn ui_package() -> FragmentPath {
        FragmentPath::root().child(U_PACK)
    }

    pub fn view_package() -> FragmentPath {
        ui_package().child(V_PACK)
    }

    pub fn controller_package() -> FragmentPath {
        ui_package().child(C_PACK)
    }

    pub fn action_mapping() -> FragmentPath {
        controller_package().child(ACTION_MAPPING)
    }

    pub fn dao(i: usize) -> FragmentPath {
        dao_package().item(DAO, i)
    }

    pub fn pojo(i: usize) -> FragmentPath {
        dao_package().item(POJO, i)
    }

    pub fn daoimpl(i: usize) -> FragmentPath {
        dao_package().item(DAOIMPL, i)
    }

    pub fn service(i: usize) -> FragmentPath {
        business_package().item(SERVICES, i)
    }

    pub fn serviceimpl(i: usize) -> FragmentPath {
        business_package().item(SERVICEIMPL, i)
    }

    pub fn dto(i: usize) -> FragmentPath {
        business_package().item(DTO, i)
    }

    pub fn page(i: usize) -> FragmentPath {
        view_package().item(JSP, i)
    }

    pub fn action(i: usize) -> FragmentPath {
        action_mapping().item(ACTION, i)
    }

    pub fn form(i: usize) -> FragmentPath {
        action_mapping().item(FORM, i)
    }
}

/// Borrowed handle on any element of a [`CrudProjectPackage`] tree.
#[derive(Debug, Clone, Copy)]
pub enum PsmElement<'a> {
    Root(&'a CrudProjectPackage),
    DaoPackage(&'a DaoPackage),
    BusinessPackage(&'a BusinessPackage),
    UiPackage(&'a UiPackage),
    ViewPackage(&'a ViewPackage),
    ControllerPackage(&'a ControllerPackage),
    ActionMapping(&'a ActionMapping),
    Pojo(&'a Pojo),
    IDao(&'a IDao),
    DaoImpl(&'a DaoImpl),
    Dto(&'a Dto),
    IService(&'a IService),
    ServiceImpl(&'a ServiceImpl),
    JspPage(&'a JspPage),
    Action(&'a Action),
    ActionForm(&'a ActionForm),
    Attribute(&'a AttributeDecl),
    Method(&'a MethodDecl),
    Parameter(&'a ParameterDecl),
}

impl<'a> PsmElement<'a> {
    /// `None` only for the action mapping, which carries no name.
    pub fn name(self) -> Option<&'a str> {
        Some(match self {
            PsmElement::Root(e) => &e.name,
            PsmElement::DaoPackage(e) => &e.name,
            PsmElement::BusinessPackage(e) => &e.name,
            PsmElement::UiPackage(e) => &e.name,
            PsmElement::ViewPackage(e) => &e.name,
            PsmElement::ControllerPackage(e) => &e.name,
            PsmElement::ActionMapping(_) => return None,
            PsmElement::Pojo(e) => &e.name,
            PsmElement::IDao(e) => &e.name,
            PsmElement::DaoImpl(e) => &e.name,
            PsmElement::Dto(e) => &e.name,
            PsmElement::IService(e) => &e.name,
            PsmElement::ServiceImpl(e) => &e.name,
            PsmElement::JspPage(e) => &e.name,
            PsmElement::Action(e) => &e.name,
            PsmElement::ActionForm(e) => &e.name,
            PsmElement::Attribute(e) => &e.name,
            PsmElement::Method(e) => &e.name,
            PsmElement::Parameter(e) => &e.name,
        })
    }

    pub fn kind(self) -> &'static str {
        match self {
            PsmElement::Root(_) => "CrudProjectPackage",
            PsmElement::DaoPackage(_) => "DaoPackage",
            PsmElement::BusinessPackage(_) => "BusinessPackage",
            PsmElement::UiPackage(_) => "UIPackage",
            PsmElement::ViewPackage(_) => "ViewPackage",
            PsmElement::ControllerPackage(_) => "ControllerPackage",
            PsmElement::ActionMapping(_) => "ActionMapping",
            PsmElement::Pojo(_) => "Pojo",
            PsmElement::IDao(_) => "IDao",
            PsmElement::DaoImpl(_) => "DaoImpl",
            PsmElement::Dto(_) => "Dto",
            PsmElement::IService(_) => "IService",
            PsmElement::ServiceImpl(_) => "ServiceImpl",
            PsmElement::JspPage(_) => "JspPage",
            PsmElement::Action(_) => "Action",
            PsmElement::ActionForm(_) => "ActionForm",
            PsmElement::Attribute(_) => "Attribute",
            PsmElement::Method(_) => "Method",
            PsmElement::Parameter(_) => "Parameter",
        }
    }

    /// Elements produced one-to-one by a transformation rule (everything
    /// except packages, the action mapping and nested declarations).
    pub fn is_rule_target(self) -> bool {
        matches!(
            self,
            PsmElement::Pojo(_)
                | PsmElement::IDao(_)
                | PsmElement::DaoImpl(_)
                | PsmElement::Dto(_)
                | PsmElement::IService(_)
                | PsmElement::ServiceImpl(_)
                | PsmElement::JspPage(_)
                | PsmElement::Action(_)
                | PsmElement::ActionForm(_)
        )
    }

    pub fn is_same(self, other: PsmElement<'_>) -> bool {
        self.addr() == other.addr()
    }
}

fn indexed<'a, T>(
    feature: &str,
    items: &'a [T],
    wrap: impl Fn(&'a T) -> PsmElement<'a> + 'a,
) -> impl Iterator<Item = (Segment, PsmElement<'a>)> + 'a {
    let feature = feature.to_string();
    items
        .iter()
        .enumerate()
        .map(move |(i, item)| (Segment::at(feature.clone(), i), wrap(item)))
}

impl<'a> ModelElement<'a> for PsmElement<'a> {
    fn children(self) -> Vec<(Segment, Self)> {
        match self {
            PsmElement::Root(r) => vec![
                (Segment::single(U_PACK), PsmElement::UiPackage(&r.ui_package)),
                (
                    Segment::single(B_PACK),
                    PsmElement::BusinessPackage(&r.business_package),
                ),
                (Segment::single(D_PACK), PsmElement::DaoPackage(&r.dao_package)),
            ],
            PsmElement::UiPackage(u) => vec![
                (Segment::single(V_PACK), PsmElement::ViewPackage(&u.view_package)),
                (
                    Segment::single(C_PACK),
                    PsmElement::ControllerPackage(&u.controller_package),
                ),
            ],
            PsmElement::ViewPackage(v) => indexed(JSP, &v.pages, PsmElement::JspPage).collect(),
            PsmElement::ControllerPackage(c) => vec![(
                Segment::single(ACTION_MAPPING),
                PsmElement::ActionMapping(&c.action_mapping),
            )],
            PsmElement::ActionMapping(am) => indexed(ACTION, &am.actions, PsmElement::Action)
                .chain(indexed(FORM, &am.forms, PsmElement::ActionForm))
                .collect(),
            PsmElement::BusinessPackage(b) => indexed(SERVICES, &b.services, PsmElement::IService)
                .chain(indexed(SERVICEIMPL, &b.serviceimpls, PsmElement::ServiceImpl))
                .chain(indexed(DTO, &b.dtos, PsmElement::Dto))
                .collect(),
            PsmElement::DaoPackage(d) => indexed(DAO, &d.daos, PsmElement::IDao)
                .chain(indexed(POJO, &d.pojos, PsmElement::Pojo))
                .chain(indexed(DAOIMPL, &d.daoimpls, PsmElement::DaoImpl))
                .collect(),
            PsmElement::Pojo(p) => indexed(ATTRIBUTE, &p.attributes, PsmElement::Attribute).collect(),
            PsmElement::Dto(d) => indexed(ATTRIBUTE, &d.attributes, PsmElement::Attribute).collect(),
            PsmElement::IDao(d) => indexed(METHOD, &d.methods, PsmElement::Method).collect(),
            PsmElement::IService(s) => indexed(METHOD, &s.methods, PsmElement::Method).collect(),
            PsmElement::Method(m) => indexed(PARAMETER, &m.parameters, PsmElement::Parameter).collect(),
            PsmElement::DaoImpl(_)
            | PsmElement::ServiceImpl(_)
            | PsmElement::JspPage(_)
            | PsmElement::Action(_)
            | PsmElement::ActionForm(_)
            | PsmElement::Attribute(_)
            | PsmElement::Parameter(_) => Vec::new(),
        }
    }

    fn addr(self) -> *const () {
        macro_rules! addr {
            ($($v:ident),*) => {
                match self {
                    $(PsmElement::$v(e) => e as *const _ as *const (),)*
                }
            };
        }
        addr!(
            Root,
            DaoPackage,
            BusinessPackage,
            UiPackage,
            ViewPackage,
            ControllerPackage,
            ActionMapping,
            Pojo,
            IDao,
            DaoImpl,
            Dto,
            IService,
            ServiceImpl,
            JspPage,
            Action,
            ActionForm,
            Attribute,
            Method,
            Parameter
        )
    }
}
