//! Simplified UML class model: the platform-independent source.

use crate::fragment::{self, FragmentPath, ModelElement, ResolveError, Segment};
use crate::metamodel::Direction;

pub const CLASS: &str = "class";
pub const DATATYPE: &str = "datatype";
pub const ATTRIBUTE: &str = "attribute";
pub const OPERATION: &str = "operation";
pub const PARAMETER: &str = "parameter";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UmlPackage {
    pub name: String,
    pub classes: Vec<UmlClass>,
    pub datatypes: Vec<UmlDataType>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmlDataType {
    pub name: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UmlClass {
    pub name: String,
    pub attributes: Vec<UmlAttribute>,
    pub operations: Vec<UmlOperation>,
}

/// A structural feature typed by a classifier of the owning package.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmlAttribute {
    pub name: String,
    pub type_name: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UmlOperation {
    pub name: String,
    pub parameters: Vec<UmlParameter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmlParameter {
    pub name: String,
    pub type_name: String,
    pub direction: Direction,
}

impl UmlPackage {
    pub fn new(name: impl Into<String>) -> Self {
        UmlPackage {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn with_datatype(mut self, name: impl Into<String>) -> Self {
        self.datatypes.push(UmlDataType { name: name.into() });
        self
    }

    pub fn with_class(mut self, class: UmlClass) -> Self {
        self.classes.push(class);
        self
    }

    pub fn has_classifier(&self, name: &str) -> bool {
        self.classes.iter().any(|c| c.name == name) || self.datatypes.iter().any(|d| d.name == name)
    }

    pub fn resolve(&self, path: &FragmentPath) -> Result<PimElement<'_>, ResolveError> {
        fragment::resolve_from(PimElement::Package(self), path)
    }

    pub fn fragment_path_of(&self, element: PimElement<'_>) -> Result<FragmentPath, ResolveError> {
        fragment::path_from(PimElement::Package(self), element)
    }

    /// Every element with its path, in containment order.
    pub fn elements(&self) -> Vec<(FragmentPath, PimElement<'_>)> {
        fragment::walk(PimElement::Package(self))
    }

    pub fn class_path(index: usize) -> FragmentPath {
        FragmentPath::root().item(CLASS, index)
    }

    pub fn operation_path(class: usize, operation: usize) -> FragmentPath {
        Self::class_path(class).item(OPERATION, operation)
    }
}

impl UmlClass {
    pub fn new(name: impl Into<String>) -> Self {
        UmlClass {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn with_attribute(mut self, name: impl Into<String>, type_name: impl Into<String>) -> Self {
        self.attributes.push(UmlAttribute {
            name: name.into(),
            type_name: type_name.into(),
        });
        self
    }

    pub fn with_operation(mut self, operation: UmlOperation) -> Self {
        self.operations.push(operation);
        self
    }

    /// Adds a parameterless operation.
    pub fn with_op(self, name: impl Into<String>) -> Self {
        self.with_operation(UmlOperation::new(name))
    }
}

impl UmlOperation {
    pub fn new(name: impl Into<String>) -> Self {
        UmlOperation {
            name: name.into(),
            parameters: Vec::new(),
        }
    }

    pub fn with_parameter(
        mut self,
        name: impl Into<String>,
        type_name: impl Into<String>,
        direction: Direction,
    ) -> Self {
        self.parameters.push(UmlParameter {
            name: name.into(),
            type_name: type_name.into(),
            direction,
        });
        self
    }
}

#[derive(Debug, Clone, Copy)]
pub enum PimElement<'a> {
    Package(&'a UmlPackage),
    Class(&'a UmlClass),
    DataType(&'a UmlDataType),
    Attribute(&'a UmlAttribute),
    Operation(&'a UmlOperation),
    Parameter(&'a UmlParameter),
}

impl<'a> PimElement<'a> {
    pub fn name(self) -> &'a str {
        match self {
            PimElement::Package(e) => &e.name,
            PimElement::Class(e) => &e.name,
            PimElement::DataType(e) => &e.name,
            PimElement::Attribute(e) => &e.name,
            PimElement::Operation(e) => &e.name,
            PimElement::Parameter(e) => &e.name,
        }
    }

    pub fn kind(self) -> &'static str {
        match self {
            PimElement::Package(_) => "UmlPackage",
            PimElement::Class(_) => "Class",
            PimElement::DataType(_) => "DataType",
            PimElement::Attribute(_) => "Attribute",
            PimElement::Operation(_) => "Operation",
            PimElement::Parameter(_) => "Parameter",
        }
    }

    pub fn is_same(self, other: PimElement<'_>) -> bool {
        self.addr() == other.addr()
    }
}

fn indexed<'a, T, E>(feature: &str, items: &'a [T], wrap: impl Fn(&'a T) -> E) -> Vec<(Segment, E)> {
    items
        .iter()
        .enumerate()
        .map(|(i, item)| (Segment::at(feature, i), wrap(item)))
        .collect()
}

impl<'a> ModelElement<'a> for PimElement<'a> {
    fn children(self) -> Vec<(Segment, Self)> {
        match self {
            PimElement::Package(p) => {
                let mut out = indexed(CLASS, &p.classes, PimElement::Class);
                out.extend(indexed(DATATYPE, &p.datatypes, PimElement::DataType));
                out
            }
            PimElement::Class(c) => {
                let mut out = indexed(ATTRIBUTE, &c.attributes, PimElement::Attribute);
                out.extend(indexed(OPERATION, &c.operations, PimElement::Operation));
                out
            }
            PimElement::Operation(o) => indexed(PARAMETER, &o.parameters, PimElement::Parameter),
            PimElement::DataType(_) | PimElement::Attribute(_) | PimElement::Parameter(_) => Vec::new(),
        }
    }

    fn addr(self) -> *const () {
        match self {
            PimElement::Package(e) => e as *const _ as *const (),
            PimElement::Class(e) => e as *const _ as *const (),
            PimElement::DataType(e) => e as *const _ as *const (),
            PimElement::Attribute(e) => e as *const _ as *const (),
            PimElement::Operation(e) => e as *const _ as *const (),
            PimElement::Parameter(e) => e as *const _ as *const (),
        }
    }
}
