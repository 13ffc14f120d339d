use super::xml::{parse_document, XmlElement, XmlWriter};
use super::ModelIoError;
use crate::metamodel::pim::{UmlAttribute, UmlClass, UmlDataType, UmlOperation, UmlPackage, UmlParameter};
use crate::metamodel::Direction;
use crate::validate::validate_pim;

pub const PIM_ROOT: &str = "UmlMM:UmlPackage";
pub const PIM_NAMESPACE: &str = "http://UmlMM.ecore";

/// Reads a class-model document without semantic validation.
pub fn read_pim(text: &str) -> Result<UmlPackage, ModelIoError> {
    let root = parse_document(text)?;
    if root.name != PIM_ROOT {
        return Err(root.violation(&format!("expected root element <{PIM_ROOT}>")));
    }
    root.check_shape(&["name"], &[])?;
    let mut package = UmlPackage::new(root.required("name")?);
    for child in &root.children {
        match child.name.as_str() {
            "class" => package.classes.push(read_class(child)?),
            "datatype" => {
                child.check_shape(&["name"], &[])?;
                if let Some(c) = child.children.first() {
                    return Err(child.unknown_child(c));
                }
                package.datatypes.push(UmlDataType {
                    name: child.required("name")?.to_string(),
                });
            }
            _ => return Err(root.unknown_child(child)),
        }
    }
    Ok(package)
}

/// Reads and validates a class-model document. A model with any
/// diagnostic is rejected with the full report attached.
pub fn parse_pim(text: &str) -> Result<UmlPackage, ModelIoError> {
    let package = read_pim(text)?;
    let report = validate_pim(&package);
    if report.is_valid() {
        Ok(package)
    } else {
        Err(ModelIoError::ValidationFailed(report))
    }
}

fn read_class(el: &XmlElement) -> Result<UmlClass, ModelIoError> {
    el.check_shape(&["name"], &[])?;
    let mut class = UmlClass::new(el.required("name")?);
    for child in &el.children {
        match child.name.as_str() {
            "attribute" => {
                child.check_shape(&["name", "type"], &[])?;
                if let Some(c) = child.children.first() {
                    return Err(child.unknown_child(c));
                }
                class.attributes.push(UmlAttribute {
                    name: child.required("name")?.to_string(),
                    type_name: child.required("type")?.to_string(),
                });
            }
            "operation" => class.operations.push(read_operation(child)?),
            _ => return Err(el.unknown_child(child)),
        }
    }
    Ok(class)
}

fn read_operation(el: &XmlElement) -> Result<UmlOperation, ModelIoError> {
    el.check_shape(&["name"], &[])?;
    let mut op = UmlOperation::new(el.required("name")?);
    for child in &el.children {
        if child.name != "parameter" {
            return Err(el.unknown_child(child));
        }
        child.check_shape(&["name", "type"], &["direction"])?;
        if let Some(c) = child.children.first() {
            return Err(child.unknown_child(c));
        }
        let direction = match child.attr("direction") {
            Some(d) => d.parse::<Direction>().map_err(|e| child.violation(&e))?,
            None => Direction::In,
        };
        op.parameters.push(UmlParameter {
            name: child.required("name")?.to_string(),
            type_name: child.required("type")?.to_string(),
            direction,
        });
    }
    Ok(op)
}

/// Writes a class model in the input dialect (datatypes first, then
/// classes, each in model order).
pub fn serialize_pim(model: &UmlPackage) -> String {
    let mut w = XmlWriter::new();
    w.open(PIM_ROOT, &[("xmlns:UmlMM", PIM_NAMESPACE), ("name", &model.name)]);
    for dt in &model.datatypes {
        w.empty("datatype", &[("name", &dt.name)]);
    }
    for class in &model.classes {
        if class.attributes.is_empty() && class.operations.is_empty() {
            w.empty("class", &[("name", &class.name)]);
            continue;
        }
        w.open("class", &[("name", &class.name)]);
        for a in &class.attributes {
            w.empty("attribute", &[("name", &a.name), ("type", &a.type_name)]);
        }
        for op in &class.operations {
            if op.parameters.is_empty() {
                w.empty("operation", &[("name", &op.name)]);
                continue;
            }
            w.open("operation", &[("name", &op.name)]);
            for p in &op.parameters {
                w.empty(
                    "parameter",
                    &[
                        ("name", &p.name),
                        ("type", &p.type_name),
                        ("direction", p.direction.as_str()),
                    ],
                );
            }
            w.close("operation");
        }
        w.close("class");
    }
    w.close(PIM_ROOT);
    w.finish()
}
