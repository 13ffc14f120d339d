//! XML reading and writing for both model kinds.
//!
//! The input dialect is a plain UML class-model document rooted at
//! `UmlMM:UmlPackage`; the output dialect is the XMI-style
//! `NtiersMM:CrudProjectPackage` document whose cross-references are
//! fragment paths.

mod pim;
mod psm;
mod xml;

use thiserror::Error;

use crate::validate::ValidationReport;

pub use pim::{parse_pim, read_pim, serialize_pim, PIM_NAMESPACE, PIM_ROOT};
pub use psm::{parse_psm, serialize_psm, Dialect, NTIERS_NAMESPACE, PSM_ROOT, XMI_NAMESPACE};

#[derive(Debug, Error)]
pub enum ModelIoError {
    #[error("xml-malformed: {0}")]
    XmlMalformed(String),
    #[error("schema-violation: {0}")]
    SchemaViolation(String),
    #[error("unresolved-path: line {line}: {path:?} does not address a {expected}")]
    UnresolvedPath {
        path: String,
        expected: &'static str,
        line: usize,
    },
    #[error("validation-failed: {} diagnostic(s)", .0.diagnostics.len())]
    ValidationFailed(ValidationReport),
    #[error("invalid-model: {} diagnostic(s)", .0.diagnostics.len())]
    InvalidModel(ValidationReport),
}

impl ModelIoError {
    pub fn code(&self) -> &'static str {
        match self {
            ModelIoError::XmlMalformed(_) => "xml-malformed",
            ModelIoError::SchemaViolation(_) => "schema-violation",
            ModelIoError::UnresolvedPath { .. } => "unresolved-path",
            ModelIoError::ValidationFailed(_) => "validation-failed",
            ModelIoError::InvalidModel(_) => "invalid-model",
        }
    }

    /// The attached report for validation failures.
    pub fn report(&self) -> Option<&ValidationReport> {
        match self {
            ModelIoError::ValidationFailed(r) | ModelIoError::InvalidModel(r) => Some(r),
            _ => None,
        }
    }
}

/// Which of the two document kinds a text holds, judged by its root element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    Pim,
    Psm,
}

pub fn sniff_kind(text: &str) -> Result<DocumentKind, ModelIoError> {
    let root = xml::parse_document(text)?;
    match root.name.as_str() {
        PIM_ROOT => Ok(DocumentKind::Pim),
        PSM_ROOT => Ok(DocumentKind::Psm),
        other => Err(ModelIoError::SchemaViolation(format!("unknown root element <{other}>"))),
    }
}
