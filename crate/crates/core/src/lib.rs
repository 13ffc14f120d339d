//! Model compiler from a platform-independent UML class model to an
//! N-tiers platform-specific model.
//!
//! The pipeline is: [`io::parse_pim`] reads and validates the source model,
//! [`transform::transform`] applies the transformation rules and records a
//! trace, [`io::serialize_psm`] writes the XMI-style result, and
//! [`scaffold::emit_scaffold`] turns it into stub files.

pub mod diff;
pub mod fragment;
pub mod io;
pub mod metamodel;
pub mod naming;
pub mod scaffold;
pub mod transform;
pub mod validate;

pub use diff::{diff, diff_pim, diff_psm, DiffKind, ModelRef, OrderMode, StructuralDiff};
pub use fragment::{FragmentPath, ResolveError, Segment};
pub use io::{parse_pim, parse_psm, serialize_pim, serialize_psm, Dialect, ModelIoError};
pub use metamodel::pim::PimElement;
pub use metamodel::psm::PsmElement;
pub use scaffold::{emit_scaffold, ScaffoldManifest, TemplateSet};
pub use transform::{transform, TraceLog, Transformation};
pub use validate::{validate_pim, validate_psm, ValidationReport};

/// The source model: a UML package.
pub type PimModel = metamodel::pim::UmlPackage;

/// The target model: a `CrudProjectPackage` root.
pub type PsmModel = metamodel::psm::CrudProjectPackage;
