//! Framework meta-classes of the target architecture.
//!
//! These concepts appear in the target meta-model for completeness only.
//! The transformation never instantiates them, so they have no Rust
//! representation beyond this constant list.

pub const FRAMEWORK_CONCEPTS: [&str; 10] = [
    "Interface",
    "Table",
    "HibernateDaoSupport",
    "HttpRequest",
    "HttpResponse",
    "ApplicationContext",
    "ServiceLocator",
    "WebApplicationContext",
    "ContextLoaderPlugIn",
    "DelegatingActionProxy",
];

pub fn is_framework_concept(name: &str) -> bool {
    FRAMEWORK_CONCEPTS.contains(&name)
}
