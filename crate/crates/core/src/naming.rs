//! Identifier rules and the naming laws for generated PSM elements.

/// First character alphabetic, the rest alphanumeric or underscore.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An identifier whose first letter is uppercase.
pub fn is_class_name(s: &str) -> bool {
    is_identifier(s) && s.starts_with(|c: char| c.is_ascii_uppercase())
}

/// Uppercases the first character and leaves the rest untouched.
pub fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// How the controller rule treats an operation, decided by a
/// case-insensitive comparison of the whole operation name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperationKind {
    Create,
    Update,
    Remove,
    Display,
    Other,
}

impl OperationKind {
    pub fn of(operation: &str) -> Self {
        match operation.to_ascii_lowercase().as_str() {
            "create" => OperationKind::Create,
            "update" => OperationKind::Update,
            "remove" => OperationKind::Remove,
            "display" => OperationKind::Display,
            _ => OperationKind::Other,
        }
    }

    pub fn has_page(self) -> bool {
        self != OperationKind::Remove
    }

    /// Create and update get an `...EndAction` and an action form.
    pub fn has_form(self) -> bool {
        matches!(self, OperationKind::Create | OperationKind::Update)
    }

    pub fn action_count(self) -> usize {
        if self.has_form() {
            2
        } else {
            1
        }
    }
}

pub fn pojo_name(class: &str) -> String {
    class.to_string()
}

pub fn idao_name(class: &str) -> String {
    format!("I{class}Dao")
}

pub fn daoimpl_name(class: &str) -> String {
    format!("{class}DaoImpl")
}

pub fn dto_name(pojo: &str) -> String {
    format!("{pojo}DTO")
}

pub fn iservice_name(class: &str) -> String {
    format!("I{class}Service")
}

pub fn serviceimpl_name(class: &str) -> String {
    format!("{class}ServiceImpl")
}

pub fn page_name(operation: &str, class: &str) -> String {
    format!("{}{class}Page.jsp", capitalize(operation))
}

pub fn display_page_name(class: &str) -> String {
    page_name("display", class)
}

pub fn action_name(operation: &str, class: &str) -> String {
    format!("{}{class}Action", capitalize(operation))
}

pub fn end_action_name(operation: &str, class: &str) -> String {
    format!("{}{class}EndAction", capitalize(operation))
}

pub fn form_name(operation: &str, class: &str) -> String {
    format!("{}{class}Form", capitalize(operation))
}

/// Every UI-layer name the rules will generate for one operation, as
/// `(pages, actions, forms)`.
pub fn ui_names(operation: &str, class: &str) -> (Vec<String>, Vec<String>, Vec<String>) {
    let kind = OperationKind::of(operation);
    let mut pages = Vec::new();
    let mut actions = vec![action_name(operation, class)];
    let mut forms = Vec::new();
    if kind.has_page() {
        pages.push(page_name(operation, class));
    }
    if kind.has_form() {
        actions.push(end_action_name(operation, class));
        forms.push(form_name(operation, class));
    }
    (pages, actions, forms)
}
